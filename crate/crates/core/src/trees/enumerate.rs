use super::{AssemblyTree, Node};
use crate::error::{Error, Result};

/// Largest label set [`enumerate_all_trees`] accepts.
pub const MAX_ENUMERATION_LEAVES: usize = 9;

/// Streams every assembly tree on `labels`, each exactly once.
///
/// Root partitions are visited in restricted-growth-string order; the
/// subtrees of each block vary like an odometer with the last block
/// fastest. Labels are deduplicated and sorted first.
pub fn enumerate_all_trees(labels: &[u32]) -> Result<AllTrees> {
    let mut labels = labels.to_vec();
    labels.sort_unstable();
    labels.dedup();
    if labels.len() > MAX_ENUMERATION_LEAVES {
        return Err(Error::TooManyLeaves {
            leaves: labels.len(),
            bound: MAX_ENUMERATION_LEAVES,
        });
    }
    if labels.first() == Some(&0) {
        return Err(Error::MalformedTree {
            text: "0".into(),
            reason: "leaf labels must be positive".into(),
        });
    }
    let inner = if labels.is_empty() {
        None
    } else {
        Some(NodeIter::new(labels))
    };
    Ok(AllTrees { inner })
}

/// Iterator returned by [`enumerate_all_trees`].
pub struct AllTrees {
    inner: Option<NodeIter>,
}

impl Iterator for AllTrees {
    type Item = AssemblyTree;

    fn next(&mut self) -> Option<AssemblyTree> {
        self.inner
            .as_mut()?
            .next()
            .map(AssemblyTree::from_canonical)
    }
}

enum NodeIter {
    /// A block with exactly one tree (one or two labels).
    Single {
        node: Node,
        taken: bool,
    },
    Internal(Box<Internal>),
}

struct Internal {
    labels: Vec<u32>,
    rgs: Vec<usize>,
    blocks: Vec<Vec<u32>>,
    subs: Vec<NodeIter>,
    current: Vec<Node>,
    primed: bool,
    done: bool,
}

impl NodeIter {
    fn new(labels: Vec<u32>) -> NodeIter {
        match labels[..] {
            [x] => return NodeIter::single(Node::Leaf(x)),
            [x, y] => return NodeIter::single(Node::Internal(vec![Node::Leaf(x), Node::Leaf(y)])),
            _ => {}
        }
        let n = labels.len();
        let mut it = Internal {
            labels,
            rgs: vec![0; n],
            blocks: Vec::new(),
            subs: Vec::new(),
            current: Vec::new(),
            primed: false,
            done: false,
        };
        // The all-zero string is the one-block partition; skip it.
        it.done = !it.advance_partition();
        if !it.done {
            it.load_partition();
        }
        NodeIter::Internal(Box::new(it))
    }

    fn single(node: Node) -> NodeIter {
        NodeIter::Single { node, taken: false }
    }

    /// Starts over; `labels` must be the labels the iterator was built on.
    fn restart(&mut self, labels: &[u32]) {
        match self {
            NodeIter::Single { taken, .. } => *taken = false,
            NodeIter::Internal(_) => *self = NodeIter::new(labels.to_vec()),
        }
    }
}

impl Iterator for NodeIter {
    type Item = Node;

    fn next(&mut self) -> Option<Node> {
        match self {
            NodeIter::Single { node, taken } => {
                if *taken {
                    return None;
                }
                *taken = true;
                Some(node.clone())
            }
            NodeIter::Internal(it) => it.next(),
        }
    }
}

impl Internal {
    /// Moves to the next restricted growth string; false when exhausted.
    fn advance_partition(&mut self) -> bool {
        let n = self.rgs.len();
        let mut prefix_max = [0usize; MAX_ENUMERATION_LEAVES];
        for i in 1..n {
            prefix_max[i] = prefix_max[i - 1].max(self.rgs[i - 1]);
        }
        for i in (1..n).rev() {
            if self.rgs[i] <= prefix_max[i] {
                self.rgs[i] += 1;
                self.rgs[i + 1..].iter_mut().for_each(|x| *x = 0);
                return true;
            }
        }
        false
    }

    fn blocks(&self) -> Vec<Vec<u32>> {
        let count = self.rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); count];
        for (&b, &x) in self.rgs.iter().zip(&self.labels) {
            blocks[b].push(x);
        }
        blocks
    }

    fn load_partition(&mut self) {
        self.blocks = self.blocks();
        self.subs = self.blocks.iter().cloned().map(NodeIter::new).collect();
        self.current = self
            .subs
            .iter_mut()
            .map(|s| s.next().expect("every block has a tree"))
            .collect();
        self.primed = true;
    }

    /// Advances the odometer over block subtrees; false on rollover.
    fn advance_subtrees(&mut self) -> bool {
        for i in (0..self.subs.len()).rev() {
            if let Some(node) = self.subs[i].next() {
                self.current[i] = node;
                return true;
            }
            self.subs[i].restart(&self.blocks[i]);
            self.current[i] = self.subs[i].next().expect("every block has a tree");
        }
        false
    }

    fn next(&mut self) -> Option<Node> {
        if self.done {
            return None;
        }
        if self.primed {
            self.primed = false;
        } else if !self.advance_subtrees() {
            if !self.advance_partition() {
                self.done = true;
                return None;
            }
            self.load_partition();
            self.primed = false;
        }
        // Blocks of a restricted growth string are already ordered by
        // their least element, so this is canonical.
        Some(Node::Internal(self.current.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn count(n: u32) -> usize {
        enumerate_all_trees(&(1..=n).collect::<Vec<_>>())
            .unwrap()
            .count()
    }

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=6).map(count).collect();
        assert_eq!(counts, vec![1, 1, 4, 26, 236, 2752]);
        assert_eq!(enumerate_all_trees(&[]).unwrap().count(), 0);
    }

    #[test]
    fn no_duplicates_and_canonical() {
        let trees: Vec<_> = enumerate_all_trees(&[2, 3, 5, 7, 11]).unwrap().collect();
        let unique: HashSet<_> = trees.iter().cloned().collect();
        assert_eq!(unique.len(), trees.len());
        for t in &trees {
            assert_eq!(&AssemblyTree::parse(&t.to_string()).unwrap(), t);
            assert_eq!(t.leaves(), vec![2, 3, 5, 7, 11]);
        }
    }

    #[test]
    fn deterministic_order() {
        let first: Vec<String> = enumerate_all_trees(&[1, 2, 3])
            .unwrap()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(
            first,
            vec!["((1,2),3)", "((1,3),2)", "(1,(2,3))", "(1,2,3)"]
        );
    }

    #[test]
    fn bound() {
        let labels: Vec<u32> = (1..=10).collect();
        assert!(matches!(
            enumerate_all_trees(&labels),
            Err(Error::TooManyLeaves {
                leaves: 10,
                bound: 9
            })
        ));
    }
}
