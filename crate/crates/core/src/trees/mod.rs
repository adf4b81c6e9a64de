//! Assembly trees: rooted trees whose leaves carry distinct positive
//! labels and whose internal vertices have at least two children.
//!
//! A vertex is identified with the set of leaf labels below it. Children
//! are stored in increasing order of their least leaf, which makes
//! structural equality coincide with equality of vertex-label sets and
//! gives every tree a single canonical text form such as `((1,2),3,4)`.

mod enumerate;
mod pointer;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

pub use enumerate::{enumerate_all_trees, AllTrees, MAX_ENUMERATION_LEAVES};
pub use pointer::{TraversalCounts, TreePointerView, VertexId};

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// A vertex of an assembly tree together with everything below it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Leaf(u32),
    Internal(Vec<Node>),
}

impl Node {
    pub fn min_leaf(&self) -> u32 {
        match self {
            Node::Leaf(x) => *x,
            Node::Internal(children) => children[0].min_leaf(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Node::Leaf(_))
    }

    pub fn children(&self) -> &[Node] {
        match self {
            Node::Leaf(_) => &[],
            Node::Internal(c) => c,
        }
    }

    /// Sorted leaf labels below this vertex.
    pub fn label(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out.sort_unstable();
        out
    }

    fn collect_leaves(&self, out: &mut Vec<u32>) {
        match self {
            Node::Leaf(x) => out.push(*x),
            Node::Internal(children) => children.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    /// Internal vertex with children put in canonical order.
    pub(crate) fn internal(mut children: Vec<Node>) -> Node {
        children.sort_by_key(Node::min_leaf);
        Node::Internal(children)
    }

    pub(crate) fn map_leaves(&self, f: &impl Fn(u32) -> u32) -> Node {
        match self {
            Node::Leaf(x) => Node::Leaf(f(*x)),
            Node::Internal(children) => {
                Node::internal(children.iter().map(|c| c.map_leaves(f)).collect())
            }
        }
    }

    fn push_labels(&self, out: &mut Vec<Vec<u32>>) -> Vec<u32> {
        let label = match self {
            Node::Leaf(x) => vec![*x],
            Node::Internal(children) => {
                let mut all: Vec<u32> = children.iter().flat_map(|c| c.push_labels(out)).collect();
                all.sort_unstable();
                all
            }
        };
        out.push(label.clone());
        label
    }

    fn find(&self, label: &[u32]) -> Option<&Node> {
        if self.label() == label {
            return Some(self);
        }
        self.children()
            .iter()
            .find(|c| {
                label
                    .first()
                    .is_some_and(|x| c.label().binary_search(x).is_ok())
            })
            .and_then(|c| c.find(label))
    }

    fn vertex_count(&self) -> usize {
        1 + self
            .children()
            .iter()
            .map(Node::vertex_count)
            .sum::<usize>()
    }

    fn height(&self) -> usize {
        self.children()
            .iter()
            .map(|c| c.height() + 1)
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Leaf(x) => write!(f, "{x}"),
            Node::Internal(children) => {
                f.write_str("(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An assembly tree in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AssemblyTree {
    root: Node,
}

impl AssemblyTree {
    /// The single-vertex tree on one label.
    pub fn leaf(x: u32) -> Self {
        AssemblyTree {
            root: Node::Leaf(x),
        }
    }

    /// Wraps a node, validating labels and arity and canonicalizing.
    pub fn from_node(node: Node) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let root = validate(node, &mut seen)?;
        Ok(AssemblyTree { root })
    }

    /// Node that is known to be valid and canonical.
    pub(crate) fn from_canonical(root: Node) -> Self {
        AssemblyTree { root }
    }

    /// Tree whose root has the given subtrees as children.
    pub fn join(children: Vec<AssemblyTree>) -> Result<Self> {
        AssemblyTree::from_node(Node::Internal(
            children.into_iter().map(|t| t.root).collect(),
        ))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut parser = Parser {
            text,
            bytes: text.as_bytes(),
            pos: 0,
        };
        let node = parser.node()?;
        parser.skip_ws();
        if parser.pos != parser.bytes.len() {
            return Err(parser.error("trailing characters"));
        }
        AssemblyTree::from_node(node)
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    /// The label set `X`, sorted.
    pub fn leaves(&self) -> Vec<u32> {
        self.root.label()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves().len()
    }

    pub fn vertex_count(&self) -> usize {
        self.root.vertex_count()
    }

    pub fn height(&self) -> usize {
        self.root.height()
    }

    /// Every vertex label (sorted leaf set), in post-order.
    pub fn vertex_labels(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        self.root.push_labels(&mut out);
        out
    }

    /// Labels of the root's children: a partition of `X`.
    pub fn root_partition(&self) -> Vec<Vec<u32>> {
        match &self.root {
            Node::Leaf(x) => vec![vec![*x]],
            Node::Internal(children) => children.iter().map(Node::label).collect(),
        }
    }

    /// The subtree rooted at the vertex labelled `label`, if there is one.
    pub fn subtree(&self, label: &[u32]) -> Option<AssemblyTree> {
        let mut sorted = label.to_vec();
        sorted.sort_unstable();
        self.root
            .find(&sorted)
            .cloned()
            .map(AssemblyTree::from_canonical)
    }

    /// `g(τ)`: the tree whose vertex labels are the images of those of τ.
    pub fn act(&self, g: &Permutation) -> Result<AssemblyTree> {
        let max = self.leaves().last().copied().unwrap_or(0);
        if max as usize > g.degree() {
            return Err(Error::DegreeTooSmall {
                degree: g.degree(),
                leaf: max,
            });
        }
        Ok(AssemblyTree {
            root: self.root.map_leaves(&|x| g.apply(x)),
        })
    }

    /// Whether `g(τ) = τ`, by direct comparison.
    pub fn is_fixed_by(&self, g: &Permutation) -> Result<bool> {
        Ok(self.act(g)? == *self)
    }
}

impl fmt::Display for AssemblyTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.root)
    }
}

impl fmt::Debug for AssemblyTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.root)
    }
}

impl FromStr for AssemblyTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AssemblyTree::parse(s)
    }
}

fn validate(node: Node, seen: &mut BTreeSet<u32>) -> Result<Node> {
    match node {
        Node::Leaf(0) => Err(Error::MalformedTree {
            text: "0".into(),
            reason: "leaf labels must be positive".into(),
        }),
        Node::Leaf(x) => {
            if !seen.insert(x) {
                return Err(Error::DuplicateLeaf(x));
            }
            Ok(Node::Leaf(x))
        }
        Node::Internal(children) => {
            if children.len() < 2 {
                return Err(Error::UnaryVertex);
            }
            let children = children
                .into_iter()
                .map(|c| validate(c, seen))
                .collect::<Result<Vec<_>>>()?;
            Ok(Node::internal(children))
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, reason: &str) -> Error {
        Error::MalformedTree {
            text: self.text.to_string(),
            reason: format!("{reason} at byte {}", self.pos),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn node(&mut self) -> Result<Node> {
        self.skip_ws();
        match self.bytes.get(self.pos) {
            Some(b'(') => {
                self.pos += 1;
                let mut children = vec![self.node()?];
                loop {
                    self.skip_ws();
                    match self.bytes.get(self.pos) {
                        Some(b',') => {
                            self.pos += 1;
                            children.push(self.node()?);
                        }
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.error("expected `,` or `)`")),
                    }
                }
                Ok(Node::Internal(children))
            }
            Some(b'0'..=b'9') => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                self.text[start..self.pos]
                    .parse::<u32>()
                    .map(Node::Leaf)
                    .map_err(|_| self.error("leaf label out of range"))
            }
            _ => Err(self.error("expected a leaf label or `(`")),
        }
    }
}

/// `{g(τ) : g ∈ G}`.
pub fn orbit_of_tree(group: &PermGroup, tree: &AssemblyTree) -> Result<BTreeSet<AssemblyTree>> {
    group.elements().iter().map(|g| tree.act(g)).collect()
}

/// Brute-force stabilizer: every element of `group` fixing `tree`.
pub fn brute_force_stabilizer(group: &PermGroup, tree: &AssemblyTree) -> Result<Vec<Permutation>> {
    let mut out = Vec::new();
    for g in group.elements() {
        if tree.is_fixed_by(g)? {
            out.push(g.clone());
        }
    }
    Ok(out)
}

/// Number of assembly trees on `n` labelled leaves.
pub fn count_trees(n: usize) -> num_bigint::BigUint {
    crate::series::tree_count(n)
}
