use std::cell::Cell;
use std::collections::HashMap;

use super::{AssemblyTree, Node};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Handle of a vertex inside a [`TreePointerView`].
pub type VertexId = u32;

/// Linked representation of a tree for a fixed permutation `g`.
///
/// Every vertex has child pointers and a parent pointer; every leaf has a
/// g-pointer to the leaf carrying the image of its label. Labels are kept
/// at the leaves only. Each pointer counts how often it is followed, so a
/// traversal can be audited afterwards.
#[derive(Debug)]
pub struct TreePointerView {
    parent: Vec<Option<VertexId>>,
    children: Vec<Vec<VertexId>>,
    leaf_label: Vec<Option<u32>>,
    g_pointer: Vec<Option<VertexId>>,
    leaf_of: HashMap<u32, VertexId>,
    child_hits: Vec<Cell<u32>>,
    parent_hits: Vec<Cell<u32>>,
    g_hits: Vec<Cell<u32>>,
}

/// Traversal counts of one view.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraversalCounts {
    /// Follow count of the child pointer into each vertex.
    pub child: Vec<u32>,
    pub parent: Vec<u32>,
    /// Per vertex; always zero for internal vertices.
    pub g: Vec<u32>,
}

impl TraversalCounts {
    pub fn max(&self) -> u32 {
        self.child
            .iter()
            .chain(&self.parent)
            .chain(&self.g)
            .copied()
            .max()
            .unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.child
            .iter()
            .chain(&self.parent)
            .chain(&self.g)
            .map(|&c| c as u64)
            .sum()
    }
}

impl TreePointerView {
    /// Builds the view of `tau` for `g`. Vertex 0 is the root.
    pub fn new(tau: &AssemblyTree, g: &Permutation) -> Result<Self> {
        let max = tau.leaves().last().copied().unwrap_or(0);
        if max as usize > g.degree() {
            return Err(Error::DegreeTooSmall {
                degree: g.degree(),
                leaf: max,
            });
        }
        let mut view = TreePointerView {
            parent: Vec::new(),
            children: Vec::new(),
            leaf_label: Vec::new(),
            g_pointer: Vec::new(),
            leaf_of: HashMap::new(),
            child_hits: Vec::new(),
            parent_hits: Vec::new(),
            g_hits: Vec::new(),
        };
        view.push(tau.root(), None);
        view.g_pointer = view
            .leaf_label
            .iter()
            .map(|l| l.and_then(|x| view.leaf_of.get(&g.apply(x)).copied()))
            .collect();
        let n = view.parent.len();
        view.child_hits = (0..n).map(|_| Cell::new(0)).collect();
        view.parent_hits = (0..n).map(|_| Cell::new(0)).collect();
        view.g_hits = (0..n).map(|_| Cell::new(0)).collect();
        Ok(view)
    }

    fn push(&mut self, node: &Node, parent: Option<VertexId>) -> VertexId {
        let id = self.parent.len() as VertexId;
        self.parent.push(parent);
        self.children.push(Vec::new());
        match node {
            Node::Leaf(x) => {
                self.leaf_label.push(Some(*x));
                self.leaf_of.insert(*x, id);
            }
            Node::Internal(kids) => {
                self.leaf_label.push(None);
                let ids = kids.iter().map(|c| self.push(c, Some(id))).collect();
                self.children[id as usize] = ids;
            }
        }
        id
    }

    pub fn root(&self) -> VertexId {
        0
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_of.len()
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.leaf_label[v as usize].is_some()
    }

    /// Label of a leaf vertex; `None` for internal vertices.
    pub fn leaf_label(&self, v: VertexId) -> Option<u32> {
        self.leaf_label[v as usize]
    }

    pub fn leaf_vertex(&self, label: u32) -> Option<VertexId> {
        self.leaf_of.get(&label).copied()
    }

    /// Number of children, read without following any pointer.
    pub fn arity(&self, v: VertexId) -> usize {
        self.children[v as usize].len()
    }

    // Uninstrumented accessors, for checks and tests.

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent[v as usize]
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.children[v as usize]
    }

    pub fn g_target(&self, leaf: VertexId) -> Option<VertexId> {
        self.g_pointer[leaf as usize]
    }

    /// Sorted leaf labels below `v`, recomputed by walking the subtree.
    pub fn label(&self, v: VertexId) -> Vec<u32> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            match self.leaf_label[u as usize] {
                Some(x) => out.push(x),
                None => stack.extend(&self.children[u as usize]),
            }
        }
        out.sort_unstable();
        out
    }

    // Instrumented traversals.

    /// Follows the `i`-th child pointer of `v`.
    pub fn follow_child(&self, v: VertexId, i: usize) -> VertexId {
        let c = self.children[v as usize][i];
        bump(&self.child_hits[c as usize]);
        c
    }

    pub fn follow_parent(&self, v: VertexId) -> Option<VertexId> {
        bump(&self.parent_hits[v as usize]);
        self.parent[v as usize]
    }

    /// Follows the g-pointer of a leaf; `None` when `g` leaves the label set.
    pub fn follow_g(&self, leaf: VertexId) -> Option<VertexId> {
        bump(&self.g_hits[leaf as usize]);
        self.g_pointer[leaf as usize]
    }

    pub fn counts(&self) -> TraversalCounts {
        let read = |v: &[Cell<u32>]| v.iter().map(Cell::get).collect();
        TraversalCounts {
            child: read(&self.child_hits),
            parent: read(&self.parent_hits),
            g: read(&self.g_hits),
        }
    }

    pub fn reset_counts(&self) {
        for c in self
            .child_hits
            .iter()
            .chain(&self.parent_hits)
            .chain(&self.g_hits)
        {
            c.set(0);
        }
    }
}

fn bump(c: &Cell<u32>) {
    c.set(c.get() + 1);
}

impl AssemblyTree {
    /// The pointer representation of this tree for `g`.
    pub fn pointer_view(&self, g: &Permutation) -> Result<TreePointerView> {
        TreePointerView::new(self, g)
    }
}
