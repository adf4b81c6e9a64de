//! Fixing test and stabilizer computation on the pointer representation.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};
use crate::trees::{AssemblyTree, TreePointerView, VertexId};

/// Finds the vertex `g(v)` of the tree, if `g` maps the subtree at `v`
/// onto a subtree of the tree.
///
/// A leaf follows its g-pointer. An internal vertex with `k` children
/// locates each child's image and succeeds when all of those images share
/// one parent `w`, which is returned. In addition `w` must have exactly
/// `k` children; the arity is stored at the vertex, so the check costs no
/// pointer traversal. It makes the result exact at every vertex, not only
/// at the root, and it keeps the located images of distinct vertices
/// distinct, so that no parent pointer is followed twice.
///
/// The search stops at the first failing child.
pub fn locate_image(view: &TreePointerView, v: VertexId) -> Option<VertexId> {
    if view.is_leaf(v) {
        return view.follow_g(v);
    }
    let k = view.arity(v);
    let mut w = None;
    for i in 0..k {
        let c = view.follow_child(v, i);
        let image = locate_image(view, c)?;
        let parent = view.follow_parent(image)?;
        match w {
            None => {
                if view.arity(parent) != k {
                    return None;
                }
                w = Some(parent);
            }
            Some(seen) if seen != parent => return None,
            Some(_) => {}
        }
    }
    w
}

/// True iff `g` fixes `tau`, decided by [`locate_image`] at the root.
pub fn fixes(g: &Permutation, tau: &AssemblyTree) -> Result<bool> {
    let view = tau.pointer_view(g)?;
    Ok(fixes_view(&view))
}

/// [`fixes`] on a prepared view.
pub fn fixes_view(view: &TreePointerView) -> bool {
    locate_image(view, view.root()) == Some(view.root())
}

/// Outcome of [`pointer_traversal_audit`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraversalAudit {
    /// Largest number of times any single pointer was followed.
    pub max_count: u32,
    /// Pointer traversals in total.
    pub total: u64,
    pub vertex_count: usize,
    pub leaf_count: usize,
}

impl TraversalAudit {
    /// Each pointer at most once, hence at most one child, one parent and
    /// one g traversal per vertex.
    pub fn is_linear(&self) -> bool {
        self.max_count <= 1 && self.total <= 3 * self.vertex_count as u64
    }
}

/// Summarizes the traversal counters of a view after a run.
pub fn pointer_traversal_audit(view: &TreePointerView) -> TraversalAudit {
    let counts = view.counts();
    TraversalAudit {
        max_count: counts.max(),
        total: counts.total(),
        vertex_count: view.vertex_count(),
        leaf_count: view.leaf_count(),
    }
}

/// Generators of a stabilizer together with the group they generate.
#[derive(Clone, Debug)]
pub struct StabilizerResult {
    /// Non-identity elements found to fix the tree, in discovery order.
    pub generators: Vec<Permutation>,
    pub group: PermGroup,
    /// How many elements were tested with [`fixes`].
    pub fixes_calls: usize,
}

impl StabilizerResult {
    /// `|G| / |stab|`.
    pub fn orbit_size(&self, ambient: &PermGroup) -> usize {
        ambient.order() / self.group.order()
    }
}

/// Checks that `group` maps the leaf set of `tau` onto itself.
pub(crate) fn check_acts_on_leaves(group: &PermGroup, tau: &AssemblyTree) -> Result<()> {
    let leaves = tau.leaves();
    let fits = leaves.last().is_none_or(|&m| m as usize <= group.degree())
        && group
            .generators()
            .iter()
            .all(|g| g.apply_set(&leaves) == leaves);
    if fits {
        return Ok(());
    }
    let mut points: Vec<u32> = (1..=group.degree() as u32).collect();
    if leaves.last().is_some_and(|&m| m as usize <= group.degree()) {
        points = group.orbits_on(&leaves).concat();
        points.sort_unstable();
    }
    Err(Error::LeafSetMismatch {
        tree: leaves,
        points,
    })
}

/// Computes `stab_G(τ)`.
///
/// Keeps a set `R` of fixing elements, a set `C` of non-fixing left coset
/// representatives of `⟨R⟩`, and the undecided elements `U`. Each round
/// tests the least undecided element, then removes `⟨R⟩` and every coset
/// `c⟨R⟩`, `c ∈ C`, from `U`. When `R` grows, `C` keeps only the least
/// element of each left coset of the new `⟨R⟩`.
pub fn stabilizer(group: &PermGroup, tau: &AssemblyTree) -> Result<StabilizerResult> {
    check_acts_on_leaves(group, tau)?;
    let degree = group.degree();
    let mut r: Vec<Permutation> = Vec::new();
    let mut closure = PermGroup::trivial(degree);
    let mut c: Vec<Permutation> = Vec::new();
    let mut undecided: BTreeSet<Permutation> = group.elements().iter().cloned().collect();
    let mut calls = 0;

    // The identity always fixes, so R starts as {id}.
    undecided.remove(closure.identity());

    while let Some(g) = undecided.pop_first() {
        calls += 1;
        if fixes(&g, tau)? {
            r.push(g);
            closure = PermGroup::close(r.clone(), degree)?;
            c.sort();
            let mut kept: Vec<Permutation> = Vec::new();
            for x in c {
                let xi = x.inverse();
                if !kept
                    .iter()
                    .any(|k| closure.contains(&xi.compose_unchecked(k)))
                {
                    kept.push(x);
                }
            }
            c = kept;
            for h in closure.elements() {
                undecided.remove(h);
            }
        } else {
            c.push(g);
        }
        for rep in &c {
            for h in closure.elements() {
                undecided.remove(&rep.compose_unchecked(h));
            }
        }
    }
    Ok(StabilizerResult {
        generators: r,
        group: closure,
        fixes_calls: calls,
    })
}
