//! Subgroup lattices and their Möbius function.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::perm::{all_subgroups_bounded, subgroup_class_ids, PermGroup, DEFAULT_MAX_GROUP_ORDER};

/// All subgroups of a group, ordered by containment, with the Möbius
/// function of that order.
///
/// Node `0` is the trivial subgroup and the last node is the group itself.
/// `leq[h][k]` is true iff node `h` is contained in node `k`; `mobius[h][k]`
/// is `μ(h, k)` and is zero whenever `h ≰ k`.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    group: PermGroup,
    nodes: Vec<PermGroup>,
    class_of: Vec<usize>,
    leq: Vec<Vec<bool>>,
    mobius: Vec<Vec<i64>>,
}

/// Containment multiplicities between two conjugacy classes of subgroups
/// joined by a covering relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseEdge {
    pub lower_class: usize,
    pub upper_class: usize,
    pub lower_order: usize,
    pub upper_order: usize,
    /// How many subgroups of the lower class each upper subgroup contains.
    pub lower_per_upper: usize,
    /// How many subgroups of the upper class contain each lower subgroup.
    pub upper_per_lower: usize,
}

impl SubgroupLattice {
    pub fn build(group: &PermGroup) -> Result<Self> {
        Self::build_bounded(group, DEFAULT_MAX_GROUP_ORDER)
    }

    pub fn build_bounded(group: &PermGroup, bound: usize) -> Result<Self> {
        let nodes = all_subgroups_bounded(group, bound)?;
        let class_of = subgroup_class_ids(group, &nodes);
        let n = nodes.len();
        let leq: Vec<Vec<bool>> = (0..n)
            .map(|h| (0..n).map(|k| nodes[h].is_subgroup_of(&nodes[k])).collect())
            .collect();

        // Nodes are sorted by order, so every proper subgroup of k precedes k.
        let mut mobius = vec![vec![0i64; n]; n];
        for h in 0..n {
            mobius[h][h] = 1;
            for k in h + 1..n {
                if !leq[h][k] {
                    continue;
                }
                let below: i64 = (h..k)
                    .filter(|&m| leq[h][m] && leq[m][k])
                    .map(|m| mobius[h][m])
                    .sum();
                mobius[h][k] = -below;
            }
        }
        Ok(SubgroupLattice {
            group: group.clone(),
            nodes,
            class_of,
            leq,
            mobius,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn nodes(&self) -> &[PermGroup] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Node index of a subgroup.
    pub fn index_of(&self, h: &PermGroup) -> Option<usize> {
        self.nodes.iter().position(|n| n == h)
    }

    pub fn leq(&self, h: usize, k: usize) -> bool {
        self.leq[h][k]
    }

    pub fn mobius(&self, h: usize, k: usize) -> i64 {
        self.mobius[h][k]
    }

    /// Conjugacy class id of each node; ids follow first appearance.
    pub fn class_of(&self, h: usize) -> usize {
        self.class_of[h]
    }

    pub fn class_count(&self) -> usize {
        self.class_of.iter().max().map_or(0, |m| m + 1)
    }

    /// Representative (first member) of each class.
    pub fn class_representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.class_count()];
        for (i, &c) in self.class_of.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = i;
            }
        }
        reps
    }

    pub fn class_members(&self, class: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.class_of[i] == class)
            .collect()
    }

    /// Every node `k` with `h ≤ k`, including `h` and the top.
    pub fn interval_above(&self, h: usize) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.leq[h][k]).collect()
    }

    /// [`interval_above`](Self::interval_above) for a subgroup value.
    pub fn interval_above_group(&self, h: &PermGroup) -> Result<Vec<usize>> {
        let i = self.index_of(h).ok_or(Error::NotSubgroup)?;
        Ok(self.interval_above(i))
    }

    /// True iff `k` covers `h`: `h < k` with nothing strictly between.
    pub fn covers(&self, h: usize, k: usize) -> bool {
        h != k
            && self.leq[h][k]
            && !(0..self.len()).any(|m| m != h && m != k && self.leq[h][m] && self.leq[m][k])
    }

    /// Containment counts for every pair of classes related by a covering
    /// pair of subgroups, ordered by (lower class, upper class).
    pub fn hasse_edge_counts(&self) -> Vec<HasseEdge> {
        let classes = self.class_count();
        let reps = self.class_representatives();
        let mut edges = Vec::new();
        for lower in 0..classes {
            for upper in 0..classes {
                if lower == upper {
                    continue;
                }
                let lower_members = self.class_members(lower);
                let upper_members = self.class_members(upper);
                let covering = lower_members
                    .iter()
                    .any(|&h| upper_members.iter().any(|&k| self.covers(h, k)));
                if !covering {
                    continue;
                }
                let k = reps[upper];
                let h = reps[lower];
                edges.push(HasseEdge {
                    lower_class: lower,
                    upper_class: upper,
                    lower_order: self.nodes[h].order(),
                    upper_order: self.nodes[k].order(),
                    lower_per_upper: lower_members.iter().filter(|&&m| self.leq[m][k]).count(),
                    upper_per_lower: upper_members.iter().filter(|&&m| self.leq[h][m]).count(),
                });
            }
        }
        edges
    }

    /// `μ` as CSV: a header row of `index:order` labels, then one row per
    /// node. Cells where `h ≰ k` are left blank.
    pub fn mobius_csv(&self) -> String {
        let label = |i: usize| format!("{}:{}", i, self.nodes[i].order());
        let mut out = String::from("H\\K");
        for k in 0..self.len() {
            out.push(',');
            out.push_str(&label(k));
        }
        out.push('\n');
        for h in 0..self.len() {
            out.push_str(&label(h));
            for k in 0..self.len() {
                out.push(',');
                if self.leq[h][k] {
                    write!(out, "{}", self.mobius[h][k]).unwrap();
                }
            }
            out.push('\n');
        }
        out
    }
}
