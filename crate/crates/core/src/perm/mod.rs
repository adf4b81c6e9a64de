//! Permutations and finite permutation groups.

pub mod builtin;
mod group;
mod permutation;

pub(crate) use group::subgroup_class_ids;
pub use group::{
    all_subgroups, all_subgroups_bounded, are_isomorphic, conjugacy_classes_of_subgroups,
    fingerprint, normalizer, Coset, GroupFingerprint, PermGroup, SubgroupClass,
    DEFAULT_MAX_GROUP_ORDER,
};
pub use permutation::Permutation;

use crate::error::{Error, Result};

/// Parses the group text format: a `degree N` line followed by one
/// generator per line in cycle notation. Blank lines and lines starting
/// with `#` are ignored.
pub fn parse_group(text: &str) -> Result<PermGroup> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::MalformedGroup("missing `degree N` line".into()))?;
    let degree: usize = header
        .strip_prefix("degree")
        .map(str::trim)
        .and_then(|n| n.parse().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::MalformedGroup(format!("expected `degree N`, found `{header}`")))?;
    let gens = lines
        .map(|l| Permutation::parse(l, degree))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::close(gens, degree)
}
