//! Assembly trees under finite permutation group actions.
//!
//! A permutation group acting on a finite point set `X` acts on the rooted
//! trees whose leaves are labelled by `X` (and whose internal vertices have
//! at least two children). This crate decides whether a group element fixes
//! such a tree, computes stabilizers, generates every tree fixed by a group,
//! counts fixed trees with exponential generating functions and turns those
//! counts into the distribution of orbit sizes over the subgroup lattice.
//!
//! Permutations compose right to left: `(p * q)(x) = p(q(x))`.

pub mod error;
pub mod fixed;
pub mod lattice;
pub mod pathways;
pub mod perm;
pub mod series;
pub mod stabilizer;
pub mod trees;

pub use error::{Error, Result};
