//! Named groups used throughout the tests and the command line.

use super::{PermGroup, Permutation};
use crate::error::{Error, Result};

/// The Klein four-group `{(), (1 2)(3 4), (1 3)(2 4), (1 4)(2 3)}`.
pub fn klein4() -> PermGroup {
    let gens = ["(1 2)(3 4)", "(1 3)(2 4)"]
        .iter()
        .map(|t| Permutation::parse(t, 4).unwrap())
        .collect();
    PermGroup::close(gens, 4).unwrap()
}

/// `⟨(1 2 … k)⟩`, the regular action of the cyclic group of order `k`.
pub fn cyclic(k: usize) -> PermGroup {
    assert!(k >= 1, "cyclic group needs k >= 1");
    let images = (2..=k as u32).chain(std::iter::once(1)).collect();
    PermGroup::close(vec![Permutation::from_images_unchecked(images)], k).unwrap()
}

/// The alternating group on five points, generated by `(1 2)(3 4)` and
/// `(1 3 5)`.
pub fn alternating5() -> PermGroup {
    let gens = ["(1 2)(3 4)", "(1 3 5)"]
        .iter()
        .map(|t| Permutation::parse(t, 5).unwrap())
        .collect();
    PermGroup::close(gens, 5).unwrap()
}

/// The rotation group of the icosahedron (isomorphic to A5) in its regular
/// action on 60 points. The action is simple with a single orbit.
pub fn icosahedral_group() -> PermGroup {
    alternating5().regular_action()
}

/// Resolves `klein4`, `icosahedral`, `cyclic:k` or `trivial:n`.
pub fn by_name(name: &str) -> Result<PermGroup> {
    let unknown = || Error::UnknownGroup(name.to_string());
    match name.trim() {
        "klein4" => Ok(klein4()),
        "icosahedral" => Ok(icosahedral_group()),
        other => {
            let (kind, arg) = other.split_once(':').ok_or_else(unknown)?;
            let n: usize = arg.trim().parse().map_err(|_| unknown())?;
            if n == 0 {
                return Err(unknown());
            }
            match kind.trim() {
                "cyclic" => Ok(cyclic(n)),
                "trivial" => Ok(PermGroup::trivial(n)),
                _ => Err(unknown()),
            }
        }
    }
}
