use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// A bijection of the points `1..=degree`.
///
/// Composition reads right to left everywhere in this crate:
/// `(p * q)(x) == p(q(x))`, so `q` is applied first.
///
/// The derived ordering is lexicographic on the image sequence. Element
/// lists, coset representatives and enumeration orders all rely on it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (1..=degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image sequence, `images[i]` being the
    /// image of point `i + 1`.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &p in &images {
            if p == 0 || p as usize > degree {
                return Err(Error::PointOutOfRange {
                    point: p as u64,
                    degree,
                });
            }
            if std::mem::replace(&mut seen[p as usize - 1], true) {
                return Err(Error::RepeatedPoint(p));
            }
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation from disjoint cycles over `1..=degree`.
    pub fn from_cycles(cycles: &[Vec<u32>], degree: usize) -> Result<Self> {
        let mut images: Vec<u32> = (1..=degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &p in cycle {
                if p == 0 || p as usize > degree {
                    return Err(Error::PointOutOfRange {
                        point: p as u64,
                        degree,
                    });
                }
                if std::mem::replace(&mut used[p as usize - 1], true) {
                    return Err(Error::RepeatedPoint(p));
                }
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p as usize - 1] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `(1 2)(3 4)` or `(1,2)(3,4)`.
    ///
    /// Whitespace is ignored between tokens, points inside a cycle may be
    /// separated by spaces or commas, and fixed points may be omitted or
    /// written as 1-cycles. The empty string and `()` denote the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let malformed = |reason: &str| Error::MalformedPermutation {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let mut cycles = Vec::new();
        let mut chars = text.chars().peekable();
        loop {
            while chars.peek().is_some_and(|c| c.is_whitespace()) {
                chars.next();
            }
            match chars.next() {
                None => break,
                Some('(') => {}
                Some(c) => return Err(malformed(&format!("unexpected `{c}` outside a cycle"))),
            }
            let mut cycle = Vec::new();
            let mut number = String::new();
            let mut closed = false;
            for c in chars.by_ref() {
                match c {
                    '0'..='9' => number.push(c),
                    ',' | ')' => {}
                    c if c.is_whitespace() => {}
                    c => return Err(malformed(&format!("unexpected `{c}` inside a cycle"))),
                }
                if !c.is_ascii_digit() && !number.is_empty() {
                    let point: u64 = number
                        .parse()
                        .map_err(|_| malformed("point does not fit in 64 bits"))?;
                    if point == 0 || point > degree as u64 {
                        return Err(Error::PointOutOfRange { point, degree });
                    }
                    cycle.push(point as u32);
                    number.clear();
                }
                if c == ')' {
                    closed = true;
                    break;
                }
            }
            if !closed {
                return Err(malformed("unclosed cycle"));
            }
            cycles.push(cycle);
        }
        Permutation::from_cycles(&cycles, degree)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image sequence, 1-based.
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of the 1-based point `x`.
    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize - 1]
    }

    /// `self ∘ q`: applies `q` first, then `self`.
    pub fn compose(&self, q: &Permutation) -> Result<Permutation> {
        if self.degree() != q.degree() {
            return Err(Error::DegreeMismatch(self.degree(), q.degree()));
        }
        Ok(self.compose_unchecked(q))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, q: &Permutation) -> Permutation {
        Permutation {
            images: q.images.iter().map(|&x| self.apply(x)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &p) in self.images.iter().enumerate() {
            images[p as usize - 1] = i as u32 + 1;
        }
        Permutation { images }
    }

    /// `self ∘ h ∘ self⁻¹`.
    pub fn conjugate(&self, h: &Permutation) -> Permutation {
        self.compose_unchecked(&h.compose_unchecked(&self.inverse()))
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &p)| p as usize == i + 1)
    }

    /// Number of points moved.
    pub fn support_size(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &p)| p as usize != i + 1)
            .count()
    }

    /// Order of the permutation as a group element.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    /// Non-trivial cycles, each starting at its least point, ordered by
    /// that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 1..=self.degree() as u32 {
            if seen[start as usize - 1] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start as usize - 1] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x as usize - 1] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Image of a point set, sorted.
    pub fn apply_set(&self, points: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = points.iter().map(|&x| self.apply(x)).collect();
        out.sort_unstable();
        out
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Same as [`Permutation::compose`], panicking on a degree mismatch.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch in product");
        self.compose_unchecked(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
