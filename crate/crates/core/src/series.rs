//! Truncated exponential generating functions over exact rationals, and
//! the functional equations whose solutions count fixed assembly trees.
//!
//! For a group `G` acting simply on `n` orbits, `t_n(G)` is the number of
//! assembly trees on the `n·|G|` points fixed by every element of `G`, and
//! `f_G(x) = Σ t_n(G) xⁿ/n!`. The trivial group satisfies
//! `1 - x + 2f = exp(f)`; any other group satisfies
//! `1 + 2f_G = exp(Σ_{H≤G} f_H((G:H)x) / (G:H))`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::perm::{
    all_subgroups_bounded, are_isomorphic, subgroup_class_ids, GroupFingerprint, PermGroup,
    DEFAULT_MAX_GROUP_ORDER,
};

/// Power series truncated after `x^order`, with exact rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    /// Coefficients `c_0..=c_order`.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series has at least a constant term");
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// The series `x`, truncated at `order`.
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = BigRational::one();
        }
        s
    }

    /// EGF of a count sequence: `Σ counts[n] xⁿ/n!`, `counts[0]` first.
    pub fn from_counts(counts: &[BigInt]) -> Self {
        let mut fact = BigInt::one();
        let coeffs = counts
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n > 0 {
                    fact *= n;
                }
                BigRational::new(c.clone(), fact.clone())
            })
            .collect();
        PowerSeries::new(coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Truncates to a lower order.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        PowerSeries::new(self.coeffs[..=order].to_vec())
    }

    fn check_orders(&self, other: &PowerSeries) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &PowerSeries) -> Result<PowerSeries> {
        self.check_orders(other)?;
        Ok(PowerSeries::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &PowerSeries) -> Result<PowerSeries> {
        self.check_orders(other)?;
        Ok(PowerSeries::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    pub fn mul(&self, other: &PowerSeries) -> Result<PowerSeries> {
        self.check_orders(other)?;
        let n = self.order();
        let coeffs = (0..=n)
            .map(|k| {
                (0..=k).fold(BigRational::zero(), |acc, i| {
                    acc + &self.coeffs[i] * &other.coeffs[k - i]
                })
            })
            .collect();
        Ok(PowerSeries::new(coeffs))
    }

    pub fn scalar_mul(&self, q: &BigRational) -> PowerSeries {
        PowerSeries::new(self.coeffs.iter().map(|c| c * q).collect())
    }

    /// `a(kx)`: the n-th coefficient is multiplied by `kⁿ`.
    pub fn scale_argument(&self, k: u64) -> PowerSeries {
        let k = BigInt::from(k);
        let mut power = BigInt::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let out = c * BigRational::from_integer(power.clone());
                power *= &k;
                out
            })
            .collect();
        PowerSeries::new(coeffs)
    }

    /// `exp(a)` for `a` with zero constant term, via
    /// `n·e_n = Σ_{k=1..n} k·a_k·e_{n-k}`.
    pub fn exp(&self) -> Result<PowerSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order();
        let mut e = vec![BigRational::one()];
        for m in 1..=n {
            let sum = (1..=m).fold(BigRational::zero(), |acc, k| {
                acc + &self.coeffs[k] * &e[m - k] * BigInt::from(k)
            });
            e.push(sum / BigInt::from(m));
        }
        Ok(PowerSeries::new(e))
    }

    /// `n!·c_n` for every n, checked to be a non-negative integer.
    pub fn counts(&self) -> Result<Vec<BigUint>> {
        let mut fact = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (n, c) in self.coeffs.iter().enumerate() {
            if n > 0 {
                fact *= n;
            }
            let scaled = c * BigRational::from_integer(fact.clone());
            if !scaled.is_integer() {
                return Err(Error::NonIntegral(format!("n = {n}: {scaled}")));
            }
            let value = scaled.to_integer();
            if value.is_negative() {
                return Err(Error::NegativeCount(format!("n = {n}: {value}")));
            }
            out.push(value.to_biguint().expect("checked sign"));
        }
        Ok(out)
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.coeffs.iter().map(|c| c.to_string()))
            .finish()
    }
}

/// Solves for the coefficients of `f_H`, given the part `s` of the
/// exponent that does not involve `f_H`, and the constant `[n = 1]`
/// offset of the base equation.
///
/// At order n the exponent is `s_n + c_n` and both sides carry `c_n`
/// linearly: `2c_n = s_n + c_n + R_n + [base and n = 1]`, where
/// `R_n = (1/n) Σ_{k=1}^{n-1} k·a_k·e_{n-k}` only involves known terms.
fn solve(s: &PowerSeries, base: bool) -> PowerSeries {
    let order = s.order();
    let mut c = vec![BigRational::zero()];
    let mut a = vec![BigRational::zero()];
    let mut e = vec![BigRational::one()];
    for n in 1..=order {
        let r = (1..n).fold(BigRational::zero(), |acc, k| {
            acc + &a[k] * &e[n - k] * BigInt::from(k)
        }) / BigInt::from(n);
        let mut cn = s.coeff(n) + &r;
        if base && n == 1 {
            cn += BigRational::one();
        }
        let an = s.coeff(n) + &cn;
        e.push(&an + &r);
        a.push(an);
        c.push(cn);
    }
    PowerSeries::new(c)
}

/// `f` for the trivial group: the EGF of all assembly trees.
pub fn base_tree_series(order: usize) -> PowerSeries {
    solve(&PowerSeries::zero(order), true)
}

/// Number of assembly trees on `n` labelled leaves.
pub fn tree_count(n: usize) -> BigUint {
    base_tree_series(n)
        .counts()
        .expect("base series is integral")
        .pop()
        .expect("non-empty")
}

/// One term of the exponent: `multiplicity` subgroups of index `index`
/// isomorphic to `subgroup`.
#[derive(Clone, Debug)]
pub struct Summand {
    pub subgroup: PermGroup,
    pub index: usize,
    pub multiplicity: usize,
}

/// Memoizing solver for `f_H`, keyed by isomorphism type.
pub struct SeriesSolver {
    bound: usize,
    memo: Vec<(GroupFingerprint, PermGroup, PowerSeries)>,
    summands: Vec<(PermGroup, Vec<Summand>)>,
    solves: usize,
}

impl Default for SeriesSolver {
    fn default() -> Self {
        Self::new(DEFAULT_MAX_GROUP_ORDER)
    }
}

impl SeriesSolver {
    /// `bound` caps the group orders for which subgroups are enumerated.
    pub fn new(bound: usize) -> Self {
        SeriesSolver {
            bound,
            memo: Vec::new(),
            summands: Vec::new(),
            solves: 0,
        }
    }

    /// How many equations have actually been solved (memo misses).
    pub fn solves(&self) -> usize {
        self.solves
    }

    fn fingerprint(&self, g: &PermGroup) -> Result<GroupFingerprint> {
        let subs = all_subgroups_bounded(g, self.bound)?;
        let mut hist = std::collections::BTreeMap::new();
        for s in &subs {
            *hist.entry(s.order()).or_insert(0usize) += 1;
        }
        Ok(GroupFingerprint {
            order: g.order(),
            element_orders: g.element_order_histogram(),
            subgroup_orders: hist.into_iter().collect(),
        })
    }

    /// Proper subgroups of `g` grouped by conjugacy class.
    pub fn summands(&mut self, g: &PermGroup) -> Result<Vec<Summand>> {
        if let Some((_, s)) = self.summands.iter().find(|(h, _)| h == g) {
            return Ok(s.clone());
        }
        let subs = all_subgroups_bounded(g, self.bound)?;
        let class_of = subgroup_class_ids(g, &subs);
        let mut out: Vec<Summand> = Vec::new();
        let mut seen = vec![usize::MAX; subs.len()];
        for (i, s) in subs.iter().enumerate() {
            if s.order() == g.order() {
                continue;
            }
            let c = class_of[i];
            if seen[c] == usize::MAX {
                seen[c] = out.len();
                out.push(Summand {
                    subgroup: s.clone(),
                    index: g.order() / s.order(),
                    multiplicity: 0,
                });
            }
            out[seen[c]].multiplicity += 1;
        }
        self.summands.push((g.clone(), out.clone()));
        Ok(out)
    }

    /// The exponent terms contributed by proper subgroups, to `order`.
    fn proper_part(&mut self, g: &PermGroup, order: usize) -> Result<PowerSeries> {
        let mut s = PowerSeries::zero(order);
        for term in self.summands(g)? {
            let f = self.series(&term.subgroup, order)?;
            let weight =
                BigRational::new(BigInt::from(term.multiplicity), BigInt::from(term.index));
            s = s.add(&f.scale_argument(term.index as u64).scalar_mul(&weight))?;
        }
        Ok(s)
    }

    /// `f_H` to `order`; the trivial group gives the base series.
    pub fn series(&mut self, h: &PermGroup, order: usize) -> Result<PowerSeries> {
        let fp = self.fingerprint(h)?;
        for (key, group, series) in &self.memo {
            if *key == fp && series.order() >= order && are_isomorphic(group, h) {
                return Ok(series.truncate(order));
            }
        }
        let result = if h.is_trivial() {
            base_tree_series(order)
        } else {
            let s = self.proper_part(h, order)?;
            solve(&s, false)
        };
        self.solves += 1;
        self.memo
            .retain(|(key, group, _)| !(*key == fp && are_isomorphic(group, h)));
        self.memo.push((fp, h.clone(), result.clone()));
        Ok(result)
    }

    /// `exp(Σ_{H≤G} f_H((G:H)x)/(G:H)) - 1 - 2f_G`, computed with the
    /// generic series operations; zero when `f_G` is correct.
    pub fn residual(&mut self, g: &PermGroup, order: usize) -> Result<PowerSeries> {
        let f = self.series(g, order)?;
        if g.is_trivial() {
            let lhs = PowerSeries::one(order)
                .sub(&PowerSeries::x(order))?
                .add(&f.scalar_mul(&BigRational::from_integer(2.into())))?;
            return f.exp()?.sub(&lhs);
        }
        let exponent = self.proper_part(g, order)?.add(&f)?;
        let lhs =
            PowerSeries::one(order).add(&f.scalar_mul(&BigRational::from_integer(2.into())))?;
        exponent.exp()?.sub(&lhs)
    }

    /// `t_1(G), ..., t_order(G)`.
    pub fn counts(&mut self, g: &PermGroup, order: usize) -> Result<Vec<BigUint>> {
        let mut counts = self.series(g, order)?.counts()?;
        counts.remove(0);
        Ok(counts)
    }

    /// `t_n(G)`.
    pub fn t_n(&mut self, g: &PermGroup, n: usize) -> Result<BigUint> {
        Ok(self.counts(g, n)?.pop().unwrap_or_default())
    }
}

/// The EGF of trees fixed by a non-trivial group `g`.
pub fn fixed_tree_series(g: &PermGroup, order: usize) -> Result<PowerSeries> {
    if g.is_trivial() {
        return Err(Error::TrivialGroup);
    }
    SeriesSolver::default().series(g, order)
}

/// `t_n(G)`; for the trivial group this is the number of all trees.
pub fn t_n(g: &PermGroup, n: usize) -> Result<BigUint> {
    SeriesSolver::default().t_n(g, n)
}

/// Decimal digit count of a big unsigned integer.
pub fn digits(n: &BigUint) -> usize {
    n.to_str_radix(10).len()
}

/// Approximate base-10 logarithm of `a / b`.
pub fn log10_ratio(a: &BigUint, b: &BigUint) -> f64 {
    let log = |n: &BigUint| {
        let s = n.to_str_radix(10);
        let head: f64 = s[..s.len().min(15)].parse().unwrap_or(0.0);
        head.log10() + (s.len() - s.len().min(15)) as f64
    };
    log(a) - log(b)
}
