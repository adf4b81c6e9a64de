//! From fixed-tree counts to pathway statistics.
//!
//! `t(K)` counts trees fixed by every element of `K`; Möbius inversion over
//! the subgroup lattice gives `t̄(H)`, the number of trees whose stabilizer
//! is exactly `H`. A tree with stabilizer `H` lies in a pathway (orbit) of
//! size `(G:H)`, so `N(m) = (1/m) Σ_{(G:H)=m} t̄(H)`.

use std::collections::BTreeMap;
use std::fmt::Write;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::SubgroupLattice;
use crate::perm::{builtin, PermGroup, DEFAULT_MAX_GROUP_ORDER};
use crate::series::{log10_ratio, SeriesSolver};

/// Fixed-tree counts of one conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct ClassCounts {
    pub class: usize,
    pub representative: PermGroup,
    /// Number of subgroups in the class.
    pub size: usize,
    pub order: usize,
    /// Orbits of the subgroup on the point set.
    pub orbits: usize,
    pub t: BigUint,
    pub tbar: BigUint,
}

impl ClassCounts {
    /// `(G:H)`, the size of a pathway through a tree with this stabilizer.
    pub fn pathway_size(&self, group_order: usize) -> usize {
        group_order / self.order
    }
}

/// Pathway counts of a group acting simply on `1..=degree`.
#[derive(Clone, Debug)]
pub struct PathwayDistribution {
    pub group: PermGroup,
    pub leaf_count: usize,
    /// `|T_X|`.
    pub total_trees: BigUint,
    /// `m → N(m)` for every divisor `m` of `|G|`, zeros included.
    pub per_divisor: BTreeMap<usize, BigUint>,
    /// Ordered like the lattice classes: by subgroup order.
    pub per_class: Vec<ClassCounts>,
}

impl PathwayDistribution {
    pub fn pathway_count(&self) -> BigUint {
        self.per_divisor.values().sum()
    }

    /// `Σ m·N(m)`; equals `|T_X|`.
    pub fn tree_total(&self) -> BigUint {
        self.per_divisor
            .iter()
            .map(|(&m, n)| n * BigUint::from(m))
            .sum()
    }

    pub fn class_by_order(&self, order: usize) -> Vec<&ClassCounts> {
        self.per_class.iter().filter(|c| c.order == order).collect()
    }
}

/// One row of [`pathway_probabilities`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathwayProbability {
    pub size: usize,
    pub multiplicity: BigUint,
    pub probability: BigRational,
}

/// `t̄(H) = Σ_{H≤K} μ(H,K)·t(K)`, with `t` given per lattice node.
pub fn tbar(lattice: &SubgroupLattice, h: usize, t: &[BigUint]) -> Result<BigUint> {
    let mut sum = BigInt::zero();
    for k in lattice.interval_above(h) {
        let mu = lattice.mobius(h, k);
        if mu != 0 {
            sum += BigInt::from(mu) * BigInt::from(t[k].clone());
        }
    }
    sum.to_biguint()
        .ok_or_else(|| Error::NegativeCount(format!("t̄ = {sum}")))
}

/// `t` for every lattice node, computed once per conjugacy class.
pub fn fixed_counts(
    lattice: &SubgroupLattice,
    points: usize,
    solver: &mut SeriesSolver,
) -> Result<Vec<BigUint>> {
    let reps = lattice.class_representatives();
    let mut per_class = Vec::with_capacity(reps.len());
    for &r in &reps {
        let k = &lattice.nodes()[r];
        per_class.push(solver.t_n(k, points / k.order())?);
    }
    Ok((0..lattice.len())
        .map(|i| per_class[lattice.class_of(i)].clone())
        .collect())
}

/// Full pathway-size distribution of a group acting simply on its points.
pub fn pathway_size_distribution(group: &PermGroup) -> Result<PathwayDistribution> {
    pathway_size_distribution_bounded(group, DEFAULT_MAX_GROUP_ORDER)
}

pub fn pathway_size_distribution_bounded(
    group: &PermGroup,
    bound: usize,
) -> Result<PathwayDistribution> {
    if !group.is_simple_action() {
        return Err(Error::NonSimpleAction);
    }
    let points = group.degree();
    let lattice = SubgroupLattice::build_bounded(group, bound)?;
    let mut solver = SeriesSolver::new(bound);
    let t = fixed_counts(&lattice, points, &mut solver)?;

    let mut per_class = Vec::new();
    for (class, &r) in lattice.class_representatives().iter().enumerate() {
        let rep = lattice.nodes()[r].clone();
        per_class.push(ClassCounts {
            class,
            size: lattice.class_members(class).len(),
            order: rep.order(),
            orbits: points / rep.order(),
            t: t[r].clone(),
            tbar: tbar(&lattice, r, &t)?,
            representative: rep,
        });
    }

    let g = group.order();
    let mut per_divisor: BTreeMap<usize, BigUint> = (1..=g)
        .filter(|m| g.is_multiple_of(*m))
        .map(|m| (m, BigUint::zero()))
        .collect();
    let mut sums: BTreeMap<usize, BigUint> = BTreeMap::new();
    for c in &per_class {
        *sums.entry(c.pathway_size(g)).or_default() += &c.tbar * BigUint::from(c.size);
    }
    for (m, s) in sums {
        let (q, r) = s.div_rem(&BigUint::from(m));
        if !r.is_zero() {
            return Err(Error::NonIntegral(format!("N({m}) = {s}/{m}")));
        }
        per_divisor.insert(m, q);
    }

    let total_trees = solver.t_n(&PermGroup::trivial(1), points)?;
    let dist = PathwayDistribution {
        group: group.clone(),
        leaf_count: points,
        total_trees,
        per_divisor,
        per_class,
    };
    if dist.tree_total() != dist.total_trees {
        return Err(Error::NonIntegral(format!(
            "pathway sizes sum to {} instead of {}",
            dist.tree_total(),
            dist.total_trees
        )));
    }
    Ok(dist)
}

/// Pathways of each size with their common probability `m/|T_X|`.
/// Sizes with no pathways are omitted.
pub fn pathway_probabilities(d: &PathwayDistribution) -> Vec<PathwayProbability> {
    d.per_divisor
        .iter()
        .filter(|(_, n)| !n.is_zero())
        .map(|(&m, n)| PathwayProbability {
            size: m,
            multiplicity: n.clone(),
            probability: BigRational::new(BigInt::from(m), BigInt::from(d.total_trees.clone())),
        })
        .collect()
}

/// Number of pathways by Burnside's lemma: the average over `g` of the
/// number of trees fixed by `⟨g⟩`.
pub fn burnside_pathway_count(group: &PermGroup) -> Result<BigUint> {
    let points = group.degree();
    let mut solver = SeriesSolver::default();
    let mut by_order: BTreeMap<u64, BigUint> = BTreeMap::new();
    let mut sum = BigUint::zero();
    for g in group.elements() {
        let order = g.order();
        if let std::collections::btree_map::Entry::Vacant(slot) = by_order.entry(order) {
            let cyclic = PermGroup::close(vec![g.clone()], points)?;
            slot.insert(solver.t_n(&cyclic, points / order as usize)?);
        }
        sum += &by_order[&order];
    }
    let (q, r) = sum.div_rem(&BigUint::from(group.order()));
    if !r.is_zero() {
        return Err(Error::NonIntegral(format!(
            "Burnside sum {sum} / {}",
            group.order()
        )));
    }
    Ok(q)
}

/// The icosahedral group acting simply on `60·T` points and its pathway
/// distribution.
#[derive(Clone, Debug)]
pub struct IcosahedralReport {
    pub t_number: usize,
    pub lattice: SubgroupLattice,
    pub distribution: PathwayDistribution,
}

pub fn icosahedral_report(t_number: usize) -> Result<IcosahedralReport> {
    if t_number == 0 {
        return Err(Error::MalformedGroup(
            "the T-number must be positive".into(),
        ));
    }
    let group = builtin::icosahedral_group().replicate(t_number);
    let lattice = SubgroupLattice::build(&group)?;
    let distribution = pathway_size_distribution(&group)?;
    Ok(IcosahedralReport {
        t_number,
        lattice,
        distribution,
    })
}

impl IcosahedralReport {
    /// Plain-text table: one `t̄` line per subgroup class, then `N(m)` and
    /// probabilities, then a comparison footer.
    pub fn render(&self) -> String {
        let d = &self.distribution;
        let mut out = String::new();
        if self.t_number != 1 {
            writeln!(
                out,
                "warning: T = {} has no reference values; only T = 1 is checked",
                self.t_number
            )
            .unwrap();
        }
        writeln!(
            out,
            "icosahedral group, T = {}, |X| = {}",
            self.t_number, d.leaf_count
        )
        .unwrap();
        writeln!(out, "|T_X| = {}", d.total_trees).unwrap();
        writeln!(out).unwrap();
        writeln!(out, "stabilizer  subgroups  t_n(H)  tbar_n(H)").unwrap();
        for c in d.per_class.iter().rev() {
            writeln!(
                out,
                "G_{}  {}  t_{}(G_{}) = {}",
                c.order, c.size, c.orbits, c.order, c.t
            )
            .unwrap();
            writeln!(
                out,
                "G_{}  {}  tbar_{}(G_{}) = {}",
                c.order, c.size, c.orbits, c.order, c.tbar
            )
            .unwrap();
        }
        writeln!(out).unwrap();
        writeln!(out, "m  N(m)  probability").unwrap();
        for (m, n) in &d.per_divisor {
            let p = BigRational::new(BigInt::from(*m), BigInt::from(d.total_trees.clone()));
            writeln!(out, "{m}  {n}  {p}").unwrap();
        }
        writeln!(out, "total pathways = {}", d.pathway_count()).unwrap();
        writeln!(out).unwrap();
        if let Some(line) = self.footer() {
            writeln!(out, "{line}").unwrap();
        }
        out
    }

    /// Compares pathways with trivial stabilizer against those fixed by
    /// the whole group.
    pub fn footer(&self) -> Option<String> {
        let d = &self.distribution;
        let g = d.group.order();
        let small = d.per_divisor.get(&1)?;
        let large = d.per_divisor.get(&g)?;
        if small.is_zero() || large.is_zero() {
            return None;
        }
        let exponent = log10_ratio(large, small).floor() as i64;
        Some(format!(
            "pathways with trivial stabilizer are each exactly {g} times more probable than \
             pathways fixed by the whole group, and there are about 10^{exponent} times more of them"
        ))
    }

    pub fn mobius_csv(&self) -> String {
        self.lattice.mobius_csv()
    }
}
