//! Compatible block systems and the recursive generation of every
//! assembly tree fixed by a group acting simply.
//!
//! A compatible block system is assembled from a partition `Π` of the
//! `G`-orbits, a subgroup `H_i` per part and a seed `Q_i` made of one
//! `H_i`-orbit inside each `G`-orbit of the part; its blocks are the
//! translates `r(Q_i)` over left coset representatives `r` of `H_i`. A tree
//! is fixed by `G` exactly when its root children form such a system and
//! the subtree on `Q_i` is fixed by `H_i`, the other children being its
//! translates.

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::perm::{
    all_subgroups, conjugacy_classes_of_subgroups, normalizer, PermGroup, Permutation,
};
use crate::trees::{AssemblyTree, Node};

/// One part of a block-system construction.
#[derive(Clone, Debug)]
pub struct RecipePart {
    /// The `G`-orbits in this part.
    pub orbits: Vec<Vec<u32>>,
    pub subgroup: PermGroup,
    /// Union of one subgroup orbit per `G`-orbit, sorted.
    pub seed: Vec<u32>,
    /// Left coset representatives of `subgroup`; the blocks are `r(seed)`.
    pub coset_reps: Vec<Permutation>,
}

impl RecipePart {
    pub fn blocks(&self) -> Vec<Vec<u32>> {
        self.coset_reps
            .iter()
            .map(|r| r.apply_set(&self.seed))
            .collect()
    }
}

/// Root-level recipe for fixed trees: one [`RecipePart`] per part of the
/// orbit partition. The subtree on each seed is itself built from a recipe
/// for the part's subgroup acting on the seed.
#[derive(Clone, Debug)]
pub struct FixedTreeRecipe {
    pub parts: Vec<RecipePart>,
}

impl FixedTreeRecipe {
    pub fn block_system(&self) -> BlockSystem {
        BlockSystem::new(self.parts.iter().flat_map(RecipePart::blocks).collect())
            .with_origin(self.parts.clone())
    }
}

/// A partition of the point set into blocks, kept sorted. Equality only
/// looks at the blocks.
#[derive(Clone, Debug)]
pub struct BlockSystem {
    blocks: Vec<Vec<u32>>,
    origin: Option<Vec<RecipePart>>,
}

impl PartialEq for BlockSystem {
    fn eq(&self, other: &Self) -> bool {
        self.blocks == other.blocks
    }
}

impl Eq for BlockSystem {}

impl BlockSystem {
    pub fn new(mut blocks: Vec<Vec<u32>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        BlockSystem {
            blocks,
            origin: None,
        }
    }

    fn with_origin(mut self, parts: Vec<RecipePart>) -> Self {
        self.origin = Some(parts);
        self
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    /// The construction data, when the system was built from one.
    pub fn origin(&self) -> Option<&[RecipePart]> {
        self.origin.as_deref()
    }

    /// Every `g(B)` is again a block of the system.
    pub fn is_compatible(&self, group: &PermGroup) -> bool {
        let set: BTreeSet<&Vec<u32>> = self.blocks.iter().collect();
        group
            .generators()
            .iter()
            .all(|g| self.blocks.iter().all(|b| set.contains(&g.apply_set(b))))
    }

    /// Whether the blocks partition `points` exactly.
    pub fn partitions(&self, points: &[u32]) -> bool {
        let mut all: Vec<u32> = self.blocks.concat();
        all.sort_unstable();
        let mut p = points.to_vec();
        p.sort_unstable();
        all == p
    }
}

impl std::fmt::Display for BlockSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in &self.blocks {
            f.write_str("{")?;
            for (i, x) in b.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

fn all_points(group: &PermGroup) -> Vec<u32> {
    (1..=group.degree() as u32).collect()
}

fn require_simple(group: &PermGroup, points: &[u32]) -> Result<()> {
    if group.acts_simply_on(points) {
        Ok(())
    } else {
        Err(Error::NonSimpleAction)
    }
}

/// Set partitions of `0..n` as restricted growth strings.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur[i] = b;
            go(i + 1, max.max(b), cur, out);
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    go(1, 0, &mut cur, &mut out);
    out
}

fn parts_of(rgs: &[usize]) -> Vec<Vec<usize>> {
    let k = rgs.iter().max().map_or(0, |m| m + 1);
    let mut parts = vec![Vec::new(); k];
    for (i, &b) in rgs.iter().enumerate() {
        parts[b].push(i);
    }
    parts
}

/// Every way to pick one list element per slot.
fn cartesian<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for list in lists {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect();
    }
    out
}

/// All seeds for `h` on the given `G`-orbits: one `h`-orbit from each.
fn seeds(h: &PermGroup, orbits: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let choices: Vec<Vec<Vec<u32>>> = orbits.iter().map(|o| h.orbits_on(o)).collect();
    cartesian(&choices)
        .into_iter()
        .map(|pick| {
            let mut q = pick.concat();
            q.sort_unstable();
            q
        })
        .collect()
}

/// Every compatible block system of a group acting simply on
/// `1..=degree`, sorted by blocks.
pub fn enumerate_block_systems(group: &PermGroup) -> Result<Vec<BlockSystem>> {
    enumerate_block_systems_on(group, &all_points(group))
}

/// [`enumerate_block_systems`] for an invariant point set.
pub fn enumerate_block_systems_on(group: &PermGroup, points: &[u32]) -> Result<Vec<BlockSystem>> {
    require_simple(group, points)?;
    let orbits = group.orbits_on(points);
    let subgroups = all_subgroups(group)?;
    let mut found: Vec<BlockSystem> = Vec::new();
    let mut seen: BTreeSet<Vec<Vec<u32>>> = BTreeSet::new();
    for rgs in set_partitions(orbits.len()) {
        let options: Vec<Vec<RecipePart>> = parts_of(&rgs)
            .iter()
            .map(|part| {
                let part_orbits: Vec<Vec<u32>> = part.iter().map(|&i| orbits[i].clone()).collect();
                let mut opts = Vec::new();
                for h in &subgroups {
                    let reps = group.left_coset_representatives(h)?;
                    for seed in seeds(h, &part_orbits) {
                        opts.push(RecipePart {
                            orbits: part_orbits.clone(),
                            subgroup: h.clone(),
                            seed,
                            coset_reps: reps.clone(),
                        });
                    }
                }
                Ok(opts)
            })
            .collect::<Result<_>>()?;
        for parts in cartesian(&options) {
            let system = FixedTreeRecipe { parts }.block_system();
            if seen.insert(system.blocks.clone()) {
                found.push(system);
            }
        }
    }
    found.sort_by(|a, b| a.blocks.cmp(&b.blocks));
    Ok(found)
}

/// The root-children partition of a tree fixed by `group`.
pub fn children_block_system(group: &PermGroup, tau: &AssemblyTree) -> Result<BlockSystem> {
    crate::stabilizer::check_acts_on_leaves(group, tau)?;
    for g in group.generators() {
        if !tau.is_fixed_by(g)? {
            return Err(Error::NotFixed);
        }
    }
    let system = BlockSystem::new(tau.root_partition());
    debug_assert!(system.is_compatible(group));
    Ok(system)
}

/// Root recipes, one per block system up to the uniqueness rules: subgroups
/// are conjugacy-class representatives, and a seed is kept only if no
/// element of the subgroup's normalizer maps it to a smaller seed.
pub fn fixed_tree_recipes(group: &PermGroup, points: &[u32]) -> Result<Vec<FixedTreeRecipe>> {
    require_simple(group, points)?;
    let orbits = group.orbits_on(points);
    let classes = conjugacy_classes_of_subgroups(group)?;
    let mut per_class = Vec::new();
    for class in &classes {
        let h = class.representative().clone();
        let reps = group.left_coset_representatives(&h)?;
        let norm = normalizer(group, &h)?;
        per_class.push((h, reps, norm));
    }
    let mut recipes = Vec::new();
    for rgs in set_partitions(orbits.len()) {
        let parts = parts_of(&rgs);
        let single = parts.len() == 1;
        let options: Vec<Vec<RecipePart>> = parts
            .iter()
            .map(|part| {
                let part_orbits: Vec<Vec<u32>> = part.iter().map(|&i| orbits[i].clone()).collect();
                let mut opts = Vec::new();
                for (h, reps, norm) in &per_class {
                    if single && h.order() == group.order() {
                        continue;
                    }
                    for seed in seeds(h, &part_orbits) {
                        let minimal = norm.elements().iter().all(|n| n.apply_set(&seed) >= seed);
                        if minimal {
                            opts.push(RecipePart {
                                orbits: part_orbits.clone(),
                                subgroup: h.clone(),
                                seed,
                                coset_reps: reps.clone(),
                            });
                        }
                    }
                }
                opts
            })
            .collect();
        recipes.extend(
            cartesian(&options)
                .into_iter()
                .map(|parts| FixedTreeRecipe { parts }),
        );
    }
    Ok(recipes)
}

/// Result of [`generate_fixed_trees`].
#[derive(Clone, Debug)]
pub struct FixedTrees {
    /// Every fixed tree once, sorted.
    pub trees: Vec<AssemblyTree>,
    /// False if the uniqueness rules let a duplicate through anywhere in
    /// the recursion; such duplicates are removed before returning.
    pub filters_sufficient: bool,
}

/// Subgroup elements and point set.
type MemoKey = (Vec<Permutation>, Vec<u32>);

struct Generator {
    limit: usize,
    memo: HashMap<MemoKey, Rc<Vec<Node>>>,
    filters_sufficient: bool,
}

impl Generator {
    fn trees(&mut self, group: &PermGroup, points: &[u32]) -> Result<Rc<Vec<Node>>> {
        let key = (group.elements().to_vec(), points.to_vec());
        if let Some(found) = self.memo.get(&key) {
            return Ok(found.clone());
        }
        let out = if points.len() == 1 {
            vec![Node::Leaf(points[0])]
        } else {
            let mut out = Vec::new();
            for recipe in fixed_tree_recipes(group, points)? {
                let subtrees: Vec<Rc<Vec<Node>>> = recipe
                    .parts
                    .iter()
                    .map(|p| self.trees(&p.subgroup, &p.seed))
                    .collect::<Result<_>>()?;
                let mut idx = vec![0usize; subtrees.len()];
                'odometer: loop {
                    let children: Vec<Node> = recipe
                        .parts
                        .iter()
                        .zip(&idx)
                        .zip(&subtrees)
                        .flat_map(|((part, &i), subs)| {
                            let base = &subs[i];
                            part.coset_reps
                                .iter()
                                .map(move |r| base.map_leaves(&|x| r.apply(x)))
                        })
                        .collect();
                    out.push(Node::internal(children));
                    if out.len() > self.limit {
                        return Err(Error::BudgetExceeded { limit: self.limit });
                    }
                    let mut k = idx.len();
                    loop {
                        if k == 0 {
                            break 'odometer;
                        }
                        k -= 1;
                        idx[k] += 1;
                        if idx[k] < subtrees[k].len() {
                            break;
                        }
                        idx[k] = 0;
                    }
                }
            }
            let before = out.len();
            out.sort();
            out.dedup();
            if out.len() != before {
                self.filters_sufficient = false;
            }
            out
        };
        let out = Rc::new(out);
        self.memo.insert(key, out.clone());
        Ok(out)
    }
}

/// Every assembly tree on `1..=degree` fixed by `group`.
pub fn generate_fixed_trees(group: &PermGroup) -> Result<FixedTrees> {
    generate_fixed_trees_on(group, &all_points(group), usize::MAX)
}

/// [`generate_fixed_trees`] on an invariant point set, failing once more
/// than `limit` trees are produced at any level of the recursion.
pub fn generate_fixed_trees_on(
    group: &PermGroup,
    points: &[u32],
    limit: usize,
) -> Result<FixedTrees> {
    require_simple(group, points)?;
    if points.is_empty() {
        return Ok(FixedTrees {
            trees: Vec::new(),
            filters_sufficient: true,
        });
    }
    let mut gen = Generator {
        limit,
        memo: HashMap::new(),
        filters_sufficient: true,
    };
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    let nodes = gen.trees(group, &sorted)?;
    let trees = nodes
        .iter()
        .cloned()
        .map(AssemblyTree::from_canonical)
        .collect();
    Ok(FixedTrees {
        trees,
        filters_sufficient: gen.filters_sufficient,
    })
}

/// Number of fixed trees on `1..=degree`, by generating them.
pub fn count_fixed_trees_direct(group: &PermGroup, limit: usize) -> Result<BigUint> {
    let points = all_points(group);
    Ok(BigUint::from(
        generate_fixed_trees_on(group, &points, limit)?.trees.len(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::builtin;

    fn p(text: &str, d: usize) -> Permutation {
        Permutation::parse(text, d).unwrap()
    }

    fn cyclic_of(text: &str, d: usize) -> PermGroup {
        PermGroup::close(vec![p(text, d)], d).unwrap()
    }

    #[test]
    fn order_two_block_systems() {
        let k1 = cyclic_of("(1 2)(3 4)", 4);
        let systems = enumerate_block_systems(&k1).unwrap();
        assert_eq!(systems.len(), 7);
        let blocks: BTreeSet<Vec<u32>> = systems.iter().flat_map(|s| s.blocks().to_vec()).collect();
        assert_eq!(blocks.len(), 11);
        for s in &systems {
            assert!(s.is_compatible(&k1));
            assert!(s.partitions(&[1, 2, 3, 4]));
            assert!(s.origin().is_some());
        }
    }

    #[test]
    fn trivial_group_block_systems_are_set_partitions() {
        let systems = enumerate_block_systems(&PermGroup::trivial(3)).unwrap();
        assert_eq!(systems.len(), 5);
    }

    #[test]
    fn non_simple_actions_are_rejected() {
        let g = cyclic_of("(1 2)", 3);
        assert!(matches!(
            enumerate_block_systems(&g),
            Err(Error::NonSimpleAction)
        ));
        assert!(matches!(
            generate_fixed_trees(&g),
            Err(Error::NonSimpleAction)
        ));
    }

    #[test]
    fn children_partition() {
        let k1 = cyclic_of("(1 2)(3 4)", 4);
        let tau = AssemblyTree::parse("((1,2),3,4)").unwrap();
        let s = children_block_system(&k1, &tau).unwrap();
        assert_eq!(s.blocks(), &[vec![1, 2], vec![3], vec![4]]);
        assert!(s.is_compatible(&k1));
        let moved = AssemblyTree::parse("((1,3),2,4)").unwrap();
        assert!(matches!(
            children_block_system(&k1, &moved),
            Err(Error::NotFixed)
        ));
    }

    #[test]
    fn small_counts() {
        let k1 = cyclic_of("(1 2)(3 4)", 4);
        let res = generate_fixed_trees(&k1).unwrap();
        assert_eq!(res.trees.len(), 6);
        assert!(res.filters_sufficient);
        assert_eq!(
            generate_fixed_trees(&builtin::klein4())
                .unwrap()
                .trees
                .len(),
            4
        );
        assert_eq!(
            count_fixed_trees_direct(&PermGroup::trivial(4), usize::MAX).unwrap(),
            BigUint::from(26u32)
        );
        assert_eq!(
            count_fixed_trees_direct(&cyclic_of("(1 2)(3 4)(5 6)", 6), usize::MAX).unwrap(),
            BigUint::from(72u32)
        );
    }

    #[test]
    fn budget() {
        assert!(matches!(
            count_fixed_trees_direct(&PermGroup::trivial(5), 100),
            Err(Error::BudgetExceeded { limit: 100 })
        ));
    }

    #[test]
    fn subtrees_follow_translates() {
        let g = builtin::klein4().replicate(2);
        for tau in generate_fixed_trees(&g).unwrap().trees {
            let system = children_block_system(&g, &tau).unwrap();
            for block in system.blocks() {
                let sub = tau.subtree(block).unwrap();
                for x in g.elements() {
                    let image = tau.subtree(&x.apply_set(block)).unwrap();
                    assert_eq!(sub.act(x).unwrap(), image);
                }
            }
        }
    }
}
