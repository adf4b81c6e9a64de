use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use super::Permutation;
use crate::error::{Error, Result};

/// A finite permutation group with its complete element list.
///
/// Elements are kept sorted (lexicographically on image sequences), so the
/// element list is canonical: two groups are equal iff they have the same
/// degree and the same elements, whatever generators built them.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// A left coset `representative · subgroup`.
#[derive(Clone, Debug)]
pub struct Coset<'a> {
    pub representative: Permutation,
    pub subgroup: &'a PermGroup,
}

impl Coset<'_> {
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out: Vec<_> = self
            .subgroup
            .elements()
            .iter()
            .map(|h| self.representative.compose_unchecked(h))
            .collect();
        out.sort();
        out
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.subgroup
            .contains(&self.representative.inverse().compose_unchecked(g))
    }

    /// `rH == r'H` iff `r⁻¹ r' ∈ H`.
    pub fn same_coset(&self, other: &Coset<'_>) -> bool {
        self.subgroup == other.subgroup && self.contains(&other.representative)
    }
}

impl PermGroup {
    /// Closes `generators` under composition. Generators equal to the
    /// identity are dropped from the stored generating set.
    pub fn close(generators: Vec<Permutation>, degree: usize) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
        let generators: Vec<Permutation> = generators
            .into_iter()
            .filter(|g| !g.is_identity())
            .collect();
        let id = Permutation::identity(degree);
        let mut seen: BTreeSet<Permutation> = BTreeSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = g.compose_unchecked(&x);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            elements: seen.into_iter().collect(),
        })
    }

    /// Group from an element list already known to be closed.
    pub(crate) fn from_closed_elements(
        degree: usize,
        generators: Vec<Permutation>,
        mut elements: Vec<Permutation>,
    ) -> Self {
        elements.sort();
        debug_assert!(elements.first().is_some_and(|e| e.is_identity()));
        PermGroup {
            degree,
            generators,
            elements,
        }
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            elements: vec![Permutation::identity(degree)],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// All elements in lexicographic order; the identity comes first.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn identity(&self) -> &Permutation {
        &self.elements[0]
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.elements.binary_search(g).ok()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && other.order().is_multiple_of(self.order())
            && self.elements.iter().all(|h| other.contains(h))
    }

    /// Orbit of `x`, sorted.
    pub fn orbit(&self, x: u32) -> Vec<u32> {
        let set: BTreeSet<u32> = self.elements.iter().map(|g| g.apply(x)).collect();
        set.into_iter().collect()
    }

    /// Orbits on `1..=degree`, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        self.orbits_on(&(1..=self.degree as u32).collect::<Vec<_>>())
    }

    /// Orbits on an invariant subset of the points.
    pub fn orbits_on(&self, points: &[u32]) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree + 1];
        let mut sorted = points.to_vec();
        sorted.sort_unstable();
        let mut out = Vec::new();
        for &x in &sorted {
            if seen[x as usize] {
                continue;
            }
            let orbit = self.orbit(x);
            for &y in &orbit {
                seen[y as usize] = true;
            }
            out.push(orbit);
        }
        out
    }

    /// Order of the stabilizer of the point `x`.
    pub fn point_stabilizer_order(&self, x: u32) -> usize {
        self.elements.iter().filter(|g| g.apply(x) == x).count()
    }

    /// True iff no non-identity element fixes any point of `1..=degree`.
    pub fn is_simple_action(&self) -> bool {
        self.acts_simply_on(&(1..=self.degree as u32).collect::<Vec<_>>())
    }

    /// True iff no non-identity element fixes a point of `points`.
    pub fn acts_simply_on(&self, points: &[u32]) -> bool {
        self.elements[1..]
            .iter()
            .all(|g| points.iter().all(|&x| g.apply(x) != x))
    }

    /// `g H g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> PermGroup {
        let ginv = g.inverse();
        let conj = |h: &Permutation| g.compose_unchecked(&h.compose_unchecked(&ginv));
        PermGroup::from_closed_elements(
            self.degree,
            self.generators.iter().map(conj).collect(),
            self.elements.iter().map(conj).collect(),
        )
    }

    /// Least element of each left coset `gH`, in increasing order.
    pub fn left_coset_representatives(&self, h: &PermGroup) -> Result<Vec<Permutation>> {
        if !h.is_subgroup_of(self) {
            return Err(Error::NotSubgroup);
        }
        let mut covered = vec![false; self.order()];
        let mut reps = Vec::with_capacity(self.order() / h.order());
        for (i, g) in self.elements.iter().enumerate() {
            if covered[i] {
                continue;
            }
            for x in h.elements() {
                let y = g.compose_unchecked(x);
                covered[self.index_of(&y).expect("coset escapes group")] = true;
            }
            reps.push(g.clone());
        }
        Ok(reps)
    }

    pub fn left_cosets<'a>(&self, h: &'a PermGroup) -> Result<Vec<Coset<'a>>> {
        Ok(self
            .left_coset_representatives(h)?
            .into_iter()
            .map(|representative| Coset {
                representative,
                subgroup: h,
            })
            .collect())
    }

    /// The left-regular representation: the group acting on its own sorted
    /// element list by left translation, on `order()` points.
    pub fn regular_action(&self) -> PermGroup {
        let n = self.order();
        let translate = |g: &Permutation| {
            let images = self
                .elements
                .iter()
                .map(|e| self.index_of(&g.compose_unchecked(e)).unwrap() as u32 + 1)
                .collect();
            Permutation::from_images_unchecked(images)
        };
        PermGroup::from_closed_elements(
            n,
            self.generators.iter().map(translate).collect(),
            self.elements.iter().map(translate).collect(),
        )
    }

    /// The same group acting on `copies` disjoint copies of its points:
    /// copy `j` uses points `j*degree + 1 ..= (j+1)*degree`. A simple action
    /// with `k` orbits becomes one with `copies * k` orbits.
    pub fn replicate(&self, copies: usize) -> PermGroup {
        assert!(copies >= 1, "at least one copy");
        let d = self.degree;
        let spread = |g: &Permutation| {
            let images = (0..copies)
                .flat_map(|j| g.images().iter().map(move |&x| x + (j * d) as u32))
                .collect();
            Permutation::from_images_unchecked(images)
        };
        PermGroup::from_closed_elements(
            d * copies,
            self.generators.iter().map(spread).collect(),
            self.elements.iter().map(spread).collect(),
        )
    }

    /// Histogram of element orders.
    pub fn element_order_histogram(&self) -> Vec<(u64, usize)> {
        let mut map = std::collections::BTreeMap::new();
        for g in &self.elements {
            *map.entry(g.order()).or_insert(0usize) += 1;
        }
        map.into_iter().collect()
    }

    pub(crate) fn table(&self) -> GroupTable {
        GroupTable::new(self)
    }
}

/// The normalizer of `h` in `g`.
pub fn normalizer(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    let elements: Vec<Permutation> = g
        .elements()
        .iter()
        .filter(|x| {
            let xinv = x.inverse();
            h.generators()
                .iter()
                .all(|y| h.contains(&x.compose_unchecked(&y.compose_unchecked(&xinv))))
        })
        .cloned()
        .collect();
    let generators = small_generating_set(&elements, g.degree());
    Ok(PermGroup::from_closed_elements(
        g.degree(),
        generators,
        elements,
    ))
}

/// Greedy generating set: repeatedly add the largest-order element not yet
/// generated.
pub(crate) fn small_generating_set(elements: &[Permutation], degree: usize) -> Vec<Permutation> {
    let mut sorted: Vec<&Permutation> = elements.iter().collect();
    sorted.sort_by_key(|g| std::cmp::Reverse(g.order()));
    let mut gens: Vec<Permutation> = Vec::new();
    let mut current = PermGroup::trivial(degree);
    for g in sorted {
        if current.order() == elements.len() {
            break;
        }
        if !current.contains(g) {
            gens.push(g.clone());
            current = PermGroup::close(gens.clone(), degree).expect("degrees agree");
        }
    }
    gens
}

/// Dense bit set over element indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub(crate) struct ElemSet {
    words: Vec<u64>,
}

impl ElemSet {
    pub fn new(n: usize) -> Self {
        ElemSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, 1u64 << (i % 64));
        let fresh = self.words[w] & b == 0;
        self.words[w] |= b;
        fresh
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1u64 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            (0..64)
                .filter(move |b| word & (1u64 << b) != 0)
                .map(move |b| w * 64 + b)
        })
    }
}

/// Multiplication table over element indices of a [`PermGroup`].
pub(crate) struct GroupTable {
    n: usize,
    mul: Vec<u32>,
}

impl GroupTable {
    fn new(g: &PermGroup) -> Self {
        let n = g.order();
        let mut mul = Vec::with_capacity(n * n);
        for a in g.elements() {
            for b in g.elements() {
                mul.push(
                    g.index_of(&a.compose_unchecked(b))
                        .expect("group not closed") as u32,
                );
            }
        }
        GroupTable { n, mul }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Subgroup generated by the given element indices.
    pub fn closure(&self, gens: &[usize]) -> ElemSet {
        let mut set = ElemSet::new(self.n);
        set.insert(0);
        let mut queue = vec![0usize];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(g, x);
                if set.insert(y) {
                    queue.push(y);
                }
            }
        }
        set
    }
}

/// Default bound on group order for subgroup enumeration.
pub const DEFAULT_MAX_GROUP_ORDER: usize = 120;

/// Every subgroup of `g` exactly once, ordered by order and then by the
/// sorted element list. Bounded by [`DEFAULT_MAX_GROUP_ORDER`].
pub fn all_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>> {
    all_subgroups_bounded(g, DEFAULT_MAX_GROUP_ORDER)
}

pub fn all_subgroups_bounded(g: &PermGroup, bound: usize) -> Result<Vec<PermGroup>> {
    let (_, subs) = subgroup_sets(g, bound)?;
    Ok(subs
        .into_iter()
        .map(|(set, gens)| {
            let elements: Vec<Permutation> = set.iter().map(|i| g.elements()[i].clone()).collect();
            let generators = gens.iter().map(|&i| g.elements()[i].clone()).collect();
            PermGroup::from_closed_elements(g.degree(), generators, elements)
        })
        .collect())
}

/// A subgroup as an element set over a [`GroupTable`], with generators.
pub(crate) type SubgroupSet = (ElemSet, Vec<usize>);

/// Subgroups as element-index sets with generating index lists.
///
/// Seeds with the cyclic subgroups and closes under joins with them until
/// nothing new appears. Every subgroup is a join of cyclic subgroups, so
/// this reaches the same fixpoint as closing under all pairwise joins.
pub(crate) fn subgroup_sets(g: &PermGroup, bound: usize) -> Result<(GroupTable, Vec<SubgroupSet>)> {
    if g.order() > bound {
        return Err(Error::OrderBoundExceeded {
            order: g.order(),
            bound,
        });
    }
    let table = g.table();
    let mut index: HashMap<ElemSet, usize> = HashMap::new();
    let mut subs: Vec<(ElemSet, Vec<usize>)> = Vec::new();
    let mut cyclic: Vec<usize> = Vec::new();

    let trivial = table.closure(&[]);
    index.insert(trivial.clone(), 0);
    subs.push((trivial, Vec::new()));
    for a in 1..table.len() {
        let set = table.closure(&[a]);
        if !index.contains_key(&set) {
            index.insert(set.clone(), subs.len());
            subs.push((set, vec![a]));
            cyclic.push(a);
        }
    }

    let mut next = 1;
    while next < subs.len() {
        let (set, gens) = subs[next].clone();
        next += 1;
        for &c in &cyclic {
            if set.contains(c) {
                continue;
            }
            let mut joined_gens = gens.clone();
            joined_gens.push(c);
            let joined = table.closure(&joined_gens);
            if !index.contains_key(&joined) {
                index.insert(joined.clone(), subs.len());
                subs.push((joined, joined_gens));
            }
        }
    }

    subs.sort_by(|a, b| {
        a.0.len()
            .cmp(&b.0.len())
            .then_with(|| a.0.iter().cmp(b.0.iter()))
    });
    Ok((table, subs))
}

/// A conjugacy class of subgroups; `members[0]` is the representative.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub members: Vec<PermGroup>,
}

impl SubgroupClass {
    pub fn representative(&self) -> &PermGroup {
        &self.members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Conjugacy classes of subgroups of `g`, ordered like [`all_subgroups`];
/// each class lists its members in that order as well.
pub fn conjugacy_classes_of_subgroups(g: &PermGroup) -> Result<Vec<SubgroupClass>> {
    let subs = all_subgroups(g)?;
    let class_of = subgroup_class_ids(g, &subs);
    let count = class_of.iter().max().map_or(0, |m| m + 1);
    let mut classes = vec![Vec::new(); count];
    for (s, c) in subs.into_iter().zip(class_of) {
        classes[c].push(s);
    }
    Ok(classes
        .into_iter()
        .map(|members| SubgroupClass { members })
        .collect())
}

/// Class id per subgroup; ids are assigned in order of first appearance.
pub(crate) fn subgroup_class_ids(g: &PermGroup, subs: &[PermGroup]) -> Vec<usize> {
    let position: HashMap<&[Permutation], usize> = subs
        .iter()
        .enumerate()
        .map(|(i, s)| (s.elements(), i))
        .collect();
    let mut class_of = vec![usize::MAX; subs.len()];
    let mut next = 0;
    for i in 0..subs.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        for x in g.elements() {
            let conj = subs[i].conjugate_by(x);
            let j = position[conj.elements()];
            class_of[j] = next;
        }
        next += 1;
    }
    class_of
}

/// Invariants of an abstract group that are cheap to compare.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupFingerprint {
    pub order: usize,
    pub element_orders: Vec<(u64, usize)>,
    pub subgroup_orders: Vec<(usize, usize)>,
}

pub fn fingerprint(g: &PermGroup) -> Result<GroupFingerprint> {
    let subs = all_subgroups(g)?;
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

/// Decides whether two groups are isomorphic as abstract groups by trying
/// every order-preserving assignment of images to a generating set.
pub fn are_isomorphic(a: &PermGroup, b: &PermGroup) -> bool {
    if a.order() != b.order() || a.element_order_histogram() != b.element_order_histogram() {
        return false;
    }
    let ta = a.table();
    let tb = b.table();
    let gens: Vec<usize> = small_generating_set(a.elements(), a.degree())
        .iter()
        .map(|g| a.index_of(g).unwrap())
        .collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let order = ta.element_order(g);
            (0..tb.len())
                .filter(|&y| tb.element_order(y) == order)
                .collect()
        })
        .collect();

    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<usize> = choice
            .iter()
            .zip(&candidates)
            .map(|(&c, cands)| cands[c])
            .collect();
        if extends_to_isomorphism(&ta, &tb, &gens, &images) {
            return true;
        }
        // odometer over candidate lists
        let mut k = gens.len();
        loop {
            if k == 0 {
                return false;
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

fn extends_to_isomorphism(
    ta: &GroupTable,
    tb: &GroupTable,
    gens: &[usize],
    images: &[usize],
) -> bool {
    let n = ta.len();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![0usize];
    while let Some(x) = queue.pop() {
        for (&g, &h) in gens.iter().zip(images) {
            let y = ta.mul(x, g);
            let fy = tb.mul(map[x], h);
            if map[y] == usize::MAX {
                if used[fy] {
                    return false;
                }
                map[y] = fy;
                used[fy] = true;
                queue.push(y);
            } else if map[y] != fy {
                return false;
            }
        }
    }
    map.iter().all(|&m| m != usize::MAX)
}
