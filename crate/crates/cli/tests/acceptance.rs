//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Criterion 4 has a documented discrepancy in two reference values; it
//! prints FAIL, and the run only succeeds if the discrepancy is exactly
//! the known one. Any other failure makes the run fail.

use std::collections::{BTreeMap, BTreeSet};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use capsid_core::fixed::{count_fixed_trees_direct, enumerate_block_systems};
use capsid_core::pathways::{
    burnside_pathway_count, pathway_probabilities, pathway_size_distribution,
};
use capsid_core::perm::{
    all_subgroups, builtin, conjugacy_classes_of_subgroups, PermGroup, Permutation,
};
use capsid_core::series::SeriesSolver;
use capsid_core::stabilizer::{fixes, locate_image, pointer_traversal_audit, stabilizer};
use capsid_core::trees::{
    brute_force_stabilizer, enumerate_all_trees, orbit_of_tree, AssemblyTree, Node,
};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Reference tbar values for the icosahedral group on 60 points, by
/// stabilizer order.
const REFERENCE_TBAR: [(usize, &str); 9] = [
    (1, "19244655101324373947201847309221875711203467545322366329965115755432139023628289410324670840066578537680"),
    (2, "1670856367100496379411587456529324583988755126499875584"),
    (3, "10087157294451731428720995944759704"),
    (4, "10041342673530270014535171213312"),
    (5, "20540071766413107840"),
    (6, "61346927354448105268"),
    (10, "223503950260"),
    (12, "16865654580"),
    (60, "204"),
];

enum Verdict {
    Pass(String),
    Fail(String),
    /// Fails, but exactly as recorded in the known-deviation analysis.
    KnownFail(String),
}

type Check = Result<String, String>;

/// Name, time limit and check.
type Criterion = (&'static str, Duration, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        // Enforces its 1 s limit on the series command itself.
        ("base sequence", Duration::MAX, c1_base_sequence),
        ("order-2 and Klein sequences", secs(5), || {
            from(c2_sequences())
        }),
        ("Klein end-to-end", secs(1), || from(c3_klein())),
        ("icosahedral T=1 tbar values", secs(300), c4_icosahedral),
        ("subgroup census", secs(30), || from(c5_census())),
        ("stabilizer oracle equivalence", secs(120), || {
            from(c6_stabilizer())
        }),
        ("fixed-tree generator vs series", secs(120), || {
            from(c7_fixed_trees())
        }),
        ("block systems", secs(1), || from(c8_blocks())),
        ("complexity audit", secs(10), || from(c9_audit())),
        ("global consistency", Duration::MAX, || {
            from(c10_consistency())
        }),
    ];
    let mut unexpected = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let elapsed = start.elapsed();
        let timing = format!("{:.3}s", elapsed.as_secs_f64());
        let verdict = match verdict {
            Verdict::Pass(note) if elapsed > *limit => Verdict::Fail(format!(
                "{note}; took {timing}, limit {:.0}s",
                limit.as_secs_f64()
            )),
            v => v,
        };
        match verdict {
            Verdict::Pass(note) => println!("PASS {:>2} {name} [{timing}]: {note}", i + 1),
            Verdict::KnownFail(note) => println!("FAIL {:>2} {name} [{timing}]: {note}", i + 1),
            Verdict::Fail(note) => {
                unexpected += 1;
                println!("FAIL {:>2} {name} [{timing}]: {note}", i + 1);
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn from(check: Check) -> Verdict {
    match check {
        Ok(note) => Verdict::Pass(note),
        Err(note) => Verdict::Fail(note),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn capsid(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_capsid"))
        .args(args)
        .env_remove("CAPSID_MAX_GROUP_ORDER")
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(String::from_utf8_lossy(&out.stderr).trim().to_string());
    }
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn group(gens: &[&str], degree: usize) -> PermGroup {
    let gens = gens
        .iter()
        .map(|g| Permutation::parse(g, degree).unwrap())
        .collect();
    PermGroup::close(gens, degree).unwrap()
}

/// Series through the command line; the enumerator timing is reported
/// separately and does not count against the limit.
fn c1_base_sequence() -> Verdict {
    let start = Instant::now();
    let out = match capsid(&[
        "series",
        "--group",
        "trivial:1",
        "--order",
        "9",
        "--format",
        "csv",
    ]) {
        Ok(out) => out,
        Err(e) => return Verdict::Fail(e),
    };
    let series_time = start.elapsed();
    let counts: Vec<BigUint> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    let expected: Vec<BigUint> = [1u64, 1, 4, 26, 236, 2752].map(big).to_vec();
    if counts[..6] != expected[..] {
        return Verdict::Fail(format!("t_1..t_6 = {counts:?}"));
    }
    let start = Instant::now();
    for n in 7..=9u32 {
        let brute = enumerate_all_trees(&(1..=n).collect::<Vec<_>>())
            .unwrap()
            .count();
        if counts[n as usize - 1] != big(brute as u64) {
            return Verdict::Fail(format!(
                "t_{n}: series {} vs enumerator {brute}",
                counts[n as usize - 1]
            ));
        }
    }
    let brute_time = start.elapsed();
    if series_time > secs(1) {
        return Verdict::Fail(format!("series took {:.3}s", series_time.as_secs_f64()));
    }
    Verdict::Pass(format!(
        "t_1..t_9 = {}; series command {:.3}s, enumerator oracle for n = 7..9 {:.3}s",
        counts
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", "),
        series_time.as_secs_f64(),
        brute_time.as_secs_f64()
    ))
}

fn c2_sequences() -> Check {
    let mut solver = SeriesSolver::default();
    let z2 = solver
        .counts(&builtin::cyclic(2), 6)
        .map_err(|e| e.to_string())?;
    let v4 = solver
        .counts(&builtin::klein4(), 6)
        .map_err(|e| e.to_string())?;
    let want_z2: Vec<BigUint> = [1u64, 6, 72, 1312, 32128, 989696].map(big).to_vec();
    let want_v4: Vec<BigUint> = [4u64, 104, 4896, 341120, 31945728, 3790876672]
        .map(big)
        .to_vec();
    ensure(z2 == want_z2, || format!("Z2: {z2:?}"))?;
    ensure(v4 == want_v4, || format!("V4: {v4:?}"))?;
    Ok("t_1..t_6 exact for Z2 and V4".into())
}

fn c3_klein() -> Check {
    let k = builtin::klein4();
    let d = pathway_size_distribution(&k).map_err(|e| e.to_string())?;
    let tbar: Vec<(usize, BigUint)> = d
        .per_class
        .iter()
        .map(|c| (c.order, c.tbar.clone()))
        .collect();
    ensure(
        tbar == vec![
            (1, big(16)),
            (2, big(2)),
            (2, big(2)),
            (2, big(2)),
            (4, big(4)),
        ],
        || format!("tbar = {tbar:?}"),
    )?;
    let n: Vec<(usize, BigUint)> = d.per_divisor.clone().into_iter().collect();
    ensure(n == vec![(1, big(4)), (2, big(3)), (4, big(4))], || {
        format!("N = {n:?}")
    })?;
    let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    let probs: Vec<BigRational> = pathway_probabilities(&d)
        .into_iter()
        .map(|p| p.probability)
        .collect();
    ensure(probs == vec![q(1, 26), q(1, 13), q(2, 13)], || {
        format!("probabilities {probs:?}")
    })?;
    ensure(d.pathway_count() == big(11), || {
        format!("{} pathways", d.pathway_count())
    })?;

    // Brute force: partition all 26 trees into orbits.
    let mut seen: BTreeSet<AssemblyTree> = BTreeSet::new();
    let mut sizes: BTreeMap<usize, u64> = BTreeMap::new();
    for tau in enumerate_all_trees(&[1, 2, 3, 4]).unwrap() {
        if seen.contains(&tau) {
            continue;
        }
        let orbit = orbit_of_tree(&k, &tau).map_err(|e| e.to_string())?;
        *sizes.entry(orbit.len()).or_default() += 1;
        seen.extend(orbit);
    }
    ensure(seen.len() == 26, || format!("{} trees", seen.len()))?;
    let brute: Vec<(usize, BigUint)> = sizes.into_iter().map(|(m, c)| (m, big(c))).collect();
    ensure(brute == n, || format!("brute-force orbit sizes {brute:?}"))?;

    let table = capsid(&["pathways", "--group", "klein4", "--format", "csv"])?;
    ensure(
        table == "m,N(m),probability\n1,4,1/26\n2,3,1/13\n4,4,2/13\n",
        || format!("pathways command printed {table:?}"),
    )?;
    Ok("tbar 4/2/2/2/16, N = 4,3,4, probabilities 1/26, 1/13, 2/13, 11 pathways; brute force agrees".into())
}

/// Runs the report command and compares each tbar line with the reference
/// value.
fn c4_icosahedral() -> Verdict {
    let out = match capsid(&["icosa-report"]) {
        Ok(out) => out,
        Err(e) => return Verdict::Fail(e),
    };
    let ours: BTreeMap<usize, BigInt> = out
        .lines()
        .filter_map(|l| {
            let rest = l.split_once("tbar_")?.1;
            let (lhs, value) = rest.split_once(" = ")?;
            let order = lhs
                .split_once("(G_")?
                .1
                .trim_end_matches(')')
                .parse()
                .ok()?;
            Some((order, value.parse().ok()?))
        })
        .collect();
    let t_top: BigInt = match out
        .lines()
        .find_map(|l| l.strip_prefix("G_60  1  t_1(G_60) = "))
        .and_then(|v| v.parse().ok())
    {
        Some(t) => t,
        None => return Verdict::Fail("no t_1(G_60) line".into()),
    };
    let mut matched = Vec::new();
    let mut mismatched = Vec::new();
    let mut known = true;
    for (order, reference) in REFERENCE_TBAR {
        let Some(value) = ours.get(&order) else {
            return Verdict::Fail(format!("no tbar line for G_{order}"));
        };
        let reference: BigInt = reference.parse().unwrap();
        if *value == reference {
            matched.push(order);
            continue;
        }
        let diff = value - &reference;
        // The recorded gap: the two reference values correspond to
        // mu(1, G) = +60 and mu(G_2, G) = 0 instead of -60 and 4.
        let expected = match order {
            1 => BigInt::from(-120) * &t_top,
            2 => BigInt::from(4) * &t_top,
            _ => BigInt::from(0),
        };
        known &= diff == expected;
        mismatched.push(format!("G_{order} differs by {diff}"));
    }
    if mismatched.is_empty() {
        return Verdict::Pass("all nine tbar values match".into());
    }
    let note = format!(
        "{}/9 match byte-exactly; {}. The reference pair breaks sum over subgroups of tbar = t_60, \
         which ours satisfies; see the decisions ledger",
        matched.len(),
        mismatched.join(", ")
    );
    if known && mismatched.len() == 2 {
        Verdict::KnownFail(note)
    } else {
        Verdict::Fail(format!("unexpected discrepancy: {note}"))
    }
}

fn c5_census() -> Check {
    let g = builtin::icosahedral_group();
    let subs = all_subgroups(&g).map_err(|e| e.to_string())?;
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    for s in &subs {
        *hist.entry(s.order()).or_default() += 1;
    }
    let want: BTreeMap<usize, usize> = [
        (1, 1),
        (2, 15),
        (3, 10),
        (4, 5),
        (5, 6),
        (6, 10),
        (10, 6),
        (12, 5),
        (60, 1),
    ]
    .into_iter()
    .collect();
    ensure(subs.len() == 59, || format!("{} subgroups", subs.len()))?;
    ensure(hist == want, || format!("histogram {hist:?}"))?;
    let classes = conjugacy_classes_of_subgroups(&g).map_err(|e| e.to_string())?;
    ensure(classes.len() == 9, || format!("{} classes", classes.len()))?;
    Ok("59 subgroups, histogram as expected, 9 conjugacy classes".into())
}

fn c6_stabilizer() -> Check {
    let mut groups: Vec<(String, PermGroup)> = (1..=6)
        .map(|n| (format!("trivial on {n}"), PermGroup::trivial(n)))
        .collect();
    groups.push(("Z2 on 4".into(), group(&["(1 2)(3 4)"], 4)));
    groups.push(("Z2 on 6".into(), group(&["(1 2)(3 4)(5 6)"], 6)));
    groups.push(("V4".into(), builtin::klein4()));
    groups.push(("Z6 regular".into(), builtin::cyclic(6)));
    groups.push((
        "S3 regular".into(),
        group(&["(1 2 3)", "(1 2)"], 3).regular_action(),
    ));
    let mut trees = 0;
    let mut checks = 0;
    for (name, g) in &groups {
        let labels: Vec<u32> = (1..=g.degree() as u32).collect();
        for tau in enumerate_all_trees(&labels).unwrap() {
            trees += 1;
            for x in g.elements() {
                checks += 1;
                let fast = fixes(x, &tau).map_err(|e| e.to_string())?;
                let slow = tau.act(x).map_err(|e| e.to_string())? == tau;
                ensure(fast == slow, || {
                    format!("{name}: fixes({x}, {tau}) = {fast}")
                })?;
            }
            let res = stabilizer(g, &tau).map_err(|e| e.to_string())?;
            let brute = brute_force_stabilizer(g, &tau).map_err(|e| e.to_string())?;
            ensure(res.group.elements() == brute.as_slice(), || {
                format!("{name}: stabilizer of {tau}")
            })?;
        }
    }
    Ok(format!(
        "{} groups, {trees} trees, {checks} fixes checks",
        groups.len()
    ))
}

fn c7_fixed_trees() -> Check {
    let cases = [
        ("Z2 on 4", group(&["(1 2)(3 4)"], 4), 2, 6u64),
        ("Z2 on 6", group(&["(1 2)(3 4)(5 6)"], 6), 3, 72),
        ("V4 on 4", builtin::klein4(), 1, 4),
        ("V4 on 8", builtin::klein4().replicate(2), 2, 104),
    ];
    let mut solver = SeriesSolver::default();
    for (name, g, n, want) in cases {
        let direct = count_fixed_trees_direct(&g, usize::MAX).map_err(|e| e.to_string())?;
        let series = solver.t_n(&g, n).map_err(|e| e.to_string())?;
        ensure(direct == big(want) && series == big(want), || {
            format!("{name}: direct {direct}, series {series}, expected {want}")
        })?;
    }
    Ok("6, 72, 4, 104 by generation and by series".into())
}

fn c8_blocks() -> Check {
    let g = group(&["(1 2)(3 4)"], 4);
    let systems = enumerate_block_systems(&g).map_err(|e| e.to_string())?;
    let blocks: BTreeSet<&Vec<u32>> = systems.iter().flat_map(|s| s.blocks()).collect();
    ensure(systems.len() == 7, || format!("{} systems", systems.len()))?;
    ensure(blocks.len() == 11, || format!("{} blocks", blocks.len()))?;
    ensure(systems.iter().all(|s| s.is_compatible(&g)), || {
        "incompatible system".into()
    })?;
    Ok("7 compatible block systems, 11 distinct blocks".into())
}

/// A uniformly shaped random tree: each internal vertex splits its labels
/// into between 2 and 4 nonempty parts.
fn random_node(rng: &mut ChaCha8Rng, labels: &[u32]) -> Node {
    if labels.len() == 1 {
        return Node::Leaf(labels[0]);
    }
    let k = rng.gen_range(2..=labels.len().min(4));
    let mut cuts: Vec<usize> = (1..labels.len()).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts[..k - 1].to_vec();
    cuts.sort_unstable();
    let mut parts = Vec::new();
    let mut start = 0;
    for c in cuts.into_iter().chain(std::iter::once(labels.len())) {
        parts.push(random_node(rng, &labels[start..c]));
        start = c;
    }
    Node::Internal(parts)
}

/// Pairs are a mix of random permutations (which mostly fail early),
/// identities, and swaps of the two halves of a mirrored tree (which
/// succeed at every vertex).
fn c9_audit() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut runs = 0u64;
    let mut fixing = 0;
    for pair in 0..1000 {
        let (tau, g) = match pair % 3 {
            0 | 1 => {
                let n = rng.gen_range(1..=64usize);
                let mut labels: Vec<u32> = (1..=n as u32).collect();
                labels.shuffle(&mut rng);
                let tau = AssemblyTree::from_node(random_node(&mut rng, &labels)).unwrap();
                let mut images: Vec<u32> = (1..=n as u32).collect();
                if pair % 3 == 0 {
                    images.shuffle(&mut rng);
                }
                (tau, Permutation::from_images(images).unwrap())
            }
            _ => {
                let m = rng.gen_range(1..=32u32);
                let mut labels: Vec<u32> = (1..=m).collect();
                labels.shuffle(&mut rng);
                let left = random_node(&mut rng, &labels);
                let right = mirror(&left, m);
                let tau = AssemblyTree::from_node(Node::Internal(vec![left, right])).unwrap();
                let images: Vec<u32> = (1..=2 * m)
                    .map(|x| if x <= m { x + m } else { x - m })
                    .collect();
                (tau, Permutation::from_images(images).unwrap())
            }
        };
        let view = tau.pointer_view(&g).map_err(|e| e.to_string())?;
        for v in 0..view.vertex_count() as u32 {
            view.reset_counts();
            let _ = locate_image(&view, v);
            runs += 1;
            let audit = pointer_traversal_audit(&view);
            ensure(audit.max_count <= 1, || {
                format!("pointer followed {} times in {tau}", audit.max_count)
            })?;
        }
        view.reset_counts();
        let fixed = locate_image(&view, view.root()) == Some(view.root());
        let audit = pointer_traversal_audit(&view);
        ensure(audit.is_linear(), || {
            format!("root run on {tau}: {audit:?}")
        })?;
        ensure(fixed == tau.is_fixed_by(&g).unwrap(), || {
            format!("wrong verdict on {tau}")
        })?;
        fixing += usize::from(fixed);
    }
    Ok(format!(
        "1000 pairs ({fixing} fixed), {runs} LocateImage runs, every pointer at most once"
    ))
}

fn mirror(node: &Node, m: u32) -> Node {
    match node {
        Node::Leaf(x) => Node::Leaf(x + m),
        Node::Internal(children) => Node::Internal(children.iter().map(|c| mirror(c, m)).collect()),
    }
}

fn c10_consistency() -> Check {
    let mut notes = Vec::new();
    for (name, g) in [
        ("Klein", builtin::klein4()),
        ("icosahedral", builtin::icosahedral_group()),
    ] {
        let d = pathway_size_distribution(&g).map_err(|e| e.to_string())?;
        let weighted: BigUint = d
            .per_divisor
            .iter()
            .map(|(m, n)| BigUint::from(*m) * n)
            .sum();
        ensure(weighted == d.total_trees, || {
            format!("{name}: sum m N(m) = {weighted}")
        })?;
        let burnside = burnside_pathway_count(&g).map_err(|e| e.to_string())?;
        ensure(burnside == d.pathway_count(), || {
            format!("{name}: Burnside {burnside} vs {}", d.pathway_count())
        })?;
        notes.push(format!("{name} {} pathways", d.pathway_count()));
    }
    ensure(notes[0] == "Klein 11 pathways", || notes[0].clone())?;
    Ok(format!(
        "sum m N(m) = |T_X| and Burnside agree; {}",
        notes.join(", ")
    ))
}
