#![allow(dead_code)]

use capsid_core::perm::{builtin, PermGroup, Permutation};
use capsid_core::trees::{AssemblyTree, Node};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn perm(text: &str, degree: usize) -> Permutation {
    Permutation::parse(text, degree).unwrap()
}

pub fn group(gens: &[&str], degree: usize) -> PermGroup {
    PermGroup::close(gens.iter().map(|g| perm(g, degree)).collect(), degree).unwrap()
}

pub fn random_perm(rng: &mut impl Rng, degree: usize) -> Permutation {
    let mut images: Vec<u32> = (1..=degree as u32).collect();
    images.shuffle(rng);
    Permutation::from_images(images).unwrap()
}

/// A random assembly tree on `labels`: split into at least two random
/// blocks and recurse.
pub fn random_node(rng: &mut impl Rng, labels: &[u32]) -> Node {
    if labels.len() == 1 {
        return Node::Leaf(labels[0]);
    }
    let mut shuffled = labels.to_vec();
    shuffled.shuffle(rng);
    let k = rng.gen_range(2..=labels.len());
    let mut blocks: Vec<Vec<u32>> = vec![Vec::new(); k];
    for (i, &x) in shuffled.iter().enumerate() {
        let b = if i < k { i } else { rng.gen_range(0..k) };
        blocks[b].push(x);
    }
    Node::Internal(blocks.iter().map(|b| random_node(rng, b)).collect())
}

pub fn random_tree(rng: &mut impl Rng, labels: &[u32]) -> AssemblyTree {
    AssemblyTree::from_node(random_node(rng, labels)).unwrap()
}

/// Groups acting simply on 1..=degree, with a display name.
pub fn simple_groups() -> Vec<(&'static str, PermGroup)> {
    let s3 = group(&["(1 2 3)", "(1 2)"], 3).regular_action();
    let d4 = group(&["(1 2 3 4)", "(1 3)"], 4).regular_action();
    vec![
        ("Z2 on 2", builtin::cyclic(2)),
        ("Z3 on 3", builtin::cyclic(3)),
        ("Z2 on 4", group(&["(1 2)(3 4)"], 4)),
        ("Z4 on 4", builtin::cyclic(4)),
        ("V4 on 4", builtin::klein4()),
        ("Z5 on 5", builtin::cyclic(5)),
        ("Z2 on 6", group(&["(1 2)(3 4)(5 6)"], 6)),
        ("Z3 on 6", group(&["(1 2 3)(4 5 6)"], 6)),
        ("Z6 on 6", builtin::cyclic(6)),
        ("S3 on 6", s3),
        ("Z7 on 7", builtin::cyclic(7)),
        ("Z2 on 8", group(&["(1 2)(3 4)(5 6)(7 8)"], 8)),
        ("Z4 on 8", group(&["(1 2 3 4)(5 6 7 8)"], 8)),
        ("V4 on 8", builtin::klein4().replicate(2)),
        ("Z8 on 8", builtin::cyclic(8)),
        ("D4 on 8", d4),
        (
            "Q8 on 8",
            group(&["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"], 8),
        ),
        (
            "Z2^3 on 8",
            group(
                &[
                    "(1 2)(3 4)(5 6)(7 8)",
                    "(1 3)(2 4)(5 7)(6 8)",
                    "(1 5)(2 6)(3 7)(4 8)",
                ],
                8,
            ),
        ),
        (
            "Z2xZ4 on 8",
            group(&["(1 2 3 4)(5 6 7 8)", "(1 5)(2 6)(3 7)(4 8)"], 8),
        ),
    ]
}
