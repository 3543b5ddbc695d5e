//! Seeded inputs shared by the benchmarks.

use std::collections::BTreeSet;

use hooks_core::{grow_pi_increasing, RootedTree, SetPartition, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random partition of `1..=r` with `{1}` as a block and at least two
/// blocks, together with a random tree in which every block is a chain.
pub fn random_instance(r: usize, rng: &mut impl Rng) -> (SetPartition, RootedTree) {
    assert!(r >= 2);
    let mut blocks: Vec<Vec<Vertex>> = vec![vec![1]];
    for v in 2..=r as Vertex {
        // Block 0 is reserved for {1}; index blocks.len() opens a new block.
        let b = rng.gen_range(1..=blocks.len());
        if b == blocks.len() {
            blocks.push(vec![v]);
        } else {
            blocks[b].push(v);
        }
    }
    let pi = SetPartition::new(blocks).expect("valid partition");
    let set: BTreeSet<Vertex> = (1..=r as Vertex).collect();
    let tree = grow_pi_increasing(&pi, &set, |n| rng.gen_range(0..n)).expect("compatible");
    (pi, tree)
}

pub fn instances(r: usize, count: usize, seed: u64) -> Vec<(SetPartition, RootedTree)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_instance(r, &mut rng)).collect()
}
