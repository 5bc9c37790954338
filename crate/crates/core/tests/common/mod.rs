#![allow(dead_code)]

use posetcausal::random::{random_poset, random_system, SystemShape};
use posetcausal::{PosetCausalSystem, Poset};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Poset on 1..=max_p elements built from a seed.
pub fn poset(max_p: usize) -> impl Strategy<Value = Poset> {
    (1..=max_p, any::<u64>(), 0.0..=1.0f64).prop_map(|(p, seed, density)| random_poset(&mut rng(seed), p, density))
}

pub fn small_shape() -> SystemShape {
    SystemShape {
        min_block: 0,
        max_block: 3,
        entry_bound: 3,
        coupling: 0.7,
    }
}

/// Random structured system; block sizes may be zero.
pub fn system(max_p: usize) -> impl Strategy<Value = PosetCausalSystem> {
    (poset(max_p), any::<u64>()).prop_map(|(poset, seed)| random_system(&mut rng(seed), &poset, &small_shape()))
}

/// Reflexive-transitive closure by depth-first search from every node.
pub fn closure_by_search(p: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut reach = vec![vec![false; p]; p];
    for start in 0..p {
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            if std::mem::replace(&mut reach[start][v], true) {
                continue;
            }
            stack.extend(edges.iter().filter(|e| e.0 == v).map(|e| e.1));
        }
    }
    reach
}
