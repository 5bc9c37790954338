//! Seeded workloads shared by the benchmarks.

use nalgebra::DVector;
use posetcausal::random::{random_poset, random_system, SystemShape};
use posetcausal::{InputSignal, Poset, PosetCausalSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SHAPE: SystemShape = SystemShape {
    min_block: 1,
    max_block: 3,
    entry_bound: 3,
    coupling: 0.6,
};

/// A chain on `p` nodes: every node influences all later ones.
pub fn chain_system(p: usize, seed: u64) -> PosetCausalSystem {
    random_system(&mut ChaCha8Rng::seed_from_u64(seed), &Poset::chain(p), &SHAPE)
}

/// Random poset of the given density on `p` nodes.
pub fn random_poset_system(p: usize, density: f64, seed: u64) -> PosetCausalSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let poset = random_poset(&mut rng, p, density);
    random_system(&mut rng, &poset, &SHAPE)
}

/// Uniform input in [-1, 1] and a matching initial state.
pub fn random_input(sys: &PosetCausalSystem, h: f64, steps: usize, seed: u64) -> (DVector<f64>, InputSignal) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = sys.m().total();
    let values = (0..steps)
        .map(|_| DVector::from_fn(m, |_, _| rng.gen_range(-1.0..=1.0)))
        .collect();
    let x0 = DVector::from_fn(sys.state_dim(), |_, _| rng.gen_range(-1.0..=1.0));
    (x0, InputSignal::new(h, m, values).expect("finite input"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workloads_are_valid_and_reproducible() {
        let a = chain_system(4, 1);
        assert!(a.validate().is_valid());
        assert_eq!(a, chain_system(4, 1));
        let b = random_poset_system(5, 0.4, 2);
        assert_eq!(b.p(), 5);
        let (x0, u) = random_input(&b, 0.01, 10, 3);
        assert_eq!(x0.len(), b.state_dim());
        assert_eq!(u.steps(), 10);
    }
}
