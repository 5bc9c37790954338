//! Seeded generators for randomized testing and benchmarking.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::blockmat::Partition;
use crate::error::Result;
use crate::matrix::Matrix;
use crate::observability::is_observable_pair;
use crate::poset::Poset;
use crate::rational::int;
use crate::reachability::is_controllable_pair;
use crate::system::PosetCausalSystem;

/// Shape and entry ranges for random systems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemShape {
    pub min_block: usize,
    pub max_block: usize,
    /// Entries are drawn from [-entry_bound, entry_bound].
    pub entry_bound: i64,
    /// Probability that an allowed off-diagonal block is populated.
    pub coupling: f64,
}

impl Default for SystemShape {
    fn default() -> Self {
        SystemShape {
            min_block: 1,
            max_block: 3,
            entry_bound: 3,
            coupling: 1.0,
        }
    }
}

/// Random poset on p elements: each pair is related with probability
/// `density`, then labels are shuffled.
pub fn random_poset<R: Rng>(rng: &mut R, p: usize, density: f64) -> Poset {
    let mut labels: Vec<usize> = (0..p).collect();
    labels.shuffle(rng);
    let mut edges = Vec::new();
    for a in 0..p {
        for b in a + 1..p {
            if rng.gen_bool(density) {
                edges.push((labels[a], labels[b]));
            }
        }
    }
    Poset::from_edges(p, &edges).expect("edges follow a linear order")
}

pub fn random_partition<R: Rng>(rng: &mut R, p: usize, min: usize, max: usize) -> Partition {
    Partition::new((0..p).map(|_| rng.gen_range(min..=max)).collect())
}

/// Random member of the incidence space for the given partitions.
pub fn random_structured<R: Rng>(
    rng: &mut R,
    poset: &Poset,
    rows: &Partition,
    cols: &Partition,
    bound: i64,
    coupling: f64,
) -> Matrix {
    let mut m = Matrix::zeros(rows.total(), cols.total());
    for i in 0..poset.size() {
        for j in 0..poset.size() {
            if !poset.geq(j, i) || (i != j && !rng.gen_bool(coupling)) {
                continue;
            }
            for r in rows.range(i) {
                for c in cols.range(j) {
                    m[(r, c)] = int(rng.gen_range(-bound..=bound));
                }
            }
        }
    }
    m
}

pub fn random_system<R: Rng>(rng: &mut R, poset: &Poset, shape: &SystemShape) -> PosetCausalSystem {
    let p = poset.size();
    let n = random_partition(rng, p, shape.min_block, shape.max_block);
    let m = random_partition(rng, p, shape.min_block, shape.max_block);
    let r = random_partition(rng, p, shape.min_block, shape.max_block);
    let (b, c) = (shape.entry_bound, shape.coupling);
    let a = random_structured(rng, poset, &n, &n, b, c);
    let bm = random_structured(rng, poset, &n, &m, b, c);
    let cm = random_structured(rng, poset, &r, &n, b, c);
    let d = random_structured(rng, poset, &r, &m, b, c);
    PosetCausalSystem::new(poset.clone(), n, m, r, a, bm, cm, d, None)
        .expect("random structured matrices are valid")
}

/// Random system whose local pairs (A_ii, B_ii) are all controllable.
pub fn weakly_locally_controllable_system<R: Rng>(
    rng: &mut R,
    poset: &Poset,
    shape: &SystemShape,
) -> Result<PosetCausalSystem> {
    let base = random_system(rng, poset, &SystemShape {
        min_block: shape.min_block.max(1),
        ..*shape
    });
    let (n, m) = (base.n().clone(), base.m().clone());
    let mut a = base.a().clone();
    let mut b = base.b().clone();
    for i in 0..poset.size() {
        loop {
            let local_a = a.select(&n.range(i).collect::<Vec<_>>(), &n.range(i).collect::<Vec<_>>());
            let local_b = b.select(&n.range(i).collect::<Vec<_>>(), &m.range(i).collect::<Vec<_>>());
            if is_controllable_pair(&local_a, &local_b)? {
                break;
            }
            for r in n.range(i) {
                for c in n.range(i) {
                    a[(r, c)] = int(rng.gen_range(-shape.entry_bound..=shape.entry_bound));
                }
                for c in m.range(i) {
                    b[(r, c)] = int(rng.gen_range(-shape.entry_bound..=shape.entry_bound));
                }
            }
        }
    }
    PosetCausalSystem::new(
        poset.clone(),
        n,
        m,
        base.r().clone(),
        a,
        b,
        base.c().clone(),
        base.d().clone(),
        None,
    )
}

/// Random system whose local pairs (C_ii, A_ii) are all observable.
pub fn weakly_locally_observable_system<R: Rng>(
    rng: &mut R,
    poset: &Poset,
    shape: &SystemShape,
) -> Result<PosetCausalSystem> {
    let sys = weakly_locally_controllable_system(rng, &poset.dual(), shape)?.dual();
    debug_assert!((0..poset.size()).all(|i| {
        let local = sys.derived(crate::system::SubsystemKind::Local(i)).unwrap();
        is_observable_pair(&local.c, &local.a).unwrap()
    }));
    Ok(sys)
}
