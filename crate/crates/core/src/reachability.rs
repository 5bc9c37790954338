//! Reachable subspaces, their structured approximations, and structured
//! pole placement.

use std::collections::BTreeMap;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blockmat::{BlockMatrix, Partition};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{char_poly, Poly};
use crate::rational::{int, Rational};
use crate::subspace::Subspace;
use crate::system::{PosetCausalSystem, SubsystemKind};

/// [B, AB, …, A^{n-1}B] with n the row dimension of A.
pub fn ctrb_matrix(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if !a.is_square() || a.nrows() != b.nrows() {
        return Err(Error::ShapeMismatch(format!(
            "controllability matrix of {}x{} and {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    let mut out = Matrix::zeros(a.nrows(), 0);
    let mut term = b.clone();
    for _ in 0..a.nrows() {
        out = out.hstack(&term)?;
        term = a.mul(&term)?;
    }
    Ok(out)
}

/// Smallest A-invariant subspace containing im B.
pub fn reachable_pair(a: &Matrix, b: &Matrix) -> Result<Subspace> {
    if !a.is_square() || a.nrows() != b.nrows() {
        return Err(Error::ShapeMismatch("reachable space of mismatched pair".into()));
    }
    let mut space = Subspace::image(b);
    loop {
        let next = space.sum(&space.map(a)?)?;
        if next.dim() == space.dim() {
            return Ok(space);
        }
        space = next;
    }
}

pub fn is_controllable_pair(a: &Matrix, b: &Matrix) -> Result<bool> {
    Ok(reachable_pair(a, b)?.is_full())
}

/// R for the global system.
pub fn reachable(sys: &PosetCausalSystem) -> Result<Subspace> {
    reachable_pair(sys.a(), sys.b())
}

/// R_i in global coordinates.
pub fn downstream_reachable(sys: &PosetCausalSystem, i: usize) -> Result<Subspace> {
    let down = sys.derived(SubsystemKind::Downstream(i))?;
    Ok(reachable_pair(&down.a, &down.b)?.embed_coordinates(sys.state_dim(), &down.state_coords))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachabilityFlags {
    pub controllable: bool,
    pub independently_controllable: bool,
    pub weakly_upstream_controllable: bool,
    pub weakly_locally_controllable: bool,
}

/// Internal consistency checks computed alongside a profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachabilityChecks {
    /// R equals the sum of the embedded downstream reachable spaces.
    pub downstream_sum: bool,
    /// Each R̃_j equals the projection of R onto X_j.
    pub tilde_is_projection: bool,
    /// R̃_i^i = X_i agrees with controllability of the local pair, per node.
    pub local_tests_agree: bool,
    /// R̄ ⊆ R° ⊆ R ⊆ R̃.
    pub chain: bool,
}

impl ReachabilityChecks {
    pub fn all(&self) -> bool {
        self.downstream_sum && self.tilde_is_projection && self.local_tests_agree && self.chain
    }
}

/// All reachability subspaces of a system. Pair maps are keyed `(i, j)` for
/// the space indexed by node i below and node j above, with i ∈ ↓j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachabilityProfile {
    pub reachable: Subspace,
    pub downstream: Vec<Subspace>,
    pub bar_pair: BTreeMap<(usize, usize), Subspace>,
    pub tilde_pair: BTreeMap<(usize, usize), Subspace>,
    pub bar: Vec<Subspace>,
    pub tilde: Vec<Subspace>,
    pub circ: Vec<Subspace>,
    pub hat: Vec<Subspace>,
    pub bar_total: Subspace,
    pub circ_total: Subspace,
    pub tilde_total: Subspace,
    pub hat_total: Subspace,
    pub local_controllable: Vec<bool>,
    pub flags: ReachabilityFlags,
    pub checks: ReachabilityChecks,
}

pub fn profile(sys: &PosetCausalSystem) -> Result<ReachabilityProfile> {
    let n = sys.state_dim();
    let p = sys.p();
    let part = sys.n();
    let poset = sys.poset();
    let blocks: Vec<Subspace> = (0..p).map(|i| Subspace::block(part, i)).collect();

    let reachable = reachable(sys)?;
    let downstream = (0..p)
        .map(|i| downstream_reachable(sys, i))
        .collect::<Result<Vec<_>>>()?;

    let mut bar_pair = BTreeMap::new();
    let mut tilde_pair = BTreeMap::new();
    for j in 0..p {
        for i in poset.down(j) {
            bar_pair.insert((i, j), blocks[i].intersect(&downstream[j])?);
            tilde_pair.insert((i, j), downstream[j].project_block(part, i)?);
        }
    }
    let bar: Vec<Subspace> = (0..p)
        .map(|j| Subspace::sum_of(n, poset.up(j).into_iter().map(|i| bar_pair[&(j, i)].clone())))
        .collect();
    let tilde: Vec<Subspace> = (0..p)
        .map(|j| Subspace::sum_of(n, poset.up(j).into_iter().map(|i| tilde_pair[&(j, i)].clone())))
        .collect();
    let circ = blocks
        .iter()
        .map(|x| x.intersect(&reachable))
        .collect::<Result<Vec<_>>>()?;
    let hat: Vec<Subspace> = (0..p).map(|j| tilde_pair[&(j, j)].clone()).collect();

    let bar_total = Subspace::sum_of(n, bar.iter().cloned());
    let circ_total = Subspace::sum_of(n, circ.iter().cloned());
    let tilde_total = Subspace::sum_of(n, tilde.iter().cloned());
    let hat_total = Subspace::sum_of(n, hat.iter().cloned());

    let local_controllable = (0..p)
        .map(|i| {
            let local = sys.derived(SubsystemKind::Local(i))?;
            is_controllable_pair(&local.a, &local.b)
        })
        .collect::<Result<Vec<_>>>()?;

    let downstream_sum = Subspace::sum_of(n, downstream.iter().cloned()) == reachable;
    let tilde_is_projection = (0..p).all(|j| {
        reachable
            .project_block(part, j)
            .is_ok_and(|proj| proj == tilde[j])
    });
    let local_tests_agree = (0..p).all(|i| local_controllable[i] == (hat[i] == blocks[i]));
    let chain = circ_total.contains(&bar_total)?
        && reachable.contains(&circ_total)?
        && tilde_total.contains(&reachable)?;

    let flags = ReachabilityFlags {
        controllable: reachable.is_full(),
        independently_controllable: bar_total.is_full(),
        weakly_upstream_controllable: tilde_total.is_full(),
        weakly_locally_controllable: local_controllable.iter().all(|&c| c),
    };
    Ok(ReachabilityProfile {
        reachable,
        downstream,
        bar_pair,
        tilde_pair,
        bar,
        tilde,
        circ,
        hat,
        bar_total,
        circ_total,
        tilde_total,
        hat_total,
        local_controllable,
        flags,
        checks: ReachabilityChecks {
            downstream_sum,
            tilde_is_projection,
            local_tests_agree,
            chain,
        },
    })
}

/// Per-node result of the weak local controllability test.
pub fn weakly_locally_controllable(sys: &PosetCausalSystem) -> Result<(bool, Vec<bool>)> {
    let per_node = (0..sys.p())
        .map(|i| {
            let local = sys.derived(SubsystemKind::Local(i))?;
            Ok(ctrb_matrix(&local.a, &local.b)?.rank() == local.a.nrows())
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok((per_node.iter().all(|&c| c), per_node))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPolyFactorization {
    pub blocks: Vec<Poly>,
    pub product: Poly,
    pub direct: Poly,
}

impl CharPolyFactorization {
    pub fn matches(&self) -> bool {
        self.product == self.direct
    }
}

/// Characteristic polynomials of the diagonal blocks, their product, and the
/// characteristic polynomial of the whole matrix.
pub fn char_poly_factored(a: &BlockMatrix) -> Result<CharPolyFactorization> {
    if a.row_partition() != a.col_partition() {
        return Err(Error::ShapeMismatch("diagonal blocks must be square".into()));
    }
    let blocks = (0..a.parts())
        .map(|i| char_poly(&a.block(i, i)))
        .collect::<Result<Vec<_>>>()?;
    let product = blocks.iter().fold(Poly::one(), |acc, q| &acc * q);
    let direct = char_poly(a.entries())?;
    Ok(CharPolyFactorization {
        blocks,
        product,
        direct,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolePlacement {
    /// Block-diagonal state feedback u = Fx.
    pub feedback: BlockMatrix,
    pub closed_loop: Poly,
}

const PLACEMENT_ATTEMPTS: usize = 64;

/// Block-diagonal F with char poly of A_ii + B_ii F_ii equal to `targets[i]`.
/// `seed` drives the randomized reduction to a single input.
pub fn pole_place(sys: &PosetCausalSystem, targets: &[Poly], seed: u64) -> Result<PolePlacement> {
    let p = sys.p();
    if targets.len() != p {
        return Err(Error::PartitionMismatch {
            expected: p,
            found: targets.len(),
        });
    }
    let (n, m) = (sys.n(), sys.m());
    let mut f = Matrix::zeros(m.total(), n.total());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..p {
        let target = &targets[i];
        if !target.is_monic() || target.degree() != Some(n.size(i)) {
            return Err(Error::InvalidTarget {
                node: i,
                reason: format!("expected a monic polynomial of degree {}", n.size(i)),
            });
        }
        let local = sys.derived(SubsystemKind::Local(i))?;
        if !is_controllable_pair(&local.a, &local.b)? {
            return Err(Error::NotWeaklyLocallyControllable { node: i });
        }
        if n.size(i) == 0 {
            continue;
        }
        let fi = place_block(&local.a, &local.b, target, &mut rng).ok_or(Error::PlacementFailed { node: i })?;
        for (r, gr) in m.range(i).enumerate() {
            for (c, gc) in n.range(i).enumerate() {
                f[(gr, gc)] = fi[(r, c)].clone();
            }
        }
    }
    let closed = sys.a().add(&sys.b().mul(&f)?)?;
    let closed_loop = char_poly(&closed)?;
    let expected = targets.iter().fold(Poly::one(), |acc, q| &acc * q);
    if closed_loop != expected {
        return Err(Error::PlacementFailed { node: 0 });
    }
    Ok(PolePlacement {
        feedback: BlockMatrix::new(f, m.clone(), n.clone())?,
        closed_loop,
    })
}

/// Ackermann's formula after a random reduction to one input.
fn place_block(a: &Matrix, b: &Matrix, target: &Poly, rng: &mut ChaCha8Rng) -> Option<Matrix> {
    let (nn, mm) = (a.nrows(), b.ncols());
    for attempt in 0..PLACEMENT_ATTEMPTS {
        let (f0, g) = if attempt == 0 {
            (Matrix::zeros(mm, nn), Matrix::from_rows(vec![vec![Rational::one(); 1]; mm], 1).ok()?)
        } else {
            let mut f0 = Matrix::zeros(mm, nn);
            let mut g = Matrix::zeros(mm, 1);
            for r in 0..mm {
                g[(r, 0)] = int(rng.gen_range(-3..=3));
                for c in 0..nn {
                    f0[(r, c)] = int(rng.gen_range(-2..=2));
                }
            }
            (f0, g)
        };
        let a1 = a.add(&b.mul(&f0).ok()?).ok()?;
        let b1 = b.mul(&g).ok()?;
        let Ok(ctrb_inv) = ctrb_matrix(&a1, &b1).ok()?.inverse() else {
            continue;
        };
        let mut last = Matrix::zeros(1, nn);
        last[(0, nn - 1)] = Rational::one();
        let k = last.mul(&ctrb_inv).ok()?.mul(&target.eval_matrix(&a1).ok()?).ok()?;
        let fi = f0.sub(&g.mul(&k).ok()?).ok()?;
        let closed = a.add(&b.mul(&fi).ok()?).ok()?;
        if char_poly(&closed).ok()? == *target {
            return Some(fi);
        }
    }
    None
}

/// Partition-shaped list of target polynomials (λ - r)^{n_i} for a common root r.
pub fn uniform_targets(n: &Partition, root: &Rational) -> Vec<Poly> {
    n.sizes()
        .iter()
        .map(|&k| (0..k).fold(Poly::one(), |acc, _| &acc * &Poly::linear(root)))
        .collect()
}
