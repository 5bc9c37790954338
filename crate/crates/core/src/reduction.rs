//! Kalman decomposition and structure-preserving compressions.

use std::fmt;
use std::str::FromStr;

use crate::blockmat::Partition;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::observability::{self, ObservabilityProfile};
use crate::reachability::{self, ReachabilityProfile};
use crate::subspace::Subspace;
use crate::system::PosetCausalSystem;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KalmanDecomposition {
    /// R ⊖ (R ∩ N)
    pub co: Subspace,
    /// R ∩ N
    pub c_obar: Subspace,
    /// (R + N)^⊥
    pub cbar_o: Subspace,
    /// N ⊖ (R ∩ N)
    pub cbar_obar: Subspace,
    /// Both formulas for X_co and X_c̄ō agree.
    pub formulas_agree: bool,
    /// Pairwise orthogonal with the expected direct sums.
    pub orthogonal_sums: bool,
}

pub fn kalman(sys: &PosetCausalSystem) -> Result<KalmanDecomposition> {
    let r = reachability::reachable(sys)?;
    let nn = observability::unobservable(sys)?;
    kalman_from(&r, &nn)
}

/// The four Kalman subspaces of given reachable and unobservable spaces.
pub fn kalman_from(r: &Subspace, nn: &Subspace) -> Result<KalmanDecomposition> {
    let both = r.intersect(nn)?;
    let co = r.ominus(&both)?;
    let c_obar = both.clone();
    let cbar_o = r.sum(nn)?.complement();
    let cbar_obar = nn.ominus(&both)?;
    let formulas_agree =
        co == nn.complement().project_onto(r)? && cbar_obar == r.complement().project_onto(nn)?;
    let parts = [&co, &c_obar, &cbar_o, &cbar_obar];
    let mut orthogonal = true;
    for (a, x) in parts.iter().enumerate() {
        for y in &parts[a + 1..] {
            orthogonal &= x.complement().contains(y)?;
        }
    }
    let total: usize = parts.iter().map(|s| s.dim()).sum();
    let orthogonal_sums = orthogonal
        && co.sum(&c_obar)? == *r
        && c_obar.sum(&cbar_obar)? == *nn
        && total == r.ambient_dim();
    Ok(KalmanDecomposition {
        co,
        c_obar,
        cbar_o,
        cbar_obar,
        formulas_agree,
        orthogonal_sums,
    })
}

/// Compression (G⁻¹VᵀAV, G⁻¹VᵀB, CV) with G = VᵀV.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compression {
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
}

pub fn compress_to(a: &Matrix, b: &Matrix, c: &Matrix, v: &Matrix) -> Result<Compression> {
    let vt = v.transpose();
    let g_inv = vt.mul(v)?.inverse()?;
    let left = g_inv.mul(&vt)?;
    Ok(Compression {
        a: left.mul(a)?.mul(v)?,
        b: left.mul(b)?,
        c: c.mul(v)?,
    })
}

/// Markov parameters C A^k B for k = 0..=k_max.
pub fn moments(a: &Matrix, b: &Matrix, c: &Matrix, k_max: usize) -> Result<Vec<Matrix>> {
    let mut out = Vec::with_capacity(k_max + 1);
    let mut term = b.clone();
    for _ in 0..=k_max {
        out.push(c.mul(&term)?);
        term = a.mul(&term)?;
    }
    Ok(out)
}

/// Equal Markov parameters up to k_max, by default n₁ + n₂ - 1.
pub fn moments_equal(
    sys1: (&Matrix, &Matrix, &Matrix),
    sys2: (&Matrix, &Matrix, &Matrix),
    k_max: Option<usize>,
) -> Result<bool> {
    let (a1, b1, c1) = sys1;
    let (a2, b2, c2) = sys2;
    if b1.ncols() != b2.ncols() || c1.nrows() != c2.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "{} inputs / {} outputs against {} inputs / {} outputs",
            b1.ncols(),
            c1.nrows(),
            b2.ncols(),
            c2.nrows()
        )));
    }
    let horizon = k_max.unwrap_or((a1.nrows() + a2.nrows()).saturating_sub(1));
    Ok(moments(a1, b1, c1, horizon)? == moments(a2, b2, c2, horizon)?)
}

pub fn systems_moments_equal(
    s1: &PosetCausalSystem,
    s2: &PosetCausalSystem,
    k_max: Option<usize>,
) -> Result<bool> {
    moments_equal((s1.a(), s1.b(), s1.c()), (s2.a(), s2.b(), s2.c()), k_max)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedReduction {
    /// R″ ⊖ (R′ ∩ N′)
    pub space: Subspace,
    pub compressed: Compression,
    pub contains_co: bool,
    pub horizon: usize,
    pub moments_preserved: bool,
}

/// Compression to R″ ⊖ (R′ ∩ N′) for R′ ⊆ R ⊆ R″ and N′ ⊆ N.
pub fn generalized_reduce(
    sys: &PosetCausalSystem,
    r_inner: &Subspace,
    r_outer: &Subspace,
    n_inner: &Subspace,
) -> Result<GeneralizedReduction> {
    let r = reachability::reachable(sys)?;
    let nn = observability::unobservable(sys)?;
    if !r.contains(r_inner)? {
        return Err(Error::InclusionViolation("R' is not contained in R".into()));
    }
    if !r_outer.contains(&r)? {
        return Err(Error::InclusionViolation("R is not contained in R''".into()));
    }
    if !nn.contains(n_inner)? {
        return Err(Error::InclusionViolation("N' is not contained in N".into()));
    }
    let space = r_outer.ominus(&r_inner.intersect(n_inner)?)?;
    let compressed = compress_to(sys.a(), sys.b(), sys.c(), &space.basis_matrix())?;
    let co = kalman_from(&r, &nn)?.co;
    let horizon = (sys.state_dim() + space.dim()).saturating_sub(1);
    let moments_preserved = moments_equal(
        (sys.a(), sys.b(), sys.c()),
        (&compressed.a, &compressed.b, &compressed.c),
        Some(horizon),
    )?;
    Ok(GeneralizedReduction {
        contains_co: space.contains(&co)?,
        space,
        compressed,
        horizon,
        moments_preserved,
    })
}

/// Which structured subspace to compress to. All formulas are applied blockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionVariant {
    /// R̃ ⊖ (R̄ ∩ N̄)
    Primal,
    /// R̃ ⊖ (R° ∩ N̄)
    PrimalCirc,
    /// N̄^⊥ ⊖ (Ñ^⊥ ∩ R̃^⊥)
    DualTilde,
    /// N̄^⊥ ⊖ (N°^⊥ ∩ R̃^⊥)
    DualCirc,
}

impl ReductionVariant {
    pub const ALL: [ReductionVariant; 4] = [
        ReductionVariant::Primal,
        ReductionVariant::PrimalCirc,
        ReductionVariant::DualTilde,
        ReductionVariant::DualCirc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReductionVariant::Primal => "primal",
            ReductionVariant::PrimalCirc => "primal-circ",
            ReductionVariant::DualTilde => "dual-tilde",
            ReductionVariant::DualCirc => "dual-circ",
        }
    }
}

impl fmt::Display for ReductionVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReductionVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|v| v.name() == s || v.name().replace('-', "_") == s)
            .ok_or_else(|| format!("unknown reduction variant {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedSystem {
    pub variant: ReductionVariant,
    /// X̃_j per node, in global coordinates.
    pub blocks: Vec<Subspace>,
    pub space: Subspace,
    /// Basis of X̃_j in the local coordinates of block j.
    pub bases: Vec<Matrix>,
    pub system: PosetCausalSystem,
    pub horizon: usize,
    pub moments_preserved: bool,
    pub contains_co: bool,
    /// P_{X_j} X̃ = P_{X_j} X_co for every j.
    pub matches_co_projections: bool,
}

/// Blockwise subspaces X̃_j for a variant.
pub fn variant_blocks(
    sys: &PosetCausalSystem,
    variant: ReductionVariant,
    reach: &ReachabilityProfile,
    obs: &ObservabilityProfile,
) -> Result<Vec<Subspace>> {
    let part = sys.n();
    (0..sys.p())
        .map(|j| {
            let x = Subspace::block(part, j);
            let perp = |s: &Subspace| x.ominus(s);
            match variant {
                ReductionVariant::Primal => reach.tilde[j].ominus(&reach.bar[j].intersect(&obs.bar[j])?),
                ReductionVariant::PrimalCirc => {
                    reach.tilde[j].ominus(&reach.circ[j].intersect(&obs.bar[j])?)
                }
                ReductionVariant::DualTilde => {
                    perp(&obs.bar[j])?.ominus(&perp(&obs.tilde[j])?.intersect(&perp(&reach.tilde[j])?)?)
                }
                ReductionVariant::DualCirc => {
                    perp(&obs.bar[j])?.ominus(&perp(&obs.circ[j])?.intersect(&perp(&reach.tilde[j])?)?)
                }
            }
        })
        .collect()
}

pub fn poset_reduce(sys: &PosetCausalSystem, variant: ReductionVariant) -> Result<ReducedSystem> {
    let reach = reachability::profile(sys)?;
    let obs = observability::profile(sys)?;
    let blocks = variant_blocks(sys, variant, &reach, &obs)?;
    reduce_to_blocks(sys, variant, blocks, &reach, &obs)
}

/// Compresses onto the structured subspace ⊕ blocks[j], blocks[j] ⊆ X_j.
pub fn reduce_to_blocks(
    sys: &PosetCausalSystem,
    variant: ReductionVariant,
    blocks: Vec<Subspace>,
    reach: &ReachabilityProfile,
    obs: &ObservabilityProfile,
) -> Result<ReducedSystem> {
    let part = sys.n();
    let n = sys.state_dim();
    let mut bases = Vec::with_capacity(sys.p());
    let mut v = Matrix::zeros(n, 0);
    for (j, block) in blocks.iter().enumerate() {
        let coords: Vec<usize> = part.range(j).collect();
        if !Subspace::block(part, j).contains(block)? {
            return Err(Error::InclusionViolation(format!(
                "reduction block {} leaves X_{}",
                j + 1,
                j + 1
            )));
        }
        let basis = block.basis_matrix();
        let all: Vec<usize> = (0..basis.ncols()).collect();
        bases.push(basis.select(&coords, &all));
        v = v.hstack(&basis)?;
    }
    let space = Subspace::sum_of(n, blocks.iter().cloned());
    let compressed = compress_to(sys.a(), sys.b(), sys.c(), &v)?;
    let reduced_n = Partition::new(blocks.iter().map(Subspace::dim).collect());
    let system = PosetCausalSystem::new(
        sys.poset().clone(),
        reduced_n,
        sys.m().clone(),
        sys.r().clone(),
        compressed.a,
        compressed.b,
        compressed.c,
        sys.d().clone(),
        None,
    )?;
    let horizon = (n + space.dim()).saturating_sub(1);
    let moments_preserved = systems_moments_equal(sys, &system, Some(horizon))?;
    let co = kalman_from(&reach.reachable, &obs.unobservable)?.co;
    let matches_co_projections = (0..sys.p()).all(|j| {
        matches!(
            (space.project_block(part, j), co.project_block(part, j)),
            (Ok(a), Ok(b)) if a == b
        )
    });
    Ok(ReducedSystem {
        variant,
        contains_co: space.contains(&co)?,
        blocks,
        space,
        bases,
        system,
        horizon,
        moments_preserved,
        matches_co_projections,
    })
}
