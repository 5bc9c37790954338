//! Unobservable subspaces and their structured approximations, computed
//! directly and through the dual system.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poset::NodeSet;
use crate::reachability::{self, ctrb_matrix, ReachabilityProfile};
use crate::subspace::Subspace;
use crate::system::{PosetCausalSystem, SubsystemKind};

/// [C; CA; …; CA^{n-1}].
pub fn obsv_matrix(c: &Matrix, a: &Matrix) -> Result<Matrix> {
    if !a.is_square() || a.ncols() != c.ncols() {
        return Err(Error::ShapeMismatch(format!(
            "observability matrix of {}x{} and {}x{}",
            c.nrows(),
            c.ncols(),
            a.nrows(),
            a.ncols()
        )));
    }
    let mut out = Matrix::zeros(0, a.ncols());
    let mut term = c.clone();
    for _ in 0..a.nrows() {
        out = out.vstack(&term)?;
        term = term.mul(a)?;
    }
    Ok(out)
}

pub fn unobservable_pair(c: &Matrix, a: &Matrix) -> Result<Subspace> {
    Ok(Subspace::kernel(&obsv_matrix(c, a)?))
}

pub fn is_observable_pair(c: &Matrix, a: &Matrix) -> Result<bool> {
    Ok(unobservable_pair(c, a)?.is_zero())
}

/// N for the global system.
pub fn unobservable(sys: &PosetCausalSystem) -> Result<Subspace> {
    unobservable_pair(sys.c(), sys.a())
}

/// N_i in global coordinates.
pub fn upstream_indistinguishable(sys: &PosetCausalSystem, i: usize) -> Result<Subspace> {
    let up = sys.derived(SubsystemKind::Upstream(i))?;
    Ok(unobservable_pair(&up.c, &up.a)?.embed_coordinates(sys.state_dim(), &up.state_coords))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservabilityFlags {
    pub observable: bool,
    pub independently_observable: bool,
    pub weakly_downstream_observable: bool,
    pub weakly_locally_observable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservabilityChecks {
    /// N equals the intersection of N_i ⊕ X_{P \ ↑i}.
    pub upstream_intersection: bool,
    /// Each N̄^j equals X_j ∩ N.
    pub bar_is_intersection: bool,
    /// N̄_i^i = {0} agrees with observability of the local pair, per node.
    pub local_tests_agree: bool,
    /// N̄ ⊆ N ⊆ N° ⊆ Ñ.
    pub chain: bool,
}

impl ObservabilityChecks {
    pub fn all(&self) -> bool {
        self.upstream_intersection && self.bar_is_intersection && self.local_tests_agree && self.chain
    }
}

/// All unobservability subspaces of a system. Pair maps are keyed `(i, j)`
/// for the space indexed by node i below and node j above, with j ∈ ↑i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservabilityProfile {
    pub unobservable: Subspace,
    pub upstream: Vec<Subspace>,
    pub bar_pair: BTreeMap<(usize, usize), Subspace>,
    pub tilde_pair: BTreeMap<(usize, usize), Subspace>,
    pub bar: Vec<Subspace>,
    pub circ: Vec<Subspace>,
    pub tilde: Vec<Subspace>,
    pub bar_total: Subspace,
    pub circ_total: Subspace,
    pub tilde_total: Subspace,
    pub local_observable: Vec<bool>,
    pub flags: ObservabilityFlags,
    pub checks: ObservabilityChecks,
}

/// Direct computation from observability matrices.
pub fn profile(sys: &PosetCausalSystem) -> Result<ObservabilityProfile> {
    let p = sys.p();
    let part = sys.n();
    let blocks: Vec<Subspace> = (0..p).map(|i| Subspace::block(part, i)).collect();
    let unobservable = unobservable(sys)?;
    let upstream = (0..p)
        .map(|i| upstream_indistinguishable(sys, i))
        .collect::<Result<Vec<_>>>()?;
    let mut bar_pair = BTreeMap::new();
    let mut tilde_pair = BTreeMap::new();
    for i in 0..p {
        for j in sys.poset().up(i) {
            bar_pair.insert((i, j), upstream[i].intersect(&blocks[j])?);
            tilde_pair.insert((i, j), upstream[i].project_block(part, j)?);
        }
    }
    let circ = (0..p)
        .map(|j| unobservable.project_block(part, j))
        .collect::<Result<Vec<_>>>()?;
    let local_observable = (0..p)
        .map(|i| {
            let local = sys.derived(SubsystemKind::Local(i))?;
            is_observable_pair(&local.c, &local.a)
        })
        .collect::<Result<Vec<_>>>()?;
    assemble(sys, unobservable, upstream, bar_pair, tilde_pair, circ, local_observable)
}

/// Computation from the reachability profile of the dual system.
pub fn profile_via_duality(sys: &PosetCausalSystem) -> Result<ObservabilityProfile> {
    let dual = reachability::profile(&sys.dual())?;
    from_dual_reachability(sys, &dual)
}

/// Converts the reachability profile of `sys.dual()` into the observability
/// profile of `sys` through orthogonal complements inside coordinate blocks.
pub fn from_dual_reachability(
    sys: &PosetCausalSystem,
    dual: &ReachabilityProfile,
) -> Result<ObservabilityProfile> {
    let p = sys.p();
    let n = sys.state_dim();
    let part = sys.n();
    let poset = sys.poset();
    let blocks: Vec<Subspace> = (0..p).map(|i| Subspace::block(part, i)).collect();

    let unobservable = Subspace::full(n).ominus(&dual.reachable)?;
    let upstream = (0..p)
        .map(|i| {
            let up: NodeSet = poset.up(i).into_iter().collect();
            Subspace::blocks(part, &up).ominus(&dual.downstream[i])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut bar_pair = BTreeMap::new();
    let mut tilde_pair = BTreeMap::new();
    for i in 0..p {
        for j in poset.up(i) {
            // In the dual, j lies below i.
            bar_pair.insert((i, j), blocks[j].ominus(&dual.tilde_pair[&(j, i)])?);
            tilde_pair.insert((i, j), blocks[j].ominus(&dual.bar_pair[&(j, i)])?);
        }
    }
    let circ = (0..p)
        .map(|j| blocks[j].ominus(&dual.circ[j]))
        .collect::<Result<Vec<_>>>()?;
    let profile = assemble(
        sys,
        unobservable,
        upstream,
        bar_pair,
        tilde_pair,
        circ,
        dual.local_controllable.clone(),
    )?;
    // The per-node intersections must also match the dual per-node sums.
    for j in 0..p {
        if profile.bar[j] != blocks[j].ominus(&dual.tilde[j])?
            || profile.tilde[j] != blocks[j].ominus(&dual.bar[j])?
        {
            return Err(Error::InclusionViolation(format!(
                "dual per-node spaces disagree at node {}",
                j + 1
            )));
        }
    }
    Ok(profile)
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    sys: &PosetCausalSystem,
    unobservable: Subspace,
    upstream: Vec<Subspace>,
    bar_pair: BTreeMap<(usize, usize), Subspace>,
    tilde_pair: BTreeMap<(usize, usize), Subspace>,
    circ: Vec<Subspace>,
    local_observable: Vec<bool>,
) -> Result<ObservabilityProfile> {
    let p = sys.p();
    let n = sys.state_dim();
    let part = sys.n();
    let poset = sys.poset();
    let blocks: Vec<Subspace> = (0..p).map(|i| Subspace::block(part, i)).collect();

    // Every space below lies in X_j, so intersecting from X_j is exact.
    let bar: Vec<Subspace> = (0..p)
        .map(|j| Subspace::intersection_of(n, poset.down(j).into_iter().map(|i| bar_pair[&(i, j)].clone())))
        .collect();
    let tilde: Vec<Subspace> = (0..p)
        .map(|j| Subspace::intersection_of(n, poset.down(j).into_iter().map(|i| tilde_pair[&(i, j)].clone())))
        .collect();
    let bar_total = Subspace::sum_of(n, bar.iter().cloned());
    let circ_total = Subspace::sum_of(n, circ.iter().cloned());
    let tilde_total = Subspace::sum_of(n, tilde.iter().cloned());

    let upstream_intersection = Subspace::intersection_of(
        n,
        (0..p).map(|i| {
            let outside: NodeSet = (0..p).filter(|k| !poset.geq(*k, i)).collect();
            upstream[i]
                .sum(&Subspace::blocks(part, &outside))
                .expect("same ambient")
        }),
    ) == unobservable;
    let bar_is_intersection = (0..p).all(|j| {
        blocks[j]
            .intersect(&unobservable)
            .is_ok_and(|s| s == bar[j])
    });
    let local_tests_agree = (0..p).all(|i| local_observable[i] == bar_pair[&(i, i)].is_zero());
    let chain = unobservable.contains(&bar_total)?
        && circ_total.contains(&unobservable)?
        && tilde_total.contains(&circ_total)?;

    let flags = ObservabilityFlags {
        observable: unobservable.is_zero(),
        independently_observable: tilde_total.is_zero(),
        weakly_downstream_observable: bar_total.is_zero(),
        weakly_locally_observable: (0..p).all(|i| bar_pair[&(i, i)].is_zero()),
    };
    Ok(ObservabilityProfile {
        unobservable,
        upstream,
        bar_pair,
        tilde_pair,
        bar,
        circ,
        tilde,
        bar_total,
        circ_total,
        tilde_total,
        local_observable,
        flags,
        checks: ObservabilityChecks {
            upstream_intersection,
            bar_is_intersection,
            local_tests_agree,
            chain,
        },
    })
}

/// Observability matrix of a pair through the transpose of a controllability matrix.
pub fn obsv_via_ctrb(c: &Matrix, a: &Matrix) -> Result<Matrix> {
    Ok(ctrb_matrix(&a.transpose(), &c.transpose())?.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn obsv_matches_transposed_ctrb() {
        let a = Matrix::from_ints(&[[1, 2], [0, 3]]);
        let c = Matrix::from_ints(&[[1, 1]]);
        assert_eq!(obsv_matrix(&c, &a).unwrap(), obsv_via_ctrb(&c, &a).unwrap());
    }

    #[test]
    fn kernel_of_unobservable_chain() {
        let a = Matrix::from_ints(&[[0, 1], [0, 0]]);
        assert!(is_observable_pair(&Matrix::from_ints(&[[1, 0]]), &a).unwrap());
        let n = unobservable_pair(&Matrix::from_ints(&[[0, 1]]), &a).unwrap();
        assert_eq!(n.to_string(), "span{e1}");
    }
}
