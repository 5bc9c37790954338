//! Verification of the identities linking a system and its dual.

use crate::error::Result;
use crate::observability::{self, ObservabilityProfile};
use crate::poset::NodeSet;
use crate::reachability::{self, ReachabilityProfile};
use crate::subspace::Subspace;
use crate::system::PosetCausalSystem;

/// One identity instance with both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    /// Nodes the instance refers to, 0-based.
    pub nodes: Vec<usize>,
    pub lhs: Subspace,
    pub rhs: Subspace,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    pub aggregate: Vec<IdentityCheck>,
    pub per_node: Vec<IdentityCheck>,
    pub per_pair: Vec<IdentityCheck>,
    pub further: Vec<IdentityCheck>,
    /// Weak local controllability of the system against weak local
    /// observability of its dual, and the converse.
    pub local_classification: [bool; 2],
}

impl DualityReport {
    pub fn checks(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.aggregate
            .iter()
            .chain(&self.per_node)
            .chain(&self.per_pair)
            .chain(&self.further)
    }

    pub fn failures(&self) -> Vec<&IdentityCheck> {
        self.checks().filter(|c| !c.passed()).collect()
    }

    pub fn all_passed(&self) -> bool {
        self.failures().is_empty() && self.local_classification.iter().all(|&b| b)
    }

    pub fn count(&self) -> usize {
        self.checks().count()
    }
}

/// Profiles of a system and of its dual, all computed directly.
pub struct DualProfiles {
    pub reach: ReachabilityProfile,
    pub obs: ObservabilityProfile,
    pub dual_reach: ReachabilityProfile,
    pub dual_obs: ObservabilityProfile,
}

impl DualProfiles {
    pub fn compute(sys: &PosetCausalSystem) -> Result<Self> {
        let dual = sys.dual();
        Ok(DualProfiles {
            reach: reachability::profile(sys)?,
            obs: observability::profile(sys)?,
            dual_reach: reachability::profile(&dual)?,
            dual_obs: observability::profile(&dual)?,
        })
    }
}

pub fn verify_duality(sys: &PosetCausalSystem) -> Result<DualityReport> {
    let profiles = DualProfiles::compute(sys)?;
    verify_with(sys, &profiles)
}

pub fn verify_with(sys: &PosetCausalSystem, pr: &DualProfiles) -> Result<DualityReport> {
    let p = sys.p();
    let part = sys.n();
    let poset = sys.poset();
    let blocks: Vec<Subspace> = (0..p).map(|i| Subspace::block(part, i)).collect();
    let (r, o, rd, od) = (&pr.reach, &pr.obs, &pr.dual_reach, &pr.dual_obs);
    let check = |name: &str, nodes: Vec<usize>, lhs: Subspace, rhs: Subspace| IdentityCheck {
        name: name.to_string(),
        nodes,
        lhs,
        rhs,
    };

    let aggregate = vec![
        check("dual R_bar = N_tilde^perp", vec![], rd.bar_total.clone(), o.tilde_total.complement()),
        check("dual R_circ = N_circ^perp", vec![], rd.circ_total.clone(), o.circ_total.complement()),
        check("dual R_tilde = N_bar^perp", vec![], rd.tilde_total.clone(), o.bar_total.complement()),
        check("dual N_bar = R_tilde^perp", vec![], od.bar_total.clone(), r.tilde_total.complement()),
        check("dual N_circ = R_circ^perp", vec![], od.circ_total.clone(), r.circ_total.complement()),
        check("dual N_tilde = R_bar^perp", vec![], od.tilde_total.clone(), r.bar_total.complement()),
    ];

    let mut per_node = Vec::new();
    for i in 0..p {
        let up: NodeSet = poset.up(i).into_iter().collect();
        let down: NodeSet = poset.down(i).into_iter().collect();
        per_node.push(check(
            "X_up ominus dual R_i = N_i",
            vec![i],
            Subspace::blocks(part, &up).ominus(&rd.downstream[i])?,
            o.upstream[i].clone(),
        ));
        per_node.push(check(
            "X_down ominus dual N_i = R_i",
            vec![i],
            Subspace::blocks(part, &down).ominus(&od.upstream[i])?,
            r.downstream[i].clone(),
        ));
    }

    let mut per_pair = Vec::new();
    for j in 0..p {
        for i in poset.down(j) {
            // j dominates i
            per_pair.push(check(
                "dual N_tilde_j^i = X_i ominus R_bar_i^j",
                vec![i, j],
                od.tilde_pair[&(j, i)].clone(),
                blocks[i].ominus(&r.bar_pair[&(i, j)])?,
            ));
            per_pair.push(check(
                "dual N_bar_j^i = X_i ominus R_tilde_i^j",
                vec![i, j],
                od.bar_pair[&(j, i)].clone(),
                blocks[i].ominus(&r.tilde_pair[&(i, j)])?,
            ));
        }
        for i in poset.up(j) {
            // i dominates j
            per_pair.push(check(
                "dual R_tilde_i^j = X_i ominus N_bar_j^i",
                vec![i, j],
                rd.tilde_pair[&(i, j)].clone(),
                blocks[i].ominus(&o.bar_pair[&(j, i)])?,
            ));
            per_pair.push(check(
                "dual R_bar_i^j = X_i ominus N_tilde_j^i",
                vec![i, j],
                rd.bar_pair[&(i, j)].clone(),
                blocks[i].ominus(&o.tilde_pair[&(j, i)])?,
            ));
        }
    }

    let mut further = Vec::new();
    for j in 0..p {
        let x = &blocks[j];
        further.push(check("dual R_bar_j = X_j ominus N_tilde^j", vec![j], rd.bar[j].clone(), x.ominus(&o.tilde[j])?));
        further.push(check("dual R_circ_j = X_j ominus N_circ^j", vec![j], rd.circ[j].clone(), x.ominus(&o.circ[j])?));
        further.push(check("dual R_tilde_j = X_j ominus N_bar^j", vec![j], rd.tilde[j].clone(), x.ominus(&o.bar[j])?));
        further.push(check("dual N_bar^j = X_j ominus R_tilde_j", vec![j], od.bar[j].clone(), x.ominus(&r.tilde[j])?));
        further.push(check("dual N_circ^j = X_j ominus R_circ_j", vec![j], od.circ[j].clone(), x.ominus(&r.circ[j])?));
        further.push(check("dual N_tilde^j = X_j ominus R_bar_j", vec![j], od.tilde[j].clone(), x.ominus(&r.bar[j])?));
    }

    let local_classification = [
        r.flags.weakly_locally_controllable == od.flags.weakly_locally_observable,
        o.flags.weakly_locally_observable == rd.flags.weakly_locally_controllable,
    ];
    Ok(DualityReport {
        aggregate,
        per_node,
        per_pair,
        further,
        local_classification,
    })
}
