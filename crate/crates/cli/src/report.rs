//! The analysis report model and its two renderers.

use std::fmt::Write as _;

use posetcausal::duality::{verify_with, DualProfiles};
use posetcausal::rational::format_rational;
use posetcausal::observability::ObservabilityProfile;
use posetcausal::reachability::ReachabilityProfile;
use posetcausal::reduction::{kalman_from, reduce_to_blocks, variant_blocks, ReductionVariant};
use posetcausal::{PosetCausalSystem, Result, Subspace};
use serde::Serialize;

/// A subspace as a canonical basis of rational row vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpaceReport {
    pub dim: usize,
    pub span: String,
    pub basis: Vec<Vec<String>>,
}

impl From<&Subspace> for SpaceReport {
    fn from(s: &Subspace) -> Self {
        SpaceReport {
            dim: s.dim(),
            span: span_text(s),
            basis: s
                .basis()
                .iter()
                .map(|v| v.iter().map(format_rational).collect())
                .collect(),
        }
    }
}

/// `{0}` for the zero subspace, `span{…}` otherwise.
pub fn span_text(s: &Subspace) -> String {
    if s.is_zero() {
        "{0}".to_string()
    } else {
        s.to_string()
    }
}

/// One link of an inclusion chain: `=`, `⊊`, or `⊄` if the inclusion fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainLink {
    pub left: String,
    pub right: String,
    pub relation: String,
}

fn chain(named: &[(&str, &Subspace)]) -> Vec<ChainLink> {
    named
        .windows(2)
        .map(|w| {
            let (l, r) = (w[0].1, w[1].1);
            let relation = if l == r {
                "="
            } else if r.contains(l).unwrap_or(false) {
                "⊊"
            } else {
                "⊄"
            };
            ChainLink {
                left: w[0].0.to_string(),
                right: w[1].0.to_string(),
                relation: relation.to_string(),
            }
        })
        .collect()
}

fn chain_text(links: &[ChainLink]) -> String {
    let mut out = links.first().map(|l| l.left.clone()).unwrap_or_default();
    for l in links {
        write!(out, " {} {}", l.relation, l.right).unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairReport {
    /// 1-based node whose state block holds the space.
    pub block: usize,
    /// 1-based node of the derived system the space comes from.
    pub node: usize,
    pub space: SpaceReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SystemSummary {
    pub p: usize,
    /// Covering pairs [j, i], 1-based, meaning j ⪰ i.
    pub hasse_edges: Vec<[usize; 2]>,
    pub n: Vec<usize>,
    pub m: Vec<usize>,
    pub r: Vec<usize>,
    pub state_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReachabilityReport {
    pub reachable: SpaceReport,
    pub downstream: Vec<SpaceReport>,
    pub bar_pairs: Vec<PairReport>,
    pub tilde_pairs: Vec<PairReport>,
    pub bar: Vec<SpaceReport>,
    pub circ: Vec<SpaceReport>,
    pub tilde: Vec<SpaceReport>,
    pub bar_total: SpaceReport,
    pub circ_total: SpaceReport,
    pub tilde_total: SpaceReport,
    pub hat_total: SpaceReport,
    pub chain: Vec<ChainLink>,
    pub controllable: bool,
    pub independently_controllable: bool,
    pub weakly_upstream_controllable: bool,
    pub weakly_locally_controllable: bool,
    pub local_controllable: Vec<bool>,
    pub consistency_checks_passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObservabilityReport {
    pub unobservable: SpaceReport,
    pub upstream: Vec<SpaceReport>,
    pub bar_pairs: Vec<PairReport>,
    pub tilde_pairs: Vec<PairReport>,
    pub bar: Vec<SpaceReport>,
    pub circ: Vec<SpaceReport>,
    pub tilde: Vec<SpaceReport>,
    pub bar_total: SpaceReport,
    pub circ_total: SpaceReport,
    pub tilde_total: SpaceReport,
    pub chain: Vec<ChainLink>,
    pub observable: bool,
    pub independently_observable: bool,
    pub weakly_downstream_observable: bool,
    pub weakly_locally_observable: bool,
    pub local_observable: Vec<bool>,
    pub consistency_checks_passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityFailure {
    pub name: String,
    pub nodes: Vec<usize>,
    pub lhs: SpaceReport,
    pub rhs: SpaceReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReportView {
    pub identities_checked: usize,
    pub all_passed: bool,
    pub local_classification: [bool; 2],
    pub failures: Vec<IdentityFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VariantReport {
    pub variant: String,
    pub block_dims: Vec<usize>,
    pub total_dim: usize,
    pub horizon: usize,
    pub moments_preserved: bool,
    pub contains_co: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub co: SpaceReport,
    pub variants: Vec<VariantReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub system: SystemSummary,
    pub reachability: ReachabilityReport,
    pub observability: ObservabilityReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duality: Option<DualityReportView>,
    pub reduction: ReductionReport,
}

fn spaces(list: &[Subspace]) -> Vec<SpaceReport> {
    list.iter().map(SpaceReport::from).collect()
}

fn pairs<'a>(map: impl IntoIterator<Item = (&'a (usize, usize), &'a Subspace)>, block_first: bool) -> Vec<PairReport> {
    let mut out: Vec<PairReport> = map
        .into_iter()
        .map(|(&(a, b), s)| {
            let (block, node) = if block_first { (a, b) } else { (b, a) };
            PairReport {
                block: block + 1,
                node: node + 1,
                space: s.into(),
            }
        })
        .collect();
    out.sort_by_key(|p| (p.node, p.block));
    out
}

fn reachability_report(sys: &PosetCausalSystem, r: &ReachabilityProfile) -> ReachabilityReport {
    let zero = Subspace::zero(sys.state_dim());
    let full = Subspace::full(sys.state_dim());
    ReachabilityReport {
        reachable: (&r.reachable).into(),
        downstream: spaces(&r.downstream),
        bar_pairs: pairs(&r.bar_pair, true),
        tilde_pairs: pairs(&r.tilde_pair, true),
        bar: spaces(&r.bar),
        circ: spaces(&r.circ),
        tilde: spaces(&r.tilde),
        bar_total: (&r.bar_total).into(),
        circ_total: (&r.circ_total).into(),
        tilde_total: (&r.tilde_total).into(),
        hat_total: (&r.hat_total).into(),
        chain: chain(&[
            ("{0}", &zero),
            ("R̄", &r.bar_total),
            ("R°", &r.circ_total),
            ("R", &r.reachable),
            ("R̃", &r.tilde_total),
            ("X", &full),
        ]),
        controllable: r.flags.controllable,
        independently_controllable: r.flags.independently_controllable,
        weakly_upstream_controllable: r.flags.weakly_upstream_controllable,
        weakly_locally_controllable: r.flags.weakly_locally_controllable,
        local_controllable: r.local_controllable.clone(),
        consistency_checks_passed: r.checks.all(),
    }
}

fn observability_report(sys: &PosetCausalSystem, o: &ObservabilityProfile) -> ObservabilityReport {
    let zero = Subspace::zero(sys.state_dim());
    let full = Subspace::full(sys.state_dim());
    ObservabilityReport {
        unobservable: (&o.unobservable).into(),
        upstream: spaces(&o.upstream),
        // keyed (node below, block above)
        bar_pairs: pairs(&o.bar_pair, false),
        tilde_pairs: pairs(&o.tilde_pair, false),
        bar: spaces(&o.bar),
        circ: spaces(&o.circ),
        tilde: spaces(&o.tilde),
        bar_total: (&o.bar_total).into(),
        circ_total: (&o.circ_total).into(),
        tilde_total: (&o.tilde_total).into(),
        chain: chain(&[
            ("{0}", &zero),
            ("N̄", &o.bar_total),
            ("N", &o.unobservable),
            ("N°", &o.circ_total),
            ("Ñ", &o.tilde_total),
            ("X", &full),
        ]),
        observable: o.flags.observable,
        independently_observable: o.flags.independently_observable,
        weakly_downstream_observable: o.flags.weakly_downstream_observable,
        weakly_locally_observable: o.flags.weakly_locally_observable,
        local_observable: o.local_observable.clone(),
        consistency_checks_passed: o.checks.all(),
    }
}

/// Builds the full report; the duality section is skipped on request.
pub fn analyze(sys: &PosetCausalSystem, with_duality: bool) -> Result<AnalysisReport> {
    let profiles = DualProfiles::compute(sys)?;
    let (r, o) = (&profiles.reach, &profiles.obs);
    let duality = if with_duality {
        let report = verify_with(sys, &profiles)?;
        Some(DualityReportView {
            identities_checked: report.count(),
            all_passed: report.all_passed(),
            local_classification: report.local_classification,
            failures: report
                .failures()
                .into_iter()
                .map(|c| IdentityFailure {
                    name: c.name.clone(),
                    nodes: c.nodes.iter().map(|i| i + 1).collect(),
                    lhs: (&c.lhs).into(),
                    rhs: (&c.rhs).into(),
                })
                .collect(),
        })
    } else {
        None
    };
    let co = kalman_from(&r.reachable, &o.unobservable)?.co;
    let variants = ReductionVariant::ALL
        .into_iter()
        .map(|v| {
            let blocks = variant_blocks(sys, v, r, o)?;
            let red = reduce_to_blocks(sys, v, blocks, r, o)?;
            Ok(VariantReport {
                variant: v.name().to_string(),
                block_dims: red.blocks.iter().map(Subspace::dim).collect(),
                total_dim: red.space.dim(),
                horizon: red.horizon,
                moments_preserved: red.moments_preserved,
                contains_co: red.contains_co,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AnalysisReport {
        system: SystemSummary {
            p: sys.p(),
            hasse_edges: sys.poset().hasse_edges().into_iter().map(|(j, i)| [j + 1, i + 1]).collect(),
            n: sys.n().sizes().to_vec(),
            m: sys.m().sizes().to_vec(),
            r: sys.r().sizes().to_vec(),
            state_dim: sys.state_dim(),
        },
        reachability: reachability_report(sys, r),
        observability: observability_report(sys, o),
        duality,
        reduction: ReductionReport {
            co: (&co).into(),
            variants,
        },
    })
}

pub fn render_json(report: &AnalysisReport) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    text
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn per_node(out: &mut String, label: &str, list: &[SpaceReport]) {
    for (j, s) in list.iter().enumerate() {
        writeln!(out, "  {label}_{} = {}", j + 1, s.span).unwrap();
    }
}

pub fn render_text(report: &AnalysisReport) -> String {
    let mut out = String::new();
    let s = &report.system;
    let edges: Vec<String> = s.hasse_edges.iter().map(|[j, i]| format!("{j}⪰{i}")).collect();
    writeln!(out, "system: p = {}, covering relations {}", s.p, if edges.is_empty() { "none".into() } else { edges.join(", ") }).unwrap();
    writeln!(out, "  n = {:?}, m = {:?}, r = {:?}, state dimension {}", s.n, s.m, s.r, s.state_dim).unwrap();

    let r = &report.reachability;
    writeln!(out, "\nreachability").unwrap();
    writeln!(out, "  R = {}", r.reachable.span).unwrap();
    per_node(&mut out, "R", &r.downstream);
    for pr in &r.bar_pairs {
        writeln!(out, "  R̄_{}^{} = {}", pr.block, pr.node, pr.space.span).unwrap();
    }
    per_node(&mut out, "R̄", &r.bar);
    per_node(&mut out, "R°", &r.circ);
    per_node(&mut out, "R̃", &r.tilde);
    writeln!(out, "  R̄ = {}", r.bar_total.span).unwrap();
    writeln!(out, "  R° = {}", r.circ_total.span).unwrap();
    writeln!(out, "  R̃ = {}", r.tilde_total.span).unwrap();
    writeln!(out, "  R̂ = {}", r.hat_total.span).unwrap();
    writeln!(out, "  chain: {}", chain_text(&r.chain)).unwrap();
    writeln!(out, "  controllable: {}", yes_no(r.controllable)).unwrap();
    writeln!(out, "  independently controllable: {}", yes_no(r.independently_controllable)).unwrap();
    writeln!(out, "  weakly upstream controllable: {}", yes_no(r.weakly_upstream_controllable)).unwrap();
    writeln!(out, "  weakly locally controllable: {}", yes_no(r.weakly_locally_controllable)).unwrap();
    writeln!(out, "  consistency checks: {}", if r.consistency_checks_passed { "passed" } else { "FAILED" }).unwrap();

    let o = &report.observability;
    writeln!(out, "\nobservability").unwrap();
    writeln!(out, "  N = {}", o.unobservable.span).unwrap();
    per_node(&mut out, "N", &o.upstream);
    per_node(&mut out, "N̄^", &o.bar);
    per_node(&mut out, "N°^", &o.circ);
    per_node(&mut out, "Ñ^", &o.tilde);
    writeln!(out, "  N̄ = {}", o.bar_total.span).unwrap();
    writeln!(out, "  N° = {}", o.circ_total.span).unwrap();
    writeln!(out, "  Ñ = {}", o.tilde_total.span).unwrap();
    writeln!(out, "  chain: {}", chain_text(&o.chain)).unwrap();
    writeln!(out, "  {}", if o.observable { "observable" } else { "not observable" }).unwrap();
    writeln!(out, "  independently observable: {}", yes_no(o.independently_observable)).unwrap();
    writeln!(out, "  weakly downstream observable: {}", yes_no(o.weakly_downstream_observable)).unwrap();
    writeln!(out, "  weakly locally observable: {}", yes_no(o.weakly_locally_observable)).unwrap();
    writeln!(out, "  consistency checks: {}", if o.consistency_checks_passed { "passed" } else { "FAILED" }).unwrap();

    if let Some(d) = &report.duality {
        writeln!(out, "\nduality").unwrap();
        writeln!(
            out,
            "  {} identities checked, {} failed; local classification {}",
            d.identities_checked,
            d.failures.len(),
            if d.local_classification.iter().all(|&b| b) { "consistent" } else { "INCONSISTENT" }
        )
        .unwrap();
        for f in &d.failures {
            writeln!(out, "  FAILED {} at {:?}: {} vs {}", f.name, f.nodes, f.lhs.span, f.rhs.span).unwrap();
        }
    }

    writeln!(out, "\nreduction").unwrap();
    writeln!(out, "  X_co = {}", report.reduction.co.span).unwrap();
    for v in &report.reduction.variants {
        writeln!(
            out,
            "  {}: block dimensions {:?}, total {}, moments up to {} {}",
            v.variant,
            v.block_dims,
            v.total_dim,
            v.horizon,
            if v.moments_preserved { "preserved" } else { "NOT preserved" }
        )
        .unwrap();
    }
    out
}
