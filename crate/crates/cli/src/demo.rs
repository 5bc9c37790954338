//! Worked examples with their published values, recomputed from the embedded
//! corpus. A check passes only on exact equality.

use std::fmt::Write as _;

use posetcausal::corpus;
use posetcausal::observability;
use posetcausal::poly::char_poly;
use posetcausal::random::random_structured;
use posetcausal::rational::zero;
use posetcausal::reachability;
use posetcausal::reduction::{kalman, poset_reduce, ReductionVariant};
use posetcausal::subspace::parse_span;
use posetcausal::{PosetCausalSystem, Poset, Subspace};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::report::span_text;

/// Demo names in the order `all` runs them.
pub const NAMES: &[&str] = &[
    "order-example",
    "posets",
    "exLargeEx",
    "non-invariant",
    "hat-not-contained",
    "not-weakly-local",
    "exObsEx",
    "exNonOpt",
    "dual-minimal",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub label: String,
    pub published: String,
    pub computed: String,
    pub matched: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Demo {
    pub name: String,
    pub title: String,
    pub checks: Vec<Check>,
}

impl Demo {
    pub fn mismatches(&self) -> usize {
        self.checks.iter().filter(|c| !c.matched).count()
    }

    pub fn passed(&self) -> bool {
        self.mismatches() == 0
    }
}

struct Builder {
    n: usize,
    checks: Vec<Check>,
}

impl Builder {
    fn new(n: usize) -> Self {
        Builder { n, checks: Vec::new() }
    }

    fn push(&mut self, label: &str, published: String, computed: String, matched: bool) -> &mut Check {
        self.checks.push(Check {
            label: label.to_string(),
            published,
            computed,
            matched,
            note: None,
        });
        self.checks.last_mut().unwrap()
    }

    /// `published` lists the spanning vectors, e.g. `"e1, -e2+e4"`; empty for {0}.
    fn space(&mut self, label: &str, published: &str, computed: &Subspace) -> &mut Check {
        let want = parse_span(self.n, &format!("span{{{published}}}")).expect("published span parses");
        let matched = &want == computed;
        self.push(label, span_text(&want), span_text(computed), matched)
    }

    fn flag(&mut self, label: &str, published: bool, computed: bool) -> &mut Check {
        self.push(label, yes_no(published), yes_no(computed), published == computed)
    }

    fn value<T: ToString + PartialEq>(&mut self, label: &str, published: T, computed: T) -> &mut Check {
        let matched = published == computed;
        self.push(label, published.to_string(), computed.to_string(), matched)
    }

    fn nodes(&mut self, label: &str, published: &[usize], computed: &[usize]) -> &mut Check {
        let computed: Vec<usize> = computed.iter().map(|i| i + 1).collect();
        self.push(label, node_text(published), node_text(&computed), published == computed.as_slice())
    }
}

trait Annotate {
    fn note(&mut self, text: &str);
}

impl Annotate for Check {
    fn note(&mut self, text: &str) {
        self.note = Some(text.to_string());
    }
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn node_text(nodes: &[usize]) -> String {
    let items: Vec<String> = nodes.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(","))
}

fn strict(small: &Subspace, big: &Subspace) -> bool {
    small != big && big.contains(small).unwrap_or(false)
}

fn system(name: &str) -> CliResult<PosetCausalSystem> {
    Ok(corpus::system(name)?)
}

fn down_sets(b: &mut Builder, poset: &Poset, published: &[&[usize]]) {
    for (i, want) in published.iter().enumerate() {
        b.nodes(&format!("↓{}", i + 1), want, &poset.down(i));
    }
}

fn order_example() -> CliResult<Demo> {
    let poset = corpus::poset("order-example")?;
    let mut b = Builder::new(0);
    b.nodes("↓1", &[1, 2, 4], &poset.down(0));
    b.nodes("⇓1", &[2, 4], &poset.strict_down(0));
    b.nodes("↑4", &[1, 2, 3, 4], &poset.up(3));
    b.nodes("⇑2", &[1, 3], &poset.strict_up(1));
    let mut hasse: Vec<String> = poset
        .hasse_edges()
        .into_iter()
        .map(|(j, i)| format!("{}⪰{}", j + 1, i + 1))
        .collect();
    hasse.sort();
    b.value("Hasse diagram", "1⪰2, 2⪰4, 3⪰2".to_string(), hasse.join(", "));
    Ok(finish("order-example", "Four-element order and its Hasse diagram", b))
}

fn posets_demo() -> CliResult<Demo> {
    let ps = corpus::numbered_posets()?;
    let mut b = Builder::new(0);
    b.flag("P1 in-ultra transitive", true, ps[0].is_in_ultra());
    b.flag("P2 in-ultra transitive", true, ps[1].is_in_ultra());
    b.flag("P3 out-ultra transitive", true, ps[2].is_out_ultra());
    b.flag("P3 is the dual of P1", true, ps[2] == ps[0].dual());
    b.flag("P4 out-ultra transitive", true, ps[3].is_out_ultra());
    b.flag("P5 in-ultra transitive", false, ps[4].is_in_ultra());
    b.flag("P5 out-ultra transitive", false, ps[4].is_out_ultra());
    let total = (0..3).all(|i| (0..3).all(|j| ps[5].comparable(i, j)));
    b.flag("P6 is a total order", true, total);
    b.nodes("P5: ↓1", &[1, 3, 4], &ps[4].down(0));
    b.nodes("P5: ↑3", &[1, 3], &ps[4].up(2));
    Ok(finish("posets", "The six example posets", b))
}

fn large_example() -> CliResult<Demo> {
    let sys = system("exLargeEx")?;
    let r = reachability::profile(&sys)?;
    let mut b = Builder::new(sys.state_dim());
    down_sets(&mut b, sys.poset(), &[&[1, 2, 4], &[2, 4], &[3, 4], &[4]]);
    b.space("R", "e1, e3, e4, e5+e10, e6, e8, e9, e11", &r.reachable);
    let downstream = ["e1, e3, e4+e8, e9", "e4, e9", "e5+e10, e6+e11", "e9, e11"];
    for (i, want) in downstream.iter().enumerate() {
        b.space(&format!("R_{}", i + 1), want, &r.downstream[i]);
    }
    let pairs = [
        ((1, 1), "e1"),
        ((2, 1), "e3"),
        ((4, 1), "e9"),
        ((2, 2), "e4"),
        ((4, 2), "e9"),
        ((3, 3), ""),
        ((4, 3), ""),
        ((4, 4), "e9, e11"),
    ];
    for ((block, src), want) in pairs {
        b.space(&format!("R̄_{block}^{src}"), want, &r.bar_pair[&(block - 1, src - 1)]);
    }
    let bar = ["e1", "e3, e4", "", "e9, e11"];
    let circ = ["e1", "e3, e4", "e6", "e8, e9, e11"];
    let tilde = ["e1", "e3, e4", "e5, e6", "e8, e9, e10, e11"];
    for j in 0..4 {
        b.space(&format!("R̄_{}", j + 1), bar[j], &r.bar[j]);
        b.space(&format!("R°_{}", j + 1), circ[j], &r.circ[j]);
        b.space(&format!("R̃_{}", j + 1), tilde[j], &r.tilde[j]);
    }
    b.space("R̄", "e1, e3, e4, e9, e11", &r.bar_total);
    b.space("R°", "e1, e3, e4, e6, e8, e9, e11", &r.circ_total);
    b.space("R̃", "e1, e3, e4, e5, e6, e8, e9, e10, e11", &r.tilde_total);
    let full = Subspace::full(sys.state_dim());
    let chain = !r.bar_total.is_zero()
        && strict(&r.bar_total, &r.circ_total)
        && strict(&r.circ_total, &r.reachable)
        && strict(&r.reachable, &r.tilde_total)
        && strict(&r.tilde_total, &full);
    b.flag("{0} ⊊ R̄ ⊊ R° ⊊ R ⊊ R̃ ⊊ X", true, chain);
    b.flag("controllable", false, r.flags.controllable);
    b.flag("independently controllable", false, r.flags.independently_controllable);
    b.flag("weakly upstream controllable", false, r.flags.weakly_upstream_controllable);
    let a = sys.a();
    b.space("A R̄", "e1, e3, e9, e11", &r.bar_total.map(a)?);
    b.space("A R°", "e1, e3, e9, e11", &r.circ_total.map(a)?);
    b.space("A R", "e1, e3, e9, e11", &r.reachable.map(a)?);
    b.space("A R̃", "e1, e3, e9, e11, e5+e10", &r.tilde_total.map(a)?).note(
        "e5+e10 is A e7 and e7 is not in R̃; the image of R̃ is spanned by columns 1,3,4,5,6,8,9,10,11 of A",
    );
    Ok(finish("exLargeEx", "Reachability subspaces of the eleven-state example", b))
}

fn non_invariant() -> CliResult<Demo> {
    let sys = system("non-invariant")?;
    let r = reachability::profile(&sys)?;
    let mut b = Builder::new(sys.state_dim());
    b.space("R̄", "e1", &r.bar_total);
    b.space("R°", "e1", &r.circ_total);
    b.space("R", "e1, e2+e3", &r.reachable);
    b.space("R̃", "e1, e2, e3", &r.tilde_total);
    let a = sys.a();
    let a_bar = r.bar_total.map(a)?;
    b.space("A R̄", "e1+e2+e3", &a_bar);
    b.space("A R°", "e1+e2+e3", &r.circ_total.map(a)?);
    b.flag("A R̄ ⊆ R̄", false, r.bar_total.contains(&a_bar)?);
    let a_tilde = r.tilde_total.map(a)?;
    b.space("A R̃", "e1, e2, e3, e4", &a_tilde)
        .note("A has rank 2, so no image can be all of Q^4");
    b.flag("A R̃ ⊆ R̃", false, r.tilde_total.contains(&a_tilde)?);
    Ok(finish("non-invariant", "Structured reachability spaces that are not A-invariant", b))
}

fn hat_not_contained() -> CliResult<Demo> {
    let sys = system("hat-not-contained")?;
    let r = reachability::profile(&sys)?;
    let mut b = Builder::new(sys.state_dim());
    b.space("R", "e1+e2", &r.reachable);
    b.space("R_1", "e1+e2", &r.downstream[0]);
    b.space("R_2", "", &r.downstream[1]);
    b.space("R̃_1^1", "e1", &r.tilde_pair[&(0, 0)]);
    b.space("R̃_2^2", "", &r.tilde_pair[&(1, 1)]);
    b.space("R̂", "e1", &r.hat_total);
    b.flag("R̂ ⊆ R", false, r.reachable.contains(&r.hat_total)?);
    Ok(finish("hat-not-contained", "Local reachable parts need not lie in R", b))
}

fn not_weakly_local() -> CliResult<Demo> {
    let sys = system("not-weakly-local")?;
    let r = reachability::profile(&sys)?;
    let mut b = Builder::new(sys.state_dim());
    let poset = sys.poset();
    b.nodes("↓1", &[1, 2, 3], &poset.down(0));
    b.nodes("↓2", &[1, 2], &poset.down(1))
        .note("2 does not influence 1 in a chain 1⪰2⪰3; ↓2 = {2,3}");
    b.nodes("↓3", &[3], &poset.down(2));
    b.space("R", "e1, e2, e3, e4, e5", &r.reachable).note(
        "only the second input column touches e2 or e4, always as e2+e4, and A annihilates both",
    );
    b.space("R_1", "e1+e3, e2, e4+e5", &r.downstream[0])
        .note("A(e1+e3) = e1+2e3 lies outside the published span, so it cannot be a reachable space");
    b.space("R_2", "e3+e5", &r.downstream[1])
        .note("B(↓2,2) = e3+e5 and A maps it to e3, so e3 is reachable as well");
    b.space("R_3", "e5", &r.downstream[2]);
    b.space("R̃_1^1", "e1, e2", &r.tilde_pair[&(0, 0)]);
    b.space("R̃_2^2", "e3", &r.tilde_pair[&(1, 1)]);
    b.space("R̃_3^3", "e5", &r.tilde_pair[&(2, 2)]);
    b.flag("controllable", true, r.flags.controllable)
        .note("follows from the published R = X, which the matrices do not support");
    b.flag("weakly locally controllable", false, r.flags.weakly_locally_controllable);
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    let z = zero();
    let mut always = true;
    for _ in 0..100 {
        let f = random_structured(&mut rng, poset, sys.m(), sys.n(), 5, 1.0);
        let closed = sys.a().add(&sys.b().mul(&f)?)?;
        always &= char_poly(&closed)?.eval(&z) == z;
    }
    b.flag("0 is an eigenvalue of A+BF for 100 structured F", true, always);
    Ok(finish("not-weakly-local", "Controllability without structured pole placement", b))
}

fn observability_example() -> CliResult<Demo> {
    let sys = system("exObsEx")?;
    let o = observability::profile(&sys)?;
    let mut b = Builder::new(sys.state_dim());
    b.space("N", "-e2+e4, -e5+e10, e8, e9, e11", &o.unobservable);
    let upstream = ["e2", "e1, -e2+e4, e3", "e5, e7", "e2, e4, -e5+e10, e6, e8, e9, e11"];
    for (i, want) in upstream.iter().enumerate() {
        b.space(&format!("N_{}", i + 1), want, &o.upstream[i]);
    }
    let bar = ["", "", "", "e8, e9, e11"];
    let tilde = ["e2", "e4", "e5", "e8, e9, e10, e11"];
    for j in 0..4 {
        b.space(&format!("N̄^{}", j + 1), bar[j], &o.bar[j]);
        b.space(&format!("Ñ^{}", j + 1), tilde[j], &o.tilde[j]);
        b.space(&format!("N°^{}", j + 1), tilde[j], &o.circ[j]);
    }
    b.space("N̄", "e8, e9, e11", &o.bar_total);
    b.space("Ñ", "e2, e4, e5, e8, e9, e10, e11", &o.tilde_total);
    b.space("N°", "e2, e4, e5, e8, e9, e10, e11", &o.circ_total);
    let full = Subspace::full(sys.state_dim());
    let chain = !o.bar_total.is_zero()
        && strict(&o.bar_total, &o.unobservable)
        && strict(&o.unobservable, &o.circ_total)
        && o.circ_total == o.tilde_total
        && strict(&o.tilde_total, &full);
    b.flag("{0} ⊊ N̄ ⊊ N ⊊ N° = Ñ ⊊ X", true, chain);
    b.flag("observable", false, o.flags.observable);
    b.flag("independently observable", false, o.flags.independently_observable);
    b.flag("weakly downstream observable", false, o.flags.weakly_downstream_observable);
    let via_dual = observability::profile_via_duality(&sys)?;
    b.flag("duality route gives the same spaces", true, via_dual == o);
    Ok(finish("exObsEx", "Unobservability subspaces of the eleven-state example", b))
}

fn non_optimal() -> CliResult<Demo> {
    let sys = system("exNonOpt")?;
    let r = reachability::profile(&sys)?;
    let o = observability::profile(&sys)?;
    let mut b = Builder::new(sys.state_dim());
    b.space("R", "e1, e2+e4", &r.reachable);
    b.space("N", "e2, e4", &o.unobservable);
    let co = kalman(&sys)?.co;
    b.space("X_co", "e1", &co);
    b.space("P_X1 X_co", "e1", &co.project_block(sys.n(), 0)?);
    b.space("P_X2 X_co", "", &co.project_block(sys.n(), 1)?);
    b.space("R̃_1", "e1, e2", &r.tilde[0]);
    b.space("R̃_2", "e4", &r.tilde[1]);
    b.space("R°_1", "e1", &r.circ[0]);
    b.space("R°_2", "", &r.circ[1]);
    b.space("N̄^1", "e2", &o.bar[0]);
    b.space("N̄^2", "e4", &o.bar[1]);
    let red = poset_reduce(&sys, ReductionVariant::PrimalCirc)?;
    b.space("X_1'", "e1, e2", &red.blocks[0]);
    b.space("X_2'", "e4", &red.blocks[1]);
    b.value("dim X'", 3, red.space.dim());
    for j in 0..2 {
        let proj = co.project_block(sys.n(), j)?;
        b.flag(&format!("P_X{} X_co = X_{}'", j + 1, j + 1), false, proj == red.blocks[j]);
    }
    b.flag("R̄ = R°", true, r.bar_total == r.circ_total);
    b.flag(
        &format!("moments agree up to k = {}", red.horizon),
        true,
        red.moments_preserved,
    );
    Ok(finish("exNonOpt", "A structured reduction larger than the minimal one", b))
}

fn dual_minimal() -> CliResult<Demo> {
    let sys = system("exNonOpt")?;
    let r = reachability::profile(&sys)?;
    let o = observability::profile(&sys)?;
    let mut b = Builder::new(sys.state_dim());
    b.space("Ñ", "e2, e4", &o.tilde_total);
    b.space("N°", "e2, e4", &o.circ_total);
    b.space("N̄", "e2, e4", &o.bar_total);
    b.space("R̃", "e1, e2, e4", &r.tilde_total);
    let n_perp = o.unobservable.complement();
    b.space("N^⊥", "e1, e3", &n_perp);
    b.space("R^⊥", "e2-e4, e3", &r.reachable.complement());
    b.space("R̃^⊥", "e3", &r.tilde_total.complement());
    let unstructured = n_perp.ominus(&n_perp.intersect(&r.reachable.complement())?)?;
    b.space("N^⊥ ⊖ (N^⊥ ∩ R^⊥)", "e1", &unstructured);
    let literal = o
        .tilde_total
        .complement()
        .ominus(&o.bar_total.complement().intersect(&r.tilde_total.complement())?)?;
    b.space("Ñ^⊥ ⊖ (N̄^⊥ ∩ R̃^⊥)", "e1", &literal);
    let red = poset_reduce(&sys, ReductionVariant::DualTilde)?;
    b.value("dual-tilde reduced dimension", 1, red.system.state_dim());
    b.flag(
        &format!("moments agree up to k = {}", red.horizon),
        true,
        red.moments_preserved,
    );
    Ok(finish("dual-minimal", "A dual-side reduction reaching the minimal dimension", b))
}

fn finish(name: &str, title: &str, b: Builder) -> Demo {
    Demo {
        name: name.to_string(),
        title: title.to_string(),
        checks: b.checks,
    }
}

pub fn run(name: &str) -> CliResult<Demo> {
    match name {
        "order-example" => order_example(),
        "posets" => posets_demo(),
        "exLargeEx" => large_example(),
        "non-invariant" => non_invariant(),
        "hat-not-contained" => hat_not_contained(),
        "not-weakly-local" => not_weakly_local(),
        "exObsEx" => observability_example(),
        "exNonOpt" => non_optimal(),
        "dual-minimal" => dual_minimal(),
        other => Err(CliError::UnknownDemo(other.to_string())),
    }
}

pub fn render(demo: &Demo) -> String {
    let mut out = String::new();
    writeln!(out, "== {}: {}", demo.name, demo.title).unwrap();
    for c in &demo.checks {
        let tag = if c.matched { "ok      " } else { "MISMATCH" };
        writeln!(out, "  [{tag}] {}: published {} | computed {}", c.label, c.published, c.computed).unwrap();
        if let Some(note) = &c.note {
            if !c.matched {
                writeln!(out, "             note: {note}").unwrap();
            }
        }
    }
    writeln!(
        out,
        "  {} of {} checks match",
        demo.checks.len() - demo.mismatches(),
        demo.checks.len()
    )
    .unwrap();
    out
}
