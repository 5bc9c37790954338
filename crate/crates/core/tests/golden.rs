//! Published example values, checked for exact basis equality.

use posetcausal::corpus;
use posetcausal::observability;
use posetcausal::poly::char_poly;
use posetcausal::random::random_structured;
use posetcausal::reachability::{self, char_poly_factored};
use posetcausal::reduction::{kalman, poset_reduce, ReductionVariant};
use posetcausal::subspace::parse_span;
use posetcausal::{Matrix, Poly, Subspace};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sp(n: usize, vectors: &str) -> Subspace {
    parse_span(n, &format!("span{{{vectors}}}")).unwrap()
}

fn strict(small: &Subspace, big: &Subspace) -> bool {
    big.contains(small).unwrap() && small != big
}

#[test]
fn large_reachability_example() {
    let sys = corpus::system("exLargeEx").unwrap();
    let r = reachability::profile(&sys).unwrap();
    let n = 11;
    assert_eq!(r.reachable, sp(n, "e1, e3, e4, e5+e10, e6, e8, e9, e11"));
    assert_eq!(r.downstream[0], sp(n, "e1, e3, e4+e8, e9"));
    assert_eq!(r.downstream[1], sp(n, "e4, e9"));
    assert_eq!(r.downstream[2], sp(n, "e5+e10, e6+e11"));
    assert_eq!(r.downstream[3], sp(n, "e9, e11"));

    // keyed (block, source)
    let bar = [
        ((0, 0), "e1"),
        ((1, 0), "e3"),
        ((3, 0), "e9"),
        ((1, 1), "e4"),
        ((3, 1), "e9"),
        ((2, 2), ""),
        ((3, 2), ""),
        ((3, 3), "e9, e11"),
    ];
    assert_eq!(r.bar_pair.len(), bar.len());
    for (key, want) in bar {
        assert_eq!(r.bar_pair[&key], sp(n, want), "pair {key:?}");
    }

    let bar_j = ["e1", "e3, e4", "", "e9, e11"];
    let circ_j = ["e1", "e3, e4", "e6", "e8, e9, e11"];
    let tilde_j = ["e1", "e3, e4", "e5, e6", "e8, e9, e10, e11"];
    for j in 0..4 {
        assert_eq!(r.bar[j], sp(n, bar_j[j]), "bar {j}");
        assert_eq!(r.circ[j], sp(n, circ_j[j]), "circ {j}");
        assert_eq!(r.tilde[j], sp(n, tilde_j[j]), "tilde {j}");
    }
    assert_eq!(r.bar_total, sp(n, "e1, e3, e4, e9, e11"));
    assert_eq!(r.circ_total, sp(n, "e1, e3, e4, e6, e8, e9, e11"));
    assert_eq!(r.tilde_total, sp(n, "e1, e3, e4, e5, e6, e8, e9, e10, e11"));

    let x = Subspace::full(n);
    assert!(!r.bar_total.is_zero());
    assert!(strict(&r.bar_total, &r.circ_total));
    assert!(strict(&r.circ_total, &r.reachable));
    assert!(strict(&r.reachable, &r.tilde_total));
    assert!(strict(&r.tilde_total, &x));
    assert!(!r.flags.controllable);
    assert!(!r.flags.independently_controllable);
    assert!(!r.flags.weakly_upstream_controllable);
    assert!(r.checks.all());

    let a = sys.a();
    let image = sp(n, "e1, e3, e9, e11");
    assert_eq!(r.bar_total.map(a).unwrap(), image);
    assert_eq!(r.circ_total.map(a).unwrap(), image);
    assert_eq!(r.reachable.map(a).unwrap(), image);
    // R̃ is a coordinate subspace, so A·R̃ is spanned by the matching columns
    // of A. Column 7 (the only one producing e5+e10) is not among them.
    let cols: Vec<usize> = [1, 3, 4, 5, 6, 8, 9, 10, 11].iter().map(|c| c - 1).collect();
    let rows: Vec<usize> = (0..n).collect();
    let direct = Subspace::image(&a.select(&rows, &cols));
    assert_eq!(r.tilde_total.map(a).unwrap(), direct);
    assert_eq!(direct, image);
}

#[test]
fn large_example_characteristic_polynomial() {
    let sys = corpus::system("exLargeEx").unwrap();
    let f = char_poly_factored(sys.a_blocks()).unwrap();
    assert!(f.matches());
    // λ^7 (λ - 1)^4, expanded independently
    let mut want = Poly::one();
    for _ in 0..7 {
        want = &want * &Poly::linear(&posetcausal::rational::zero());
    }
    for _ in 0..4 {
        want = &want * &Poly::linear(&posetcausal::rational::one());
    }
    assert_eq!(f.direct, want);
}

#[test]
fn observability_example() {
    let sys = corpus::system("exObsEx").unwrap();
    let o = observability::profile(&sys).unwrap();
    let n = 11;
    assert_eq!(o.unobservable, sp(n, "-e2+e4, -e5+e10, e8, e9, e11"));
    assert_eq!(o.upstream[0], sp(n, "e2"));
    assert_eq!(o.upstream[1], sp(n, "e1, -e2+e4, e3"));
    assert_eq!(o.upstream[2], sp(n, "e5, e7"));
    assert_eq!(o.upstream[3], sp(n, "e2, e4, -e5+e10, e6, e8, e9, e11"));
    let bar_j = ["", "", "", "e8, e9, e11"];
    let tilde_j = ["e2", "e4", "e5", "e8, e9, e10, e11"];
    for j in 0..4 {
        assert_eq!(o.bar[j], sp(n, bar_j[j]), "bar {j}");
        assert_eq!(o.tilde[j], sp(n, tilde_j[j]), "tilde {j}");
        assert_eq!(o.circ[j], o.tilde[j], "circ {j}");
    }
    assert_eq!(o.bar_total, sp(n, "e8, e9, e11"));
    assert_eq!(o.tilde_total, sp(n, "e2, e4, e5, e8, e9, e10, e11"));
    assert_eq!(o.circ_total, o.tilde_total);
    assert!(!o.bar_total.is_zero());
    assert!(strict(&o.bar_total, &o.unobservable));
    assert!(strict(&o.unobservable, &o.circ_total));
    assert!(strict(&o.tilde_total, &Subspace::full(n)));
    assert!(!o.flags.observable);
    assert!(!o.flags.independently_observable);
    assert!(!o.flags.weakly_downstream_observable);
    assert!(o.checks.all());
    assert_eq!(observability::profile_via_duality(&sys).unwrap(), o);
}

#[test]
fn structured_spaces_need_not_be_invariant() {
    let sys = corpus::system("non-invariant").unwrap();
    let r = reachability::profile(&sys).unwrap();
    assert_eq!(r.bar_total, sp(4, "e1"));
    assert_eq!(r.circ_total, sp(4, "e1"));
    assert_eq!(r.reachable, sp(4, "e1, e2+e3"));
    assert_eq!(r.tilde_total, sp(4, "e1, e2, e3"));
    let a = sys.a();
    assert_eq!(r.bar_total.map(a).unwrap(), sp(4, "e1+e2+e3"));
    assert!(!r.bar_total.contains(&r.bar_total.map(a).unwrap()).unwrap());
    assert!(!r.tilde_total.contains(&r.tilde_total.map(a).unwrap()).unwrap());
    assert!(r.reachable.contains(&r.reachable.map(a).unwrap()).unwrap());
}

#[test]
fn local_sum_need_not_lie_in_reachable_space() {
    let sys = corpus::system("hat-not-contained").unwrap();
    let r = reachability::profile(&sys).unwrap();
    assert_eq!(r.reachable, sp(2, "e1+e2"));
    assert_eq!(r.downstream[0], sp(2, "e1+e2"));
    assert!(r.downstream[1].is_zero());
    assert_eq!(r.tilde_pair[&(0, 0)], sp(2, "e1"));
    assert!(r.tilde_pair[&(1, 1)].is_zero());
    assert_eq!(r.hat_total, sp(2, "e1"));
    assert!(!r.reachable.contains(&r.hat_total).unwrap());
}

#[test]
fn not_weakly_locally_controllable_example() {
    let sys = corpus::system("not-weakly-local").unwrap();
    let r = reachability::profile(&sys).unwrap();
    // Only the second input column reaches e2 or e4 and it does so through
    // e2+e4, which A annihilates; the reachable space has dimension 4.
    assert_eq!(r.reachable, sp(5, "e1, e2+e4, e3, e5"));
    assert!(!r.flags.controllable);
    assert!(!r.flags.weakly_locally_controllable);
    assert_eq!(r.tilde_pair[&(1, 1)], sp(5, "e3"));
    assert_eq!(r.local_controllable, vec![true, false, true]);

    let mut rng = ChaCha8Rng::seed_from_u64(35);
    let zero = posetcausal::rational::zero();
    for _ in 0..25 {
        let f = random_structured(&mut rng, sys.poset(), sys.m(), sys.n(), 5, 1.0);
        let closed = sys.a().add(&sys.b().mul(&f).unwrap()).unwrap();
        assert_eq!(char_poly(&closed).unwrap().eval(&zero), zero);
    }
}

#[test]
fn non_optimal_primal_reduction() {
    let sys = corpus::system("exNonOpt").unwrap();
    let r = reachability::profile(&sys).unwrap();
    let o = observability::profile(&sys).unwrap();
    assert_eq!(r.reachable, sp(4, "e1, e2+e4"));
    assert_eq!(o.unobservable, sp(4, "e2, e4"));
    let k = kalman(&sys).unwrap();
    assert_eq!(k.co, sp(4, "e1"));
    assert_eq!(r.tilde[0], sp(4, "e1, e2"));
    assert_eq!(r.tilde[1], sp(4, "e4"));
    assert_eq!(r.circ[0], sp(4, "e1"));
    assert!(r.circ[1].is_zero());
    assert_eq!(o.bar[0], sp(4, "e2"));
    assert_eq!(o.bar[1], sp(4, "e4"));
    assert_eq!(r.bar_total, r.circ_total);

    let red = poset_reduce(&sys, ReductionVariant::PrimalCirc).unwrap();
    assert_eq!(red.blocks[0], Subspace::block(sys.n(), 0));
    assert_eq!(red.blocks[1], sp(4, "e4"));
    assert_eq!(red.space.dim(), 3);
    assert_eq!(red.horizon, 4 + 3 - 1);
    assert!(red.moments_preserved);
    assert!(red.contains_co);
    assert!(!red.matches_co_projections);
}

#[test]
fn dual_side_reduction_is_minimal() {
    let sys = corpus::system("exNonOpt").unwrap();
    let r = reachability::profile(&sys).unwrap();
    let o = observability::profile(&sys).unwrap();
    let nn = sp(4, "e2, e4");
    assert_eq!(o.tilde_total, nn);
    assert_eq!(o.circ_total, nn);
    assert_eq!(o.bar_total, nn);
    assert_eq!(r.tilde_total, sp(4, "e1, e2, e4"));
    assert_eq!(nn.complement(), sp(4, "e1, e3"));
    assert_eq!(r.reachable.complement(), sp(4, "e2-e4, e3"));
    assert_eq!(r.tilde_total.complement(), sp(4, "e3"));
    // N^⊥ ⊖ (N^⊥ ∩ R^⊥)
    let np = nn.complement();
    let unstructured = np.ominus(&np.intersect(&r.reachable.complement()).unwrap()).unwrap();
    assert_eq!(unstructured, sp(4, "e1"));
    for variant in [ReductionVariant::DualTilde, ReductionVariant::DualCirc] {
        let red = poset_reduce(&sys, variant).unwrap();
        assert_eq!(red.space, sp(4, "e1"), "{variant}");
        assert_eq!(red.system.state_dim(), 1);
        assert_eq!(red.horizon, 4 + 1 - 1);
        assert!(red.moments_preserved);
    }
}

#[test]
fn double_integrator_pole_placement() {
    let sys = corpus::system("pole-placement").unwrap();
    // λ² + 3λ + 2
    let target = Poly::from_ints(&[2, 3, 1]);
    let placed = reachability::pole_place(&sys, &[target.clone()], 0).unwrap();
    assert_eq!(placed.feedback.entries(), &Matrix::from_ints(&[[-2, -3]]));
    let closed = sys.a().add(&sys.b().mul(placed.feedback.entries()).unwrap()).unwrap();
    assert_eq!(char_poly(&closed).unwrap(), target);
}

#[test]
fn projected_complement_can_miss_the_minimal_space() {
    let r = sp(3, "e1+e2+e3");
    let nn = sp(3, "e1, e2-e3");
    let outer = sp(3, "e1+e2, e3");
    let co = posetcausal::reduction::kalman_from(&r, &nn).unwrap().co;
    assert_eq!(co, r);
    // N^⊥ = span{e2+e3}; its projection onto span{e1+e2, e3} is e1+e2+2e3 up to scale
    let projected = nn.complement().project_onto(&outer).unwrap();
    assert_eq!(projected, sp(3, "e1+e2+2e3"));
    assert!(!projected.contains(&co).unwrap());
}
