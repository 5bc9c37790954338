mod common;

use posetcausal::duality::verify_duality;
use posetcausal::observability::{self, obsv_matrix, obsv_via_ctrb};
use posetcausal::poly::char_poly;
use posetcausal::random::{
    random_poset, random_system, weakly_locally_controllable_system, weakly_locally_observable_system, SystemShape,
};
use posetcausal::reachability::{self, char_poly_factored, ctrb_matrix, pole_place};
use posetcausal::rational::int;
use posetcausal::reduction::{generalized_reduce, kalman, poset_reduce, ReductionVariant};
use posetcausal::system::SubsystemKind;
use posetcausal::{Poly, Subspace};
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dual_is_structured_involution(sys in common::system(5)) {
        let dual = sys.dual();
        prop_assert!(dual.validate().is_valid());
        prop_assert_eq!(dual.dual(), sys.clone().with_x0(None).unwrap());
        let s = int(7);
        if let (Ok(f), Ok(fd)) = (sys.transfer_eval(&s), dual.transfer_eval(&s)) {
            prop_assert_eq!(f.entries().transpose(), fd.entries().clone());
        }
    }

    #[test]
    fn transfer_function_is_structured(sys in common::system(5), s in -5i64..=5) {
        match sys.transfer_eval(&int(s)) {
            Ok(f) => prop_assert!(f.is_incident(sys.poset()).unwrap()),
            Err(posetcausal::Error::SingularResolvent(_)) => {
                prop_assert_eq!(char_poly(sys.a()).unwrap().eval(&int(s)), int(0));
            }
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn reachability_profile_is_consistent(sys in common::system(5)) {
        let r = reachability::profile(&sys).unwrap();
        prop_assert!(r.checks.all(), "{:?}", r.checks);
        // Oracle: the image of the full controllability matrix.
        prop_assert_eq!(&r.reachable, &Subspace::image(&ctrb_matrix(sys.a(), sys.b()).unwrap()));
        prop_assert!(r.reachable.contains(&r.reachable.map(sys.a()).unwrap()).unwrap());
        let mut total = Subspace::zero(sys.state_dim());
        for i in 0..sys.p() {
            let down = sys.derived(SubsystemKind::Downstream(i)).unwrap();
            let direct = Subspace::image(&ctrb_matrix(&down.a, &down.b).unwrap())
                .embed_coordinates(sys.state_dim(), &down.state_coords);
            prop_assert_eq!(&r.downstream[i], &direct);
            total = total.sum(&direct).unwrap();
            prop_assert_eq!(&r.tilde[i], &r.reachable.project_block(sys.n(), i).unwrap());
            prop_assert_eq!(&r.circ[i], &r.reachable.intersect(&Subspace::block(sys.n(), i)).unwrap());
        }
        prop_assert_eq!(&total, &r.reachable);
        prop_assert!(r.reachable.contains(&r.circ_total).unwrap());
        prop_assert!(r.circ_total.contains(&r.bar_total).unwrap());
        prop_assert!(r.tilde_total.contains(&r.reachable).unwrap());
        let (wlc, per_node) = reachability::weakly_locally_controllable(&sys).unwrap();
        prop_assert_eq!(wlc, r.flags.weakly_locally_controllable);
        prop_assert_eq!(per_node, r.local_controllable);
    }

    #[test]
    fn observability_routes_agree(sys in common::system(5)) {
        let direct = observability::profile(&sys).unwrap();
        prop_assert!(direct.checks.all(), "{:?}", direct.checks);
        prop_assert_eq!(&observability::profile_via_duality(&sys).unwrap(), &direct);
        prop_assert_eq!(obsv_matrix(sys.c(), sys.a()).unwrap(), obsv_via_ctrb(sys.c(), sys.a()).unwrap());
        prop_assert!(direct.unobservable.contains(&direct.unobservable.map(sys.a()).unwrap()).unwrap());
        for j in 0..sys.p() {
            prop_assert_eq!(&direct.circ[j], &direct.unobservable.project_block(sys.n(), j).unwrap());
            prop_assert_eq!(&direct.bar[j], &direct.unobservable.intersect(&Subspace::block(sys.n(), j)).unwrap());
        }
    }

    #[test]
    fn duality_identities_hold(sys in common::system(5)) {
        let report = verify_duality(&sys).unwrap();
        prop_assert!(report.all_passed(), "failures: {:?}", report.failures().iter().map(|c| &c.name).collect::<Vec<_>>());
    }

    #[test]
    fn characteristic_polynomial_factors(sys in common::system(5)) {
        prop_assert!(char_poly_factored(sys.a_blocks()).unwrap().matches());
    }

    #[test]
    fn kalman_subspaces(sys in common::system(5)) {
        let k = kalman(&sys).unwrap();
        prop_assert!(k.formulas_agree && k.orthogonal_sums);
    }

    #[test]
    fn reductions_preserve_moments(sys in common::system(4)) {
        let co = kalman(&sys).unwrap().co;
        for variant in ReductionVariant::ALL {
            let red = poset_reduce(&sys, variant).unwrap();
            prop_assert!(red.moments_preserved, "{}", variant);
            prop_assert!(red.system.validate().is_valid());
            prop_assert!(red.space.dim() <= sys.state_dim());
            if matches!(variant, ReductionVariant::Primal | ReductionVariant::PrimalCirc) {
                prop_assert!(red.space.contains(&co).unwrap());
            }
        }
    }

    #[test]
    fn generalized_reduction_trivial_case(sys in common::system(4)) {
        let r = reachability::reachable(&sys).unwrap();
        let n = observability::unobservable(&sys).unwrap();
        let red = generalized_reduce(&sys, &r, &r, &n).unwrap();
        prop_assert_eq!(&red.space, &kalman(&sys).unwrap().co);
        prop_assert!(red.moments_preserved && red.contains_co);
    }
}

fn shape() -> SystemShape {
    SystemShape {
        min_block: 1,
        max_block: 3,
        entry_bound: 3,
        coupling: 0.8,
    }
}

#[test]
fn weak_local_controllability_implies_controllability() {
    let mut rng = common::rng(11);
    for _ in 0..30 {
        let p = rng.gen_range(1..=5);
        let poset = random_poset(&mut rng, p, 0.5);
        let sys = weakly_locally_controllable_system(&mut rng, &poset, &shape()).unwrap();
        let r = reachability::profile(&sys).unwrap();
        assert!(r.flags.weakly_locally_controllable);
        assert_eq!(ctrb_matrix(sys.a(), sys.b()).unwrap().rank(), sys.state_dim());
        assert!(r.flags.controllable && r.flags.weakly_upstream_controllable);

        let sys = weakly_locally_observable_system(&mut rng, &poset, &shape()).unwrap();
        let o = observability::profile(&sys).unwrap();
        assert!(o.flags.weakly_locally_observable && o.flags.observable);
        assert_eq!(obsv_matrix(sys.c(), sys.a()).unwrap().rank(), sys.state_dim());
    }
}

#[test]
fn structured_pole_placement() {
    let mut rng = common::rng(12);
    for round in 0..20 {
        let p = rng.gen_range(1..=4);
        let poset = random_poset(&mut rng, p, 0.5);
        let sys = weakly_locally_controllable_system(&mut rng, &poset, &shape()).unwrap();
        let targets: Vec<Poly> = sys
            .n()
            .sizes()
            .iter()
            .map(|&k| Poly::monic(&(0..k).map(|_| int(rng.gen_range(-4..=4))).collect::<Vec<_>>()))
            .collect();
        let placed = pole_place(&sys, &targets, round).unwrap();
        assert!(placed.feedback.is_incident(sys.poset()).unwrap());
        let closed = sys.a().add(&sys.b().mul(placed.feedback.entries()).unwrap()).unwrap();
        let want = targets.iter().fold(Poly::one(), |acc, q| &acc * q);
        assert_eq!(char_poly(&closed).unwrap(), want);
        // each diagonal block separately
        let blocks = char_poly_factored(&posetcausal::BlockMatrix::new(closed, sys.n().clone(), sys.n().clone()).unwrap()).unwrap();
        assert_eq!(blocks.blocks, targets);
    }
}

#[test]
fn placement_rejects_uncontrollable_local_pair() {
    let sys = posetcausal::corpus::system("not-weakly-local").unwrap();
    let targets = reachability::uniform_targets(sys.n(), &int(-1));
    assert_eq!(
        pole_place(&sys, &targets, 0).unwrap_err(),
        posetcausal::Error::NotWeaklyLocallyControllable { node: 1 }
    );
}

#[test]
fn random_systems_over_corpus_posets_satisfy_duality() {
    let mut rng = common::rng(13);
    for poset in posetcausal::corpus::numbered_posets().unwrap() {
        for _ in 0..4 {
            let sys = random_system(&mut rng, &poset, &common::small_shape());
            assert!(verify_duality(&sys).unwrap().all_passed());
        }
    }
}

/// With Ñ and N̄ exchanged the outer space need not contain N^⊥, and the
/// compression can lose moments; the variant used by the library keeps them.
#[test]
fn exchanged_dual_formula_can_lose_moments() {
    use posetcausal::reduction::reduce_to_blocks;
    let mut rng = common::rng(99);
    let shape = SystemShape {
        min_block: 1,
        max_block: 3,
        entry_bound: 2,
        coupling: 0.6,
    };
    let mut found = false;
    for _ in 0..400 {
        let p = rng.gen_range(2..=4);
        let poset = random_poset(&mut rng, p, 0.6);
        let sys = random_system(&mut rng, &poset, &shape);
        let r = reachability::profile(&sys).unwrap();
        let o = observability::profile(&sys).unwrap();
        let blocks: Vec<Subspace> = (0..p)
            .map(|j| {
                let x = Subspace::block(sys.n(), j);
                let perp = |s: &Subspace| x.ominus(s).unwrap();
                perp(&o.tilde[j])
                    .ominus(&perp(&o.bar[j]).intersect(&perp(&r.tilde[j])).unwrap())
                    .unwrap()
            })
            .collect();
        let exchanged = reduce_to_blocks(&sys, ReductionVariant::DualTilde, blocks, &r, &o).unwrap();
        let kept = poset_reduce(&sys, ReductionVariant::DualTilde).unwrap();
        assert!(kept.moments_preserved);
        if !exchanged.moments_preserved {
            found = true;
            break;
        }
    }
    assert!(found);
}
