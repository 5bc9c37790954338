use posetcausal::rational::int;
use posetcausal::{Matrix, Partition, Rational, Subspace};
use proptest::prelude::*;

const N: usize = 5;

fn vectors(max: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    proptest::collection::vec(proptest::collection::vec(-2i64..=2, N), 0..=max)
        .prop_map(|vs| vs.into_iter().map(|v| v.into_iter().map(int).collect()).collect())
}

fn subspace() -> impl Strategy<Value = Subspace> {
    vectors(4).prop_map(|vs| Subspace::span(N, &vs).unwrap())
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn span_contains_generators(vs in vectors(4)) {
        let s = Subspace::span(N, &vs).unwrap();
        for v in &vs {
            prop_assert!(s.contains_vector(v));
        }
        let m = Matrix::from_rows(vs.clone(), N).unwrap();
        prop_assert_eq!(s.dim(), m.rank());
    }

    #[test]
    fn dimension_formula(u in subspace(), v in subspace()) {
        let sum = u.sum(&v).unwrap();
        let cap = u.intersect(&v).unwrap();
        prop_assert_eq!(sum.dim() + cap.dim(), u.dim() + v.dim());
        prop_assert!(u.contains(&cap).unwrap() && v.contains(&cap).unwrap());
        prop_assert!(sum.contains(&u).unwrap() && sum.contains(&v).unwrap());
    }

    #[test]
    fn complement_is_orthogonal(u in subspace()) {
        let c = u.complement();
        prop_assert_eq!(c.dim() + u.dim(), N);
        for a in u.basis() {
            for b in c.basis() {
                prop_assert_eq!(dot(&a, &b), int(0));
            }
        }
        prop_assert_eq!(c.complement(), u);
    }

    #[test]
    fn de_morgan(u in subspace(), v in subspace()) {
        prop_assert_eq!(u.intersect(&v).unwrap().complement(), u.complement().sum(&v.complement()).unwrap());
        prop_assert_eq!(u.sum(&v).unwrap().complement(), u.complement().intersect(&v.complement()).unwrap());
    }

    #[test]
    fn ominus_splits_orthogonally(u in subspace(), v in subspace()) {
        let cap = u.intersect(&v).unwrap();
        let rest = u.ominus(&cap).unwrap();
        prop_assert_eq!(rest.sum(&cap).unwrap(), u.clone());
        prop_assert!(rest.intersect(&cap).unwrap().is_zero());
    }

    #[test]
    fn projection_of_complement(y1 in subspace(), y2 in subspace()) {
        // P_{Y2}(Y1^⊥) = Y2 ⊖ (Y1 ∩ Y2)
        let lhs = y1.complement().project_onto(&y2).unwrap();
        let rhs = y2.ominus(&y1.intersect(&y2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn projection_is_idempotent_and_orthogonal(u in subspace(), y in subspace()) {
        let p = u.project_onto(&y).unwrap();
        prop_assert!(y.contains(&p).unwrap());
        prop_assert_eq!(p.project_onto(&y).unwrap(), p.clone());
        // residuals of the basis of u are orthogonal to y
        let q = y.basis_matrix();
        if q.ncols() > 0 {
            let g = q.transpose().mul(&q).unwrap().inverse().unwrap();
            let proj = q.mul(&g).unwrap().mul(&q.transpose()).unwrap();
            for a in u.basis() {
                let pa = proj.mul_vec(&a);
                let resid: Vec<Rational> = a.iter().zip(&pa).map(|(x, y)| x - y).collect();
                for b in y.basis() {
                    prop_assert_eq!(dot(&resid, &b), int(0));
                }
            }
        }
    }

    #[test]
    fn block_projection_matches_coordinate_selection(u in subspace(), split in 0usize..=N) {
        let part = Partition::new(vec![split, N - split]);
        for i in 0..2 {
            let coords: Vec<usize> = part.range(i).collect();
            // zero the other coordinates of each basis vector
            let zeroed: Vec<Vec<Rational>> = u
                .basis()
                .into_iter()
                .map(|v| v.into_iter().enumerate().map(|(k, x)| if coords.contains(&k) { x } else { int(0) }).collect())
                .collect();
            prop_assert_eq!(u.project_block(&part, i).unwrap(), Subspace::span(N, &zeroed).unwrap());
        }
    }

    #[test]
    fn display_parse_roundtrip(u in subspace()) {
        let text = u.to_string();
        prop_assert_eq!(posetcausal::subspace::parse_span(N, &text).unwrap(), u);
    }

    #[test]
    fn image_kernel_rank(vs in vectors(4)) {
        let m = Matrix::from_rows(vs, N).unwrap();
        prop_assert_eq!(Subspace::kernel(&m).dim() + m.rank(), N);
        prop_assert_eq!(Subspace::kernel(&m), Subspace::image(&m.transpose()).complement());
    }
}
