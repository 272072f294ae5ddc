use num_complex::Complex64;
use proptest::prelude::*;

use mplab_core::exactlin::{
    canonical_basis, int, is_lagrangian, kernel, random_antisymplectic_involution, rat, RatMatrix, Rational,
};
use mplab_core::liedata::ExactGroupElement;
use mplab_core::momentpoly::{
    classify_borel_orbit_closure, enumerate_polytope_catalog, membership_in_c, moment_polytope,
    real_moment_polytope_routes, FlagPoint, OrbitClass, RealFormCase,
};
use mplab_core::numlab::{hopf, moment_map, sample_orbit, sampled_delta, DeltaMode, FloatFlagPoint, Subgroup};
use mplab_core::reps::{
    clebsch_gordan_highest_weights, highest_weight_vector, hwv_product_form, n_invariant_subspace, section_space_dim,
    weight_decomposition, SectionSpaceSpec,
};
use mplab_core::{GaussianRational, InvolutionSpec, LinearSubspace, RationalPolytope, SymplecticForm};

fn small_rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (small_rat(), small_rat()).prop_map(|(re, im)| GaussianRational::new(re, im))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows).prop_map(|r| {
        RatMatrix::from_rows(&r.iter().map(|row| row.iter().map(|&v| int(v)).collect()).collect::<Vec<_>>()).unwrap()
    })
}

fn points(dim: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec(small_rat(), dim), 1..12)
}

fn flag_point() -> impl Strategy<Value = FlagPoint> {
    (gaussian(), gaussian(), gaussian(), gaussian())
        .prop_filter_map("nonzero factors", |(a1, c1, a2, c2)| FlagPoint::new([a1, c1], [a2, c2]).ok())
}

fn float_point() -> impl Strategy<Value = FloatFlagPoint> {
    prop::array::uniform8(-5.0f64..5.0).prop_filter_map("nonzero factors", |v| {
        FloatFlagPoint::new(
            [Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3])],
            [Complex64::new(v[4], v[5]), Complex64::new(v[6], v[7])],
        )
        .ok()
    })
}

fn spec() -> impl Strategy<Value = SectionSpaceSpec> {
    (1i64..=3, 1i64..=3, 1i64..=3).prop_map(|(r, a, b)| SectionSpaceSpec::new(r, a, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent(m in matrix(3, 4)) {
        let (r, _) = m.rref();
        prop_assert_eq!(r.rref().0, r);
    }

    #[test]
    fn kernel_is_annihilated_and_complements_rank(m in matrix(3, 5)) {
        let ker = kernel(&m);
        prop_assert_eq!(ker.len() + m.rank(), 5);
        for v in &ker {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| *x == int(0)));
        }
    }

    #[test]
    fn canonical_basis_depends_only_on_the_span(m in matrix(3, 4), s in 1i64..5) {
        let rows = m.to_rows();
        let mut shuffled: Vec<Vec<Rational>> = rows.iter().rev().map(|r| r.iter().map(|x| x * int(s)).collect()).collect();
        shuffled.push(rows.iter().fold(vec![int(0); 4], |acc, r| acc.iter().zip(r).map(|(a, b)| a + b).collect()));
        prop_assert_eq!(canonical_basis(&rows).unwrap(), canonical_basis(&shuffled).unwrap());
    }

    #[test]
    fn random_involutions_reverse_the_form(half in 1usize..=4, seed in any::<u64>()) {
        let dim = 2 * half;
        let s = random_antisymplectic_involution(dim, seed).unwrap();
        let omega = SymplecticForm::standard(dim).unwrap();
        prop_assert!((s.matrix() * s.matrix()).is_identity());
        prop_assert!(omega.is_reversed_by(s.matrix()));
        prop_assert!(is_lagrangian(&s.fixed_subspace(), &omega).unwrap());
        prop_assert!(is_lagrangian(&s.negated().fixed_subspace(), &omega).unwrap());
    }

    #[test]
    fn hull_contains_inputs_and_is_stable(pts in points(3)) {
        let p = RationalPolytope::hull(3, &pts).unwrap();
        for x in &pts {
            prop_assert!(p.contains(x).unwrap());
        }
        prop_assert_eq!(&RationalPolytope::hull(3, p.vertices()).unwrap(), &p);
        let mut rev = pts.clone();
        rev.reverse();
        prop_assert_eq!(&RationalPolytope::hull(3, &rev).unwrap(), &p);
        prop_assert_eq!(&RationalPolytope::from_json(&p.to_json()).unwrap(), &p);
        prop_assert_eq!(&p.intersect_subspace(&LinearSubspace::full(3)).unwrap(), &p);
    }

    #[test]
    fn planar_hull_vertices_are_not_redundant(pts in points(2)) {
        let p = RationalPolytope::hull(2, &pts).unwrap();
        for (i, v) in p.vertices().iter().enumerate() {
            let rest: Vec<Vec<Rational>> = p.vertices().iter().enumerate().filter(|(j, _)| *j != i).map(|(_, w)| w.clone()).collect();
            if !rest.is_empty() {
                prop_assert!(!RationalPolytope::hull(2, &rest).unwrap().contains(v).unwrap());
            }
        }
    }

    #[test]
    fn weight_multiplicities_add_up(s in spec()) {
        let total: u64 = weight_decomposition(&s).values().sum();
        prop_assert_eq!(total, section_space_dim(&s));
        let cg: i64 = clebsch_gordan_highest_weights(&s).iter().map(|w| w + 1).sum();
        prop_assert_eq!(cg as u64, section_space_dim(&s));
    }

    #[test]
    fn invariant_subspaces_are_invariant(s in spec(), w in -12i64..=12) {
        let basis = n_invariant_subspace(&s, w);
        prop_assert!(basis.len() <= 1);
        for f in &basis {
            prop_assert!(f.is_n_invariant());
            prop_assert_eq!(f.torus_weight().unwrap(), w);
        }
        prop_assert_eq!(basis.len() == 1, clebsch_gordan_highest_weights(&s).contains(&w));
    }

    #[test]
    fn closed_forms_agree(s in spec(), k in 0i64..=9) {
        prop_assume!(k <= s.max_k() as i64);
        let f = highest_weight_vector(&s, k).unwrap();
        prop_assert_eq!(&f, &hwv_product_form(&s, k).unwrap());
        prop_assert!(f.is_n_invariant_randomized(k as u64));
    }

    #[test]
    fn classification_is_borel_invariant(x in flag_point(), a in gaussian(), b in gaussian()) {
        prop_assume!(!a.is_zero());
        let g = ExactGroupElement::borel(a, b).unwrap();
        let y = FlagPoint::new(g.apply(&x.p1), g.apply(&x.p2)).unwrap();
        prop_assert_eq!(classify_borel_orbit_closure(&y), classify_borel_orbit_closure(&x));
    }

    #[test]
    fn membership_matches_polytope(x in flag_point(), l1 in 1i64..=4, l2 in 1i64..=4, n in -40i64..=40, q in 1i64..=4) {
        let lambda = rat(n, q);
        let p = moment_polytope(&x, l1, l2).unwrap();
        let member = membership_in_c(&x, l1, l2, &lambda).unwrap().is_some();
        prop_assert_eq!(member, p.contains(&[lambda]).unwrap());
    }

    #[test]
    fn polytopes_sit_inside_the_dense_one(x in flag_point(), l1 in 1i64..=6, l2 in 1i64..=6) {
        let dense = moment_polytope(&OrbitClass::Dense.representative(), l1, l2).unwrap();
        for v in moment_polytope(&x, l1, l2).unwrap().vertices() {
            prop_assert!(dense.contains(v).unwrap());
        }
    }

    #[test]
    fn real_routes_agree(x in flag_point(), l1 in 1i64..=3, l2 in 1i64..=3, negate in any::<bool>()) {
        let x = FlagPoint::new([GaussianRational::real(x.p1[0].re.clone()), GaussianRational::real(x.p1[1].re.clone())],
                               [GaussianRational::real(x.p2[0].re.clone()), GaussianRational::real(x.p2[1].re.clone())]);
        prop_assume!(x.is_ok());
        let gamma = if negate { InvolutionSpec::negation(1) } else { InvolutionSpec::identity(1) };
        let case = RealFormCase::new(x.unwrap(), gamma).unwrap();
        prop_assert!(real_moment_polytope_routes(&case, l1, l2, 4).unwrap().agree());
    }

    #[test]
    fn catalog_is_small(l1 in 1i64..=5, l2 in 1i64..=5) {
        prop_assert!(enumerate_polytope_catalog(l1, l2, &InvolutionSpec::negation(1)).unwrap().len() <= 5);
    }

    #[test]
    fn hopf_vectors_are_unit(p in float_point(), l in 0.5f64..5.0) {
        prop_assert!((hopf(p.p1).unwrap().scale(l).norm() - l).abs() < 1e-12);
    }

    #[test]
    fn real_points_map_into_the_plane(v in prop::array::uniform4(-5.0f64..5.0)) {
        let p = FloatFlagPoint::new([v[0].into(), v[1].into()], [v[2].into(), v[3].into()]);
        prop_assume!(p.is_ok());
        prop_assert!(moment_map(&p.unwrap(), 2.0, 1.0).unwrap().0[1].abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn sampled_intervals_sit_inside_exact_ones(class_index in 0usize..5, l1 in 1i64..=4, l2 in 1i64..=4, seed in any::<u64>()) {
        let class = OrbitClass::ALL[class_index];
        let exact = moment_polytope(&class.representative(), l1, l2).unwrap();
        let x = FloatFlagPoint::from(&class.representative());
        let samples = sample_orbit(&x, l1 as f64, l2 as f64, Subgroup::H, 2000, seed).unwrap();
        prop_assert_eq!(&samples, &sample_orbit(&x, l1 as f64, l2 as f64, Subgroup::H, 2000, seed).unwrap());
        if let Some((lo, hi)) = sampled_delta(&samples, DeltaMode::AngularFilter(0.05)).unwrap() {
            let v = exact.vertices();
            prop_assert!(!v.is_empty());
            let to_f = |q: &Rational| mplab_core::exactlin::rat_to_f64(q);
            prop_assert!(lo >= to_f(&v[0][0]) - 0.02 && hi <= to_f(&v[v.len() - 1][0]) + 0.02, "{} ({}, {})", class, lo, hi);
        }
    }
}
