use arrzeta::bfunc::{jumping_3d_criterion, is_moderate};
use arrzeta::igusa::{brute_force_igusa, euler_from_point_count, good_reduction, igusa_zeta, specialization_bridge, stratum_counts};
use arrzeta::lattice::{build_lattice, nu_counts, proj_complement_euler};
use arrzeta::symbolic::poly::q;
use arrzeta::symbolic::{FactoredS, Poly, Q};
use arrzeta::topzeta::{certify_poles, frac, zeta_top};
use arrzeta::{parse_arrangement, Arrangement};
use proptest::prelude::*;

fn build(n: usize, rows: Vec<(Vec<i64>, u32)>) -> Option<Arrangement> {
    let raw: Vec<(Vec<Q>, Q, u32)> = rows
        .into_iter()
        .filter(|(v, _)| v.iter().any(|&x| x != 0))
        .map(|(v, m)| (v.into_iter().map(q).collect(), q(0), m))
        .collect();
    if raw.is_empty() {
        return None;
    }
    Arrangement::new(n, raw).ok()
}

fn central(n: usize, max_d: usize, max_mult: u32) -> impl Strategy<Value = Arrangement> {
    prop::collection::vec((prop::collection::vec(-3i64..=3, n), 1..=max_mult), 1..=max_d)
        .prop_filter_map("zero normals", move |rows| build(n, rows))
}

fn reduced_essential_3d() -> impl Strategy<Value = Arrangement> {
    central(3, 7, 1).prop_filter("reduced essential", |a| a.is_reduced() && a.is_essential() && a.len() >= 5)
}

fn product(a: &Arrangement, b: &Arrangement) -> Arrangement {
    let (n, m) = (a.dim(), b.dim());
    let pad = |h: &arrzeta::Hyperplane, left: bool| {
        let zeros = vec![q(0); if left { m } else { n }];
        let normal = if left { [h.normal(), &zeros].concat() } else { [&zeros, h.normal()].concat() };
        (normal, q(0), h.mult())
    };
    let raw = a.hyperplanes().iter().map(|h| pad(h, true)).chain(b.hyperplanes().iter().map(|h| pad(h, false))).collect();
    Arrangement::new(n + m, raw).unwrap()
}

fn transform(a: &Arrangement, m: &[[i64; 3]; 3]) -> Arrangement {
    let raw = a
        .hyperplanes()
        .iter()
        .map(|h| {
            let v: Vec<Q> = (0..3).map(|j| (0..3).fold(q(0), |s, i| s + &h.normal()[i] * q(m[i][j]))).collect();
            (v, q(0), h.mult())
        })
        .collect();
    Arrangement::new(3, raw).unwrap()
}

fn unimodular() -> impl Strategy<Value = [[i64; 3]; 3]> {
    (-2i64..=2, -2i64..=2, -2i64..=2).prop_map(|(a, b, c)| [[1, a, b], [0, 1, c], [0, 0, 1]])
}

fn linear_sum() -> impl Strategy<Value = (FactoredS, FactoredS)> {
    let term = (1i64..=4, -4i64..=4, -3i64..=3).prop_map(|(a, b, c)| FactoredS::inv_linear(a, b).unwrap().mul(&FactoredS::constant(q(c))));
    (term.clone(), term)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn text_round_trip(a in (1usize..=4).prop_flat_map(|n| central(n, 6, 3))) {
        prop_assert_eq!(parse_arrangement(&a.to_text()).unwrap(), a);
    }

    #[test]
    fn essentialize_keeps_rank(a in central(3, 6, 2)) {
        let (e, center) = a.essentialize().unwrap();
        prop_assert_eq!(e.dim(), a.rank());
        prop_assert_eq!(center, a.dim() - a.rank());
        prop_assert!(e.is_essential());
        prop_assert_eq!(e.degree(), a.degree());
    }

    #[test]
    fn mobius_sums_to_zero_and_strata_partition(a in central(3, 6, 2)) {
        let l = build_lattice(&a).unwrap();
        let total: i64 = l.edges().iter().map(|e| e.mobius).sum();
        prop_assert_eq!(total, 0);
        let count = stratum_counts(&l).into_iter().fold(Poly::zero(), |s, c| s + c);
        prop_assert_eq!(count, Poly::monomial(q(1), 3));
    }

    #[test]
    fn euler_agrees_with_point_count(a in central(3, 6, 2)) {
        let l = build_lattice(&a).unwrap();
        prop_assert_eq!(proj_complement_euler(&l).unwrap(), euler_from_point_count(&l).unwrap());
    }

    #[test]
    fn localization_is_idempotent(a in central(3, 6, 2)) {
        let l = build_lattice(&a).unwrap();
        for w in 0..l.len() {
            let aw = l.localized(&a, w);
            let lw = build_lattice(&aw).unwrap();
            prop_assert_eq!(lw.localized(&aw, lw.center_id()).canonical_key().unwrap(), aw.canonical_key().unwrap());
        }
    }

    #[test]
    fn every_pole_has_a_dense_witness(a in central(3, 6, 2)) {
        let l = build_lattice(&a).unwrap();
        for c in certify_poles(&a).unwrap() {
            let e = l.edge(c.witness_edge);
            prop_assert_eq!(-q(e.codim as i64) / q(e.a_w as i64), c.pole.clone());
            prop_assert!((c.eigenvalue_class.clone() * q(e.a_w as i64)).is_integer());
            prop_assert_eq!(frac(&c.pole), c.eigenvalue_class);
        }
    }

    #[test]
    fn zeta_top_ignores_essentialization(a in central(3, 5, 2)) {
        prop_assert_eq!(zeta_top(&a).unwrap(), zeta_top(&a.essentialize().unwrap().0).unwrap());
    }

    #[test]
    fn zeta_top_invariant_under_coordinate_change(a in central(3, 5, 2), m in unimodular()) {
        prop_assert_eq!(zeta_top(&a).unwrap(), zeta_top(&transform(&a, &m)).unwrap());
    }

    #[test]
    fn zeta_functions_multiply_on_products(a in central(2, 3, 2), b in central(1, 1, 3)) {
        let ab = product(&a, &b);
        prop_assert_eq!(zeta_top(&ab).unwrap(), zeta_top(&a).unwrap().mul(&zeta_top(&b).unwrap()));
        let zi = igusa_zeta(&ab).unwrap();
        prop_assert!(zi.equivalent(&igusa_zeta(&a).unwrap().mul(&igusa_zeta(&b).unwrap())));
    }

    #[test]
    fn igusa_is_one_at_t_one(a in central(3, 5, 2), p in prop::sample::select(vec![2i64, 3, 5, 7])) {
        prop_assert_eq!(igusa_zeta(&a).unwrap().eval(&q(p), &q(1)), Some(q(1)));
    }

    #[test]
    fn igusa_specializes_to_zeta_top(a in central(3, 5, 2)) {
        let e = a.essentialize().unwrap().0;
        prop_assert!(specialization_bridge(&e).is_ok());
    }

    #[test]
    fn brute_force_encloses_exact_value(a in central(2, 4, 2)) {
        prop_assume!(good_reduction(&a, 5).unwrap().ok);
        let enc = brute_force_igusa(&a, 5, 3, 1).unwrap();
        let exact = igusa_zeta(&a).unwrap().eval(&q(5), &(q(1) / q(5))).unwrap();
        prop_assert!(enc.contains(&exact));
    }

    #[test]
    fn jumping_criterion_invariant_under_coordinate_change(a in reduced_essential_3d(), m in unimodular()) {
        let b = transform(&a, &m);
        prop_assert_eq!(nu_counts(&a).unwrap(), nu_counts(&b).unwrap());
        prop_assert_eq!(jumping_3d_criterion(&a).unwrap(), jumping_3d_criterion(&b).unwrap());
        prop_assert_eq!(is_moderate(&a).unwrap().moderate, is_moderate(&b).unwrap().moderate);
    }

    #[test]
    fn factored_sums_are_canonical((f, g) in linear_sum()) {
        prop_assert_eq!(f.add(&g).sub(&g), f.clone());
        prop_assert_eq!(f.add(&g), g.add(&f));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
    }
}
