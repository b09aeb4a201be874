mod common;

use common::*;
use proptest::prelude::*;
use stardisc_core::admissibility::{
    build_f, check_bend_condition, check_properties, check_strict_admissibility, eligible_bend_indices, make_scale,
    GammaSets, PropertyId,
};
use stardisc_core::PointSet;

/// Distinct points: with ties, continuity at `x_1` and the unit jumps at
/// A1 points can contradict each other.
fn points_for(t: u32) -> impl Strategy<Value = PointSet> {
    let n = 3usize.pow(t);
    prop::collection::vec(0.0..1.0f64, n)
        .prop_filter("distinct points", |v| {
            let mut s = v.clone();
            s.sort_by(f64::total_cmp);
            s.windows(2).all(|w| w[0] < w[1])
        })
        .prop_map(|v| PointSet::new(v).unwrap())
}

fn full_suite(ps: &PointSet, t: u32) -> Result<(), TestCaseError> {
    let sc = make_scale(3.0, t).unwrap();
    let f = build_f(ps, &sc).unwrap();
    let report = check_properties(&f, &sc, ps).unwrap();
    prop_assert!(report.all_passed(), "{:?}", report.failures().collect::<Vec<_>>());
    for j in eligible_bend_indices(&f, &sc, ps) {
        let r = check_bend_condition(&f, &sc, ps, j).unwrap();
        prop_assert!(r.all_passed(), "j={} {:?}", j, r);
    }
    let gamma = GammaSets::from_point_set(ps, &sc).unwrap();
    let strict = check_strict_admissibility(&f, &sc, &gamma).unwrap();
    prop_assert!(strict.all_passed(), "{:?}", strict.failures().collect::<Vec<_>>());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn random_sets_are_admissible_t1(ps in points_for(1)) {
        full_suite(&ps, 1)?;
    }

    #[test]
    fn random_sets_are_admissible_t2(ps in points_for(2)) {
        full_suite(&ps, 2)?;
    }

    #[test]
    fn build_f_matches_direct_envelopes(ps in points_for(2), xs in prop::collection::vec(0.0..=1.0f64, 200)) {
        let sc = make_scale(3.0, 2).unwrap();
        let f = build_f(&ps, &sc).unwrap();
        for &x in &xs {
            prop_assert!((f.eval(x) - direct_f(ps.as_slice(), sc.n0, x)).abs() <= 1e-12);
        }
        for &p in ps.as_slice() {
            prop_assert!((f.eval(p) - direct_f(ps.as_slice(), sc.n0, p)).abs() <= 1e-12);
        }
    }

    #[test]
    fn slopes_never_exceed_s0(ps in points_for(2)) {
        let sc = make_scale(3.0, 2).unwrap();
        let f = build_f(&ps, &sc).unwrap();
        prop_assert!(f.slopes().iter().all(|&s| s <= sc.s0 && s < 0.0));
    }

    #[test]
    fn non_integer_scales_still_satisfy_the_shape_clauses(a in 3.0..3.7f64, seed in any::<u64>()) {
        let sc = make_scale(a, 2).unwrap();
        let ps = random_points(&mut rng(seed), sc.n_total);
        let f = build_f(&ps, &sc).unwrap();
        let report = check_properties(&f, &sc, &ps).unwrap();
        for id in [PropertyId::EndpointZeros, PropertyId::PositiveJumps, PropertyId::UnitJumpsA1] {
            prop_assert_eq!(report.passed(id), Some(true), "{}", id);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_sets_are_admissible_t3(ps in points_for(3)) {
        full_suite(&ps, 3)?;
    }
}

#[test]
fn scale_partitions() {
    for t in 1..=6 {
        let sc = make_scale(3.0, t).unwrap();
        let (a0, a1, a2) = (sc.a0(), sc.a1(), sc.a2());
        assert_eq!(*a0.start(), 1);
        assert_eq!(a0.end() + 1, *a1.start());
        assert_eq!(a1.end() + 1, *a2.start());
        assert_eq!(*a2.end(), sc.n_total);
        assert_eq!(a0.clone().count(), a2.clone().count());
        assert!(sc.s0 < 0.0 && -sc.a_pow_t() < sc.s0);
    }
    assert!(make_scale(2.9, 2).is_err());
    assert!(make_scale(3.0, 0).is_err());
}

#[test]
fn strict_clauses_catch_constructed_violations() {
    let sc = make_scale(3.0, 2).unwrap();
    let ps = random_points(&mut rng(11), 9);
    let f = build_f(&ps, &sc).unwrap();
    let mut gamma = GammaSets::from_point_set(&ps, &sc).unwrap();
    // move a Γ0 point somewhere f has no jump
    let g0 = gamma.gamma0();
    let moved = g0[0];
    let free = (1..1000).map(|k| k as f64 / 1000.0).find(|x| !ps.as_slice().contains(x)).unwrap();
    for g in gamma.gamma.iter_mut() {
        if *g == moved {
            *g = free;
        }
    }
    let r = check_strict_admissibility(&f, &sc, &gamma).unwrap();
    assert_eq!(r.passed(PropertyId::JumpsInGamma), Some(false));
}
