mod common;

use common::*;
use proptest::prelude::*;
use stardisc_core::bounds::{
    bound_report, chi_bounds, coefficient_a, harmonic_tail_bound_check, optimize_constant, p_function,
    p_leading_coefficient, q_function, strict_bound, strong_bound, Family,
};

fn grid(n: usize) -> impl Iterator<Item = f64> {
    // (3, 3.7]
    (1..=n).map(move |i| 3.0 + 0.7 * i as f64 / n as f64)
}

#[test]
fn strict_dominates_strong_on_grid() {
    for a in grid(1000) {
        assert!(strict_bound(a).unwrap() > strong_bound(a).unwrap(), "a={a}");
        let r = bound_report(a).unwrap();
        assert!(r.strong_bound > 0.0 && r.strict_bound > 0.0 && r.c_strong > 0.0 && r.c_strict > 0.0);
    }
}

#[test]
fn q_negative_and_increasing() {
    let mut prev = f64::NEG_INFINITY;
    for a in grid(1000) {
        let q = q_function(a).unwrap();
        assert!(q < 0.0);
        assert!(q > prev, "q not increasing at a={a}");
        prev = q;
    }
    assert!((q_function(3.0).unwrap() + 2.0 * 2f64.ln()).abs() < 1e-15);
}

#[test]
fn p_minimiser_is_chi_crit() {
    // vertex of the parabola through three samples
    for a in [3.05, 3.35, 3.62079, 3.7] {
        for t in [2, 4] {
            let chi = chi_bounds(a, t).unwrap();
            let h = chi.chi_max;
            let p = |x: f64| p_function(a, t, x).unwrap();
            let alpha = (p(2.0 * h) - 2.0 * p(h) + p(0.0)) / (2.0 * h * h);
            let beta = (p(h) - p(0.0)) / h - alpha * h;
            let vertex = -beta / (2.0 * alpha);
            assert!((vertex - chi.chi_crit).abs() <= 1e-9 * chi.chi_max, "a={a} t={t}");
        }
    }
}

#[test]
fn p_leading_coefficient_by_finite_differences() {
    for a in [3.01, 3.35, 3.7] {
        let t = 3;
        let h = 1e-3;
        let x = chi_bounds(a, t).unwrap().chi_min;
        let p = |x: f64| p_function(a, t, x).unwrap();
        let second = (p(x + h) - 2.0 * p(x) + p(x - h)) / (h * h) / 2.0;
        let lead = p_leading_coefficient(a, t).unwrap();
        assert!(lead > 0.0);
        assert!((second - lead).abs() <= 1e-6 * lead.abs().max(1.0));
    }
}

#[test]
fn p_at_zero() {
    for a in [3.1f64, 3.5] {
        let k = a - 2.0;
        let expected = k / (2.0 * (3.0 + k * (1.0 + 1.0 / k).ln()));
        assert!((p_function(a, 3, 0.0).unwrap() - expected).abs() < 1e-15);
    }
}

#[test]
fn harmonic_gap_shrinks_with_t() {
    let mut prev = f64::INFINITY;
    for t in 2..=12 {
        let (sum, bound) = harmonic_tail_bound_check(3.0, t).unwrap();
        assert!(sum <= bound);
        assert!(bound - sum < prev);
        prev = bound - sum;
    }
    assert!(harmonic_tail_bound_check(3.0, 1).is_err());
}

#[test]
fn optimizer_matches_dense_search() {
    for family in [Family::Strict, Family::Strong] {
        let (lo, hi) = family.domain();
        let opt = optimize_constant(family, lo, hi, 1e-10).unwrap();
        let (arg, val) = dense_argmax(|a| family.bound(a).unwrap() / (2.0 * a.ln()), lo, hi);
        assert!((opt.a_star - arg).abs() < 1e-6);
        assert!((opt.c_star - val).abs() < 1e-12);
        assert!(opt.unimodal);
    }
}

#[test]
fn degenerate_interval() {
    let opt = optimize_constant(Family::Strict, 3.5, 3.5, 1e-10).unwrap();
    assert_eq!(opt.a_star, 3.5);
    assert_eq!(opt.c_star, strict_bound(3.5).unwrap() / (2.0 * 3.5f64.ln()));
    assert!(optimize_constant(Family::Strict, 3.6, 3.5, 1e-10).is_err());
    assert!(optimize_constant(Family::Strict, 3.0, 3.8, 1e-10).is_err());
}

proptest! {
    #[test]
    fn p_at_chi_min_is_the_strict_bound(a in 3.0..=3.7f64, t in 1u32..=10) {
        let chi = chi_bounds(a, t).unwrap();
        let p = p_function(a, t, chi.chi_min).unwrap();
        prop_assert!((p - strict_bound(a).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn chi_ratios_do_not_depend_on_t(a in 3.0..=3.7f64, t in 1u32..=12) {
        let base = chi_bounds(a, 1).unwrap();
        let c = chi_bounds(a, t).unwrap();
        prop_assert!((c.chi_crit / c.chi_min - base.chi_crit / base.chi_min).abs() <= 1e-12);
        prop_assert!((c.chi_max / c.chi_min - base.chi_max / base.chi_min).abs() <= 1e-12);
        prop_assert!(0.0 < c.chi_min && c.chi_min <= c.chi_max);
        prop_assert!(c.chi_crit <= c.chi_min);
    }

    #[test]
    fn padding_does_not_move_the_optimum(lo in 3.0..3.55f64) {
        let padded = optimize_constant(Family::Strict, lo, 3.7, 1e-10).unwrap();
        let tight = optimize_constant(Family::Strict, 3.55, 3.7, 1e-10).unwrap();
        // the ratio is flat to ~1e-16 at the top, which leaves a_star
        // determined only to ~1e-7
        prop_assert!((padded.a_star - tight.a_star).abs() <= 1e-6);
        prop_assert!((padded.c_star - tight.c_star).abs() <= 1e-12);
    }

    #[test]
    fn coefficients_increase_towards_half_s0(a in 3.0..=3.7f64, t in 2u32..6) {
        let c = a.powi(t as i32 - 1);
        let s = c * (a - 2.0);
        let max_n = (c - 1.0 - 1e-9).ceil() as usize;
        let mut prev = coefficient_a(a, t, 0).unwrap();
        prop_assert!((prev - s / 4.0).abs() <= 1e-12 * s);
        for n in 1..=max_n {
            let v = coefficient_a(a, t, n).unwrap();
            prop_assert!(v > prev && v < s / 2.0);
            prev = v;
        }
        prop_assert!(coefficient_a(a, t, max_n + 1).is_err());
    }
}
