//! Reference computations that share no code with the library. Each one is
//! the slow, obvious version of something the library does cleverly.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stardisc_core::PointSet;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_points(rng: &mut ChaCha8Rng, n: usize) -> PointSet {
    PointSet::new((0..n).map(|_| rng.random::<f64>()).collect()).unwrap()
}

/// `sup_x |#{x_i < x}/N - x|` over the candidates `{0, 1} ∪ {x_i}`, taking
/// both one-sided limits at each point, by direct counting.
pub fn brute_star_discrepancy(points: &[f64]) -> f64 {
    let n = points.len() as f64;
    let mut candidates = vec![0.0, 1.0];
    candidates.extend_from_slice(points);
    let mut sup: f64 = 0.0;
    for &x in &candidates {
        let below = points.iter().filter(|&&p| p < x).count() as f64;
        let at_most = points.iter().filter(|&&p| p <= x).count() as f64;
        sup = sup.max((below / n - x).abs()).max((at_most / n - x).abs());
    }
    sup
}

/// `D_n(x)` straight from the definition.
pub fn direct_d(points: &[f64], n: usize, x: f64) -> f64 {
    points[..n].iter().filter(|&&p| p < x).count() as f64 - n as f64 * x
}

/// `max_{A2} D_n(x) - max_{A0} D_n(x)` with `|A0| = |A2| = n0`.
pub fn direct_f(points: &[f64], n0: usize, x: f64) -> f64 {
    let n_total = points.len();
    let max_over = |r: std::ops::RangeInclusive<usize>| r.map(|n| direct_d(points, n, x)).fold(f64::NEG_INFINITY, f64::max);
    max_over(n_total - n0 + 1..=n_total) - max_over(1..=n0)
}

/// Composite midpoint rule with `m` cells.
pub fn midpoint(f: impl Fn(f64) -> f64, m: usize) -> f64 {
    let h = 1.0 / m as f64;
    (0..m).map(|i| f((i as f64 + 0.5) * h)).sum::<f64>() * h
}

/// `max_{0<=n<=N} D_n - min_{0<=n<=N} D_n` at `x`, with `D_0 = 0`.
pub fn direct_range(points: &[f64], x: f64) -> f64 {
    let values: Vec<f64> = (0..=points.len()).map(|n| direct_d(points, n, x)).collect();
    values.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - values.iter().cloned().fold(f64::INFINITY, f64::min)
}

/// Strict bound as transcribed with prefactor `a` in place of 16 in the
/// denominator.
pub fn strict_bound_prefactor_a(a: f64) -> f64 {
    let l = (1.0 + 1.0 / (a - 2.0)).ln();
    (a - 2.0) * (12.0 * a + 9.0 + (a - 2.0) * (4.0 * a - 3.0) * l)
        / (a * (a - 0.5).powi(2) * (3.0 + (a - 2.0) * l))
}

/// Maximiser of `g` on `[lo, hi]` by dense sampling and local refinement.
pub fn dense_argmax(g: impl Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    let mut best = (lo, g(lo));
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..8 {
        let steps = 2000;
        for i in 0..=steps {
            let x = lo + (hi - lo) * i as f64 / steps as f64;
            let v = g(x);
            if v > best.1 {
                best = (x, v);
            }
        }
        let w = (hi - lo) / steps as f64;
        lo = (best.0 - 2.0 * w).max(lo);
        hi = (best.0 + 2.0 * w).min(hi);
    }
    best
}

/// Centered lattice `(2i - 1)/(2N)`.
pub fn centered_lattice(n: usize) -> PointSet {
    PointSet::new((1..=n).map(|i| (2 * i - 1) as f64 / (2 * n) as f64).collect()).unwrap()
}
