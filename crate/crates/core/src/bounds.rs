//! Closed-form lower bounds and the optimisation of the discrepancy
//! constant over the scale parameter `a`.
//!
//! All logarithms are natural. A bound `B(a)` on `∫|f*|` turns into the
//! constant `B(a) / (2 ln a)`.

use alloc::vec::Vec;

use crate::math::{ln, pow_int, snapped_floor};
use crate::{Error, Result};

#[inline]
fn sq(x: f64) -> f64 {
    x * x
}

/// `ln(1 + 1/(a - 2))`.
fn log_term(a: f64) -> f64 {
    ln(1.0 + 1.0 / (a - 2.0))
}

fn check_range(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if (lo..=hi).contains(&value) {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange { name, value, lo, hi })
    }
}

fn check_t(t: u32, min: u32) -> Result<()> {
    if t < min {
        return Err(Error::IndexOutOfRange { name: "t", value: t as usize, lo: min as usize, hi: u32::MAX as usize });
    }
    Ok(())
}

/// `(a-2)(8a+3) / (8(1-2a)^2)`, valid for `3 <= a <= 4`.
pub fn strong_bound(a: f64) -> Result<f64> {
    check_range("a", a, 3.0, 4.0)?;
    Ok((a - 2.0) * (8.0 * a + 3.0) / (8.0 * sq(1.0 - 2.0 * a)))
}

/// `(a-2)(12a+9+(a-2)(4a-3)L) / (16(a-1/2)^2 (3+(a-2)L))` with
/// `L = ln(1+1/(a-2))`, valid for `3 <= a <= 3.7`.
pub fn strict_bound(a: f64) -> Result<f64> {
    check_range("a", a, 3.0, 3.7)?;
    let k = a - 2.0;
    let l = log_term(a);
    Ok(k * (12.0 * a + 9.0 + k * (4.0 * a - 3.0) * l) / (16.0 * sq(a - 0.5) * (3.0 + k * l)))
}

/// `3a - 9 - (a-1)(a-2) ln(1+1/(a-2))`; negative on `(3, 3.7]`.
pub fn q_function(a: f64) -> Result<f64> {
    check_range("a", a, 3.0, 3.7)?;
    Ok(3.0 * a - 9.0 - (a - 1.0) * (a - 2.0) * log_term(a))
}

/// Bounds on the common length of the unit-jump intervals, all carrying the
/// factor `a^(1-t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiBounds {
    pub chi_min: f64,
    pub chi_max: f64,
    /// Unconstrained minimiser of [`p_function`].
    pub chi_crit: f64,
}

pub fn chi_bounds(a: f64, t: u32) -> Result<ChiBounds> {
    check_range("a", a, 3.0, 3.7)?;
    check_t(t, 1)?;
    let scale = 1.0 / pow_int(a, t - 1);
    let k = a - 2.0;
    let l = log_term(a);
    let denom = 29.0 + 8.0 * a * (a - 4.0) - k * l;
    assert!(denom > 0.0, "chi_crit denominator must be positive on [3, 3.7]");
    Ok(ChiBounds {
        chi_min: scale / (a - 0.5),
        chi_max: scale / (a - 1.5),
        chi_crit: scale * 2.0 * (4.0 * a - 11.0 - k * l) / denom,
    })
}

/// The reduced objective `p(chi1)` after the Lagrange elimination with the
/// harmonic sum replaced by its logarithmic upper bound.
pub fn p_function(a: f64, t: u32, chi1: f64) -> Result<f64> {
    check_range("a", a, 3.0, 3.7)?;
    check_t(t, 1)?;
    if !(chi1 >= 0.0) {
        return Err(Error::ParameterOutOfRange { name: "chi1", value: chi1, lo: 0.0, hi: f64::INFINITY });
    }
    let c = pow_int(a, t - 1);
    let k = a - 2.0;
    let r = 1.0 - c * k * chi1;
    Ok(k * r * r / (2.0 * (3.0 + k * log_term(a))) + c * k * chi1 * (4.0 - c * chi1) / 16.0)
}

/// Coefficient of `chi1^2` in `p`.
pub fn p_leading_coefficient(a: f64, t: u32) -> Result<f64> {
    check_range("a", a, 3.0, 3.7)?;
    check_t(t, 1)?;
    let c = pow_int(a, t - 1);
    let k = a - 2.0;
    Ok(c * c * k * (k * k / (2.0 * (3.0 + k * log_term(a))) - 1.0 / 16.0))
}

/// `Σ_{n=|s0|+1}^{a^(t-1)-1+|s0|} 1/n` against its bound `ln(1+1/(a-2))`,
/// using floored cardinalities.
pub fn harmonic_tail_bound_check(a: f64, t: u32) -> Result<(f64, f64)> {
    check_range("a", a, 3.0, 3.7)?;
    check_t(t, 2)?;
    let c = pow_int(a, t - 1);
    let abs_s0 = snapped_floor(c * (a - 2.0)) as u64;
    let count = snapped_floor(c) as u64 - 1;
    // small terms first
    let sum = (abs_s0 + 1..=abs_s0 + count).rev().map(|n| 1.0 / n as f64).sum();
    Ok((sum, log_term(a)))
}

/// `Ã_0 = a^(t-1)(a-2)/4` for `n = 0`, otherwise
/// `Ã_n = |s0|(n+|s0|) / (2(n+2|s0|))` for `1 <= n <= ⌈a^(t-1)-1⌉`.
pub fn coefficient_a(a: f64, t: u32, n: usize) -> Result<f64> {
    check_range("a", a, 3.0, 3.7)?;
    check_t(t, 1)?;
    let c = pow_int(a, t - 1);
    let abs_s0 = c * (a - 2.0);
    if n == 0 {
        return Ok(abs_s0 / 4.0);
    }
    let max_n = crate::math::ceil(c - 1.0 - 1e-9).max(0.0) as usize;
    if n > max_n {
        return Err(Error::IndexOutOfRange { name: "n", value: n, lo: 0, hi: max_n });
    }
    let n = n as f64;
    Ok(abs_s0 * (n + abs_s0) / (2.0 * (n + 2.0 * abs_s0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Functions satisfying (i)–(vi).
    Strong,
    /// Functions satisfying (i)–(v) and (vi').
    Strict,
}

impl Family {
    pub fn bound(self, a: f64) -> Result<f64> {
        match self {
            Self::Strong => strong_bound(a),
            Self::Strict => strict_bound(a),
        }
    }

    /// Range of `a` on which the family's bound is valid.
    pub fn domain(self) -> (f64, f64) {
        match self {
            Self::Strong => (3.0, 4.0),
            Self::Strict => (3.0, 3.7),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Strong => "strong",
            Self::Strict => "strict",
        }
    }
}

impl core::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strong" => Ok(Self::Strong),
            "strict" => Ok(Self::Strict),
            _ => Err(Error::InvalidArgument("family must be strong or strict")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub a: f64,
    pub strong_bound: f64,
    pub strict_bound: f64,
    pub c_strong: f64,
    pub c_strict: f64,
}

pub fn bound_report(a: f64) -> Result<BoundReport> {
    let strong = strong_bound(a)?;
    let strict = strict_bound(a)?;
    let two_ln_a = 2.0 * ln(a);
    Ok(BoundReport {
        a,
        strong_bound: strong,
        strict_bound: strict,
        c_strong: strong / two_ln_a,
        c_strict: strict / two_ln_a,
    })
}

/// `bound(a) / (2 ln a)`.
pub fn constant_at(family: Family, a: f64) -> Result<f64> {
    Ok(family.bound(a)? / (2.0 * ln(a)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Optimum {
    pub a_star: f64,
    pub c_star: f64,
    /// The pre-scan grid looked unimodal.
    pub unimodal: bool,
}

const PRESCAN_POINTS: usize = 512;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximises `bound(a) / (2 ln a)` over `[a_lo, a_hi]`.
pub fn optimize_constant(family: Family, a_lo: f64, a_hi: f64, tol: f64) -> Result<Optimum> {
    let (lo, hi) = family.domain();
    if !(lo <= a_lo && a_lo <= a_hi && a_hi <= hi) {
        return Err(Error::InvalidInterval { lo: a_lo, hi: a_hi });
    }
    maximize_ratio(|a| family.bound(a).expect("a within the family's domain"), a_lo, a_hi, tol)
}

/// Maximises `bound(a) / (2 ln a)` for an arbitrary bound function.
///
/// A 512-point grid is scanned first; golden-section search then runs on the
/// grid cell pair around the best sample. The `unimodal` flag records
/// whether the grid rose then fell.
pub fn maximize_ratio(bound: impl Fn(f64) -> f64, a_lo: f64, a_hi: f64, tol: f64) -> Result<Optimum> {
    if !(tol > 0.0) {
        return Err(Error::ParameterOutOfRange { name: "tol", value: tol, lo: 0.0, hi: f64::INFINITY });
    }
    if !(a_lo <= a_hi) || !(a_lo > 1.0) {
        return Err(Error::InvalidInterval { lo: a_lo, hi: a_hi });
    }
    let objective = |a: f64| bound(a) / (2.0 * ln(a));
    if a_lo == a_hi {
        return Ok(Optimum { a_star: a_lo, c_star: objective(a_lo), unimodal: true });
    }

    let step = (a_hi - a_lo) / (PRESCAN_POINTS - 1) as f64;
    let grid: Vec<f64> = (0..PRESCAN_POINTS)
        .map(|i| if i + 1 == PRESCAN_POINTS { a_hi } else { a_lo + step * i as f64 })
        .collect();
    let values: Vec<f64> = grid.iter().map(|&a| objective(a)).collect();
    let best = (0..values.len()).fold(0, |b, i| if values[i] > values[b] { i } else { b });
    let unimodal = values[..=best].windows(2).all(|w| w[1] >= w[0]) && values[best..].windows(2).all(|w| w[1] <= w[0]);

    let mut lo = grid[best.saturating_sub(1)];
    let mut hi = grid[(best + 1).min(grid.len() - 1)];
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (objective(x1), objective(x2));
    while hi - lo > tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = objective(x2);
        }
    }
    let candidates = [(grid[best], values[best]), (x1, f1), (x2, f2)];
    let (a_star, c_star) = candidates.into_iter().fold(candidates[0], |b, c| if c.1 > b.1 { c } else { b });
    Ok(Optimum { a_star, c_star, unimodal })
}
