//! Brute-force minimisation of `∫|g|` over one Q2 interval.
//!
//! The family on `[0, L]`: `g(0) = g(L) = 0`, a single positive jump at
//! `γ ∈ (0, L)`, one slope to the left of the jump and one or two slopes to
//! the right. Slopes are taken from the levels `s0 - k` reachable by
//! differences of discrepancy functions, bounded below by `-a^t`.

use alloc::vec::Vec;

use super::IntervalType;
use crate::admissibility::back_line_violation;
use crate::math::{pow_int, snapped_floor};
use crate::plf::{PiecewiseLinearFn, Segment};
use crate::{Error, Result};

const MIN_GRID: usize = 100;
const BEND_TOL: f64 = 1e-12;

/// One member of the parametric family, positioned on `[0, length]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeInstance {
    pub length: f64,
    pub kind: IntervalType,
    pub a: f64,
    pub t: u32,
    /// Jump position as a fraction of `length`.
    pub jump_fraction: f64,
    pub left_slope: f64,
    /// Slopes right of the jump; equal entries mean a single segment.
    pub right_slopes: [f64; 2],
    /// Break between the two right segments as a fraction of `length`.
    pub right_break: f64,
}

impl ShapeInstance {
    pub fn jump_position(&self) -> f64 {
        self.length * self.jump_fraction
    }

    fn break_position(&self) -> f64 {
        self.length * self.right_break
    }

    fn right_segments(&self) -> [Segment; 2] {
        let (gamma, beta, l) = (self.jump_position(), self.break_position(), self.length);
        let [sa, sb] = self.right_slopes;
        let at_beta = sb * (beta - l);
        [
            Segment { start: gamma, end: beta, start_value: at_beta - sa * (beta - gamma), slope: sa },
            Segment { start: beta, end: l, start_value: at_beta, slope: sb },
        ]
    }

    fn left_segment(&self) -> Segment {
        Segment { start: 0.0, end: self.jump_position(), start_value: 0.0, slope: self.left_slope }
    }

    pub fn jump_height(&self) -> f64 {
        self.right_segments()[0].start_value - self.left_segment().end_value()
    }

    pub fn integral_abs(&self) -> f64 {
        let [r0, r1] = self.right_segments();
        self.left_segment().integral_abs() + r0.integral_abs() + r1.integral_abs()
    }

    /// The shape embedded in `[0, 1]`, extended by zero past `length`.
    pub fn to_plf(&self) -> Result<PiecewiseLinearFn> {
        if !(self.length > 0.0 && self.length <= 1.0) {
            return Err(Error::InvalidInterval { lo: 0.0, hi: self.length });
        }
        let [r0, r1] = self.right_segments();
        let mut breaks = alloc::vec![0.0, r0.start];
        let mut slopes = alloc::vec![self.left_slope, r0.slope];
        let mut jumps = alloc::vec![0.0, self.jump_height()];
        if r1.start > r0.start && r1.start < r1.end {
            breaks.push(r1.start);
            slopes.push(r1.slope);
            jumps.push(0.0);
        }
        if self.length < 1.0 {
            breaks.push(self.length);
            slopes.push(0.0);
            jumps.push(0.0);
        }
        breaks.push(1.0);
        PiecewiseLinearFn::with_signed_jumps(breaks, slopes, jumps, 0.0)
    }

    /// Checks jump positivity, the slope range, the slope variation right of
    /// the jump, the bound `|g| <= a^t` and, for Q2, the bend condition.
    pub fn is_admissible(&self) -> Result<bool> {
        let a_t = pow_int(self.a, self.t);
        let c = pow_int(self.a, self.t - 1);
        let sigma = c * (self.a - 2.0);
        let s0 = -sigma;
        let [r0, r1] = self.right_segments();
        let used_right: Vec<Segment> = [r0, r1].into_iter().filter(|s| s.end > s.start).collect();
        let slopes_ok = core::iter::once(self.left_slope)
            .chain(used_right.iter().map(|s| s.slope))
            .all(|s| s <= s0 && s >= -a_t);
        let variation_ok = (r0.slope - r1.slope).abs() <= c || used_right.len() < 2;
        let bounded = [self.left_segment().end_value(), r0.start_value, r1.start_value]
            .iter()
            .all(|v| v.abs() <= a_t);
        if !(self.jump_height() > 0.0 && slopes_ok && variation_ok && bounded) {
            return Ok(false);
        }
        match self.kind {
            IntervalType::Q2 { n } => {
                let f = self.to_plf()?;
                let threshold = s0 - n as f64;
                Ok(back_line_violation(&f, sigma, threshold, 0.0, self.jump_position(), self.length).is_none())
            }
            _ => Ok(true),
        }
    }
}

/// Result of [`q2_shape_sweep`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeSweep {
    pub minimum: f64,
    pub argmin: Option<ShapeInstance>,
}

/// Slope levels `s0, s0 - 1, ...` down to `-a^t`, with `-a^t` itself
/// appended when it is not already a level.
pub fn slope_levels(a: f64, t: u32) -> Vec<f64> {
    let a_t = pow_int(a, t);
    let sigma = pow_int(a, t - 1) * (a - 2.0);
    let steps = snapped_floor(a_t - sigma) as usize;
    let mut levels: Vec<f64> = (0..=steps).map(|k| -sigma - k as f64).collect();
    if (levels[steps] + a_t).abs() > 1e-9 {
        levels.push(-a_t);
    }
    levels
}

/// Minimum of `∫|g|` over the Q2 family on `[0, L]` for index `n`, with
/// jump and break positions on the grid `L·i/grid`. Grids that divide one
/// another are nested, so refining can only lower the minimum.
pub fn q2_shape_sweep(a: f64, t: u32, n: usize, length: f64, grid: usize) -> Result<ShapeSweep> {
    let sc = crate::admissibility::ScaleParams::new(a, t)?;
    sc.require_integer_exact()?;
    let max_n = (snapped_floor(sc.a_pow_t1()) as usize).saturating_sub(1);
    if n == 0 || n > max_n {
        return Err(Error::IndexOutOfRange { name: "n", value: n, lo: 1, hi: max_n });
    }
    if grid < MIN_GRID {
        return Err(Error::IndexOutOfRange { name: "grid", value: grid, lo: MIN_GRID, hi: usize::MAX });
    }
    if !(length >= 0.0) || !length.is_finite() {
        return Err(Error::InvalidInterval { lo: 0.0, hi: length });
    }
    if length == 0.0 {
        return Ok(ShapeSweep { minimum: 0.0, argmin: None });
    }

    let levels = slope_levels(a, t);
    let a_t = sc.a_pow_t();
    let c = sc.a_pow_t1();
    let sigma = sc.abs_s0();
    let threshold = -sigma - n as f64;
    let frac = |i: usize| i as f64 / grid as f64;

    let mut best = ShapeSweep { minimum: f64::INFINITY, argmin: None };
    for i in 1..grid {
        let gamma = length * frac(i);
        // cheapest conceivable left branch uses slope s0
        let left_floor = 0.5 * sigma * gamma * gamma;
        if left_floor >= best.minimum {
            break;
        }
        // single segment: j == grid; two segments: i < j < grid
        for j in (i + 1..=grid).rev() {
            let beta = length * frac(j);
            for (ia, &sa) in levels.iter().enumerate() {
                for (ib, &sb) in levels.iter().enumerate() {
                    let single = j == grid;
                    if single && ia != ib || !single && (ia == ib || (sa - sb).abs() > c) {
                        continue;
                    }
                    let at_beta = sb * (beta - length);
                    let r0 = Segment { start: gamma, end: beta, start_value: at_beta - sa * (beta - gamma), slope: sa };
                    let r1 = Segment { start: beta, end: length, start_value: at_beta, slope: sb };
                    let right_int = r0.integral_abs() + r1.integral_abs();
                    if left_floor + right_int >= best.minimum {
                        continue;
                    }
                    if r0.start_value.abs() > a_t || at_beta.abs() > a_t {
                        continue;
                    }
                    // sup of h(x) = g(x) + σx over segments steeper than the threshold
                    let mut rhs = f64::NEG_INFINITY;
                    for s in [r0, r1] {
                        if s.end > s.start && s.slope > threshold {
                            rhs = rhs.max(s.start_value + sigma * s.start).max(s.end_value() + sigma * s.end);
                        }
                    }
                    let g_plus = r0.start_value;
                    // largest admissible left slope gives the smallest left integral
                    let Some(&sl) = levels.iter().find(|&&sl| sl * gamma < g_plus && (sl * gamma).abs() <= a_t) else {
                        continue;
                    };
                    if rhs > f64::NEG_INFINITY && (sl + sigma) * gamma < rhs - BEND_TOL * rhs.abs().max(1.0) {
                        continue;
                    }
                    let total = 0.5 * sl.abs() * gamma * gamma + right_int;
                    if total < best.minimum {
                        best = ShapeSweep {
                            minimum: total,
                            argmin: Some(ShapeInstance {
                                length,
                                kind: IntervalType::Q2 { n },
                                a,
                                t,
                                jump_fraction: frac(i),
                                left_slope: sl,
                                right_slopes: [sa, sb],
                                right_break: frac(j),
                            }),
                        };
                    }
                }
            }
        }
    }
    Ok(best)
}
