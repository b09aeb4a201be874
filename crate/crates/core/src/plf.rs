//! Left-continuous piecewise-linear functions on `[0, 1]`.
//!
//! A function is stored as a strictly increasing list of breakpoints
//! `0 = b_0 < b_1 < ... < b_m = 1`, one slope per segment `(b_k, b_{k+1}]`,
//! the right-sided jump at each `b_k` (`k < m`) and the value at `0`.
//! The value at a breakpoint is always the left limit; a jump at `b_k`
//! takes effect strictly to the right of `b_k`. A jump at `b_0 = 0` is
//! allowed, since a point located at `0` makes `D_n` jump there.

use alloc::vec::Vec;

use crate::math::{approx_eq, tol_for};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinearFn {
    breaks: Vec<f64>,
    /// Right limit at `breaks[k]`, i.e. the value where segment `k` starts.
    starts: Vec<f64>,
    slopes: Vec<f64>,
    anchor: f64,
}

/// One affine piece `(start, end]` of a [`PiecewiseLinearFn`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub start: f64,
    pub end: f64,
    /// Right limit at `start`.
    pub start_value: f64,
    pub slope: f64,
}

impl Segment {
    #[inline]
    pub fn value_at(&self, x: f64) -> f64 {
        self.start_value + self.slope * (x - self.start)
    }

    #[inline]
    pub fn end_value(&self) -> f64 {
        self.value_at(self.end)
    }

    #[inline]
    pub fn len(&self) -> f64 {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.len() <= 0.0
    }

    /// Exact integral of `|g|` over the segment.
    pub fn integral_abs(&self) -> f64 {
        let (v0, v1) = (self.start_value, self.end_value());
        let len = self.len();
        if v0 * v1 >= 0.0 {
            0.5 * len * (v0.abs() + v1.abs())
        } else {
            // two triangles meeting at the zero crossing
            0.5 * len * (v0 * v0 + v1 * v1) / (v0.abs() + v1.abs())
        }
    }

    pub fn integral(&self) -> f64 {
        0.5 * self.len() * (self.start_value + self.end_value())
    }
}

impl PiecewiseLinearFn {
    /// Builds a function whose jumps are all nonnegative.
    ///
    /// `jumps[k]` is the right-sided jump at `breakpoints[k]`, so `jumps`
    /// and `slopes` both have one entry per segment.
    pub fn new(breakpoints: Vec<f64>, slopes: Vec<f64>, jumps: Vec<f64>, anchor: f64) -> Result<Self> {
        for (&b, &j) in breakpoints.iter().zip(&jumps) {
            if j < -tol_for(j, 0.0) {
                return Err(Error::NegativeJump { x: b, height: j });
            }
        }
        Self::with_signed_jumps(breakpoints, slopes, jumps, anchor)
    }

    /// Like [`new`](Self::new) but accepts jumps of either sign. Differences
    /// of envelopes and deliberately malformed candidates go through here.
    pub fn with_signed_jumps(
        breakpoints: Vec<f64>,
        slopes: Vec<f64>,
        jumps: Vec<f64>,
        anchor: f64,
    ) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::InvalidFunction("need at least two breakpoints"));
        }
        if breakpoints[0] != 0.0 || *breakpoints.last().unwrap() != 1.0 {
            return Err(Error::InvalidFunction("breakpoints must start at 0 and end at 1"));
        }
        if breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidFunction("breakpoints must be strictly increasing"));
        }
        let segments = breakpoints.len() - 1;
        if slopes.len() != segments || jumps.len() != segments {
            return Err(Error::InvalidFunction("need one slope and one jump per segment"));
        }
        if !anchor.is_finite() || slopes.iter().chain(&jumps).any(|v| !v.is_finite()) {
            return Err(Error::InvalidFunction("non-finite value"));
        }
        let mut starts = Vec::with_capacity(segments);
        let mut left = anchor;
        for k in 0..segments {
            let start = left + jumps[k];
            starts.push(start);
            left = start + slopes[k] * (breakpoints[k + 1] - breakpoints[k]);
        }
        Ok(Self { breaks: breakpoints, starts, slopes, anchor })
    }

    pub fn zero() -> Self {
        Self::linear(0.0, 0.0)
    }

    /// `x -> value_at_zero + slope * x`.
    pub fn linear(value_at_zero: f64, slope: f64) -> Self {
        Self {
            breaks: alloc::vec![0.0, 1.0],
            starts: alloc::vec![value_at_zero],
            slopes: alloc::vec![slope],
            anchor: value_at_zero,
        }
    }

    pub(crate) fn from_pieces(anchor: f64, pieces: Vec<(f64, f64, f64)>) -> Self {
        debug_assert!(!pieces.is_empty() && pieces[0].0 == 0.0);
        let mut breaks = Vec::with_capacity(pieces.len() + 1);
        let mut starts = Vec::with_capacity(pieces.len());
        let mut slopes = Vec::with_capacity(pieces.len());
        for (x, v, s) in pieces {
            breaks.push(x);
            starts.push(v);
            slopes.push(s);
        }
        breaks.push(1.0);
        Self { breaks, starts, slopes, anchor }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breaks
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    pub fn anchor(&self) -> f64 {
        self.anchor
    }

    pub fn segment_count(&self) -> usize {
        self.slopes.len()
    }

    pub fn segment(&self, k: usize) -> Segment {
        Segment {
            start: self.breaks[k],
            end: self.breaks[k + 1],
            start_value: self.starts[k],
            slope: self.slopes[k],
        }
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        (0..self.segment_count()).map(|k| self.segment(k))
    }

    /// Right-sided jump at `breakpoints()[k]`.
    pub fn jump(&self, k: usize) -> f64 {
        let left = if k == 0 { self.anchor } else { self.segment(k - 1).end_value() };
        self.starts[k] - left
    }

    /// `(location, height)` for every breakpoint, including zero jumps.
    pub fn jumps(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        (0..self.segment_count()).map(|k| (self.breaks[k], self.jump(k)))
    }

    /// Jumps whose height is not within tolerance of zero.
    pub fn discontinuities(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.jumps().filter(|&(_, h)| h.abs() > tol_for(h, 0.0))
    }

    /// Index of the segment `(b_k, b_{k+1}]` containing `x > 0`.
    fn segment_index(&self, x: f64) -> usize {
        let idx = self.breaks.partition_point(|&b| b < x);
        idx.saturating_sub(1).min(self.segment_count() - 1)
    }

    /// Value at `x` (left limit at breakpoints, `anchor` at 0).
    pub fn eval(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return self.anchor;
        }
        let k = self.segment_index(x);
        self.starts[k] + self.slopes[k] * (x - self.breaks[k])
    }

    /// Right limit at `x` (for `x < 1`).
    pub fn right_limit(&self, x: f64) -> f64 {
        let idx = self.breaks.partition_point(|&b| b <= x);
        let k = idx.saturating_sub(1).min(self.segment_count() - 1);
        self.starts[k] + self.slopes[k] * (x - self.breaks[k])
    }

    /// Jump height at `x`; zero if `x` is not a breakpoint.
    pub fn jump_at(&self, x: f64) -> f64 {
        match self.breakpoint_index(x) {
            Some(k) if k < self.segment_count() => self.jump(k),
            _ => 0.0,
        }
    }

    /// Index of the breakpoint equal to `x` (within tolerance).
    pub fn breakpoint_index(&self, x: f64) -> Option<usize> {
        let idx = self.breaks.partition_point(|&b| b < x);
        [idx.checked_sub(1), Some(idx)]
            .into_iter()
            .flatten()
            .filter(|&i| i < self.breaks.len())
            .find(|&i| (self.breaks[i] - x).abs() <= crate::math::EPS)
    }

    /// Largest `|g|` over `[0, 1]`, including one-sided limits.
    pub fn max_abs(&self) -> f64 {
        self.segments()
            .flat_map(|s| [s.start_value.abs(), s.end_value().abs()])
            .fold(self.anchor.abs(), f64::max)
    }

    /// Exact `∫_0^1 |g(x)| dx`, splitting segments at zero crossings.
    pub fn integral_abs(&self) -> f64 {
        self.segments().map(|s| s.integral_abs()).sum()
    }

    /// Exact `∫_0^1 g(x) dx`.
    pub fn integral(&self) -> f64 {
        self.segments().map(|s| s.integral()).sum()
    }

    /// Inserts a redundant breakpoint at `x` (no-op if it already exists).
    pub fn refine(&self, x: f64) -> Self {
        if x <= 0.0 || x >= 1.0 || self.breaks.contains(&x) {
            return self.clone();
        }
        let k = self.segment_index(x);
        let mut out = self.clone();
        out.breaks.insert(k + 1, x);
        out.starts.insert(k + 1, self.starts[k] + self.slopes[k] * (x - self.breaks[k]));
        out.slopes.insert(k + 1, self.slopes[k]);
        out
    }

    /// Snaps near-zero jumps to zero and merges collinear continuous pieces.
    pub fn simplify(&self) -> Self {
        let mut pieces: Vec<(f64, f64, f64)> = Vec::with_capacity(self.segment_count());
        let anchor = self.anchor;
        for seg in self.segments() {
            let mut start = seg.start_value;
            let left = match pieces.last() {
                Some(&(x0, v0, s0)) => v0 + s0 * (seg.start - x0),
                None => anchor,
            };
            if approx_eq(start, left) {
                start = left;
            }
            match pieces.last() {
                Some(&(_, _, s0)) if start == left && approx_eq(s0, seg.slope) => {}
                _ => pieces.push((seg.start, start, seg.slope)),
            }
        }
        Self::from_pieces(anchor, pieces)
    }

    pub fn negate(&self) -> Self {
        Self {
            breaks: self.breaks.clone(),
            starts: self.starts.iter().map(|v| -v).collect(),
            slopes: self.slopes.iter().map(|v| -v).collect(),
            anchor: -self.anchor,
        }
    }

    /// Pointwise difference `self - other`.
    pub fn sub(&self, other: &Self) -> Self {
        let grid = merged_breakpoints(&[self, other]);
        let pieces = grid
            .windows(2)
            .map(|w| {
                let x = w[0];
                (x, self.right_limit(x) - other.right_limit(x), self.slope_right_of(x) - other.slope_right_of(x))
            })
            .collect();
        Self::from_pieces(self.anchor - other.anchor, pieces).simplify()
    }

    /// Slope of the segment immediately to the right of `x`.
    pub fn slope_right_of(&self, x: f64) -> f64 {
        let idx = self.breaks.partition_point(|&b| b <= x);
        self.slopes[idx.saturating_sub(1).min(self.segment_count() - 1)]
    }

    /// Pointwise maximum of a nonempty family.
    pub fn upper_envelope(fns: &[&Self]) -> Self {
        assert!(!fns.is_empty(), "envelope of an empty family");
        let grid = merged_breakpoints(fns);
        let anchor = fns.iter().map(|f| f.anchor).fold(f64::NEG_INFINITY, f64::max);
        let mut pieces = Vec::with_capacity(grid.len());
        let mut lines: Vec<(f64, f64)> = Vec::with_capacity(fns.len());
        for w in grid.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            lines.clear();
            lines.extend(fns.iter().map(|f| (f.right_limit(lo), f.slope_right_of(lo))));
            envelope_of_lines(&lines, lo, hi, &mut pieces);
        }
        Self::from_pieces(anchor, pieces).simplify()
    }

    /// Pointwise minimum of a nonempty family.
    pub fn lower_envelope(fns: &[&Self]) -> Self {
        let negated: Vec<Self> = fns.iter().map(|f| f.negate()).collect();
        let refs: Vec<&Self> = negated.iter().collect();
        Self::upper_envelope(&refs).negate()
    }
}

/// Distance below which two abscissae are treated as equal when splitting
/// segments at crossings.
const X_TOL: f64 = 1e-13;

/// Sorted union of all breakpoints.
fn merged_breakpoints(fns: &[&PiecewiseLinearFn]) -> Vec<f64> {
    let mut grid: Vec<f64> = fns.iter().flat_map(|f| f.breaks.iter().copied()).collect();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

/// Appends the upper envelope of affine functions `(value at lo, slope)`
/// on `(lo, hi]` as `(start, start value, slope)` pieces.
fn envelope_of_lines(lines: &[(f64, f64)], lo: f64, hi: f64, out: &mut Vec<(f64, f64, f64)>) {
    let better = |a: (f64, f64), b: (f64, f64)| a.0 > b.0 || (a.0 == b.0 && a.1 > b.1);
    let mut cur = lines[0];
    for &l in &lines[1..] {
        if better(l, cur) {
            cur = l;
        }
    }
    let mut x = lo;
    let mut cur_value = cur.0;
    out.push((lo, cur.0, cur.1));
    loop {
        // earliest point where a steeper line overtakes the current one
        let mut next: Option<(f64, (f64, f64))> = None;
        for &(v, s) in lines {
            if s <= cur.1 {
                continue;
            }
            let v_here = v + s * (x - lo);
            let dx = (cur_value - v_here) / (s - cur.1);
            let xc = x + dx.max(0.0);
            match next {
                Some((xb, (_, sb))) if xc > xb || (xc == xb && s <= sb) => {}
                _ => next = Some((xc, (v, s))),
            }
        }
        // crossings within rounding distance of either end belong to that end;
        // keeping them leaves slivers with spurious slopes
        let near = X_TOL * hi.abs().max(1.0);
        match next {
            Some((xc, line)) if xc < hi - near && xc > x + near => {
                cur_value += cur.1 * (xc - x);
                cur = line;
                x = xc;
                out.push((x, cur_value, cur.1));
            }
            Some((xc, line)) if xc <= x + near => {
                // tie at x: switch to the steeper line without a new piece
                cur = line;
                out.last_mut().unwrap().2 = cur.1;
            }
            _ => break,
        }
    }
}
