//! The two-scale comparison function `f` and checkers for its admissibility
//! properties.
//!
//! For a point set of size `N = ⌊a^t⌋` the indices split into
//! `A0 = {1..n0}`, `A2 = {N-n0+1..N}` and the middle block `A1`, with
//! `n0 = ⌊a^(t-1)⌋`. Then `f = max_{A2} D_n - max_{A0} D_n`.
//!
//! The checkers never fail on a semantic violation; they return a
//! [`PropertyReport`] with one [`PropertyOutcome`] per clause and a witness
//! for the first violation of each clause. They only return `Err` when the
//! inputs are malformed.

use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;

use crate::math::{pow_int, snapped_floor, tol_for};
use crate::plf::PiecewiseLinearFn;
use crate::points::{discrepancy_function, PointSet};
use crate::{Error, Result};

pub const A_MIN: f64 = 3.0;
pub const A_MAX: f64 = 3.7;

/// Scale `(a, t)` with the derived index partition and slope threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleParams {
    pub a: f64,
    pub t: u32,
    /// `N = ⌊a^t⌋`.
    pub n_total: usize,
    /// `n0 = ⌊a^(t-1)⌋ = |A0| = |A2|`.
    pub n0: usize,
    /// `s0 = -a^(t-1) (a - 2)`, always negative.
    pub s0: f64,
    /// `a^t` and `a^(t-1)` are integers (only when `a = 3`).
    pub integer_exact: bool,
}

impl ScaleParams {
    pub fn new(a: f64, t: u32) -> Result<Self> {
        if !(A_MIN..=A_MAX).contains(&a) {
            return Err(Error::ParameterOutOfRange { name: "a", value: a, lo: A_MIN, hi: A_MAX });
        }
        if t < 1 {
            return Err(Error::IndexOutOfRange { name: "t", value: t as usize, lo: 1, hi: u32::MAX as usize });
        }
        let a_t = pow_int(a, t);
        let a_t1 = pow_int(a, t - 1);
        Ok(Self {
            a,
            t,
            n_total: snapped_floor(a_t) as usize,
            n0: snapped_floor(a_t1) as usize,
            s0: -a_t1 * (a - 2.0),
            integer_exact: a == 3.0,
        })
    }

    /// `a^t`.
    pub fn a_pow_t(&self) -> f64 {
        pow_int(self.a, self.t)
    }

    /// `a^(t-1)`.
    pub fn a_pow_t1(&self) -> f64 {
        pow_int(self.a, self.t - 1)
    }

    pub fn abs_s0(&self) -> f64 {
        -self.s0
    }

    pub fn a0(&self) -> RangeInclusive<usize> {
        1..=self.n0
    }

    pub fn a1(&self) -> RangeInclusive<usize> {
        self.n0 + 1..=self.n_total - self.n0
    }

    pub fn a2(&self) -> RangeInclusive<usize> {
        self.n_total - self.n0 + 1..=self.n_total
    }

    pub(crate) fn require_integer_exact(&self) -> Result<()> {
        if self.integer_exact {
            Ok(())
        } else {
            Err(Error::NotIntegerExact(self.a))
        }
    }

    /// Errors unless `ps` has exactly `N` points.
    pub fn require_size(&self, ps: &PointSet) -> Result<()> {
        if ps.len() != self.n_total {
            return Err(Error::SizeMismatch { expected: self.n_total, actual: ps.len() });
        }
        Ok(())
    }
}

pub fn make_scale(a: f64, t: u32) -> Result<ScaleParams> {
    ScaleParams::new(a, t)
}

/// `f = max_{n∈A2} D_n - max_{n∈A0} D_n`.
///
/// The definition only needs the floored cardinalities, so any `a` in range
/// is accepted; the integer-exact checks live in the checkers.
pub fn build_f(ps: &PointSet, sc: &ScaleParams) -> Result<PiecewiseLinearFn> {
    sc.require_size(ps)?;
    let envelope = |range: RangeInclusive<usize>| -> Result<PiecewiseLinearFn> {
        let fns = range
            .map(|n| discrepancy_function(ps, n).map(|d| d.function))
            .collect::<Result<Vec<_>>>()?;
        let refs: Vec<&PiecewiseLinearFn> = fns.iter().collect();
        Ok(PiecewiseLinearFn::upper_envelope(&refs))
    };
    Ok(envelope(sc.a2())?.sub(&envelope(sc.a0())?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropertyId {
    /// (i) `f(0) = f(1) = 0`.
    EndpointZeros,
    /// (ii) `|f| <= a^t`.
    Bounded,
    /// (iii) every discontinuity is a positive jump.
    PositiveJumps,
    /// (iv) all slopes in `[-a^t, s0]`.
    SlopeRange,
    /// (v) on a continuity stretch slopes differ by at most `a^(t-1)`.
    SlopeVariation,
    /// (vi) a jump of height at least 1 at every `x_i`, `i ∈ A1`.
    UnitJumpsA1,
    /// `f` is continuous at `x_1`.
    ContinuousAtFirstPoint,
    /// Bend condition at `x_j`, `j ∈ A2`.
    BendCondition { j: usize },
    /// (vi'.a) every jump lies in Γ.
    JumpsInGamma,
    /// (vi'.b) a jump of height at least 1 at every point of Γ1.
    UnitJumpsGamma1,
    /// (vi'.c) back-line condition for the `n`-th point of Γ2.
    GammaBend { n: usize },
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EndpointZeros => f.write_str("i"),
            Self::Bounded => f.write_str("ii"),
            Self::PositiveJumps => f.write_str("iii"),
            Self::SlopeRange => f.write_str("iv"),
            Self::SlopeVariation => f.write_str("v"),
            Self::UnitJumpsA1 => f.write_str("vi"),
            Self::ContinuousAtFirstPoint => f.write_str("continuity-x1"),
            Self::BendCondition { j } => write!(f, "bend[j={j}]"),
            Self::JumpsInGamma => f.write_str("vi'.a"),
            Self::UnitJumpsGamma1 => f.write_str("vi'.b"),
            Self::GammaBend { n } => write!(f, "vi'.c[n={n}]"),
        }
    }
}

/// Where and by how much a clause failed. For back-line conditions `x` is
/// the left probe point and `partner` the right one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub x: f64,
    pub measured: f64,
    pub threshold: f64,
    pub partner: Option<f64>,
}

impl Witness {
    fn at(x: f64, measured: f64, threshold: f64) -> Self {
        Self { x, measured, threshold, partner: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropertyOutcome {
    pub id: PropertyId,
    pub passed: bool,
    pub witness: Option<Witness>,
}

impl PropertyOutcome {
    fn from_witness(id: PropertyId, witness: Option<Witness>) -> Self {
        Self { id, passed: witness.is_none(), witness }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct PropertyReport {
    pub outcomes: Vec<PropertyOutcome>,
}

impl PropertyReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn get(&self, id: PropertyId) -> Option<&PropertyOutcome> {
        self.outcomes.iter().find(|o| o.id == id)
    }

    pub fn passed(&self, id: PropertyId) -> Option<bool> {
        self.get(id).map(|o| o.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }

    pub fn extend(&mut self, other: PropertyReport) {
        self.outcomes.extend(other.outcomes);
    }
}

/// Clauses (i)–(v); none of them needs the point set.
fn check_shape_clauses(f: &PiecewiseLinearFn, sc: &ScaleParams) -> Vec<PropertyOutcome> {
    let a_t = sc.a_pow_t();
    let a_t1 = sc.a_pow_t1();

    let endpoint = [0.0, 1.0]
        .into_iter()
        .map(|x| (x, f.eval(x)))
        .find(|&(_, v)| v.abs() > tol_for(v, 0.0))
        .map(|(x, v)| Witness::at(x, v, 0.0));

    let bounded = f
        .segments()
        .flat_map(|s| [(s.start, s.start_value), (s.end, s.end_value())])
        .chain([(0.0, f.anchor())])
        .find(|&(_, v)| v.abs() > a_t + tol_for(v, a_t))
        .map(|(x, v)| Witness::at(x, v.abs(), a_t));

    let positive = f
        .jumps()
        .find(|&(_, h)| h < -tol_for(h, 0.0))
        .map(|(x, h)| Witness::at(x, h, 0.0));

    let slope_range = f.segments().find_map(|s| {
        if s.slope < -a_t - tol_for(s.slope, a_t) {
            Some(Witness::at(s.start, s.slope, -a_t))
        } else if s.slope > sc.s0 + tol_for(s.slope, sc.s0) {
            Some(Witness::at(s.start, s.slope, sc.s0))
        } else {
            None
        }
    });

    let mut variation = None;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for (k, s) in f.segments().enumerate() {
        let h = f.jump(k);
        if k > 0 && h.abs() > tol_for(h, 0.0) {
            lo = f64::INFINITY;
            hi = f64::NEG_INFINITY;
        }
        lo = lo.min(s.slope);
        hi = hi.max(s.slope);
        if hi - lo > a_t1 + tol_for(hi - lo, a_t1) {
            variation = Some(Witness::at(s.start, hi - lo, a_t1));
            break;
        }
    }

    alloc::vec![
        PropertyOutcome::from_witness(PropertyId::EndpointZeros, endpoint),
        PropertyOutcome::from_witness(PropertyId::Bounded, bounded),
        PropertyOutcome::from_witness(PropertyId::PositiveJumps, positive),
        PropertyOutcome::from_witness(PropertyId::SlopeRange, slope_range),
        PropertyOutcome::from_witness(PropertyId::SlopeVariation, variation),
    ]
}

/// Checks (i)–(vi) plus continuity at `x_1`.
pub fn check_properties(f: &PiecewiseLinearFn, sc: &ScaleParams, ps: &PointSet) -> Result<PropertyReport> {
    sc.require_size(ps)?;
    let mut outcomes = check_shape_clauses(f, sc);

    let unit_jumps = sc
        .a1()
        .map(|i| (ps.get(i), f.jump_at(ps.get(i))))
        .find(|&(_, h)| h < 1.0 - tol_for(h, 1.0))
        .map(|(x, h)| Witness::at(x, h, 1.0));
    outcomes.push(PropertyOutcome::from_witness(PropertyId::UnitJumpsA1, unit_jumps));

    let x1 = ps.get(1);
    let h1 = f.jump_at(x1);
    let continuity = (h1.abs() > tol_for(h1, 0.0)).then(|| Witness::at(x1, h1, 0.0));
    outcomes.push(PropertyOutcome::from_witness(PropertyId::ContinuousAtFirstPoint, continuity));

    Ok(PropertyReport { outcomes })
}

/// Checks that whenever `f` is flatter than `threshold` somewhere in
/// `(jump_x, right)`, `f` on `[left, jump_x)` stays above the line of slope
/// `-abs_s0` through that point. Returns the violating pair if any.
///
/// Both sides are affine per segment, so the extremes over each open piece
/// are attained in the limit at its ends; midpoints are probed as well.
pub(crate) fn back_line_violation(
    f: &PiecewiseLinearFn,
    abs_s0: f64,
    threshold: f64,
    left: f64,
    jump_x: f64,
    right: f64,
) -> Option<Witness> {
    // h(x) = f(x) + |s0| x; the condition is min_left h >= max_firing h
    let h = |x: f64, v: f64| v + abs_s0 * x;

    let mut best_right: Option<(f64, f64, f64)> = None;
    for s in f.segments() {
        let (lo, hi) = (s.start.max(jump_x), s.end.min(right));
        if hi <= lo || s.slope <= threshold + tol_for(s.slope, threshold) {
            continue;
        }
        for x in [lo, 0.5 * (lo + hi), hi] {
            let v = s.value_at(x);
            if best_right.is_none_or(|(_, _, hb)| h(x, v) > hb) {
                best_right = Some((x, v, h(x, v)));
            }
        }
    }
    let (xr, vr, hr) = best_right?;

    let mut worst_left: Option<(f64, f64, f64)> = None;
    let mut consider = |x: f64, v: f64| {
        if worst_left.is_none_or(|(_, _, hw)| h(x, v) < hw) {
            worst_left = Some((x, v, h(x, v)));
        }
    };
    // at x_l itself only the right limit counts: a jump at x_l would
    // otherwise put the pre-jump value into the infimum
    for s in f.segments() {
        let (lo, hi) = (s.start.max(left), s.end.min(jump_x));
        if hi <= lo {
            continue;
        }
        for x in [lo, 0.5 * (lo + hi), hi] {
            consider(x, s.value_at(x));
        }
    }
    let (xl, vl, hl) = worst_left?;

    (hl < hr - tol_for(hl, hr)).then_some(Witness {
        x: xl,
        measured: vl,
        threshold: vr + abs_s0 * (xr - xl),
        partner: Some(xr),
    })
}

/// Bend condition at `x_j` for `j ∈ A2` (1-based). Neighbours `x_l`, `x_r`
/// are the closest points of `ps` on either side (0 and 1 if none).
pub fn check_bend_condition(
    f: &PiecewiseLinearFn,
    sc: &ScaleParams,
    ps: &PointSet,
    j: usize,
) -> Result<PropertyReport> {
    sc.require_integer_exact()?;
    sc.require_size(ps)?;
    let a2 = sc.a2();
    if !a2.contains(&j) {
        return Err(Error::IndexOutOfRange { name: "j", value: j, lo: *a2.start(), hi: *a2.end() });
    }
    let xj = ps.get(j);
    let h = f.jump_at(xj);
    if h.abs() <= tol_for(h, 0.0) {
        return Err(Error::NoDiscontinuity { j, x: xj });
    }
    let (left, right) = neighbours(ps.as_slice().iter().copied(), xj);
    let k = j - (sc.n_total - sc.n0);
    let witness = back_line_violation(f, sc.abs_s0(), sc.s0 - k as f64, left, xj, right);
    Ok(PropertyReport {
        outcomes: alloc::vec![PropertyOutcome::from_witness(PropertyId::BendCondition { j }, witness)],
    })
}

/// Indices `j ∈ A2` at which `f` is discontinuous.
pub fn eligible_bend_indices(f: &PiecewiseLinearFn, sc: &ScaleParams, ps: &PointSet) -> Vec<usize> {
    sc.a2()
        .filter(|&j| j <= ps.len())
        .filter(|&j| {
            let h = f.jump_at(ps.get(j));
            h.abs() > tol_for(h, 0.0)
        })
        .collect()
}

/// Closest values strictly left and right of `x`, defaulting to 0 and 1.
fn neighbours(values: impl Iterator<Item = f64>, x: f64) -> (f64, f64) {
    values.fold((0.0, 1.0), |(l, r), v| {
        if v < x && v > l {
            (v, r)
        } else if v > x && v < r {
            (l, v)
        } else {
            (l, r)
        }
    })
}

/// The jump-location set Γ with its unit-jump subset Γ1 and the ordered
/// subset Γ2 (`gamma2[n - 1]` is the point `ξ_{k_n}`).
#[derive(Debug, Clone, PartialEq)]
pub struct GammaSets {
    pub gamma: Vec<f64>,
    pub gamma1: Vec<f64>,
    pub gamma2: Vec<f64>,
}

impl GammaSets {
    /// Γ = {x_2..x_N}, Γ1 = the A1 points, Γ2 = x_j for `j = N-n0+n`,
    /// `n = 1..n0-1`.
    pub fn from_point_set(ps: &PointSet, sc: &ScaleParams) -> Result<Self> {
        sc.require_integer_exact()?;
        sc.require_size(ps)?;
        let n_a2 = sc.n_total - sc.n0;
        Ok(Self {
            gamma: (2..=sc.n_total).map(|i| ps.get(i)).collect(),
            gamma1: sc.a1().map(|i| ps.get(i)).collect(),
            gamma2: (1..sc.n0).map(|n| ps.get(n_a2 + n)).collect(),
        })
    }

    /// Γ0 = Γ \ (Γ1 ∪ Γ2).
    pub fn gamma0(&self) -> Vec<f64> {
        self.gamma
            .iter()
            .copied()
            .filter(|x| !self.gamma1.contains(x) && !self.gamma2.contains(x))
            .collect()
    }

    pub fn validate(&self, sc: &ScaleParams) -> Result<()> {
        sc.require_integer_exact()?;
        if self.gamma.len() != sc.n_total - 1 {
            return Err(Error::MalformedGamma("|Γ| must be a^t - 1"));
        }
        if self.gamma1.len() != sc.n_total - 2 * sc.n0 {
            return Err(Error::MalformedGamma("|Γ1| must be a^(t-1)(a-2)"));
        }
        if self.gamma2.len() != sc.n0 - 1 {
            return Err(Error::MalformedGamma("|Γ2| must be a^(t-1) - 1"));
        }
        if self.gamma.iter().any(|x| !(0.0..1.0).contains(x)) {
            return Err(Error::MalformedGamma("Γ must lie in [0, 1)"));
        }
        let mut sorted = self.gamma.clone();
        sorted.sort_by(f64::total_cmp);
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedGamma("Γ has repeated points"));
        }
        if self.gamma1.iter().chain(&self.gamma2).any(|x| !self.gamma.contains(x)) {
            return Err(Error::MalformedGamma("Γ1 and Γ2 must be subsets of Γ"));
        }
        if self.gamma1.iter().any(|x| self.gamma2.contains(x)) {
            return Err(Error::MalformedGamma("Γ1 and Γ2 must be disjoint"));
        }
        let mut g2 = self.gamma2.clone();
        g2.sort_by(f64::total_cmp);
        if g2.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedGamma("Γ2 has repeated points"));
        }
        Ok(())
    }
}

/// Clauses (i)–(v) together with (vi'.a)–(vi'.c).
pub fn check_strict_admissibility(
    g: &PiecewiseLinearFn,
    sc: &ScaleParams,
    gs: &GammaSets,
) -> Result<PropertyReport> {
    gs.validate(sc)?;
    let mut outcomes = check_shape_clauses(g, sc);

    let in_gamma = |x: f64| gs.gamma.iter().any(|&p| (p - x).abs() <= crate::math::EPS);
    let stray = g
        .discontinuities()
        .find(|&(x, _)| !in_gamma(x))
        .map(|(x, h)| Witness::at(x, h, 0.0));
    outcomes.push(PropertyOutcome::from_witness(PropertyId::JumpsInGamma, stray));

    let weak = gs
        .gamma1
        .iter()
        .map(|&x| (x, g.jump_at(x)))
        .find(|&(_, h)| h < 1.0 - tol_for(h, 1.0))
        .map(|(x, h)| Witness::at(x, h, 1.0));
    outcomes.push(PropertyOutcome::from_witness(PropertyId::UnitJumpsGamma1, weak));

    for (idx, &xk) in gs.gamma2.iter().enumerate() {
        let n = idx + 1;
        let (left, right) = neighbours(gs.gamma.iter().copied(), xk);
        let witness = back_line_violation(g, sc.abs_s0(), sc.s0 - n as f64, left, xk, right);
        outcomes.push(PropertyOutcome::from_witness(PropertyId::GammaBend { n }, witness));
    }
    Ok(PropertyReport { outcomes })
}
