//! Point sets, counting functions and exact discrepancies.

use alloc::vec::Vec;

use crate::plf::PiecewiseLinearFn;
use crate::{Error, Result};

/// Ordered finite sequence of points in `[0, 1)`. Order matters: prefixes
/// of the sequence define the discrepancy functions `D_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<f64>,
}

impl PointSet {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !(0.0..1.0).contains(*v)) {
            return Err(Error::InvalidDomain { index, value });
        }
        Ok(Self { points: values })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.points
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.points
    }

    /// `x_i` with 1-based index `i`.
    pub fn get(&self, i: usize) -> f64 {
        self.points[i - 1]
    }

    fn check_prefix(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.len() {
            return Err(Error::PrefixOutOfRange { n, len: self.len() });
        }
        Ok(())
    }

    /// Sorted copy of the first `n` points.
    pub fn sorted_prefix(&self, n: usize) -> Result<Vec<f64>> {
        self.check_prefix(n)?;
        let mut ys = self.points[..n].to_vec();
        ys.sort_by(f64::total_cmp);
        Ok(ys)
    }
}

/// `D_n` for a fixed prefix length, held as an exact piecewise-linear function.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscrepancyProfile {
    pub n: usize,
    pub function: PiecewiseLinearFn,
}

impl DiscrepancyProfile {
    pub fn eval(&self, x: f64) -> f64 {
        self.function.eval(x)
    }
}

/// `#{i <= n : x_i < x}`.
pub fn counting_function(ps: &PointSet, n: usize, x: f64) -> Result<usize> {
    ps.check_prefix(n)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::AbscissaOutOfRange(x));
    }
    Ok(ps.points[..n].iter().filter(|&&p| p < x).count())
}

/// `D_n(x) = #{i <= n : x_i < x} - n x`: slope `-n` with a jump at every
/// point, coincident points merged into one jump of summed height.
pub fn discrepancy_function(ps: &PointSet, n: usize) -> Result<DiscrepancyProfile> {
    let sorted = ps.sorted_prefix(n)?;
    let mut breaks = alloc::vec![0.0];
    let mut jumps = alloc::vec![0.0];
    for y in sorted {
        if y == *breaks.last().unwrap() {
            *jumps.last_mut().unwrap() += 1.0;
        } else {
            breaks.push(y);
            jumps.push(1.0);
        }
    }
    breaks.push(1.0);
    let slopes = alloc::vec![-(n as f64); jumps.len()];
    let function = PiecewiseLinearFn::new(breaks, slopes, jumps, 0.0)?;
    Ok(DiscrepancyProfile { n, function })
}

/// Exact star discrepancy of the first `n` points via the sorted-points
/// formula `max_i max(i/n - y_i, y_i - (i-1)/n)`, evaluated as
/// `(i - n y_i)/n` to keep the rounding away from the small differences.
pub fn star_discrepancy(ps: &PointSet, n: usize) -> Result<f64> {
    let sorted = ps.sorted_prefix(n)?;
    Ok(star_discrepancy_sorted(&sorted))
}

pub(crate) fn star_discrepancy_sorted(sorted: &[f64]) -> f64 {
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &y)| {
            let (i, ny) = (i as f64, n * y);
            ((i + 1.0 - ny) / n).max((ny - i) / n)
        })
        .fold(0.0, f64::max)
}

/// All `D_1, ..., D_N`.
pub fn all_discrepancy_functions(ps: &PointSet) -> Vec<PiecewiseLinearFn> {
    (1..=ps.len())
        .map(|n| discrepancy_function(ps, n).expect("prefix within range").function)
        .collect()
}

/// `∫_0^1 (max_n D_n - min_n D_n) dx` over all prefixes `0 <= n <= N`,
/// the empty prefix contributing `D_0 = 0`.
pub fn plf_range_integral(ps: &PointSet) -> f64 {
    let fns = all_discrepancy_functions(ps);
    let empty = PiecewiseLinearFn::zero();
    let refs: Vec<&PiecewiseLinearFn> = core::iter::once(&empty).chain(&fns).collect();
    let upper = PiecewiseLinearFn::upper_envelope(&refs);
    let lower = PiecewiseLinearFn::lower_envelope(&refs);
    upper.sub(&lower).integral()
}

/// `∫_0^1 |g(x)| dx`.
pub fn plf_integral_abs(g: &PiecewiseLinearFn) -> f64 {
    g.integral_abs()
}
