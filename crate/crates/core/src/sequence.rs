//! Van der Corput and Kronecker sequences, and `N·D*_N / ln N` trajectories.

use alloc::vec::Vec;

use crate::math::{floor, ln};
use crate::points::star_discrepancy_sorted;
use crate::{Error, PointSet, Result};

/// `(√5 - 1)/2`.
pub const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Base-`b` digit reversal of `n` mirrored about the radix point.
pub fn radical_inverse(base: u64, mut n: u64) -> f64 {
    let b = base as f64;
    let mut inv = 1.0 / b;
    let mut acc = 0.0;
    while n > 0 {
        acc += (n % base) as f64 * inv;
        n /= base;
        inv /= b;
    }
    acc
}

/// The first `count` points `radical_inverse(base, n)`, `n = 1, 2, ...`.
pub fn van_der_corput(base: u64, count: usize) -> Result<PointSet> {
    if base < 2 {
        return Err(Error::IndexOutOfRange { name: "base", value: base as usize, lo: 2, hi: usize::MAX });
    }
    check_count(count)?;
    PointSet::new((1..=count as u64).map(|n| radical_inverse(base, n)).collect())
}

/// The first `count` points `{n α}`, `n = 1, 2, ...`.
pub fn kronecker(alpha: f64, count: usize) -> Result<PointSet> {
    if !alpha.is_finite() {
        return Err(Error::InvalidArgument("alpha must be finite"));
    }
    check_count(count)?;
    let points = (1..=count)
        .map(|n| {
            let x = n as f64 * alpha;
            let frac = x - floor(x);
            // rounding can land on 1.0
            if frac >= 1.0 { 0.0 } else { frac }
        })
        .collect();
    PointSet::new(points)
}

fn check_count(count: usize) -> Result<()> {
    if count == 0 {
        return Err(Error::IndexOutOfRange { name: "count", value: 0, lo: 1, hi: usize::MAX });
    }
    Ok(())
}

/// Which prefix lengths a trajectory visits.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Stride {
    All,
    /// Powers of two, plus the full length if it is not one.
    #[default]
    Dyadic,
    Custom(Vec<usize>),
}

impl Stride {
    /// Checkpoints for a sequence of length `len`, ascending and deduplicated.
    pub fn checkpoints(&self, len: usize) -> Result<Vec<usize>> {
        let mut ns: Vec<usize> = match self {
            Stride::All => (1..=len).collect(),
            Stride::Dyadic => {
                let mut v: Vec<usize> = core::iter::successors(Some(1usize), |&n| n.checked_mul(2))
                    .take_while(|&n| n <= len)
                    .collect();
                v.push(len);
                v
            }
            Stride::Custom(list) => {
                if let Some(&n) = list.iter().find(|&&n| n == 0 || n > len) {
                    return Err(Error::PrefixOutOfRange { n, len });
                }
                list.clone()
            }
        };
        ns.sort_unstable();
        ns.dedup();
        Ok(ns)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRecord {
    pub n: usize,
    pub dstar: f64,
    /// `N·D*_N`.
    pub scaled: f64,
    /// `N·D*_N / ln N`; absent at `N = 1`.
    pub normalized: Option<f64>,
    /// Largest `normalized` seen up to this checkpoint.
    pub running_max: Option<f64>,
}

/// Exact `D*_N` at each checkpoint, recomputed from the sorted prefix.
pub fn trajectory(ps: &PointSet, stride: &Stride) -> Result<Vec<TrajectoryRecord>> {
    let checkpoints = stride.checkpoints(ps.len())?;
    let mut running: Option<f64> = None;
    let mut out = Vec::with_capacity(checkpoints.len());
    for n in checkpoints {
        let sorted = ps.sorted_prefix(n)?;
        let dstar = star_discrepancy_sorted(&sorted);
        let scaled = n as f64 * dstar;
        let normalized = (n >= 2).then(|| scaled / ln(n as f64));
        if let Some(v) = normalized {
            running = Some(running.map_or(v, |r| r.max(v)));
        }
        out.push(TrajectoryRecord { n, dstar, scaled, normalized, running_max: running });
    }
    Ok(out)
}
