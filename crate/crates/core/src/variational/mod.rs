//! Numerical oracles for the variational part of the bound: the
//! interval-profile quadratic program and the per-interval shape bounds.
//!
//! A minimiser of `∫|g|` over strictly admissible `g` splits `[0, 1)` into
//! zero-delimited intervals with exactly one jump each. An interval is of
//! type Q0, Q1 or Q2 depending on which part of Γ its jump lies in, and each
//! type has a lower bound on its contribution as a function of its length.

mod profile;
mod shape;

pub use profile::{
    projected_gradient_profile, qp_gap_report, solve_profile_kkt, solve_profile_qp, GapRecord, ProfileLengths,
    ProfileModel,
};
pub use shape::{q2_shape_sweep, slope_levels, ShapeInstance, ShapeSweep};

use crate::bounds::coefficient_a;
use crate::math::pow_int;
use crate::{Error, Result};

/// Interval type; `Q2 { n }` carries the index of its point in Γ2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalType {
    Q0,
    Q1,
    Q2 { n: usize },
}

/// Lower bound for `∫|g|` over one interval of the given type and length.
pub fn per_interval_bound(kind: IntervalType, a: f64, t: u32, len: f64) -> Result<f64> {
    if !(len >= 0.0) {
        return Err(Error::ParameterOutOfRange { name: "length", value: len, lo: 0.0, hi: f64::INFINITY });
    }
    // validates a and t
    let a0 = coefficient_a(a, t, 0)?;
    match kind {
        IntervalType::Q0 => Ok(len * len * a0),
        IntervalType::Q1 => Ok(len * (4.0 - pow_int(a, t - 1) * len) / 16.0),
        IntervalType::Q2 { n: 0 } => Err(Error::IndexOutOfRange { name: "n", value: 0, lo: 1, hi: usize::MAX }),
        IntervalType::Q2 { n } => Ok(len * len * coefficient_a(a, t, n)?),
    }
}
