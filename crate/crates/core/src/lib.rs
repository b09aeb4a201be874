//! Computational machinery behind lower bounds for the one-dimensional
//! star discrepancy constant.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! * [`plf`]: left-continuous piecewise-linear functions with exact
//!   evaluation, envelopes and integration.
//! * [`points`]: point sets, the counting function, the discrepancy
//!   functions `D_n` and the exact star discrepancy.
//! * [`admissibility`]: the two-scale comparison function `f` and checkers
//!   for the admissibility properties and the bend condition.
//! * [`bounds`]: closed-form bounds and the optimisation of the constant
//!   over the scale parameter `a`.
//! * [`variational`]: numerical oracles for the interval-profile quadratic
//!   program and the per-interval shape bounds.
//! * [`sequence`]: van der Corput and Kronecker sequences plus the
//!   `N D*_N / ln N` trajectory harness.
#![no_std]
// `!(x >= lo)` style guards are there to reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod admissibility;
pub mod bounds;
mod error;
mod math;
pub mod plf;
pub mod points;
pub mod sequence;
pub mod variational;

pub use error::{Error, Result};
pub use plf::PiecewiseLinearFn;
pub use points::PointSet;
