use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point set is empty")]
    EmptyPointSet,
    #[error("value {value} at index {index} lies outside [0, 1)")]
    InvalidDomain { index: usize, value: f64 },
    #[error("prefix length {n} outside 1..={len}")]
    PrefixOutOfRange { n: usize, len: usize },
    #[error("abscissa {0} outside [0, 1]")]
    AbscissaOutOfRange(f64),
    #[error("invalid piecewise-linear function: {0}")]
    InvalidFunction(&'static str),
    #[error("negative jump of height {height} at {x}")]
    NegativeJump { x: f64, height: f64 },
    #[error("{name} = {value} outside [{lo}, {hi}]")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("{name} = {value} outside {lo}..{}", upper_label(*.hi))]
    IndexOutOfRange {
        name: &'static str,
        value: usize,
        lo: usize,
        hi: usize,
    },
    #[error("point set has {actual} points but the scale requires {expected}")]
    SizeMismatch { expected: usize, actual: usize },
    #[error("operation requires integer-exact scale (a = 3), got a = {0}")]
    NotIntegerExact(f64),
    #[error("f has no discontinuity at x_{j} = {x}")]
    NoDiscontinuity { j: usize, x: f64 },
    #[error("malformed gamma sets: {0}")]
    MalformedGamma(&'static str),
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("oracle disagreement: {0}")]
    OracleDisagreement(&'static str),
}

fn upper_label(hi: usize) -> alloc::string::String {
    if hi == usize::MAX { alloc::string::String::new() } else { alloc::format!("={hi}") }
}
