//! Float helpers backed by `libm` (the crate is `no_std`).

pub(crate) const EPS: f64 = 1e-12;

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub(crate) fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

/// `base^exp` by repeated multiplication; exact for small integer bases.
pub(crate) fn pow_int(base: f64, exp: u32) -> f64 {
    let mut acc = 1.0;
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Tolerance scaled to the magnitude of the operands.
#[inline]
pub(crate) fn tol_for(a: f64, b: f64) -> f64 {
    EPS * a.abs().max(b.abs()).max(1.0)
}

#[inline]
pub(crate) fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= tol_for(a, b)
}

/// `floor(x)` that snaps values within rounding noise of an integer.
pub(crate) fn snapped_floor(x: f64) -> f64 {
    let r = libm::round(x);
    if (x - r).abs() <= 1e-9 * r.abs().max(1.0) {
        r
    } else {
        floor(x)
    }
}
