//! Numeric special functions for complex arguments.
//!
//! ζ, Hurwitz ζ and Dirichlet β come from an adaptive Euler–Maclaurin sum;
//! 1/Γ is evaluated as an entire function; the Hankel-contour integrals
//! for ζ and the Lerch sum are independent routes used for cross-checks.
//! Exact values at integers and the Clausen closed forms stay in ℚ[π].

mod clausen;
mod euler_maclaurin;
mod gamma;
mod hankel;

pub use clausen::{beta_odd_positive, clausen_closed_form, zeta_even_positive, zeta_neg_int};
pub use euler_maclaurin::{dirichlet_beta, hurwitz_zeta, zeta_em, zeta_value};
pub use gamma::{recip_gamma, sin_pi};
pub use hankel::{contour_integral, hankel_zeta, hankel_zeta_with, lerch_hankel, lerch_hankel_with, HankelContour};

use num_complex::Complex64;
use thiserror::Error;

/// Complex argument or value, double precision.
pub type ComplexValue = Complex64;

/// A numeric value together with the error bound its algorithm claims.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalResult {
    pub value: ComplexValue,
    pub abs_error_estimate: f64,
    /// When set, `value` is meaningless and must not be used.
    pub is_pole: bool,
}

impl EvalResult {
    pub fn new(value: ComplexValue, abs_error_estimate: f64) -> Self {
        Self { value, abs_error_estimate, is_pole: false }
    }

    pub fn pole() -> Self {
        Self { value: Complex64::new(f64::NAN, f64::NAN), abs_error_estimate: f64::INFINITY, is_pole: true }
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum SpecFunError {
    #[error("zeta has a pole at s = 1")]
    PoleAtOne,
    #[error("precision loss: best estimate {value} carries error estimate {estimate:.3e}")]
    PrecisionLoss { value: ComplexValue, estimate: f64 },
    #[error("contour radius {radius} reaches a kernel pole at distance {pole_distance}")]
    ContourClipped { radius: f64, pole_distance: f64 },
    #[error("argument outside domain: {0}")]
    Domain(String),
}

/// Accuracy target for the Euler–Maclaurin routines, relative to
/// max(1, |value|).
pub const EM_TOLERANCE: f64 = 1e-10;

/// Accuracy target for contour quadrature, relative to max(1, |value|).
pub const CONTOUR_TOLERANCE: f64 = 1e-8;

/// s as a real integer, if it is one.
pub(crate) fn as_integer(s: ComplexValue) -> Option<i64> {
    (s.im == 0.0 && s.re.fract() == 0.0 && s.re.abs() < 1e15).then_some(s.re as i64)
}
