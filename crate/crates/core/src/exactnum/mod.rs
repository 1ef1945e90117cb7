//! Exact arithmetic: rationals, Bernoulli and Euler numbers, and polynomials
//! over ℚ and ℚ[π].
//!
//! π is kept symbolic everywhere in this module. It only becomes a number in
//! [`pipoly_eval`] (and the `eval_f64` helpers), at a precision chosen by the
//! caller.

mod numbers;
mod pi;
mod poly;
mod powerseries;

pub use numbers::{bernoulli_number, bernoulli_numbers, bernoulli_polynomial, binomial, euler_number, factorial};
pub use pi::{pi_rational, pipoly_eval, DEFAULT_PI_DIGITS};
pub use poly::{ParsePolyError, PiPolynomial, PiXPolynomial};
pub use powerseries::RationalSeries;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// Arbitrary-precision rational. Always stored in lowest terms with a
/// positive denominator; zero is `0/1`.
pub type Rational = num_rational::BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Nearest `f64` to an exact rational.
pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Only reached when numerator or denominator overflow f64 on their own.
        let n = q.numer().bits() as i64;
        let d = q.denom().bits() as i64;
        let shift = (n - d).clamp(-1100, 1100);
        let scaled = if shift > 0 {
            q / Rational::from_integer(BigInt::from(1) << shift as usize)
        } else {
            q * Rational::from_integer(BigInt::from(1) << (-shift) as usize)
        };
        scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
    })
}

/// Exact rational value of a finite `f64`.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}
