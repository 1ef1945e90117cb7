use num_bigint::BigInt;
use num_traits::Zero;

use super::{from_f64, to_f64, PiXPolynomial, Rational};

pub const DEFAULT_PI_DIGITS: u32 = 30;

/// arctan(1/k) scaled by `unit`, by the alternating Taylor series.
fn arctan_inv(k: u64, unit: &BigInt) -> BigInt {
    let k = BigInt::from(k);
    let k2 = &k * &k;
    let mut power = unit / &k;
    let mut sum = BigInt::zero();
    let mut n = 1u64;
    let mut add = true;
    while !power.is_zero() {
        let term = &power / BigInt::from(n);
        if add {
            sum += term;
        } else {
            sum -= term;
        }
        add = !add;
        power /= &k2;
        n += 2;
    }
    sum
}

/// π truncated to `digits` decimal digits (Machin's formula with guard digits).
pub fn pi_rational(digits: u32) -> Rational {
    let guard = 10;
    let unit = BigInt::from(10).pow(digits + guard);
    let pi = BigInt::from(16) * arctan_inv(5, &unit) - BigInt::from(4) * arctan_inv(239, &unit);
    let drop = BigInt::from(10).pow(guard);
    Rational::new(pi / drop, BigInt::from(10).pow(digits))
}

/// Evaluates `p` at `x`, substituting π by a `pi_digits`-digit rational.
///
/// All arithmetic is exact; the only roundings are the π truncation and the
/// final conversion to `f64`.
pub fn pipoly_eval(p: &PiXPolynomial, x: f64, pi_digits: u32) -> f64 {
    let pi = pi_rational(pi_digits.max(15));
    let Some(xq) = from_f64(x) else {
        return f64::NAN;
    };
    to_f64(&p.eval_rational(&xq, &pi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, PiPolynomial};

    fn pi_minus_x_over_2() -> PiXPolynomial {
        PiXPolynomial::from_coeffs(vec![
            PiPolynomial::monomial(1, rat(1, 2)),
            PiPolynomial::from_rational(rat(-1, 2)),
        ])
    }

    #[test]
    fn pi_digits() {
        let p = pi_rational(30);
        let expected = Rational::new(
            "3141592653589793238462643383279".parse().unwrap(),
            BigInt::from(10).pow(30),
        );
        assert_eq!(p, expected);
        assert!((to_f64(&pi_rational(15)) - std::f64::consts::PI).abs() < 1e-15);
        assert!(pi_rational(5) < Rational::from_integer(BigInt::from(4)));
    }

    #[test]
    fn sawtooth_root_and_constant() {
        let p = pi_minus_x_over_2();
        assert!(pipoly_eval(&p, std::f64::consts::PI, 30).abs() < 1e-15);
        assert!((pipoly_eval(&p, 0.0, 30) - std::f64::consts::FRAC_PI_2).abs() < 1e-16);
    }

    #[test]
    fn zeta_two_constant_term() {
        let p = PiXPolynomial::from_coeffs(vec![
            PiPolynomial::monomial(2, rat(1, 6)),
            PiPolynomial::monomial(1, rat(-1, 2)),
            PiPolynomial::from_rational(rat(1, 4)),
        ]);
        assert!((pipoly_eval(&p, 0.0, DEFAULT_PI_DIGITS) - 1.6449340668482264).abs() < 1e-15);
    }
}
