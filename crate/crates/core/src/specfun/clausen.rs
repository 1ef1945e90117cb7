use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactnum::{bernoulli_number, bernoulli_polynomial, euler_number, factorial, PiPolynomial, PiXPolynomial, Rational};
use crate::kinds::Trig;

/// ζ(−n) = (−1)^n B_{n+1}/(n+1), exact. Zero for every even n ≥ 2.
pub fn zeta_neg_int(n: u32) -> Rational {
    let b = bernoulli_number(n as usize + 1);
    let v = b / Rational::from_integer(BigInt::from(n + 1));
    if n.is_multiple_of(2) { v } else { -v }
}

/// ζ(2m) = (−1)^{m+1} B_{2m} (2π)^{2m} / (2 (2m)!), as an element of ℚ[π].
pub fn zeta_even_positive(m: u32) -> PiPolynomial {
    assert!(m >= 1, "zeta_even_positive needs m >= 1");
    let k = 2 * m as usize;
    let c = bernoulli_number(k) * Rational::from_integer(BigInt::from(2).pow(k as u32))
        / Rational::from_integer(BigInt::from(2) * factorial(k as u64));
    let c = if m % 2 == 1 { c } else { -c };
    PiPolynomial::monomial(k, c)
}

/// β(2m+1) = (−1)^m E_{2m} π^{2m+1} / (4^{m+1} (2m)!).
pub fn beta_odd_positive(m: u32) -> PiPolynomial {
    let k = 2 * m as usize;
    let c = Rational::new(
        euler_number(k),
        BigInt::from(4).pow(m + 1) * factorial(k as u64),
    );
    let c = if m.is_multiple_of(2) { c } else { -c };
    PiPolynomial::monomial(k + 1, c)
}

/// Closed form of Σ cos(nx)/n^{2m} (for `Trig::Cos`) or Σ sin(nx)/n^{2m−1}
/// (for `Trig::Sin`) on [0, 2π], built from B_k(x/2π) and the standard
/// prefactor. `m` must be at least 1.
pub fn clausen_closed_form(trig: Trig, m: u32) -> PiXPolynomial {
    assert!(m >= 1, "clausen_closed_form needs m >= 1");
    let k = match trig {
        Trig::Cos => 2 * m,
        Trig::Sin => 2 * m - 1,
    } as usize;
    // (2π)^k B_k(x/2π), with nonnegative powers of π only
    let two_pi = PiPolynomial::monomial(1, Rational::from_integer(BigInt::from(2)));
    let scaled = bernoulli_polynomial(k).homogenize(&two_pi);
    let mut prefactor = Rational::new(BigInt::one(), BigInt::from(2) * factorial(k as u64));
    let negative = match trig {
        Trig::Cos => (m - 1) % 2 == 1,
        Trig::Sin => m % 2 == 1,
    };
    if negative {
        prefactor = -prefactor;
    }
    debug_assert!(!prefactor.is_zero());
    scaled.scale(&PiPolynomial::from_rational(prefactor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn poly(terms: &[(usize, usize, Rational)]) -> PiXPolynomial {
        // (x-degree, π-degree, coefficient)
        terms.iter().fold(PiXPolynomial::zero(), |acc, (j, k, c)| {
            acc + PiXPolynomial::monomial(*j, PiPolynomial::monomial(*k, c.clone()))
        })
    }

    #[test]
    fn negative_integer_values() {
        assert_eq!(zeta_neg_int(1), rat(-1, 12));
        assert_eq!(zeta_neg_int(2), int(0));
        assert_eq!(zeta_neg_int(3), rat(1, 120));
        assert_eq!(zeta_neg_int(0), rat(-1, 2));
        for n in (2..40).step_by(2) {
            assert!(zeta_neg_int(n).is_zero());
        }
    }

    #[test]
    fn even_positive_values() {
        assert_eq!(zeta_even_positive(1), PiPolynomial::monomial(2, rat(1, 6)));
        assert_eq!(zeta_even_positive(2), PiPolynomial::monomial(4, rat(1, 90)));
        assert_eq!(zeta_even_positive(3), PiPolynomial::monomial(6, rat(1, 945)));
    }

    #[test]
    fn beta_odd_values() {
        assert_eq!(beta_odd_positive(0), PiPolynomial::monomial(1, rat(1, 4)));
        assert_eq!(beta_odd_positive(1), PiPolynomial::monomial(3, rat(1, 32)));
        assert_eq!(beta_odd_positive(2), PiPolynomial::monomial(5, rat(5, 1536)));
    }

    #[test]
    fn sawtooth() {
        // (π − x)/2
        assert_eq!(clausen_closed_form(Trig::Sin, 1), poly(&[(0, 1, rat(1, 2)), (1, 0, rat(-1, 2))]));
    }

    #[test]
    fn cosine_m1_and_sine_m2() {
        assert_eq!(
            clausen_closed_form(Trig::Cos, 1),
            poly(&[(0, 2, rat(1, 6)), (1, 1, rat(-1, 2)), (2, 0, rat(1, 4))])
        );
        assert_eq!(
            clausen_closed_form(Trig::Sin, 2),
            poly(&[(1, 2, rat(1, 6)), (2, 1, rat(-1, 4)), (3, 0, rat(1, 12))])
        );
    }

    #[test]
    fn cosine_constant_term_is_zeta_even() {
        for m in 1..=6 {
            assert_eq!(clausen_closed_form(Trig::Cos, m).coeff(0), zeta_even_positive(m));
        }
    }
}
