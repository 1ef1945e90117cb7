use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{PiPolynomial, PiXPolynomial, Rational};

static BERNOULLI: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
static EULER: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();

/// Binomial coefficient C(n, k) as an exact integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Exact Bernoulli number B_n with the convention B_1 = -1/2, i.e. the
/// coefficients of t/(e^t - 1) = Σ B_n t^n / n!.
///
/// The +1/2 convention for B_1 is deliberately not offered: the parity
/// anomaly regrouping in [`crate::operator`] depends on the minus sign.
pub fn bernoulli_number(n: usize) -> Rational {
    bernoulli_numbers(n + 1).swap_remove(n)
}

/// B_0, ..., B_{count-1}.
pub fn bernoulli_numbers(count: usize) -> Vec<Rational> {
    let table = BERNOULLI.get_or_init(|| RwLock::new(vec![Rational::one()]));
    {
        let cached = table.read().expect("bernoulli table poisoned");
        if cached.len() >= count {
            return cached[..count].to_vec();
        }
    }
    let mut cached = table.write().expect("bernoulli table poisoned");
    // Σ_{k=0}^{m} C(m+1, k) B_k = 0 for m ≥ 1.
    while cached.len() < count {
        let m = cached.len() as u64;
        let mut row = BigInt::one(); // C(m+1, 0)
        let mut acc = Rational::zero();
        for (k, b) in cached.iter().enumerate() {
            if !b.is_zero() {
                acc += b * Rational::from_integer(row.clone());
            }
            row = row * BigInt::from(m + 1 - k as u64) / BigInt::from(k as u64 + 1);
        }
        let next = -acc / Rational::from_integer(BigInt::from(m + 1));
        cached.push(next);
    }
    cached[..count].to_vec()
}

/// B_m(x) = Σ_k C(m, k) B_k x^{m-k}, returned with π-free coefficients.
pub fn bernoulli_polynomial(m: usize) -> PiXPolynomial {
    let b = bernoulli_numbers(m + 1);
    let mut coeffs = vec![Rational::zero(); m + 1];
    for (k, bk) in b.iter().enumerate() {
        coeffs[m - k] = bk * Rational::from_integer(binomial(m as u64, k as u64));
    }
    PiXPolynomial::from_coeffs(coeffs.into_iter().map(PiPolynomial::from_rational).collect())
}

/// Euler number E_n from sech t = Σ E_n t^n / n!; every odd-index value is 0.
pub fn euler_number(n: usize) -> BigInt {
    let table = EULER.get_or_init(|| RwLock::new(vec![BigInt::one()]));
    {
        let cached = table.read().expect("euler table poisoned");
        if cached.len() > n {
            return cached[n].clone();
        }
    }
    let mut cached = table.write().expect("euler table poisoned");
    // sech · cosh = 1 gives Σ_k C(m, 2k) E_{2k} = 0 for even m > 0.
    while cached.len() <= n {
        let m = cached.len();
        if m % 2 == 1 {
            cached.push(BigInt::zero());
            continue;
        }
        let mut acc = BigInt::zero();
        for k in (0..m).step_by(2) {
            acc += binomial(m as u64, k as u64) * &cached[k];
        }
        cached.push(-acc);
    }
    cached[n].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    /// Akiyama–Tanigawa; yields B_1 = +1/2, so only n ≠ 1 is comparable as is.
    fn akiyama_tanigawa(n: usize) -> Rational {
        let mut a: Vec<Rational> = Vec::with_capacity(n + 1);
        for m in 0..=n {
            a.push(rat(1, m as i64 + 1));
            for j in (1..=m).rev() {
                a[j - 1] = int(j as i64) * (&a[j - 1] - &a[j]);
            }
        }
        a[0].clone()
    }

    #[test]
    fn small_values() {
        assert_eq!(bernoulli_number(0), int(1));
        assert_eq!(bernoulli_number(1), rat(-1, 2));
        assert_eq!(bernoulli_number(2), rat(1, 6));
        assert_eq!(bernoulli_number(4), rat(-1, 30));
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
    }

    #[test]
    fn matches_akiyama_tanigawa() {
        for n in 0..=40 {
            let expected = if n == 1 { -akiyama_tanigawa(1) } else { akiyama_tanigawa(n) };
            assert_eq!(bernoulli_number(n), expected, "B_{n}");
        }
    }

    #[test]
    fn odd_bernoulli_vanish() {
        for n in (3..=51).step_by(2) {
            assert!(bernoulli_number(n).is_zero(), "B_{n}");
        }
    }

    #[test]
    fn generating_function_matches_taylor_of_t_over_expm1() {
        // (e^t - 1)/t · Σ B_k t^k/k! = 1 up to order K.
        const K: usize = 40;
        let b = bernoulli_numbers(K + 1);
        let gen: Vec<Rational> = (0..=K)
            .map(|k| &b[k] / Rational::from_integer(factorial(k as u64)))
            .collect();
        let expm1_over_t: Vec<Rational> = (0..=K)
            .map(|k| Rational::new(BigInt::one(), factorial(k as u64 + 1)))
            .collect();
        for n in 0..=K {
            let c: Rational = (0..=n).map(|k| &gen[k] * &expm1_over_t[n - k]).sum();
            let expected = if n == 0 { int(1) } else { int(0) };
            assert_eq!(c, expected, "order {n}");
        }
    }

    #[test]
    fn bernoulli_polynomial_values() {
        let b1 = bernoulli_polynomial(1);
        assert_eq!(b1.rational_coeffs(), Some(vec![rat(-1, 2), int(1)]));
        let b2 = bernoulli_polynomial(2);
        assert_eq!(b2.rational_coeffs(), Some(vec![rat(1, 6), int(-1), int(1)]));
        assert_eq!(bernoulli_polynomial(0).rational_coeffs(), Some(vec![int(1)]));
        for m in 0..=20 {
            let p = bernoulli_polynomial(m).rational_coeffs().unwrap();
            assert_eq!(p[m], int(1));
            assert_eq!(p[0], bernoulli_number(m));
            let at_one: Rational = p.iter().sum();
            let sign = if m % 2 == 0 { int(1) } else { int(-1) };
            assert_eq!(at_one, sign * bernoulli_number(m), "B_{m}(1)");
        }
    }

    #[test]
    fn euler_values() {
        let expected = [1i64, 0, -1, 0, 5, 0, -61, 0, 1385, 0, -50521];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(euler_number(n), BigInt::from(*e), "E_{n}");
        }
        for n in (1..=51).step_by(2) {
            assert!(euler_number(n).is_zero());
        }
    }

    #[test]
    fn memo_is_safe_under_concurrent_use() {
        let handles: Vec<_> = (0..8)
            .map(|i| std::thread::spawn(move || (bernoulli_number(30 + i), euler_number(20 + 2 * i))))
            .collect();
        for (i, h) in handles.into_iter().enumerate() {
            let (b, e) = h.join().unwrap();
            assert_eq!(b, bernoulli_numbers(31 + i)[30 + i]);
            assert_eq!(e, euler_number(20 + 2 * i));
        }
    }
}
