use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{factorial, Rational};

/// Truncated power series Σ_{k<len} c_k x^k over ℚ.
///
/// Every operation keeps the length of its shortest operand, so results are
/// exact up to the common truncation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    coeffs: Vec<Rational>,
}

impl RationalSeries {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// sin x, to `order` coefficients.
    pub fn sin(order: usize) -> Self {
        Self::from_fn(order, |k| match k % 4 {
            1 => Some(1),
            3 => Some(-1),
            _ => None,
        })
    }

    /// cos x, to `order` coefficients.
    pub fn cos(order: usize) -> Self {
        Self::from_fn(order, |k| match k % 4 {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        })
    }

    /// Σ sign(k) x^k / k!
    fn from_fn(order: usize, sign: impl Fn(usize) -> Option<i64>) -> Self {
        let coeffs = (0..order)
            .map(|k| match sign(k) {
                Some(s) => Rational::new(BigInt::from(s), factorial(k as u64)),
                None => Rational::zero(),
            })
            .collect();
        Self { coeffs }
    }

    /// Drops the first `n` coefficients: f(x) / x^n for a series divisible by x^n.
    pub fn shift_down(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().skip(n).cloned().collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Term-wise antiderivative with zero constant term.
    pub fn integrate(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Rational::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push(c / Rational::from_integer(BigInt::from(k as u64 + 1)));
        }
        Self::new(out)
    }

    /// Multiplicative inverse; `None` if the constant term vanishes.
    pub fn recip(&self) -> Option<Self> {
        let a0 = self.coeffs.first()?;
        if a0.is_zero() {
            return None;
        }
        let inv0 = a0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..self.coeffs.len() {
            let s: Rational = (1..=n).map(|k| &self.coeffs[k] * &out[n - k]).sum();
            out.push(-s * &inv0);
        }
        Some(Self::new(out))
    }

    pub fn div(&self, rhs: &Self) -> Option<Self> {
        Some(self * &rhs.recip()?)
    }

    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order];
        if order > 0 {
            coeffs[0] = Rational::one();
        }
        Self::new(coeffs)
    }
}

impl Add for &RationalSeries {
    type Output = RationalSeries;
    fn add(self, rhs: &RationalSeries) -> RationalSeries {
        let n = self.order().min(rhs.order());
        RationalSeries::new((0..n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect())
    }
}

impl Sub for &RationalSeries {
    type Output = RationalSeries;
    fn sub(self, rhs: &RationalSeries) -> RationalSeries {
        let n = self.order().min(rhs.order());
        RationalSeries::new((0..n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect())
    }
}

impl Mul for &RationalSeries {
    type Output = RationalSeries;
    fn mul(self, rhs: &RationalSeries) -> RationalSeries {
        let n = self.order().min(rhs.order());
        let coeffs = (0..n)
            .map(|k| (0..=k).map(|i| &self.coeffs[i] * &rhs.coeffs[k - i]).sum())
            .collect();
        RationalSeries::new(coeffs)
    }
}

impl Neg for &RationalSeries {
    type Output = RationalSeries;
    fn neg(self) -> RationalSeries {
        RationalSeries::new(self.coeffs.iter().map(|c| -c).collect())
    }
}
