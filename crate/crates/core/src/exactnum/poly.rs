use std::fmt;
use std::str::FromStr;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{to_f64, Rational};

/// Polynomial in π with rational coefficients; `coeffs[k]` multiplies π^k.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PiPolynomial {
    coeffs: Vec<Rational>,
}

impl PiPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::from_coeffs(vec![q])
    }

    /// c·π^k
    pub fn monomial(k: usize, c: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn pi() -> Self {
        Self::monomial(1, Rational::one())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The value as a rational when no positive power of π survives.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval_f64(&self, pi: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * pi + to_f64(c))
    }

    pub fn eval_rational(&self, pi: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * pi + c)
    }
}

/// Polynomial in x whose coefficients live in ℚ[π]; `coeffs[j]` multiplies x^j.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PiXPolynomial {
    coeffs: Vec<PiPolynomial>,
}

impl PiXPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_coeffs(mut coeffs: Vec<PiPolynomial>) -> Self {
        while coeffs.last().is_some_and(PiPolynomial::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_rational_coeffs(coeffs: Vec<Rational>) -> Self {
        Self::from_coeffs(coeffs.into_iter().map(PiPolynomial::from_rational).collect())
    }

    pub fn constant(c: PiPolynomial) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// c·x^j
    pub fn monomial(j: usize, c: PiPolynomial) -> Self {
        let mut coeffs = vec![PiPolynomial::zero(); j + 1];
        coeffs[j] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[PiPolynomial] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> PiPolynomial {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    /// Degree in x; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms as `(degree, coefficient)` in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &PiPolynomial)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Coefficients as plain rationals, if the polynomial is π-free.
    pub fn rational_coeffs(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(PiPolynomial::as_rational).collect()
    }

    /// Drops every term of degree above `max_degree`.
    pub fn truncate(&self, max_degree: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(max_degree + 1).cloned().collect())
    }

    pub fn scale(&self, c: &PiPolynomial) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// p(c·x) for a rational c.
    pub fn rescale_x(&self, c: &Rational) -> Self {
        let mut power = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.scale(&power));
            power *= c;
        }
        Self::from_coeffs(out)
    }

    /// L^d · p(x/L) with L = scale and d = degree: the rescaling that turns
    /// B_m(x/2π) into a polynomial with nonnegative powers of π.
    pub fn homogenize(&self, scale: &PiPolynomial) -> Self {
        let Some(d) = self.degree() else {
            return Self::zero();
        };
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, a)| a * &scale.pow((d - j) as u32))
            .collect();
        Self::from_coeffs(out)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let pi = std::f64::consts::PI;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.eval_f64(pi))
    }

    pub fn eval_rational(&self, x: &Rational, pi: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c.eval_rational(pi))
    }
}

macro_rules! forward_binop {
    ($ty:ty, $tr:ident, $method:ident) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                (&self).$method(rhs)
            }
        }
    };
}

fn add_slices<T: Clone + Default>(a: &[T], b: &[T], f: impl Fn(&T, &T) -> T) -> Vec<T> {
    let n = a.len().max(b.len());
    let zero = T::default();
    (0..n)
        .map(|i| f(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect()
}

impl Add for &PiPolynomial {
    type Output = PiPolynomial;
    fn add(self, rhs: &PiPolynomial) -> PiPolynomial {
        PiPolynomial::from_coeffs(add_slices(&self.coeffs, &rhs.coeffs, |a, b| a + b))
    }
}

impl Sub for &PiPolynomial {
    type Output = PiPolynomial;
    fn sub(self, rhs: &PiPolynomial) -> PiPolynomial {
        PiPolynomial::from_coeffs(add_slices(&self.coeffs, &rhs.coeffs, |a, b| a - b))
    }
}

impl Mul for &PiPolynomial {
    type Output = PiPolynomial;
    fn mul(self, rhs: &PiPolynomial) -> PiPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return PiPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PiPolynomial::from_coeffs(out)
    }
}

impl Neg for &PiPolynomial {
    type Output = PiPolynomial;
    fn neg(self) -> PiPolynomial {
        PiPolynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for PiPolynomial {
    type Output = PiPolynomial;
    fn neg(self) -> PiPolynomial {
        -&self
    }
}

forward_binop!(PiPolynomial, Add, add);
forward_binop!(PiPolynomial, Sub, sub);
forward_binop!(PiPolynomial, Mul, mul);

impl Add for &PiXPolynomial {
    type Output = PiXPolynomial;
    fn add(self, rhs: &PiXPolynomial) -> PiXPolynomial {
        PiXPolynomial::from_coeffs(add_slices(&self.coeffs, &rhs.coeffs, |a, b| a + b))
    }
}

impl Sub for &PiXPolynomial {
    type Output = PiXPolynomial;
    fn sub(self, rhs: &PiXPolynomial) -> PiXPolynomial {
        PiXPolynomial::from_coeffs(add_slices(&self.coeffs, &rhs.coeffs, |a, b| a - b))
    }
}

impl Mul for &PiXPolynomial {
    type Output = PiXPolynomial;
    fn mul(self, rhs: &PiXPolynomial) -> PiXPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return PiXPolynomial::zero();
        }
        let mut out = vec![PiPolynomial::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        PiXPolynomial::from_coeffs(out)
    }
}

impl Neg for &PiXPolynomial {
    type Output = PiXPolynomial;
    fn neg(self) -> PiXPolynomial {
        PiXPolynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for PiXPolynomial {
    type Output = PiXPolynomial;
    fn neg(self) -> PiXPolynomial {
        -&self
    }
}

forward_binop!(PiXPolynomial, Add, add);
forward_binop!(PiXPolynomial, Sub, sub);
forward_binop!(PiXPolynomial, Mul, mul);

/// Writes `(c, sym)` terms as `"1/6*pi^2 - 1/2*pi*x"`.
fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (Rational, String)>,
) -> fmt::Result {
    let mut first = true;
    for (c, sym) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        match (mag.is_one(), sym.is_empty()) {
            (true, true) => write!(f, "1")?,
            (true, false) => f.write_str(&sym)?,
            (false, true) => write!(f, "{mag}")?,
            (false, false) => write!(f, "{mag}*{sym}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

fn power_symbol(name: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{k}"),
    }
}

impl fmt::Display for PiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (c.clone(), power_symbol("pi", k)));
        write_terms(f, terms)
    }
}

impl fmt::Display for PiXPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms().flat_map(|(j, p)| {
            p.coeffs()
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(k, c)| {
                    let sym = [power_symbol("pi", k), power_symbol("x", j)]
                        .into_iter()
                        .filter(|s| !s.is_empty())
                        .collect::<Vec<_>>()
                        .join("*");
                    (c.clone(), sym)
                })
        });
        write_terms(f, terms)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse polynomial term `{0}`")]
pub struct ParsePolyError(pub String);

/// Parses the [`Display`](fmt::Display) form back, e.g.
/// `1/6*pi^2 - 1/2*pi*x + 1/4*x^2`.
impl FromStr for PiXPolynomial {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ParsePolyError(s.to_string()));
        }
        let mut out = PiXPolynomial::zero();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..=bytes.len() {
            // a sign starts a new term unless it follows an exponent marker
            let boundary = i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^');
            if boundary {
                out = out + parse_term(&compact[start..i])?;
                start = i;
            }
        }
        Ok(out)
    }
}

fn parse_term(term: &str) -> Result<PiXPolynomial, ParsePolyError> {
    let err = || ParsePolyError(term.to_string());
    let (negative, body) = match term.as_bytes().first() {
        Some(b'-') => (true, &term[1..]),
        Some(b'+') => (false, &term[1..]),
        _ => (false, term),
    };
    if body.is_empty() {
        return Err(err());
    }
    let mut coeff = Rational::one();
    let (mut pi_pow, mut x_pow) = (0usize, 0usize);
    for factor in body.split('*') {
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => (b, e.parse::<usize>().map_err(|_| err())?),
            None => (factor, 1),
        };
        match base {
            "pi" => pi_pow += exp,
            "x" => x_pow += exp,
            _ if factor.contains('^') => return Err(err()),
            _ => coeff *= factor.parse::<Rational>().map_err(|_| err())?,
        }
    }
    if negative {
        coeff = -coeff;
    }
    Ok(PiXPolynomial::monomial(x_pow, PiPolynomial::monomial(pi_pow, coeff)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn pi_poly(c: &[(usize, Rational)]) -> PiPolynomial {
        c.iter()
            .fold(PiPolynomial::zero(), |acc, (k, q)| acc + PiPolynomial::monomial(*k, q.clone()))
    }

    #[test]
    fn trims_trailing_zeros() {
        let p = PiPolynomial::from_coeffs(vec![int(1), int(0), int(0)]);
        assert_eq!(p.coeffs().len(), 1);
        assert!(PiPolynomial::from_coeffs(vec![int(0)]).is_zero());
        let x = PiXPolynomial::from_coeffs(vec![PiPolynomial::one(), PiPolynomial::zero()]);
        assert_eq!(x.degree(), Some(0));
    }

    #[test]
    fn display_forms() {
        // π²/6 − πx/2 + x²/4
        let p = PiXPolynomial::from_coeffs(vec![
            pi_poly(&[(2, rat(1, 6))]),
            pi_poly(&[(1, rat(-1, 2))]),
            PiPolynomial::from_rational(rat(1, 4)),
        ]);
        assert_eq!(p.to_string(), "1/6*pi^2 - 1/2*pi*x + 1/4*x^2");
        assert_eq!(PiXPolynomial::zero().to_string(), "0");
        assert_eq!((-PiPolynomial::pi()).to_string(), "-pi");
    }

    #[test]
    fn homogenize_matches_manual_expansion() {
        // 2^2 · B_2(x/2) with B_2 = x² − x + 1/6 → x² − 2x + 2/3
        let b2 = PiXPolynomial::from_rational_coeffs(vec![rat(1, 6), int(-1), int(1)]);
        let h = b2.homogenize(&PiPolynomial::from_rational(int(2)));
        assert_eq!(h.rational_coeffs(), Some(vec![rat(2, 3), int(-2), int(1)]));
    }

    #[test]
    fn arithmetic_agrees_with_f64() {
        let a = PiXPolynomial::from_coeffs(vec![PiPolynomial::pi(), PiPolynomial::from_rational(rat(-1, 3))]);
        let b = PiXPolynomial::from_coeffs(vec![PiPolynomial::from_rational(int(2)), pi_poly(&[(2, rat(1, 7))])]);
        for &x in &[0.0, 0.5, -1.25, 3.0] {
            let lhs = (&a * &b).eval_f64(x);
            let rhs = a.eval_f64(x) * b.eval_f64(x);
            assert!((lhs - rhs).abs() < 1e-12);
            assert!(((&a - &b).eval_f64(x) - (a.eval_f64(x) - b.eval_f64(x))).abs() < 1e-12);
        }
    }

    #[test]
    fn parse_round_trip() {
        for text in ["1/6*pi^2 - 1/2*pi*x + 1/4*x^2", "-1/2*x", "1/2*pi - 1/2*x", "0", "7 + 3*pi^3*x^5"] {
            let p: PiXPolynomial = text.parse().unwrap();
            assert_eq!(p.to_string(), text);
        }
        let p: PiXPolynomial = "x*x*pi + 2*x^2*pi".parse().unwrap();
        assert_eq!(p.to_string(), "3*pi*x^2");
        assert!("1/2*y".parse::<PiXPolynomial>().is_err());
        assert!("".parse::<PiXPolynomial>().is_err());
        assert!("1 +".parse::<PiXPolynomial>().is_err());
    }
}
