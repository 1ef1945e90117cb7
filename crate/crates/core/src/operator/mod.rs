//! The dilation-operator engine.
//!
//! With D = x̂p̂ and p̂ = −i d/dx, iD x^n = n x^n, so kind(a − iD) acts on
//! monomials by the eigenvalue kind(a − n) and 1/Γ(b + iD) by 1/Γ(b + n).
//! On trig atoms the dilation n^{iD} trig(x) = trig(nx) turns the operator
//! into a Fourier series, returned symbolically. Nothing here expands ζ in
//! powers of D.

mod closed;
mod expression;
mod flow;

pub use closed::NamedForm;
pub use expression::{Expression, SingularTerm, TrigAtom};
pub use flow::{
    composite_taylor_flow, extract_special_values, parity_anomaly, taylor_flow, AnomalyTerm, ExactRhs, Extraction,
    SpecialValue, TaylorFlow,
};

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{euler_number, factorial, to_f64, PiPolynomial, PiXPolynomial, Rational};
use crate::series::{Character, TrigSeries};
use crate::specfun::{
    beta_odd_positive, dirichlet_beta, recip_gamma, zeta_even_positive, zeta_neg_int, zeta_value, EvalResult,
    SpecFunError,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorKind {
    Zeta,
    Beta,
    RecipGamma,
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OperatorKind::Zeta => "zeta",
            OperatorKind::Beta => "beta",
            OperatorKind::RecipGamma => "recip_gamma",
        })
    }
}

impl std::str::FromStr for OperatorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "zeta" => Ok(OperatorKind::Zeta),
            "beta" => Ok(OperatorKind::Beta),
            "recip_gamma" => Ok(OperatorKind::RecipGamma),
            _ => Err(format!("unknown operator kind `{s}`")),
        }
    }
}

/// kind(a − iD) for ζ and β, 1/Γ(a + iD) for `RecipGamma`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DilationShift {
    pub kind: OperatorKind,
    pub shift: Rational,
}

impl DilationShift {
    pub fn new(kind: OperatorKind, shift: Rational) -> Self {
        Self { kind, shift }
    }

    pub fn zeta(a: i64) -> Self {
        Self::new(OperatorKind::Zeta, Rational::from_integer(a.into()))
    }

    pub fn beta(a: i64) -> Self {
        Self::new(OperatorKind::Beta, Rational::from_integer(a.into()))
    }

    pub fn recip_gamma(b: i64) -> Self {
        Self::new(OperatorKind::RecipGamma, Rational::from_integer(b.into()))
    }

    /// The argument of the scalar function on the eigenfunction x^n.
    pub fn argument(&self, n: i64) -> Rational {
        let n = Rational::from_integer(n.into());
        match self.kind {
            OperatorKind::RecipGamma => &self.shift + n,
            _ => &self.shift - n,
        }
    }

    /// Monomial degree whose eigenvalue sits on the pole of ζ.
    pub fn pole_degree(&self) -> Option<i64> {
        if self.kind != OperatorKind::Zeta || !self.shift.is_integer() {
            return None;
        }
        self.shift.to_integer().to_i64().map(|a| a - 1)
    }

    /// The same operator written through ĥ_BK = 2x̂p̂ − i:
    /// a − iD = ½((2a + 1) − iĥ_BK).
    pub fn berry_keating_form(&self) -> String {
        match self.kind {
            OperatorKind::RecipGamma => {
                let c = Rational::from_integer(2.into()) * &self.shift - Rational::one();
                format!("1/Gamma(1/2*({c} + i*h_BK))")
            }
            _ => {
                let c = Rational::from_integer(2.into()) * &self.shift + Rational::one();
                format!("{}(1/2*({c} - i*h_BK))", self.kind)
            }
        }
    }
}

impl fmt::Display for DilationShift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            OperatorKind::RecipGamma => write!(f, "1/Gamma({} + iD)", self.shift),
            _ => write!(f, "{}({} - iD)", self.kind, self.shift),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum OperatorError {
    #[error("pole of zeta hit by the monomial of degree {degree}")]
    PoleHit { degree: i64 },
    #[error("dilation maps frequency {frequency} to non-integer {scaled}")]
    NonIntegerFrequency { frequency: u64, scaled: f64 },
    #[error("dilation factor {0} is not a recognizable rational")]
    NonRationalScale(f64),
    #[error("{kind} at {argument} has no exact value")]
    NotExact { kind: OperatorKind, argument: Rational },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("need at least 4 Taylor terms, got {0}")]
    TooFewTerms(usize),
    #[error("more than one parity-violating term, at degrees {0:?}")]
    MultipleAnomalies(Vec<usize>),
    #[error("coefficient matching is inconsistent at degree {degree}: {detail}")]
    InconsistentSystem { degree: i64, detail: String },
    #[error(transparent)]
    Numeric(#[from] SpecFunError),
}

/// coeff · factor · x^power, where the factor had no exact value.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericTerm {
    pub power: i64,
    pub coeff: PiPolynomial,
    pub argument: Rational,
    pub factor: EvalResult,
}

/// coeff · Σ χ(n) trig(n · frequency · x) / n^s.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesTerm {
    pub coeff: Rational,
    pub series: TrigSeries,
    pub frequency: u64,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct OpResult {
    pub expr: Expression,
    pub numeric_terms: Vec<NumericTerm>,
    /// Degrees n with a − n = 1, only filled when poles are allowed.
    pub pole_terms: Vec<i64>,
    pub series_terms: Vec<SeriesTerm>,
}

impl OpResult {
    pub fn is_exact(&self) -> bool {
        self.numeric_terms.is_empty() && self.series_terms.is_empty() && self.pole_terms.is_empty()
    }
}

pub(crate) enum Eigenvalue {
    Exact(PiPolynomial),
    Pole,
    Numeric,
}

/// Exact eigenvalue kind(arg) where one is known in ℚ[π].
pub(crate) fn exact_eigenvalue(kind: OperatorKind, arg: &Rational) -> Eigenvalue {
    if !arg.is_integer() {
        return Eigenvalue::Numeric;
    }
    let Some(k) = arg.to_integer().to_i64() else {
        return Eigenvalue::Numeric;
    };
    let rational = |q: Rational| Eigenvalue::Exact(PiPolynomial::from_rational(q));
    match kind {
        OperatorKind::Zeta => match k {
            1 => Eigenvalue::Pole,
            k if k <= 0 => rational(zeta_neg_int((-k) as u32)),
            k if k % 2 == 0 => Eigenvalue::Exact(zeta_even_positive((k / 2) as u32)),
            _ => Eigenvalue::Numeric,
        },
        OperatorKind::Beta => match k {
            k if k <= 0 => rational(Rational::new(euler_number((-k) as usize), BigInt::from(2))),
            k if k % 2 == 1 => Eigenvalue::Exact(beta_odd_positive(((k - 1) / 2) as u32)),
            _ => Eigenvalue::Numeric,
        },
        OperatorKind::RecipGamma => match k {
            k if k <= 0 => rational(Rational::zero()),
            k => rational(Rational::new(BigInt::one(), factorial((k - 1) as u64))),
        },
    }
}

/// kind(arg) in ℚ[π] when it is known exactly; `None` at the ζ pole and
/// where only a numeric value exists.
pub fn exact_value(kind: OperatorKind, arg: &Rational) -> Option<PiPolynomial> {
    match exact_eigenvalue(kind, arg) {
        Eigenvalue::Exact(v) => Some(v),
        _ => None,
    }
}

fn numeric_eigenvalue(kind: OperatorKind, arg: &Rational) -> Result<EvalResult, OperatorError> {
    let s = Complex64::new(to_f64(arg), 0.0);
    Ok(match kind {
        OperatorKind::Zeta => zeta_value(s)?,
        OperatorKind::Beta => dirichlet_beta(s)?,
        OperatorKind::RecipGamma => {
            let v = recip_gamma(s);
            EvalResult::new(v, 1e-13 * v.norm())
        }
    })
}

/// Applies the operator term by term on the eigenbasis. Monomials hitting
/// the ζ pole are an error unless `allow_pole`, in which case their degrees
/// are listed in [`OpResult::pole_terms`] and the term is dropped.
pub fn apply_operator(op: &DilationShift, expr: &Expression, allow_pole: bool) -> Result<OpResult, OperatorError> {
    let mut out = OpResult::default();
    let mut poly = Vec::new();
    let mut singular = Vec::new();
    let terms = expr
        .poly
        .terms()
        .map(|(n, c)| (n as i64, c.clone()))
        .chain(expr.singular_terms.iter().map(|t| (t.power, t.coeff.clone())));
    for (n, coeff) in terms {
        let arg = op.argument(n);
        match exact_eigenvalue(op.kind, &arg) {
            Eigenvalue::Pole if allow_pole => out.pole_terms.push(n),
            Eigenvalue::Pole => return Err(OperatorError::PoleHit { degree: n }),
            Eigenvalue::Exact(v) => {
                let c = &coeff * &v;
                if n >= 0 {
                    poly.push(PiXPolynomial::monomial(n as usize, c));
                } else {
                    singular.push(SingularTerm { coeff: c, power: n });
                }
            }
            Eigenvalue::Numeric => {
                let factor = numeric_eigenvalue(op.kind, &arg)?;
                out.numeric_terms.push(NumericTerm { power: n, coeff, argument: arg, factor });
            }
        }
    }
    for atom in &expr.trig_atoms {
        let character = match op.kind {
            OperatorKind::Zeta => Character::Trivial,
            OperatorKind::Beta => Character::Beta,
            OperatorKind::RecipGamma => {
                return Err(OperatorError::Unsupported("1/Gamma(b + iD) on a trig function".into()));
            }
        };
        let exponent = op
            .shift
            .is_integer()
            .then(|| op.shift.to_integer().to_i32())
            .flatten()
            .ok_or_else(|| OperatorError::Unsupported(format!("non-integer shift {} on a trig function", op.shift)))?;
        out.series_terms.push(SeriesTerm {
            coeff: atom.coeff.clone(),
            series: TrigSeries::new(atom.trig, exponent, character),
            frequency: atom.frequency,
        });
    }
    let poly = poly.into_iter().fold(PiXPolynomial::zero(), |acc, p| &acc + &p);
    out.expr = Expression::from_parts(poly, Vec::new(), singular);
    Ok(out)
}

/// β(a − iD) applied to `expr`.
pub fn apply_beta_op(a: &Rational, expr: &Expression) -> Result<OpResult, OperatorError> {
    apply_operator(&DilationShift::new(OperatorKind::Beta, a.clone()), expr, false)
}

/// 1/Γ(b + iD) applied exactly: x^n ↦ x^n/Γ(b + n), with the monomials at
/// b + n ∈ {0, −1, −2, …} annihilated. Needs an integer b.
pub fn apply_recip_gamma_op(b: &Rational, expr: &Expression) -> Result<Expression, OperatorError> {
    let r = apply_operator(&DilationShift::new(OperatorKind::RecipGamma, b.clone()), expr, false)?;
    if let Some(t) = r.numeric_terms.first() {
        return Err(OperatorError::NotExact { kind: OperatorKind::RecipGamma, argument: t.argument.clone() });
    }
    Ok(r.expr)
}

/// Degrees of the terms of `expr` that 1/Γ(b + iD) sends to zero.
pub fn annihilated_degrees(b: &Rational, expr: &Expression) -> Vec<i64> {
    let op = DilationShift::new(OperatorKind::RecipGamma, b.clone());
    expr.poly
        .terms()
        .map(|(n, _)| n as i64)
        .chain(expr.singular_terms.iter().map(|t| t.power))
        .filter(|&n| {
            let arg = op.argument(n);
            arg.is_integer() && !arg.is_positive()
        })
        .collect()
}

/// e^{iλD} f(x) = f(e^λ x). e^λ must be a rational p/q, q ≤ 10^6, to within
/// a few ulps.
pub fn dilate(expr: &Expression, lambda: f64) -> Result<Expression, OperatorError> {
    let factor = lambda.exp();
    let scale = recognize_rational(factor).ok_or(OperatorError::NonRationalScale(factor))?;
    dilate_by(expr, &scale)
}

/// f(c x) for an exact positive rational c.
pub fn dilate_by(expr: &Expression, scale: &Rational) -> Result<Expression, OperatorError> {
    assert!(scale.is_positive(), "dilation factor must be positive");
    let mut atoms = Vec::with_capacity(expr.trig_atoms.len());
    for a in &expr.trig_atoms {
        let k = scale * Rational::from_integer(a.frequency.into());
        let frequency = k.is_integer().then(|| k.to_integer().to_u64()).flatten().ok_or_else(|| {
            OperatorError::NonIntegerFrequency { frequency: a.frequency, scaled: to_f64(&k) }
        })?;
        atoms.push(TrigAtom { coeff: a.coeff.clone(), trig: a.trig, frequency });
    }
    let singular = expr
        .singular_terms
        .iter()
        .map(|t| {
            let factor = num_traits::pow(scale.recip(), (-t.power) as usize);
            SingularTerm { coeff: t.coeff.scale(&factor), power: t.power }
        })
        .collect();
    Ok(Expression::from_parts(expr.poly.rescale_x(scale), atoms, singular))
}

/// Continued-fraction recognition of a positive real as p/q, q ≤ 10^6.
fn recognize_rational(v: f64) -> Option<Rational> {
    if !(v.is_finite() && v > 0.0) {
        return None;
    }
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut r = v;
    for _ in 0..40 {
        let a = r.floor();
        if a > 1e12 {
            break;
        }
        let a = a as i64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > 1_000_000 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let approx = h1 as f64 / k1 as f64;
        if (approx - v).abs() <= 8.0 * f64::EPSILON * v {
            return Some(Rational::new(h1.into(), k1.into()));
        }
        let frac = r - a as f64;
        if frac <= 0.0 {
            break;
        }
        r = 1.0 / frac;
    }
    None
}
