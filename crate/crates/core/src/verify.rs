//! Runs registry identities: numerically on a grid, or exactly in ℚ[π].

use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{PiPolynomial, PiXPolynomial};
use crate::kinds::{Parity, Trig};
use crate::operator::{
    apply_operator, composite_taylor_flow, extract_special_values, parity_anomaly, taylor_flow, DilationShift, Expression,
    Extraction, OperatorError, TaylorFlow,
};
use crate::registry::{Grid, IdentityRecord, Lhs, LhsForm, Profile, Rhs};
use crate::series::{abel_extrapolate, default_r_grid, geometric_abel, sum_to_tolerance, SeriesError, TrigSeries};

/// Taylor terms used for exact checks and pole bookkeeping.
pub const EXACT_TERMS: usize = 12;
/// Taylor terms used when a term-by-term identity is evaluated on a grid.
const GRID_TAYLOR_TERMS: usize = 80;
const MAX_SERIES_TERMS: u64 = 1 << 31;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum VerifyError {
    #[error("grid point {x} lies outside the domain {domain} of {id}")]
    GridOutsideDomain { id: String, x: f64, domain: String },
    #[error("{0} has no exact right side to compare in ℚ[π]")]
    NoExactForm(String),
    #[error("{0} is not extractable")]
    NotExtractable(String),
    #[error("{id}: {source}")]
    Operator { id: String, source: OperatorError },
}

/// A real or complex sample.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Sample {
    Real(f64),
    Complex { re: f64, im: f64 },
}

impl Sample {
    fn complex(self) -> Complex64 {
        match self {
            Sample::Real(v) => Complex64::new(v, 0.0),
            Sample::Complex { re, im } => Complex64::new(re, im),
        }
    }
}

impl fmt::Display for Sample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sample::Real(v) => write!(f, "{v}"),
            Sample::Complex { re, im } if *im < 0.0 => write!(f, "{re}-{}i", -im),
            Sample::Complex { re, im } => write!(f, "{re}+{im}i"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointResult {
    pub id: String,
    pub x: f64,
    pub lhs: Option<Sample>,
    pub rhs: Option<Sample>,
    pub deviation: f64,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PoleEffect {
    /// Term-by-term application skipped a polynomial term of the closed form.
    Anomaly,
    /// The skipped term is a negative power of x.
    Singular,
    /// The trailing 1/Γ sends the pole term to zero.
    Annihilated,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PoleEvent {
    pub degree: i64,
    pub effect: PoleEffect,
    /// The dropped term of the closed form, when it is known exactly.
    pub term: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Grid,
    Exact,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub mode: Mode,
    pub tolerance: f64,
    pub rows: Vec<PointResult>,
    pub max_abs_deviation: f64,
    pub expected_pole: Option<i64>,
    pub pole_events: Vec<PoleEvent>,
    /// Pole events agree with the registry's pole and anomaly fields.
    pub poles_as_expected: bool,
    /// Exact mode: the two sides as compared.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_rhs: Option<String>,
    pub pass: bool,
}

/// Verifies one identity. `grid` and `tol` override the stored profile;
/// `exact` forces the ℚ[π] comparison.
pub fn verify(
    record: &IdentityRecord,
    grid: Option<&Grid>,
    tol: Option<f64>,
    exact: bool,
) -> Result<VerificationReport, VerifyError> {
    let tol = tol.unwrap_or(record.tol);
    let (pole_events, poles_as_expected) = pole_bookkeeping(record)?;
    let mut report = VerificationReport {
        id: record.id.clone(),
        mode: Mode::Grid,
        tolerance: tol,
        rows: Vec::new(),
        max_abs_deviation: 0.0,
        expected_pole: record.pole,
        pole_events,
        poles_as_expected,
        exact_lhs: None,
        exact_rhs: None,
        pass: false,
    };
    let grid = match (grid, &record.profile) {
        (Some(g), _) if !exact => g.clone(),
        (None, Profile::Grid(g)) if !exact => g.clone(),
        _ => {
            let (lhs, rhs) = exact_sides(record)?;
            report.mode = Mode::Exact;
            report.tolerance = 0.0;
            let equal = lhs == rhs;
            report.max_abs_deviation = if equal { 0.0 } else { f64::INFINITY };
            report.exact_lhs = Some(lhs.to_string());
            report.exact_rhs = Some(rhs.to_string());
            report.pass = equal && poles_as_expected;
            return Ok(report);
        }
    };
    let xs = grid.values();
    if let Some(&x) = xs.iter().find(|&&x| !record.domain.contains(x)) {
        return Err(VerifyError::GridOutsideDomain { id: record.id.clone(), x, domain: record.domain.text.clone() });
    }
    let evaluator = Evaluator::new(record, tol)?;
    report.rows = xs.par_iter().map(|&x| evaluator.point(x)).collect();
    report.max_abs_deviation = report.rows.iter().map(|r| r.deviation).fold(0.0, f64::max);
    report.pass = report.rows.iter().all(|r| r.error.is_none()) && report.max_abs_deviation <= tol && poles_as_expected;
    Ok(report)
}

/// Default-profile verification.
pub fn verify_default(record: &IdentityRecord) -> Result<VerificationReport, VerifyError> {
    verify(record, None, None, false)
}

fn op_error(record: &IdentityRecord) -> impl Fn(OperatorError) -> VerifyError + '_ {
    move |source| VerifyError::Operator { id: record.id.clone(), source }
}

fn flow_for(record: &IdentityRecord, terms: usize) -> Result<Option<TaylorFlow>, VerifyError> {
    let flow = match &record.lhs {
        Lhs::Taylor { op, gamma: Some(b), trig } => composite_taylor_flow(op, b, *trig, terms),
        Lhs::Taylor { op, gamma: None, trig } | Lhs::Operator { op, trig, .. } => taylor_flow(op, *trig, terms),
        Lhs::Geometric => return Ok(None),
    };
    flow.map(Some).map_err(op_error(record))
}

/// Both sides of the ℚ[π] comparison.
///
/// Polynomial right sides: term-by-term flow plus the parity anomaly must
/// reproduce the closed form. Singular right sides: the flow must equal
/// the Taylor expansion with the principal part removed.
fn exact_sides(record: &IdentityRecord) -> Result<(PiXPolynomial, PiXPolynomial), VerifyError> {
    let flow = flow_for(record, EXACT_TERMS)?.ok_or_else(|| VerifyError::NoExactForm(record.id.clone()))?;
    let (_, trig) = record.lhs.operator().expect("flow exists only with an operator");
    let top = flow_degree(trig, EXACT_TERMS);
    match &record.rhs {
        Rhs::Poly(p) => {
            let lhs = if record.lhs.form() == LhsForm::Taylor {
                flow.poly
            } else {
                let anomaly = parity_anomaly(p, trig.parity()).map_err(op_error(record))?;
                match anomaly {
                    Some(a) => &flow.poly + &a.to_poly(),
                    None => flow.poly,
                }
            };
            Ok((lhs, p.truncate(top)))
        }
        Rhs::Named(form) => {
            let taylor = form.regular_taylor(top + 1);
            let rhs = PiXPolynomial::from_rational_coeffs(taylor.coeffs().to_vec());
            Ok((flow.poly, rhs))
        }
        Rhs::Geometric => Err(VerifyError::NoExactForm(record.id.clone())),
    }
}

fn flow_degree(trig: Trig, terms: usize) -> usize {
    match trig {
        Trig::Sin => 2 * terms - 1,
        Trig::Cos => 2 * terms - 2,
    }
}

/// Which term the ζ pole takes out, checked against the registry.
fn pole_bookkeeping(record: &IdentityRecord) -> Result<(Vec<PoleEvent>, bool), VerifyError> {
    let Some(flow) = flow_for(record, EXACT_TERMS)? else {
        return Ok((Vec::new(), record.pole.is_none() && record.anomaly.is_none()));
    };
    let (_, trig) = record.lhs.operator().expect("flow exists only with an operator");
    let Some(degree) = flow.pole_degree else {
        return Ok((Vec::new(), record.pole.is_none() && record.anomaly.is_none()));
    };
    let anomaly = match &record.rhs {
        Rhs::Poly(p) => parity_anomaly(p, trig.parity()).map_err(op_error(record))?,
        _ => None,
    };
    let event = if !flow.anomaly_missing {
        PoleEvent { degree, effect: PoleEffect::Annihilated, term: None }
    } else if degree < 0 {
        let term = match &record.rhs {
            Rhs::Named(form) => form
                .singular_part()
                .iter()
                .find(|t| t.power == degree)
                .map(|t| Expression::singular(t.coeff.clone(), t.power).to_string()),
            _ => None,
        };
        PoleEvent { degree, effect: PoleEffect::Singular, term }
    } else {
        PoleEvent { degree, effect: PoleEffect::Anomaly, term: anomaly.as_ref().map(|a| a.to_poly().to_string()) }
    };
    let anomaly_ok = match (record.anomaly, &anomaly) {
        (Some(parity), Some(a)) => {
            event.effect == PoleEffect::Anomaly
                && a.degree as i64 == degree
                && Parity::of_degree(degree) == parity
        }
        (None, None) => event.effect != PoleEffect::Anomaly || matches!(record.rhs, Rhs::Named(_)),
        _ => false,
    };
    let ok = record.pole == Some(degree) && anomaly_ok;
    Ok((vec![event], ok))
}

enum LhsEval {
    Series(TrigSeries),
    Taylor(PiXPolynomial),
    Geometric,
}

struct Evaluator<'a> {
    record: &'a IdentityRecord,
    lhs: LhsEval,
    tol: f64,
}

impl<'a> Evaluator<'a> {
    fn new(record: &'a IdentityRecord, tol: f64) -> Result<Self, VerifyError> {
        let lhs = match &record.lhs {
            Lhs::Geometric => LhsEval::Geometric,
            Lhs::Taylor { .. } => {
                let flow = flow_for(record, GRID_TAYLOR_TERMS)?.expect("taylor lhs has a flow");
                LhsEval::Taylor(flow.poly)
            }
            Lhs::Operator { form: LhsForm::Series, .. } => {
                LhsEval::Series(record.lhs.series().expect("series lhs has integer shift"))
            }
            Lhs::Operator { op, trig, .. } => LhsEval::Series(operator_series(record, op, *trig)?),
        };
        Ok(Self { record, lhs, tol })
    }

    fn point(&self, x: f64) -> PointResult {
        let mut row = PointResult {
            id: self.record.id.clone(),
            x,
            lhs: None,
            rhs: None,
            deviation: f64::INFINITY,
            method: String::new(),
            error: None,
        };
        let rhs = self.rhs(x);
        row.rhs = Some(rhs);
        match self.lhs(x) {
            Ok((value, method)) => {
                row.lhs = Some(value);
                row.method = method;
                row.deviation = (value.complex() - rhs.complex()).norm();
            }
            Err((e, method)) => {
                row.method = method;
                row.error = Some(e);
            }
        }
        row
    }

    fn lhs(&self, x: f64) -> Result<(Sample, String), (String, String)> {
        match &self.lhs {
            LhsEval::Series(series) => {
                let (r, method) = sum_series(*series, x, self.tol / 2.0);
                r.map(|v| (Sample::Real(v), method.clone())).map_err(|e| (e.to_string(), method))
            }
            LhsEval::Taylor(p) => Ok((Sample::Real(p.eval_f64(x)), "taylor_term_by_term".into())),
            LhsEval::Geometric => {
                let method = "abel_extrapolated".to_string();
                let grid = default_r_grid();
                let re = abel_extrapolate(TrigSeries::trivial(Trig::Cos, 0), x, &grid, 4);
                let im = abel_extrapolate(TrigSeries::trivial(Trig::Sin, 0), x, &grid, 4);
                match (re, im) {
                    (Ok(re), Ok(im)) => Ok((Sample::Complex { re: re.value, im: im.value }, method)),
                    (Err(e), _) | (_, Err(e)) => Err((e.to_string(), method)),
                }
            }
        }
    }

    fn rhs(&self, x: f64) -> Sample {
        match &self.record.rhs {
            Rhs::Poly(p) => Sample::Real(p.eval_f64(x)),
            Rhs::Named(form) => {
                let mut v = form.eval(x);
                if self.record.lhs.form() == LhsForm::Taylor {
                    let pi = std::f64::consts::PI;
                    v -= form.singular_part().iter().map(|t| t.coeff.eval_f64(pi) * x.powi(t.power as i32)).sum::<f64>();
                }
                Sample::Real(v)
            }
            Rhs::Geometric => match geometric_abel(x) {
                Ok(z) => Sample::Complex { re: z.re, im: z.im },
                Err(_) => Sample::Complex { re: f64::NAN, im: f64::NAN },
            },
        }
    }
}

/// The series the operator produces on trig(x).
fn operator_series(record: &IdentityRecord, op: &DilationShift, trig: Trig) -> Result<TrigSeries, VerifyError> {
    let r = apply_operator(op, &Expression::trig(trig, 1), false).map_err(op_error(record))?;
    match r.series_terms.as_slice() {
        [term] if term.frequency == 1 && term.coeff == num_traits::One::one() => Ok(term.series),
        _ => Err(VerifyError::Operator {
            id: record.id.clone(),
            source: OperatorError::Unsupported("operator did not yield a single series".into()),
        }),
    }
}

/// Partial sums for exponent ≥ 1, Abel extrapolation otherwise.
pub fn sum_series(series: TrigSeries, x: f64, tol: f64) -> (Result<f64, SeriesError>, String) {
    if series.exponent >= 1 {
        let r = sum_to_tolerance(series, x, tol, MAX_SERIES_TERMS).map(|v| v.value);
        (r, "partial_sum".into())
    } else {
        let r = abel_extrapolate(series, x, &default_r_grid(), 4).map(|v| v.value);
        (r, "abel_extrapolated".into())
    }
}

/// Special values inferred from an extractable identity.
pub fn extract(record: &IdentityRecord, terms: usize) -> Result<Extraction, VerifyError> {
    if !record.extractable {
        return Err(VerifyError::NotExtractable(record.id.clone()));
    }
    let rhs = record.rhs.exact().ok_or_else(|| VerifyError::NoExactForm(record.id.clone()))?;
    let (op, trig, gamma) = match &record.lhs {
        Lhs::Operator { op, trig, .. } => (op, *trig, None),
        Lhs::Taylor { op, gamma, trig } => (op, *trig, gamma.as_ref()),
        Lhs::Geometric => return Err(VerifyError::NotExtractable(record.id.clone())),
    };
    extract_special_values(op, gamma, trig, &rhs, terms).map_err(op_error(record))
}

/// "zeta(-2)" style label.
pub fn value_label(kind: crate::operator::OperatorKind, argument: i64) -> String {
    format!("{kind}({argument})")
}

/// Exact value as text, collapsing π-free values to a plain rational.
pub fn pi_value_text(v: &PiPolynomial) -> String {
    match v.as_rational() {
        Some(q) if q.is_zero() => "0".into(),
        Some(q) => q.to_string(),
        None => v.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::Registry;

    fn record(id: &str) -> &'static IdentityRecord {
        Registry::builtin().lookup(id)[0]
    }

    #[test]
    fn pole_events_follow_the_registry() {
        for r in Registry::builtin().records() {
            let (events, ok) = pole_bookkeeping(r).unwrap();
            assert!(ok, "{}: {events:?}", r.id);
        }
        let (events, _) = pole_bookkeeping(record("eq2")).unwrap();
        assert_eq!(events[0].effect, PoleEffect::Anomaly);
        assert_eq!(events[0].term.as_deref(), Some("1/2*pi"));
        let (events, _) = pole_bookkeeping(record("eq1")).unwrap();
        assert_eq!(events[0].effect, PoleEffect::Singular);
        assert_eq!(events[0].term.as_deref(), Some("x^-1"));
        let (events, _) = pole_bookkeeping(record("eq17")).unwrap();
        assert_eq!(events[0].effect, PoleEffect::Annihilated);
    }

    #[test]
    fn exact_mode_for_every_exact_identity() {
        for r in Registry::builtin().records() {
            if matches!(r.rhs, Rhs::Geometric) {
                assert!(matches!(verify(r, None, None, true), Err(VerifyError::NoExactForm(_))));
                continue;
            }
            let rep = verify(r, None, None, true).unwrap();
            assert!(rep.pass, "{}: {:?} vs {:?}", r.id, rep.exact_lhs, rep.exact_rhs);
        }
    }

    #[test]
    fn grid_outside_domain() {
        let g: Grid = "-1:0:5".parse().unwrap();
        assert!(matches!(verify(record("eq2"), Some(&g), None, false), Err(VerifyError::GridOutsideDomain { .. })));
    }

    #[test]
    fn eq2_fails_at_the_closed_endpoint() {
        // the series vanishes at x = 0 while (π − x)/2 does not
        let g: Grid = "0:0:1".parse().unwrap();
        let rep = verify(record("eq2"), Some(&g), None, false).unwrap();
        assert!(!rep.pass);
        assert!(rep.rows[0].error.is_some());
    }

    #[test]
    fn small_grids_pass() {
        for id in ["eq1", "eq5", "eq6", "sec4_cos", "beta_sin_s0", "beta_cos_s0", "eq21_sin"] {
            let r = record(id);
            let g: Grid = match id {
                "eq21_sin" => "0.1:3:7".parse().unwrap(),
                "beta_sin_s0" | "beta_cos_s0" => "-1.2:1.2:7".parse().unwrap(),
                _ => "0.5:3:7".parse().unwrap(),
            };
            let rep = verify(r, Some(&g), None, false).unwrap();
            assert!(rep.pass, "{id}: {:?}", rep.rows);
        }
    }

    #[test]
    fn extraction_refuses_the_geometric_identity() {
        assert!(matches!(extract(record("eq5"), 6), Err(VerifyError::NotExtractable(_))));
        let ex = extract(record("eq17"), 6).unwrap();
        assert!(ex.values.iter().all(|v| v.matched));
    }
}
