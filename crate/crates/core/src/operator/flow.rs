//! Term-by-term application on Taylor expansions, the parity anomaly, and
//! special-value extraction by coefficient matching.

use num_traits::{ToPrimitive, Zero};

use super::{exact_eigenvalue, DilationShift, Eigenvalue, NamedForm, OperatorError, OperatorKind, SingularTerm};
use crate::exactnum::{factorial, PiPolynomial, PiXPolynomial, Rational};
use crate::kinds::{Parity, Trig};

/// Result of applying an operator to the first K Taylor terms of sin or cos.
#[derive(Clone, Debug, PartialEq)]
pub struct TaylorFlow {
    pub poly: PiXPolynomial,
    /// Degree n with a − n = 1, for ζ with an integer shift.
    pub pole_degree: Option<i64>,
    /// The pole degree is not among the Taylor degrees, so term-by-term
    /// application silently drops the term the pole would carry.
    pub anomaly_missing: bool,
}

/// (degree, coefficient) of the j-th nonzero Taylor term.
fn taylor_term(trig: Trig, j: usize) -> (usize, Rational) {
    let degree = match trig {
        Trig::Sin => 2 * j + 1,
        Trig::Cos => 2 * j,
    };
    let c = Rational::new(1.into(), factorial(degree as u64));
    (degree, if j.is_multiple_of(2) { c } else { -c })
}

fn exact_factor(kind: OperatorKind, arg: &Rational, degree: i64) -> Result<PiPolynomial, OperatorError> {
    match exact_eigenvalue(kind, arg) {
        Eigenvalue::Exact(v) => Ok(v),
        Eigenvalue::Pole => Err(OperatorError::PoleHit { degree }),
        Eigenvalue::Numeric => Err(OperatorError::NotExact { kind, argument: arg.clone() }),
    }
}

/// op applied term by term to Σ_{j<K} of the Taylor series of `trig`.
pub fn taylor_flow(op: &DilationShift, trig: Trig, k: usize) -> Result<TaylorFlow, OperatorError> {
    flow(op, None, trig, k)
}

/// op/Γ(b + iD) applied term by term, the form that regularizes the pole.
pub fn composite_taylor_flow(op: &DilationShift, b: &Rational, trig: Trig, k: usize) -> Result<TaylorFlow, OperatorError> {
    flow(op, Some(b), trig, k)
}

fn flow(op: &DilationShift, gamma: Option<&Rational>, trig: Trig, k: usize) -> Result<TaylorFlow, OperatorError> {
    if k < 4 {
        return Err(OperatorError::TooFewTerms(k));
    }
    if op.kind == OperatorKind::RecipGamma {
        return Err(OperatorError::Unsupported("taylor_flow needs a zeta or beta operator".into()));
    }
    let gamma_op = gamma.map(|b| DilationShift::new(OperatorKind::RecipGamma, b.clone()));
    let mut coeffs = Vec::new();
    for j in 0..k {
        let (n, t) = taylor_term(trig, j);
        let n_i = n as i64;
        let mut c = exact_factor(op.kind, &op.argument(n_i), n_i)?.scale(&t);
        if let Some(g) = &gamma_op {
            c = &c * &exact_factor(g.kind, &g.argument(n_i), n_i)?;
        }
        if coeffs.len() <= n {
            coeffs.resize(n + 1, PiPolynomial::zero());
        }
        coeffs[n] = c;
    }
    let pole_degree = op.pole_degree();
    let annihilated = |d: i64| {
        gamma_op.as_ref().is_some_and(|g| {
            let arg = g.argument(d);
            arg.is_integer() && arg <= Rational::zero()
        })
    };
    let anomaly_missing =
        pole_degree.is_some_and(|d| (d < 0 || Parity::of_degree(d) != trig.parity()) && !annihilated(d));
    Ok(TaylorFlow { poly: PiXPolynomial::from_coeffs(coeffs), pole_degree, anomaly_missing })
}

/// The single term of a closed form whose x-parity differs from `expected`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnomalyTerm {
    pub degree: usize,
    pub coeff: PiPolynomial,
}

impl AnomalyTerm {
    pub fn to_poly(&self) -> PiXPolynomial {
        PiXPolynomial::monomial(self.degree, self.coeff.clone())
    }
}

pub fn parity_anomaly(poly: &PiXPolynomial, expected: Parity) -> Result<Option<AnomalyTerm>, OperatorError> {
    let wrong: Vec<(usize, &PiPolynomial)> =
        poly.terms().filter(|(j, _)| Parity::of_degree(*j as i64) != expected).collect();
    match wrong.as_slice() {
        [] => Ok(None),
        [(degree, coeff)] => Ok(Some(AnomalyTerm { degree: *degree, coeff: (*coeff).clone() })),
        many => Err(OperatorError::MultipleAnomalies(many.iter().map(|(j, _)| *j).collect())),
    }
}

/// Right side with exact Taylor coefficients.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactRhs {
    Poly(PiXPolynomial),
    Named(NamedForm),
}

/// An inferred special value kind(argument) and its independent check.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecialValue {
    pub kind: OperatorKind,
    pub argument: i64,
    pub value: PiPolynomial,
    pub expected: Option<PiPolynomial>,
    pub matched: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Extraction {
    pub values: Vec<SpecialValue>,
    /// Parity-violating term removed from a polynomial right side.
    pub anomaly: Option<AnomalyTerm>,
    /// Principal part removed from a singular right side.
    pub removed_singular: Vec<SingularTerm>,
    /// Degrees whose unknown was multiplied by an exact zero from 1/Γ.
    pub annihilated: Vec<i64>,
}

/// Matches op[/Γ(b + iD)] applied term by term to the Taylor series of
/// `trig` against the Taylor coefficients of `rhs`, with the parity
/// anomaly or principal part removed, and solves for the eigenvalues.
///
/// At least `terms` unknowns are solved for, more if a polynomial right
/// side reaches higher degree.
pub fn extract_special_values(
    op: &DilationShift,
    gamma: Option<&Rational>,
    trig: Trig,
    rhs: &ExactRhs,
    terms: usize,
) -> Result<Extraction, OperatorError> {
    if op.kind == OperatorKind::RecipGamma || !op.shift.is_integer() {
        return Err(OperatorError::Unsupported(format!("extraction for {op}")));
    }
    let gamma_op = gamma.map(|b| DilationShift::new(OperatorKind::RecipGamma, b.clone()));
    let (target, anomaly, removed_singular, terms) = match rhs {
        ExactRhs::Poly(p) => {
            let anomaly = parity_anomaly(p, trig.parity())?;
            let target = match &anomaly {
                Some(a) => p - &a.to_poly(),
                None => p.clone(),
            };
            let needed = target.degree().map_or(0, |d| d / 2 + 1);
            let terms = terms.max(needed);
            (target.coeffs().to_vec(), anomaly, Vec::new(), terms)
        }
        ExactRhs::Named(form) => {
            let order = 2 * terms + 2;
            let series = form.regular_taylor(order);
            let target = series.coeffs().iter().cloned().map(PiPolynomial::from_rational).collect();
            (target, None, form.singular_part(), terms)
        }
    };
    let coeff_at = |d: usize| target.get(d).cloned().unwrap_or_else(PiPolynomial::zero);
    for (d, c) in target.iter().enumerate() {
        if Parity::of_degree(d as i64) != trig.parity() && !c.is_zero() {
            return Err(OperatorError::InconsistentSystem {
                degree: d as i64,
                detail: format!("coefficient {c} has no matching term on the left"),
            });
        }
    }
    let mut values = Vec::new();
    let mut annihilated = Vec::new();
    for j in 0..terms {
        let (n, t) = taylor_term(trig, j);
        let n_i = n as i64;
        let arg = op.argument(n_i);
        let mut divisor = PiPolynomial::from_rational(t);
        if let Some(g) = &gamma_op {
            let f = exact_factor(g.kind, &g.argument(n_i), n_i)?;
            if f.is_zero() {
                annihilated.push(n_i);
                if !coeff_at(n).is_zero() {
                    return Err(OperatorError::InconsistentSystem {
                        degree: n_i,
                        detail: "nonzero coefficient at an annihilated degree".into(),
                    });
                }
                continue;
            }
            divisor = &divisor * &f;
        }
        // divisor is a nonzero rational: Taylor coefficient times 1/Γ at an integer
        let d = divisor.as_rational().expect("divisor is rational");
        let value = coeff_at(n).scale(&d.recip());
        let argument = arg.to_integer().to_i64().expect("small argument");
        let expected = match exact_eigenvalue(op.kind, &arg) {
            Eigenvalue::Exact(v) => Some(v),
            Eigenvalue::Pole => return Err(OperatorError::PoleHit { degree: n_i }),
            Eigenvalue::Numeric => None,
        };
        let matched = expected.as_ref() == Some(&value);
        values.push(SpecialValue { kind: op.kind, argument, value, expected, matched });
    }
    Ok(Extraction { values, anomaly, removed_singular, annihilated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{bernoulli_number, int, rat, RationalSeries};
    use crate::specfun::{clausen_closed_form, zeta_neg_int};

    fn poly(s: &str) -> PiXPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn zeta_one_on_sine_gives_minus_half_x() {
        let f = taylor_flow(&DilationShift::zeta(1), Trig::Sin, 6).unwrap();
        assert_eq!(f.poly, poly("-1/2*x"));
        assert_eq!(f.pole_degree, Some(0));
        assert!(f.anomaly_missing);
    }

    #[test]
    fn beta_zero_on_sine_vanishes() {
        let f = taylor_flow(&DilationShift::beta(0), Trig::Sin, 6).unwrap();
        assert!(f.poly.is_zero());
        assert!(!f.anomaly_missing);
    }

    #[test]
    fn too_few_terms() {
        assert_eq!(taylor_flow(&DilationShift::zeta(1), Trig::Sin, 3), Err(OperatorError::TooFewTerms(3)));
    }

    #[test]
    fn pole_and_numeric_terms_are_errors() {
        assert_eq!(taylor_flow(&DilationShift::zeta(1), Trig::Cos, 4), Err(OperatorError::PoleHit { degree: 0 }));
        assert!(matches!(taylor_flow(&DilationShift::zeta(3), Trig::Cos, 4), Err(OperatorError::NotExact { .. })));
    }

    #[test]
    fn anomalies_of_the_low_clausen_forms() {
        let a = parity_anomaly(&clausen_closed_form(Trig::Sin, 1), Parity::Odd).unwrap().unwrap();
        assert_eq!(a.to_poly(), poly("1/2*pi"));
        let a = parity_anomaly(&clausen_closed_form(Trig::Cos, 1), Parity::Even).unwrap().unwrap();
        assert_eq!(a.to_poly(), poly("-1/2*pi*x"));
        let a = parity_anomaly(&clausen_closed_form(Trig::Sin, 2), Parity::Odd).unwrap().unwrap();
        assert_eq!(a.to_poly(), poly("-1/4*pi*x^2"));
        assert_eq!(parity_anomaly(&poly("x + x^3"), Parity::Odd), Ok(None));
        assert_eq!(parity_anomaly(&poly("1 + x^2"), Parity::Odd), Err(OperatorError::MultipleAnomalies(vec![0, 2])));
    }

    #[test]
    fn composite_flow_reproduces_the_annihilated_sawtooth() {
        let f = composite_taylor_flow(&DilationShift::zeta(1), &int(0), Trig::Sin, 8).unwrap();
        assert_eq!(f.poly, poly("-1/2*x"));
        assert!(!f.anomaly_missing);
    }

    #[test]
    fn singularity_removed_sine_flow() {
        // Bernoulli regrouping: Σ_n ζ(−2n−1)(−1)^n x^{2n+1}/(2n+1)!
        //   = (1/x) Σ_{k≥2} B_k (ix)^k / k!
        let k = 10;
        let f = taylor_flow(&DilationShift::zeta(0), Trig::Sin, k).unwrap();
        let mut oracle = vec![PiPolynomial::zero(); 2 * k];
        for kk in (2..=2 * k).step_by(2) {
            // i^k = (−1)^{k/2} for even k
            let sign = if (kk / 2) % 2 == 0 { int(1) } else { int(-1) };
            let c = sign * bernoulli_number(kk) / Rational::from_integer(factorial(kk as u64));
            oracle[kk - 1] = PiPolynomial::from_rational(c);
        }
        assert_eq!(f.poly, PiXPolynomial::from_coeffs(oracle));
        assert!(f.anomaly_missing);
    }

    #[test]
    fn singularity_removed_cosine_flow_against_series_division() {
        // −1/(2(1−cos x)) + 1/x² by dividing power series directly
        let k = 10;
        let f = taylor_flow(&DilationShift::zeta(-1), Trig::Cos, k).unwrap();
        let n = 2 * k + 4;
        let half_vers = (&RationalSeries::one(n) - &RationalSeries::cos(n)).shift_down(2).scale(&int(2));
        let x2f = -&half_vers.recip().unwrap();
        let reg = (&x2f + &RationalSeries::one(x2f.order())).shift_down(2);
        let oracle: Vec<Rational> = reg.coeffs().iter().take(2 * k - 1).cloned().collect();
        assert_eq!(f.poly.rational_coeffs().unwrap(), oracle);
        assert_eq!(f.poly.coeff(0).as_rational(), Some(rat(-1, 12)));
    }

    #[test]
    fn eq17_extraction() {
        let ex = extract_special_values(&DilationShift::zeta(1), Some(&int(0)), Trig::Sin, &ExactRhs::Poly(poly("-1/2*x")), 6)
            .unwrap();
        let args: Vec<i64> = ex.values.iter().map(|v| v.argument).collect();
        assert_eq!(args, vec![0, -2, -4, -6, -8, -10]);
        assert!(ex.values.iter().all(|v| v.matched));
        assert_eq!(ex.values[0].value.as_rational(), Some(zeta_neg_int(0)));
        assert!(ex.anomaly.is_none());
    }

    #[test]
    fn sawtooth_extraction_removes_the_anomaly() {
        let ex = extract_special_values(
            &DilationShift::zeta(1),
            None,
            Trig::Sin,
            &ExactRhs::Poly(clausen_closed_form(Trig::Sin, 1)),
            6,
        )
        .unwrap();
        assert_eq!(ex.anomaly.unwrap().to_poly(), poly("1/2*pi"));
        assert!(ex.values.iter().all(|v| v.matched));
    }

    #[test]
    fn named_forms_give_odd_zeta_and_beta_values() {
        let ex = extract_special_values(&DilationShift::zeta(0), None, Trig::Sin, &ExactRhs::Named(NamedForm::HalfCot), 6)
            .unwrap();
        assert_eq!(ex.values.iter().map(|v| v.argument).collect::<Vec<_>>(), vec![-1, -3, -5, -7, -9, -11]);
        assert!(ex.values.iter().all(|v| v.matched));
        assert_eq!(ex.values[0].value.as_rational(), Some(rat(-1, 12)));
        assert_eq!(ex.removed_singular.len(), 1);

        let ex = extract_special_values(&DilationShift::beta(0), None, Trig::Cos, &ExactRhs::Named(NamedForm::HalfSec), 3)
            .unwrap();
        let vals: Vec<Rational> = ex.values.iter().map(|v| v.value.as_rational().unwrap()).collect();
        assert_eq!(vals, vec![rat(1, 2), rat(-1, 2), rat(5, 2)]);
        assert!(ex.values.iter().all(|v| v.matched));

        let ex = extract_special_values(&DilationShift::beta(1), None, Trig::Sin, &ExactRhs::Named(NamedForm::HalfLogSecTan), 4)
            .unwrap();
        assert_eq!(ex.values.iter().map(|v| v.argument).collect::<Vec<_>>(), vec![0, -2, -4, -6]);
        assert!(ex.values.iter().all(|v| v.matched));
    }

    #[test]
    fn inconsistent_right_side() {
        // cos-type left side cannot produce x^1 and x^3 at once
        let err = extract_special_values(&DilationShift::zeta(2), None, Trig::Cos, &ExactRhs::Poly(poly("x + x^3")), 4);
        assert!(matches!(err, Err(OperatorError::MultipleAnomalies(_))));
        let err = extract_special_values(&DilationShift::zeta(0), None, Trig::Cos, &ExactRhs::Named(NamedForm::HalfCot), 4);
        assert!(matches!(err, Err(OperatorError::InconsistentSystem { .. })));
    }
}
