use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use proptest::prelude::*;
use zetalab::exactnum::{binomial, int, pipoly_eval, PiPolynomial, PiXPolynomial, Rational};
use zetalab::operator::{apply_operator, DilationShift, Expression, OperatorError};
use zetalab::series::{abel_extrapolate, abel_value, default_r_grid, geometric_abel, partial_sum, registry_closed_form, TrigSeries};
use zetalab::specfun::{clausen_closed_form, zeta_even_positive, zeta_neg_int};
use zetalab::Trig;

/// B_m from the explicit double sum Σ_k 1/(k+1) Σ_j (−1)^j C(k,j) j^m.
fn bernoulli_oracle(m: usize) -> Rational {
    let mut total = Rational::zero();
    for k in 0..=m {
        let mut inner = BigInt::zero();
        for j in 0..=k {
            let t = binomial(k as u64, j as u64) * BigInt::from(j).pow(m as u32);
            if j % 2 == 0 { inner += t } else { inner -= t }
        }
        total += Rational::new(inner, BigInt::from(k + 1));
    }
    total
}

/// ζ(−k) = (−1)^k B_{k+1}/(k+1).
fn zeta_neg_oracle(k: u32) -> Rational {
    let v = bernoulli_oracle(k as usize + 1) / int(k as i64 + 1);
    if k.is_multiple_of(2) { v } else { -v }
}

fn monomial(n: usize) -> Expression {
    Expression::from_poly(PiXPolynomial::monomial(n, PiPolynomial::one()))
}

fn registry_series() -> Vec<TrigSeries> {
    vec![
        TrigSeries::trivial(Trig::Sin, 0),
        TrigSeries::trivial(Trig::Cos, -1),
        TrigSeries::beta(Trig::Sin, 0),
        TrigSeries::beta(Trig::Cos, 0),
        TrigSeries::beta(Trig::Sin, 1),
    ]
}

#[test]
fn eigen_action_is_exact_on_monomials() {
    for a in -3i64..=4 {
        for n in 0i64..=12 {
            if n == a - 1 {
                continue;
            }
            let r = apply_operator(&DilationShift::zeta(a), &monomial(n as usize), false).unwrap();
            let arg = a - n;
            let expected = if arg <= 0 {
                assert_eq!(zeta_neg_int((-arg) as u32), zeta_neg_oracle((-arg) as u32));
                Some(PiPolynomial::from_rational(zeta_neg_oracle((-arg) as u32)))
            } else if arg % 2 == 0 {
                Some(zeta_even_positive((arg / 2) as u32))
            } else {
                None
            };
            match expected {
                Some(v) => {
                    assert!(r.is_exact(), "a={a} n={n}");
                    assert_eq!(r.expr, Expression::from_poly(PiXPolynomial::monomial(n as usize, v)), "a={a} n={n}");
                }
                None => {
                    assert_eq!(r.numeric_terms.len(), 1, "a={a} n={n}");
                    assert_eq!(r.numeric_terms[0].argument, int(arg));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pole_hit_witness(a in 1i64..=6, c in -5i64..=5) {
        let expr = monomial((a - 1) as usize)
            + Expression::from_poly(PiXPolynomial::monomial(a as usize + 1, PiPolynomial::from_rational(int(c))));
        match apply_operator(&DilationShift::zeta(a), &expr, false) {
            Err(OperatorError::PoleHit { degree }) => prop_assert_eq!(degree, a - 1),
            other => prop_assert!(false, "expected a pole, got {:?}", other),
        }
        let allowed = apply_operator(&DilationShift::zeta(a), &expr, true).unwrap();
        prop_assert_eq!(allowed.pole_terms, vec![a - 1]);
    }

    #[test]
    fn operator_defined_at_every_degree(a in -3i64..=0, n in 0usize..160) {
        let r = apply_operator(&DilationShift::zeta(a), &monomial(n), false).unwrap();
        prop_assert!(r.is_exact());
        let k = (n as i64 - a) as u32;
        prop_assert_eq!(r.expr.poly.coeff(n), PiPolynomial::from_rational(zeta_neg_int(k)));
    }

    #[test]
    fn registry_agrees_with_extrapolation(which in 0usize..5, u in 0.02f64..0.98) {
        let series = registry_series()[which];
        let x = match series.character {
            zetalab::series::Character::Trivial => 2.0 * PI * u,
            zetalab::series::Character::Beta => PI * (u - 0.5) * 0.95,
        };
        let closed = abel_value(series, x).unwrap();
        let extra = abel_extrapolate(series, x, &default_r_grid(), 4).unwrap();
        prop_assert!(
            (closed.value - extra.value).abs() <= closed.abs_error_estimate + extra.abs_error_estimate,
            "{} at {}: {} vs {} (+-{})", series, x, closed.value, extra.value, extra.abs_error_estimate
        );
    }

    #[test]
    fn geometric_sum_splits_into_sine_and_cosine(x in 0.05f64..(2.0 * PI - 0.05)) {
        let g = geometric_abel(x).unwrap();
        let sine = abel_value(TrigSeries::trivial(Trig::Sin, 0), x).unwrap();
        prop_assert!((g.im - sine.value).abs() <= 1e-12 * sine.value.abs().max(1.0));
        prop_assert!((g.re + 0.5).abs() <= 1e-12);
        let cosine = abel_value(TrigSeries::trivial(Trig::Cos, 0), x).unwrap();
        prop_assert!((cosine.value + 0.5).abs() <= cosine.abs_error_estimate.max(1e-9));
    }

    #[test]
    fn beta_square_wave_derivative(x in -1.4f64..1.4) {
        let h = 1e-5;
        let f = registry_closed_form(TrigSeries::beta(Trig::Sin, 1)).unwrap();
        let g = registry_closed_form(TrigSeries::beta(Trig::Cos, 0)).unwrap();
        let fd = (f.eval(x + h).unwrap() - f.eval(x - h).unwrap()) / (2.0 * h);
        prop_assert!((fd - g.eval(x).unwrap()).abs() <= 1e-6);
    }

    #[test]
    fn log_form_equals_arctan_form(x in -1.5f64..1.5) {
        let z = Complex64::from_polar(1.0, x);
        let arctan = Complex64::new(0.0, 0.5) * ((1.0 / z).atan() - z.atan());
        let log = registry_closed_form(TrigSeries::beta(Trig::Sin, 1)).unwrap().eval(x).unwrap();
        prop_assert!((arctan.re - log).abs() <= 1e-12 * log.abs().max(1.0));
        prop_assert!(arctan.im.abs() <= 1e-12);
    }

    #[test]
    fn bernoulli_matches_the_oracle(m in 0usize..40) {
        prop_assert_eq!(zetalab::exactnum::bernoulli_number(m), bernoulli_oracle(m));
    }
}

#[test]
fn partial_sums_match_clausen_forms() {
    let n_terms = 100_000;
    for m in 1..=2u32 {
        for (trig, exponent) in [(Trig::Cos, 2 * m as i32), (Trig::Sin, 2 * m as i32 - 1)] {
            let closed = clausen_closed_form(trig, m);
            for i in 1..=20 {
                let x = 2.0 * PI * i as f64 / 21.0;
                let s = partial_sum(TrigSeries::trivial(trig, exponent), x, n_terms).unwrap();
                let exact = pipoly_eval(&closed, x, 30);
                assert!(
                    (s.value - exact).abs() <= s.abs_error_estimate + 1e-12,
                    "{trig} m={m} x={x}: {} vs {exact}, bound {}",
                    s.value,
                    s.abs_error_estimate
                );
            }
        }
    }
}

#[test]
fn bernoulli_oracle_sanity() {
    assert_eq!(bernoulli_oracle(1), Rational::new(BigInt::from(-1), BigInt::from(2)));
    assert_eq!(bernoulli_oracle(2), Rational::new(BigInt::one(), BigInt::from(6)));
}
