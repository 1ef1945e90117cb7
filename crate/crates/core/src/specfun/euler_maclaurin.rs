use std::sync::OnceLock;

use num_complex::Complex64;

use super::{as_integer, ComplexValue, EvalResult, SpecFunError, EM_TOLERANCE};
use crate::exactnum::{bernoulli_numbers, factorial, to_f64, Rational};

const MAX_K: usize = 64;
const CUTOFFS: [usize; 27] = [
    0, 1, 2, 3, 4, 6, 8, 10, 12, 16, 20, 24, 32, 40, 48, 64, 80, 96, 128, 160, 192, 256, 320, 384, 512, 768, 1024,
];

/// B_{2k}/(2k)! for k = 0..=MAX_K, from the exact table.
fn em_coefficients() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let b = bernoulli_numbers(2 * MAX_K + 1);
        (0..=MAX_K)
            .map(|k| to_f64(&(&b[2 * k] / Rational::from_integer(factorial(2 * k as u64)))))
            .collect()
    })
}

/// expm1(v·d)/v, continuous at v = 0.
fn expm1_ratio(v: Complex64, d: f64) -> Complex64 {
    let z = v * d;
    if z.norm() < 1e-4 {
        d * (1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0)
    } else {
        (z.exp() - 1.0) / v
    }
}

/// Σ_j w_j ζ(s, a_j) by Euler–Maclaurin with the cutoff N and correction
/// order K chosen to minimise truncation plus rounding error.
///
/// When the weights sum to zero the pole terms are combined analytically,
/// so s = 1 is allowed.
#[allow(clippy::needless_range_loop)]
fn hurwitz_combination(s: Complex64, shifts: &[(f64, f64)]) -> Result<EvalResult, SpecFunError> {
    let weight_sum: f64 = shifts.iter().map(|(w, _)| w).sum();
    let pole_free = weight_sum == 0.0;
    if !pole_free && (s - 1.0).norm() < 1e-13 {
        return Err(SpecFunError::PoleAtOne);
    }
    let coeffs = em_coefficients();
    let eps = f64::EPSILON;
    let sigma = s.re;
    let one_minus_s = 1.0 - s;

    let mut direct = Complex64::new(0.0, 0.0);
    let mut direct_abs = 0.0;
    let mut done = 0usize;
    let mut best: Option<(Complex64, f64)> = None;
    let mut stale = 0;

    for &n_cut in CUTOFFS.iter() {
        while done < n_cut {
            for &(w, a) in shifts {
                let t = w * (-s * (done as f64 + a).ln()).exp();
                direct += t;
                direct_abs += t.norm();
            }
            done += 1;
        }
        let logs: Vec<f64> = shifts.iter().map(|&(_, a)| (n_cut as f64 + a).ln()).collect();
        let max_log = logs.iter().cloned().fold(0.0, f64::max);

        let pole = if pole_free {
            shifts
                .iter()
                .zip(&logs)
                .map(|(&(w, _), &l)| -w * (one_minus_s * logs[0]).exp() * expm1_ratio(one_minus_s, l - logs[0]))
                .sum::<Complex64>()
        } else {
            shifts
                .iter()
                .zip(&logs)
                .map(|(&(w, _), &l)| w * (one_minus_s * l).exp() / (s - 1.0))
                .sum::<Complex64>()
        };
        let half: Complex64 = shifts.iter().zip(&logs).map(|(&(w, _), &l)| 0.5 * w * (-s * l).exp()).sum();

        let base = direct + pole + half;
        let mut value = base;
        let mut total_abs = direct_abs + pole.norm() + half.norm();
        // (s)_{2k-1} = s (s+1) … (s+2k−2)
        let mut rising = s;
        let mut local_best: Option<(Complex64, f64)> = None;
        let mut growing = 0;
        let mut prev_mag = f64::INFINITY;
        for k in 1..MAX_K {
            let mut term = Complex64::new(0.0, 0.0);
            let mut mag = 0.0;
            for (&(w, _), &l) in shifts.iter().zip(&logs) {
                let t = w * coeffs[k] * rising * ((-s - (2 * k - 1) as f64) * l).exp();
                term += t;
                mag += t.norm();
            }
            // truncation bound for stopping after k−1 corrections
            let k_prev = k - 1;
            let denom = sigma + (2 * k_prev + 1) as f64;
            if denom > 0.0 {
                let trunc = mag * (s + (2 * k_prev + 1) as f64).norm() / denom;
                let round = eps * (8.0 + s.norm() * max_log + 2.0 * k as f64) * total_abs.max(value.norm());
                let est = trunc + round;
                if local_best.is_none_or(|(_, e)| est < e) {
                    local_best = Some((value, est));
                }
            }
            value += term;
            total_abs += mag;
            if mag > prev_mag && denom > 0.0 {
                growing += 1;
                if growing > 2 {
                    break;
                }
            }
            prev_mag = mag;
            if mag == 0.0 && denom > 0.0 {
                break;
            }
            rising *= (s + (2 * k - 1) as f64) * (s + (2 * k) as f64);
        }
        if let Some((v, e)) = local_best {
            if best.is_none_or(|(_, be)| e < be) {
                best = Some((v, e));
                stale = 0;
            } else {
                stale += 1;
            }
        }
        if let Some((v, e)) = best {
            // Enough cutoffs tried once the estimate is at the rounding floor.
            if e <= 1e-15 * v.norm().max(1.0) || (stale >= 3 && e <= EM_TOLERANCE * v.norm().max(1.0)) {
                break;
            }
        }
    }
    let (value, estimate) = best.ok_or(SpecFunError::PrecisionLoss {
        value: Complex64::new(f64::NAN, f64::NAN),
        estimate: f64::INFINITY,
    })?;
    if estimate.is_nan() || estimate > EM_TOLERANCE * value.norm().max(1.0) {
        return Err(SpecFunError::PrecisionLoss { value, estimate });
    }
    Ok(EvalResult::new(value, estimate))
}

/// Riemann ζ(s) by Euler–Maclaurin summation.
pub fn zeta_em(s: ComplexValue) -> Result<EvalResult, SpecFunError> {
    hurwitz_combination(s, &[(1.0, 1.0)])
}

/// ζ(s) with the pole reported through [`EvalResult::is_pole`] instead of an
/// error, and exact values substituted at nonpositive integers.
pub fn zeta_value(s: ComplexValue) -> Result<EvalResult, SpecFunError> {
    match as_integer(s) {
        Some(n) if n <= 0 => {
            let v = to_f64(&super::zeta_neg_int((-n) as u32));
            Ok(EvalResult::new(Complex64::new(v, 0.0), 0.0))
        }
        _ => match zeta_em(s) {
            Err(SpecFunError::PoleAtOne) => Ok(EvalResult::pole()),
            other => other,
        },
    }
}

/// Hurwitz ζ(s, a) = Σ_{n≥0} (n+a)^{-s} for 0 < a ≤ 1.
pub fn hurwitz_zeta(s: ComplexValue, a: f64) -> Result<EvalResult, SpecFunError> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(SpecFunError::Domain(format!("hurwitz_zeta needs 0 < a <= 1, got {a}")));
    }
    hurwitz_combination(s, &[(1.0, a)])
}

/// Dirichlet β(s) = 4^{-s} [ζ(s, 1/4) − ζ(s, 3/4)], entire.
pub fn dirichlet_beta(s: ComplexValue) -> Result<EvalResult, SpecFunError> {
    let scale = (-s * 4f64.ln()).exp();
    let scale_mag = scale.norm();
    match hurwitz_combination(s, &[(1.0, 0.25), (-1.0, 0.75)]) {
        Ok(r) => {
            let value = r.value * scale;
            let estimate = r.abs_error_estimate * scale_mag + 4.0 * f64::EPSILON * value.norm() * (1.0 + s.norm());
            if estimate > EM_TOLERANCE * value.norm().max(1.0) {
                return Err(SpecFunError::PrecisionLoss { value, estimate });
            }
            Ok(EvalResult::new(value, estimate))
        }
        Err(SpecFunError::PrecisionLoss { value, estimate }) => Err(SpecFunError::PrecisionLoss {
            value: value * scale,
            estimate: estimate * scale_mag,
        }),
        Err(e) => Err(e),
    }
}
