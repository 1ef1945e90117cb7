use num_complex::Complex64;

use super::{Character, SeriesError, SumMethod, SummedValue, TrigSeries};
use crate::kinds::Trig;

const BLOCK: u64 = 1024;

// 2π as a double-double.
const TWO_PI_1: f64 = std::f64::consts::TAU;
const TWO_PI_2: f64 = 2.449_293_598_294_706_4e-16;

/// e^{i·m·x} with the product m·x carried in double-double before the
/// reduction mod 2π, so the phase stays accurate for m up to ~10^9.
fn precise_phase(m: u64, x: f64) -> Complex64 {
    let mf = m as f64;
    let p = mf * x;
    let lo = mf.mul_add(x, -p);
    let k = (p / TWO_PI_1).round();
    let r = (-k).mul_add(TWO_PI_1, p) - k * TWO_PI_2 + lo;
    Complex64::from_polar(1.0, r)
}

/// Upper bound on |Σ_{k≥N} χ(n_k) trig(n_k x) n_k^{−s}| after the first N
/// terms, or an error when the series is not (controllably) convergent.
pub fn tail_bound(series: TrigSeries, x: f64, n_terms: u64) -> Result<f64, SeriesError> {
    let s = series.exponent;
    if s <= 0 {
        return Err(SeriesError::Diverges(s));
    }
    // |Σ_{p..q} χ(n) e^{inx}| ≤ block, by the geometric sum.
    let block = match series.character {
        Character::Trivial => 1.0 / (0.5 * x).sin().abs(),
        Character::Beta => 1.0 / x.cos().abs(),
    };
    let (next_n, _) = series.character.term(n_terms);
    let next_n = next_n as f64;
    let by_parts = next_n.powi(-s) * block;
    if s == 1 {
        if !by_parts.is_finite() || block > 1e12 {
            return Err(SeriesError::EndpointConditional(x));
        }
        return Ok(by_parts);
    }
    // Σ_{n ≥ next} n^{−s} ≤ (next − step)^{1−s}/((s−1) step) for the arithmetic progression
    let step = match series.character {
        Character::Trivial => 1.0,
        Character::Beta => 2.0,
    };
    let base = (next_n - step).max(f64::MIN_POSITIVE);
    let zeta_tail = if next_n > step {
        base.powi(1 - s) / ((s - 1) as f64 * step)
    } else {
        f64::INFINITY
    };
    let bound = if by_parts.is_finite() { by_parts.min(zeta_tail) } else { zeta_tail };
    Ok(bound)
}

/// Sum of the first `n_terms` nonzero terms, with the tail bound as the
/// error estimate.
pub fn partial_sum(series: TrigSeries, x: f64, n_terms: u64) -> Result<SummedValue, SeriesError> {
    let bound = tail_bound(series, x, n_terms)?;
    let value = raw_partial_sum(series, x, n_terms);
    let rounding = 4.0 * f64::EPSILON * (n_terms as f64).sqrt().max(1.0) * (1.0 + value.abs());
    Ok(SummedValue { value, abs_error_estimate: bound + rounding, method: SumMethod::PartialSum })
}

/// Smallest number of terms whose tail bound is below `tol`, then
/// [`partial_sum`] with it.
pub fn sum_to_tolerance(series: TrigSeries, x: f64, tol: f64, max_terms: u64) -> Result<SummedValue, SeriesError> {
    let mut n = 16u64;
    loop {
        let b = tail_bound(series, x, n)?;
        if b <= tol {
            break;
        }
        if n >= max_terms {
            return Err(SeriesError::TooManyTerms { bound: b, max_terms });
        }
        // every bound decays at least like 1/n
        n = ((n as f64) * (b / tol).min(1e6)).ceil().min(max_terms as f64) as u64;
    }
    // back off to the tightest n with the bound still satisfied
    let (mut lo, mut hi) = (n / 2, n);
    while hi - lo > 1 + hi / 1000 {
        let mid = lo + (hi - lo) / 2;
        if tail_bound(series, x, mid)? <= tol {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    partial_sum(series, x, hi)
}

fn raw_partial_sum(series: TrigSeries, x: f64, n_terms: u64) -> f64 {
    let step_angle = match series.character {
        Character::Trivial => x,
        Character::Beta => 2.0 * x,
    };
    let table: Vec<Complex64> = (0..BLOCK).map(|r| precise_phase(r, step_angle)).collect();
    let s = series.exponent;
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut k = 0u64;
    while k < n_terms {
        // phase of the first term in this block
        let (n0, _) = series.character.term(k);
        let base = precise_phase(n0, x);
        let end = (k + BLOCK).min(n_terms);
        for j in k..end {
            let (n, sign) = series.character.term(j);
            let z = base * table[(j - k) as usize];
            let t = match series.trig {
                Trig::Sin => z.im,
                Trig::Cos => z.re,
            };
            let weight = if s == 1 { 1.0 / n as f64 } else { (n as f64).powi(-s) };
            // Neumaier summation
            let term = sign * t * weight;
            let tmp = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - tmp) + term;
            } else {
                comp += (term - tmp) + sum;
            }
            sum = tmp;
        }
        k = end;
    }
    sum + comp
}
