use num_complex::Complex64;

use super::{Character, SeriesError, SumMethod, SummedValue, TrigSeries};
use crate::kinds::Trig;

/// Registered Abel closed form for one series.
#[derive(Clone, Copy, Debug)]
pub struct ClosedForm {
    pub series: TrigSeries,
    pub formula: &'static str,
    pub domain: &'static str,
    in_domain: fn(f64) -> bool,
    eval: fn(f64) -> f64,
}

impl ClosedForm {
    pub fn contains(&self, x: f64) -> bool {
        (self.in_domain)(x)
    }

    pub fn eval(&self, x: f64) -> Result<f64, SeriesError> {
        if !self.contains(x) {
            return Err(SeriesError::OutsideDomain { x, domain: self.domain });
        }
        Ok((self.eval)(x))
    }
}

fn off_multiples_of_two_pi(x: f64) -> bool {
    (0.5 * x).sin().abs() > 1e-12
}

fn off_odd_half_pi(x: f64) -> bool {
    x.cos().abs() > 1e-12
}

const CLOSED_FORMS: [ClosedForm; 5] = [
    ClosedForm {
        series: TrigSeries { trig: Trig::Sin, exponent: 0, character: Character::Trivial },
        formula: "sin(x)/(2(1 - cos(x)))",
        domain: "x not a multiple of 2π",
        in_domain: off_multiples_of_two_pi,
        eval: |x| x.sin() / (2.0 * (1.0 - x.cos())),
    },
    ClosedForm {
        series: TrigSeries { trig: Trig::Cos, exponent: -1, character: Character::Trivial },
        formula: "-1/(2(1 - cos(x)))",
        domain: "x not a multiple of 2π",
        in_domain: off_multiples_of_two_pi,
        eval: |x| -1.0 / (2.0 * (1.0 - x.cos())),
    },
    ClosedForm {
        series: TrigSeries { trig: Trig::Sin, exponent: 0, character: Character::Beta },
        formula: "0",
        domain: "cos(x) != 0",
        in_domain: off_odd_half_pi,
        eval: |_| 0.0,
    },
    ClosedForm {
        series: TrigSeries { trig: Trig::Cos, exponent: 0, character: Character::Beta },
        formula: "1/(2cos(x))",
        domain: "cos(x) != 0",
        in_domain: off_odd_half_pi,
        eval: |x| 1.0 / (2.0 * x.cos()),
    },
    ClosedForm {
        series: TrigSeries { trig: Trig::Sin, exponent: 1, character: Character::Beta },
        formula: "ln(sec(x) + tan(x))/2",
        domain: "|x| < π/2",
        in_domain: |x| x.abs() < std::f64::consts::FRAC_PI_2,
        eval: |x| 0.5 * (1.0 / x.cos() + x.tan()).ln(),
    },
];

pub fn registry_closed_form(series: TrigSeries) -> Option<&'static ClosedForm> {
    CLOSED_FORMS.iter().find(|c| c.series == series)
}

/// Abel sum of Σ_{n≥1} e^{inx} = 1/(e^{−ix} − 1).
pub fn geometric_abel(x: f64) -> Result<Complex64, SeriesError> {
    if !off_multiples_of_two_pi(x) {
        return Err(SeriesError::SingularAtEndpoint(x));
    }
    Ok(1.0 / (Complex64::from_polar(1.0, -x) - 1.0))
}

/// Abel sum via the registered closed form if there is one, otherwise by
/// extrapolation on the default grid.
pub fn abel_value(series: TrigSeries, x: f64) -> Result<SummedValue, SeriesError> {
    if let Some(cf) = registry_closed_form(series) {
        let value = cf.eval(x)?;
        return Ok(SummedValue {
            value,
            abs_error_estimate: 8.0 * f64::EPSILON * value.abs().max(1.0),
            method: SumMethod::AbelClosedForm,
        });
    }
    abel_extrapolate(series, x, &default_r_grid(), 4)
}

/// r_k = 1 − 2^{−k}, k = 4..=14.
pub fn default_r_grid() -> Vec<f64> {
    (4..=14).map(|k| 1.0 - 0.5f64.powi(k)).collect()
}

/// Limit r → 1⁻ of Σ χ(n) rⁿ n^{−s} trig(nx) by Neville–Richardson
/// extrapolation in h = 1 − r over the last `order + 1` grid points.
pub fn abel_extrapolate(series: TrigSeries, x: f64, r_grid: &[f64], order: usize) -> Result<SummedValue, SeriesError> {
    if r_grid.len() < 3 {
        return Err(SeriesError::InvalidGrid("need at least 3 points".into()));
    }
    if r_grid.iter().any(|r| !(*r > 0.0 && *r < 1.0)) {
        return Err(SeriesError::InvalidGrid("points must lie in (0, 1)".into()));
    }
    if r_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(SeriesError::InvalidGrid("points must be strictly increasing".into()));
    }
    let order = order.clamp(1, r_grid.len() - 1);
    let pts = &r_grid[r_grid.len() - order - 1..];
    let radial = RadialSum::new(series);
    let hs: Vec<f64> = pts.iter().map(|r| 1.0 - r).collect();
    let fs: Vec<f64> = pts.iter().map(|&r| radial.eval(r, x)).collect();
    if fs.iter().any(|f| !f.is_finite()) {
        return Err(SeriesError::NoClosedForm(format!("radial sum not finite at x = {x}")));
    }
    let best = neville_at_zero(&hs, &fs);
    // same extrapolation with the point farthest from r = 1 dropped
    let previous = neville_at_zero(&hs[1..], &fs[1..]);
    let spread = (best - previous).abs();
    if spread > 1e-6 * best.abs().max(1.0) {
        return Err(SeriesError::NotConverged(spread));
    }
    Ok(SummedValue { value: best, abs_error_estimate: spread, method: SumMethod::AbelExtrapolated })
}

fn neville_at_zero(hs: &[f64], fs: &[f64]) -> f64 {
    let mut p = fs.to_vec();
    let n = hs.len();
    for level in 1..n {
        for i in 0..n - level {
            let (hi, hj) = (hs[i], hs[i + level]);
            p[i] = (hj * p[i] - hi * p[i + 1]) / (hj - hi);
        }
    }
    p[0]
}

/// F(w) = Σ χ(n) n^{−s} wⁿ evaluated off the unit circle.
enum RadialSum {
    /// P(w)/D(w)^m, from applying (w d/dw)^{−s} to the geometric base.
    Rational { series: TrigSeries, p: Vec<f64>, d: Vec<f64>, m: i32 },
    Log(TrigSeries),
    Direct(TrigSeries),
}

impl RadialSum {
    fn new(series: TrigSeries) -> Self {
        match series.exponent {
            s if s <= 0 => {
                let d = match series.character {
                    Character::Trivial => vec![1.0, -1.0],
                    Character::Beta => vec![1.0, 0.0, 1.0],
                };
                let mut p = vec![0.0, 1.0];
                let mut m = 1;
                for _ in 0..(-s) {
                    // w (P/D^m)' = (w P' D − m w D' P) / D^{m+1}
                    let a = poly_mul(&shift_up(&derivative(&p)), &d);
                    let b = poly_mul(&shift_up(&derivative(&d)), &p);
                    let len = a.len().max(b.len());
                    p = (0..len)
                        .map(|i| a.get(i).copied().unwrap_or(0.0) - m as f64 * b.get(i).copied().unwrap_or(0.0))
                        .collect();
                    m += 1;
                }
                RadialSum::Rational { series, p, d, m }
            }
            1 => RadialSum::Log(series),
            _ => RadialSum::Direct(series),
        }
    }

    fn eval(&self, r: f64, x: f64) -> f64 {
        let w = Complex64::from_polar(r, x);
        let (series, z) = match self {
            RadialSum::Rational { series, p, d, m } => (series, horner(p, w) / horner(d, w).powi(*m)),
            RadialSum::Log(series) => {
                let z = match series.character {
                    Character::Trivial => -(1.0 - w).ln(),
                    Character::Beta => w.atan(),
                };
                (series, z)
            }
            RadialSum::Direct(series) => {
                let mut z = Complex64::new(0.0, 0.0);
                let mut k = 0u64;
                loop {
                    let (n, sign) = series.character.term(k);
                    let mag = r.powf(n as f64) * (n as f64).powi(-series.exponent);
                    if mag < 1e-18 {
                        break;
                    }
                    z += sign * Complex64::from_polar(mag, n as f64 * x);
                    k += 1;
                }
                (series, z)
            }
        };
        match series.trig {
            Trig::Sin => z.im,
            Trig::Cos => z.re,
        }
    }
}

fn horner(c: &[f64], w: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * w + a)
}

fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(i, a)| i as f64 * a).collect()
}

fn shift_up(c: &[f64]) -> Vec<f64> {
    std::iter::once(0.0).chain(c.iter().copied()).collect()
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, PI};

    use super::*;

    #[test]
    fn geometric() {
        for x in [0.3, 1.0, PI, 5.0] {
            let g = geometric_abel(x).unwrap();
            assert!((g.re + 0.5).abs() < 1e-14, "Re at {x}");
            let cot = (0.5 * x).cos() / (0.5 * x).sin();
            assert!((g.im - 0.5 * cot).abs() < 1e-13, "Im at {x}");
        }
        assert_eq!(geometric_abel(0.0), Err(SeriesError::SingularAtEndpoint(0.0)));
        assert!(geometric_abel(2.0 * PI).is_err());
    }

    #[test]
    fn registry_matches_extrapolation() {
        for cf in &CLOSED_FORMS {
            for x in [0.4, 1.1, 1.4, 2.5, -0.9] {
                if !cf.contains(x) || (x.cos().abs() < 0.2 && cf.series.character == Character::Beta) {
                    continue;
                }
                let exact = cf.eval(x).unwrap();
                let ex = abel_extrapolate(cf.series, x, &default_r_grid(), 4).unwrap();
                assert!((ex.value - exact).abs() < 1e-8, "{} at {x}: {} vs {exact}", cf.series, ex.value);
            }
        }
    }

    #[test]
    fn outside_domain() {
        let s = TrigSeries::beta(Trig::Sin, 1);
        assert!(matches!(abel_value(s, 2.0), Err(SeriesError::OutsideDomain { .. })));
        assert!(matches!(abel_value(TrigSeries::beta(Trig::Cos, 0), FRAC_PI_2), Err(SeriesError::OutsideDomain { .. })));
    }

    #[test]
    fn unregistered_series_fall_back() {
        // Σ n sin(nx) = −d/dx[Σ cos(nx)] → Abel value 0 away from 0, since Σ cos(nx) ≡ −1/2
        let v = abel_value(TrigSeries::trivial(Trig::Sin, -1), 1.3).unwrap();
        assert_eq!(v.method, SumMethod::AbelExtrapolated);
        assert!(v.value.abs() < 1e-8);
        // Σ cos(nx) = −1/2
        let v = abel_value(TrigSeries::trivial(Trig::Cos, 0), 2.0).unwrap();
        assert!((v.value + 0.5).abs() < 1e-8);
        // Σ cos(nx)/n² = π²/6 − πx/2 + x²/4
        let x = 1.2;
        let v = abel_value(TrigSeries::trivial(Trig::Cos, 2), x).unwrap();
        assert!((v.value - (PI * PI / 6.0 - PI * x / 2.0 + x * x / 4.0)).abs() < 1e-8);
    }

    #[test]
    fn grid_validation() {
        let s = TrigSeries::trivial(Trig::Sin, 0);
        assert!(matches!(abel_extrapolate(s, 1.0, &[0.5, 0.9], 4), Err(SeriesError::InvalidGrid(_))));
        assert!(matches!(abel_extrapolate(s, 1.0, &[0.5, 0.9, 1.0], 4), Err(SeriesError::InvalidGrid(_))));
        assert!(matches!(abel_extrapolate(s, 1.0, &[0.5, 0.95, 0.9], 4), Err(SeriesError::InvalidGrid(_))));
    }

    #[test]
    fn rational_forms_against_direct_sums() {
        for s in [-3, -1, 0] {
            for ch in [Character::Trivial, Character::Beta] {
                let series = TrigSeries::new(Trig::Cos, s, ch);
                let closed = RadialSum::new(series).eval(0.6, 0.8);
                let mut direct = 0.0;
                for k in 0..400 {
                    let (n, sign) = ch.term(k);
                    direct += sign * 0.6f64.powi(n as i32) * (n as f64).powi(-s) * (0.8 * n as f64).cos();
                }
                assert!((closed - direct).abs() < 1e-12, "s={s} {ch:?}");
            }
        }
    }
}
