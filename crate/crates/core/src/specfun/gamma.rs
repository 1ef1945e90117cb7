use num_complex::Complex64;

use super::ComplexValue;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln Γ(z) for Re z ≥ 1/2 (Lanczos, g = 7).
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &p) in LANCZOS.iter().enumerate().skip(1) {
        x += p / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// (sin πx, cos πx) with exact zeros at integers and half-integers.
fn sincos_pi_real(x: f64) -> (f64, f64) {
    let r = x.rem_euclid(2.0);
    let (n, f) = ((2.0 * r).round(), r - 0.5 * (2.0 * r).round());
    let (s, c) = (std::f64::consts::PI * f).sin_cos();
    match n as i64 % 4 {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

/// sin(πs) for complex s, exactly zero at real integers.
pub fn sin_pi(s: ComplexValue) -> ComplexValue {
    let (sx, cx) = sincos_pi_real(s.re);
    let y = std::f64::consts::PI * s.im;
    Complex64::new(sx * y.cosh(), cx * y.sinh())
}

/// 1/Γ(s), evaluated as an entire function: exactly zero at 0, −1, −2, …
///
/// The right half-plane uses Lanczos; the left half-plane uses the
/// reflection 1/Γ(s) = Γ(1−s) sin(πs)/π, so no pole of Γ is ever formed.
pub fn recip_gamma(s: ComplexValue) -> ComplexValue {
    if s.re >= 0.5 {
        (-ln_gamma_right(s)).exp()
    } else {
        let sp = sin_pi(s);
        if sp == Complex64::new(0.0, 0.0) {
            return sp;
        }
        ln_gamma_right(1.0 - s).exp() * sp / std::f64::consts::PI
    }
}
