use std::f64::consts::PI;

use num_complex::Complex64;

use super::{recip_gamma, ComplexValue, EvalResult, SpecFunError, CONTOUR_TOLERANCE};
use crate::quad;

/// A Hankel contour around the negative real axis: the ray at angle
/// −(π − δ) walked inward, the circle |t| = radius counterclockwise, and the
/// ray at angle π − δ walked outward. `delta = 0` puts both rays on the
/// two sides of the branch cut of the principal t^{s−1}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HankelContour {
    pub radius: f64,
    pub delta: f64,
}

impl Default for HankelContour {
    fn default() -> Self {
        Self { radius: PI, delta: 0.0 }
    }
}

/// Result of a contour quadrature, before any prefactor.
#[derive(Clone, Copy, Debug)]
pub struct ContourIntegral {
    pub value: Complex64,
    pub error: f64,
    pub abs_integral: f64,
}

/// ∮ f(t) dt over `contour`. The integrand receives t and the branch of
/// log t that is continuous along the path (arg t ∈ [−(π−δ), π−δ]).
pub fn contour_integral(f: impl Fn(Complex64, Complex64) -> Complex64, contour: HankelContour, tol: f64) -> ContourIntegral {
    let theta = PI - contour.delta;
    let rho = contour.radius;
    let at = |r: f64, phi: f64| {
        let log_t = Complex64::new(r.ln(), phi);
        (log_t.exp(), log_t)
    };

    // Ray length: walk outward until the integrand is negligible on both rays.
    let mut r_max = 2.0 * rho;
    loop {
        let (t1, l1) = at(r_max, theta);
        let (t2, l2) = at(r_max, -theta);
        let m = (f(t1, l1).norm() + f(t2, l2).norm()) * r_max;
        if m < 1e-20 || r_max > 4000.0 {
            break;
        }
        r_max *= 1.5;
    }

    let mut total = ContourIntegral { value: Complex64::new(0.0, 0.0), error: 0.0, abs_integral: 0.0 };
    let mut add = |i: quad::Integral| {
        total.value += i.value;
        total.error += i.error;
        total.abs_integral += i.abs_integral;
    };

    // Rays, split geometrically so each panel sees a similar decay.
    let mut breaks = vec![rho];
    while *breaks.last().unwrap() < r_max {
        let next = (breaks.last().unwrap() * 2.0).min(r_max);
        breaks.push(next);
    }
    for w in breaks.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let dir_up = Complex64::from_polar(1.0, theta);
        let dir_down = Complex64::from_polar(1.0, -theta);
        add(quad::integrate(
            |r| {
                let (t, l) = at(r, theta);
                f(t, l) * dir_up
            },
            lo,
            hi,
            tol,
            400,
        ));
        // walked from r_max in to rho
        add(quad::integrate(
            |r| {
                let (t, l) = at(r, -theta);
                -f(t, l) * dir_down
            },
            lo,
            hi,
            tol,
            400,
        ));
    }

    add(quad::integrate(
        |phi| {
            let (t, l) = at(rho, phi);
            f(t, l) * Complex64::new(0.0, 1.0) * t
        },
        -theta,
        theta,
        tol,
        400,
    ));
    total
}

fn scaled_result(
    integral: ContourIntegral,
    prefactor: Complex64,
) -> Result<EvalResult, SpecFunError> {
    let value = integral.value * prefactor;
    let scale = prefactor.norm();
    let estimate = scale * (integral.error + 16.0 * f64::EPSILON * integral.abs_integral);
    if estimate > CONTOUR_TOLERANCE * value.norm().max(1.0) {
        return Err(SpecFunError::PrecisionLoss { value, estimate });
    }
    Ok(EvalResult::new(value, estimate))
}

/// ζ(s) = Γ(1−s)/(2πi) ∮ t^{s−1}/(e^{−t} − 1) dt on the default contour.
pub fn hankel_zeta(s: ComplexValue) -> Result<EvalResult, SpecFunError> {
    hankel_zeta_with(s, HankelContour::default())
}

pub fn hankel_zeta_with(s: ComplexValue, contour: HankelContour) -> Result<EvalResult, SpecFunError> {
    if s.re >= 1.0 {
        return Err(SpecFunError::Domain(format!("hankel_zeta needs Re s < 1, got {s}")));
    }
    let pole_distance = 2.0 * PI;
    if contour.radius >= pole_distance || contour.radius <= 0.0 {
        return Err(SpecFunError::ContourClipped { radius: contour.radius, pole_distance });
    }
    let sm1 = s - 1.0;
    let integral = contour_integral(
        |t, log_t| {
            let denom = if t.norm() < 1e-3 { expm1_small(-t) } else { (-t).exp() - 1.0 };
            (sm1 * log_t).exp() / denom
        },
        contour,
        1e-14,
    );
    let prefactor = 1.0 / (recip_gamma(1.0 - s) * Complex64::new(0.0, 2.0 * PI));
    scaled_result(integral, prefactor)
}

fn expm1_small(z: Complex64) -> Complex64 {
    z * (1.0 + z / 2.0 * (1.0 + z / 3.0 * (1.0 + z / 4.0 * (1.0 + z / 5.0))))
}

/// L(s, x) = Σ_{n≥1} e^{inx}/n^s through the contour integral
/// Γ(1−s)/(2πi) ∮ e^t t^{s−1} e^{ix}/(1 − e^{t+ix}) dt, for 0 < x < 2π.
///
/// The default radius is half the distance to the nearest kernel pole
/// t = i(2πk − x).
pub fn lerch_hankel(s: ComplexValue, x: f64) -> Result<EvalResult, SpecFunError> {
    let pole_distance = x.min(2.0 * PI - x);
    lerch_hankel_with(s, x, HankelContour { radius: (0.5 * pole_distance).min(PI), delta: 0.0 })
}

pub fn lerch_hankel_with(s: ComplexValue, x: f64, contour: HankelContour) -> Result<EvalResult, SpecFunError> {
    if !(x > 0.0 && x < 2.0 * PI) {
        return Err(SpecFunError::Domain(format!("lerch_hankel needs 0 < x < 2π, got {x}")));
    }
    if s.re >= 1.0 {
        return Err(SpecFunError::Domain(format!("lerch_hankel needs Re s < 1, got {s}")));
    }
    let pole_distance = x.min(2.0 * PI - x);
    if contour.radius >= pole_distance || contour.radius <= 0.0 {
        return Err(SpecFunError::ContourClipped { radius: contour.radius, pole_distance });
    }
    let sm1 = s - 1.0;
    let phase = Complex64::from_polar(1.0, x);
    let integral = contour_integral(
        |t, log_t| {
            // e^t e^{ix} / (1 − e^{t+ix}) = e^{ix} / (e^{−t} − e^{ix})
            (sm1 * log_t).exp() * phase / ((-t).exp() - phase)
        },
        contour,
        1e-14,
    );
    let prefactor = 1.0 / (recip_gamma(1.0 - s) * Complex64::new(0.0, 2.0 * PI));
    scaled_result(integral, prefactor)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn zeta_at_integers() {
        let r = hankel_zeta(c(0.0)).unwrap();
        assert!((r.value - c(-0.5)).norm() < 1e-8, "{r:?}");
        let r = hankel_zeta(c(-1.0)).unwrap();
        assert!((r.value - c(-1.0 / 12.0)).norm() < 1e-8);
        let r = hankel_zeta(c(-2.0)).unwrap();
        assert!(r.value.norm() < 1e-8);
    }

    #[test]
    fn zeta_half_matches_reference() {
        let r = hankel_zeta(c(0.5)).unwrap();
        assert!((r.value.re + 1.460_354_508_809_586_8).abs() < 1e-8);
    }

    #[test]
    fn radius_and_angle_do_not_matter() {
        let s = Complex64::new(-0.5, 1.0);
        let a = hankel_zeta(s).unwrap().value;
        let b = hankel_zeta_with(s, HankelContour { radius: 1.0, delta: 0.3 }).unwrap().value;
        assert!((a - b).norm() < 1e-9);
    }

    #[test]
    fn clipped_contour() {
        let err = hankel_zeta_with(c(0.0), HankelContour { radius: 7.0, delta: 0.0 }).unwrap_err();
        assert!(matches!(err, SpecFunError::ContourClipped { .. }));
        let err = lerch_hankel_with(c(0.0), 1.0, HankelContour { radius: 1.5, delta: 0.0 }).unwrap_err();
        assert!(matches!(err, SpecFunError::ContourClipped { .. }));
        assert!(matches!(hankel_zeta(c(1.5)), Err(SpecFunError::Domain(_))));
    }

    #[test]
    fn lerch_residue_values() {
        let r = lerch_hankel(c(0.0), PI / 2.0).unwrap();
        assert!((r.value - Complex64::new(-0.5, 0.5)).norm() < 1e-10);
        let r = lerch_hankel(c(0.0), PI).unwrap();
        assert!((r.value - c(-0.5)).norm() < 1e-10);
        assert!(matches!(lerch_hankel(c(0.0), 0.0), Err(SpecFunError::Domain(_))));
    }
}
