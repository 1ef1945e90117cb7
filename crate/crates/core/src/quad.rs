//! Quadrature rules: adaptive Gauss–Kronrod (7/15) for complex-valued
//! integrands and fixed Gauss–Legendre panels.

use num_complex::Complex64;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the odd-indexed Kronrod nodes (XGK[1], XGK[3], XGK[5], XGK[7]).
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Result of an adaptive integration.
#[derive(Clone, Copy, Debug)]
pub struct Integral {
    pub value: Complex64,
    /// Sum of |K15 − G7| over accepted panels.
    pub error: f64,
    /// ∫|f|, for rounding-error estimates.
    pub abs_integral: f64,
}

fn kronrod_panel(f: &impl Fn(f64) -> Complex64, a: f64, b: f64) -> (Complex64, f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    let mut abs = fc.norm() * WGK[7];
    for i in 0..7 {
        let dx = h * XGK[i];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        k += (f1 + f2) * WGK[i];
        abs += (f1.norm() + f2.norm()) * WGK[i];
        if i % 2 == 1 {
            g += (f1 + f2) * WG[i / 2];
        }
    }
    (k * h, ((k - g) * h).norm(), abs * h.abs())
}

/// Globally adaptive integration: the panel with the largest |K15 − G7| is
/// bisected until the summed estimate is below `tol` or `max_panels` panels
/// are in use.
pub fn integrate(f: impl Fn(f64) -> Complex64, a: f64, b: f64, tol: f64, max_panels: usize) -> Integral {
    let mut panels: Vec<(f64, f64, Complex64, f64, f64)> = Vec::new();
    if a == b {
        return Integral { value: Complex64::new(0.0, 0.0), error: 0.0, abs_integral: 0.0 };
    }
    let (v, e, abs) = kronrod_panel(&f, a, b);
    panels.push((a, b, v, e, abs));
    let mut total_err = e;
    while panels.len() < max_panels {
        let total_abs: f64 = panels.iter().map(|p| p.4).sum();
        if total_err <= tol.max(4.0 * f64::EPSILON * total_abs) {
            break;
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("at least one panel");
        let (lo, hi, _, e_old, _) = panels.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            panels.push((lo, hi, Complex64::new(0.0, 0.0), 0.0, 0.0));
            break;
        }
        let (v1, e1, a1) = kronrod_panel(&f, lo, mid);
        let (v2, e2, a2) = kronrod_panel(&f, mid, hi);
        total_err += e1 + e2 - e_old;
        panels.push((lo, mid, v1, e1, a1));
        panels.push((mid, hi, v2, e2, a2));
    }
    Integral {
        value: panels.iter().map(|p| p.2).sum(),
        error: panels.iter().map(|p| p.3).sum(),
        abs_integral: panels.iter().map(|p| p.4).sum(),
    }
}

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Three-term recurrence for P_n and its derivative.
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pn1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pn1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Composite Gauss–Legendre over the given breakpoints, each interval split
/// into `panels` equal panels.
pub fn composite_gauss_legendre(f: impl Fn(f64) -> f64, breaks: &[f64], panels: usize, order: usize) -> f64 {
    let (nodes, weights) = gauss_legendre(order);
    let mut total = 0.0;
    for w in breaks.windows(2) {
        let step = (w[1] - w[0]) / panels as f64;
        for p in 0..panels {
            let lo = w[0] + step * p as f64;
            let c = lo + 0.5 * step;
            let h = 0.5 * step;
            total += nodes
                .iter()
                .zip(&weights)
                .map(|(x, wt)| wt * f(c + h * x))
                .sum::<f64>()
                * h;
        }
    }
    total
}
