use std::fmt;
use std::str::FromStr;

use super::SingularTerm;
use crate::exactnum::{int, PiPolynomial, RationalSeries};

/// Non-polynomial closed forms whose Taylor expansions are exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedForm {
    /// sin x / (2(1 − cos x))
    HalfCot,
    /// −1 / (2(1 − cos x))
    NegHalfCsc2,
    /// 1 / (2 cos x)
    HalfSec,
    /// ln(sec x + tan x) / 2
    HalfLogSecTan,
    Zero,
}

impl NamedForm {
    pub const ALL: [NamedForm; 5] =
        [NamedForm::HalfCot, NamedForm::NegHalfCsc2, NamedForm::HalfSec, NamedForm::HalfLogSecTan, NamedForm::Zero];

    pub fn name(self) -> &'static str {
        match self {
            NamedForm::HalfCot => "half_cot",
            NamedForm::NegHalfCsc2 => "neg_half_csc2",
            NamedForm::HalfSec => "half_sec",
            NamedForm::HalfLogSecTan => "half_log_sec_tan",
            NamedForm::Zero => "zero",
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            NamedForm::HalfCot => "sin(x)/(2(1 - cos(x)))",
            NamedForm::NegHalfCsc2 => "-1/(2(1 - cos(x)))",
            NamedForm::HalfSec => "1/(2cos(x))",
            NamedForm::HalfLogSecTan => "ln(sec(x) + tan(x))/2",
            NamedForm::Zero => "0",
        }
    }

    pub fn eval(self, x: f64) -> f64 {
        match self {
            NamedForm::HalfCot => x.sin() / (2.0 * (1.0 - x.cos())),
            NamedForm::NegHalfCsc2 => -1.0 / (2.0 * (1.0 - x.cos())),
            NamedForm::HalfSec => 1.0 / (2.0 * x.cos()),
            NamedForm::HalfLogSecTan => 0.5 * (1.0 / x.cos() + x.tan()).ln(),
            NamedForm::Zero => 0.0,
        }
    }

    /// Principal part at x = 0.
    pub fn singular_part(self) -> Vec<SingularTerm> {
        match self {
            NamedForm::HalfCot => vec![SingularTerm { coeff: PiPolynomial::one(), power: -1 }],
            NamedForm::NegHalfCsc2 => vec![SingularTerm { coeff: -PiPolynomial::one(), power: -2 }],
            _ => Vec::new(),
        }
    }

    /// Taylor coefficients of the form minus its principal part, through
    /// x^{order−1}.
    pub fn regular_taylor(self, order: usize) -> RationalSeries {
        let n = order + 4;
        let out = match self {
            NamedForm::HalfCot => {
                // x·f = (sin x / x) / (2(1 − cos x)/x²)
                let num = RationalSeries::sin(n).shift_down(1);
                let den = (&RationalSeries::one(n) - &RationalSeries::cos(n)).shift_down(2).scale(&int(2));
                let xf = num.div(&den).expect("denominator has unit constant term");
                (&xf - &RationalSeries::one(xf.order())).shift_down(1)
            }
            NamedForm::NegHalfCsc2 => {
                let den = (&RationalSeries::one(n) - &RationalSeries::cos(n)).shift_down(2).scale(&int(2));
                let x2f = -&den.recip().expect("unit constant term");
                (&x2f + &RationalSeries::one(x2f.order())).shift_down(2)
            }
            NamedForm::HalfSec => RationalSeries::cos(n).recip().expect("cos(0) = 1").scale(&crate::exactnum::rat(1, 2)),
            NamedForm::HalfLogSecTan => RationalSeries::cos(n)
                .recip()
                .expect("cos(0) = 1")
                .integrate()
                .scale(&crate::exactnum::rat(1, 2)),
            NamedForm::Zero => RationalSeries::new(vec![num_traits::Zero::zero(); n]),
        };
        RationalSeries::new(out.coeffs().iter().take(order).cloned().collect())
    }
}

impl fmt::Display for NamedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedForm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NamedForm::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown closed form `{s}`"))
    }
}
