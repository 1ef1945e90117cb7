//! Trigonometric series Σ χ(n) n^{−s} trig(nx): convergent partial sums with
//! rigorous tail bounds, and Abel summation for the divergent ones.
//!
//! Divergent series (exponent ≤ 0) are never truncated. They go through
//! [`abel_value`], which uses a closed form when one is registered and
//! otherwise extrapolates r → 1⁻ in Σ χ(n) rⁿ n^{−s} trig(nx).

mod abel;
mod partial;

pub use abel::{abel_extrapolate, abel_value, default_r_grid, geometric_abel, registry_closed_form, ClosedForm};
pub use partial::{partial_sum, sum_to_tolerance, tail_bound};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kinds::Trig;

/// Dirichlet character weighting the series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Character {
    /// n = 1, 2, 3, … with weight 1.
    Trivial,
    /// The nontrivial character mod 4: n = 2k+1 with weight (−1)^k.
    Beta,
}

impl Character {
    /// (n, χ(n)) for the k-th nonzero term, k = 0, 1, 2, …
    pub fn term(self, k: u64) -> (u64, f64) {
        match self {
            Character::Trivial => (k + 1, 1.0),
            Character::Beta => (2 * k + 1, if k.is_multiple_of(2) { 1.0 } else { -1.0 }),
        }
    }
}

/// Σ χ(n) trig(nx) / n^exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TrigSeries {
    pub trig: Trig,
    pub exponent: i32,
    pub character: Character,
}

impl TrigSeries {
    pub fn new(trig: Trig, exponent: i32, character: Character) -> Self {
        Self { trig, exponent, character }
    }

    pub fn trivial(trig: Trig, exponent: i32) -> Self {
        Self::new(trig, exponent, Character::Trivial)
    }

    pub fn beta(trig: Trig, exponent: i32) -> Self {
        Self::new(trig, exponent, Character::Beta)
    }
}

impl fmt::Display for TrigSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let weight = match self.exponent {
            0 => String::new(),
            1 => "/n".to_string(),
            e if e < 0 => format!(" * n^{}", -e),
            e => format!("/n^{e}"),
        };
        match self.character {
            Character::Trivial => write!(f, "sum_(n>=1) {}(n x){weight}", self.trig),
            Character::Beta => write!(f, "sum_(n odd) chi4(n) {}(n x){weight}", self.trig),
        }
    }
}

/// How a [`SummedValue`] was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SumMethod {
    PartialSum,
    AbelClosedForm,
    AbelExtrapolated,
}

impl fmt::Display for SumMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SumMethod::PartialSum => "partial_sum",
            SumMethod::AbelClosedForm => "abel_closed_form",
            SumMethod::AbelExtrapolated => "abel_extrapolated",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SummedValue {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub method: SumMethod,
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum SeriesError {
    #[error("series with exponent {0} diverges; use Abel summation")]
    Diverges(i32),
    #[error("series is only conditionally convergent and its partial sums are not controlled at x = {0}")]
    EndpointConditional(f64),
    #[error("geometric Abel sum is singular at x = {0} (x ≡ 0 mod 2π)")]
    SingularAtEndpoint(f64),
    #[error("x = {x} is outside the validity domain {domain}")]
    OutsideDomain { x: f64, domain: &'static str },
    #[error("no closed form and extrapolation failed: {0}")]
    NoClosedForm(String),
    #[error("Richardson extrapolants disagree by {0:.3e}")]
    NotConverged(f64),
    #[error("invalid r grid: {0}")]
    InvalidGrid(String),
    #[error("tail bound {bound:.3e} needs more than {max_terms} terms")]
    TooManyTerms { bound: f64, max_terms: u64 },
}
