use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exactnum::{PiPolynomial, PiXPolynomial, Rational};
use crate::kinds::Trig;

/// coeff · trig(frequency · x).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TrigAtom {
    pub coeff: Rational,
    pub trig: Trig,
    pub frequency: u64,
}

/// coeff · x^power with power ≤ −1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SingularTerm {
    pub coeff: PiPolynomial,
    pub power: i64,
}

/// Exact polynomial part plus trigonometric atoms and negative powers of x.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Expression {
    pub poly: PiXPolynomial,
    pub trig_atoms: Vec<TrigAtom>,
    pub singular_terms: Vec<SingularTerm>,
}

impl Expression {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_poly(poly: PiXPolynomial) -> Self {
        Self { poly, ..Self::default() }
    }

    /// trig(frequency · x). Panics on frequency 0.
    pub fn trig(trig: Trig, frequency: u64) -> Self {
        assert!(frequency > 0, "trig atom frequency must be positive");
        Self { trig_atoms: vec![TrigAtom { coeff: Rational::one(), trig, frequency }], ..Self::default() }
    }

    /// coeff · x^power for power ≤ −1.
    pub fn singular(coeff: PiPolynomial, power: i64) -> Self {
        assert!(power <= -1, "singular terms need a negative power");
        Self::from_parts(PiXPolynomial::zero(), Vec::new(), vec![SingularTerm { coeff, power }])
    }

    /// Builds a normalized expression: like terms merged, zeros dropped,
    /// atoms sorted by frequency and singular terms by descending power.
    pub fn from_parts(poly: PiXPolynomial, trig_atoms: Vec<TrigAtom>, singular_terms: Vec<SingularTerm>) -> Self {
        let mut atoms: BTreeMap<(u64, Trig), Rational> = BTreeMap::new();
        for a in trig_atoms {
            assert!(a.frequency > 0, "trig atom frequency must be positive");
            *atoms.entry((a.frequency, a.trig)).or_insert_with(Rational::zero) += a.coeff;
        }
        let mut sing: BTreeMap<i64, PiPolynomial> = BTreeMap::new();
        for t in singular_terms {
            assert!(t.power <= -1, "singular terms need a negative power");
            let e = sing.entry(t.power).or_insert_with(PiPolynomial::zero);
            *e = &*e + &t.coeff;
        }
        Self {
            poly,
            trig_atoms: atoms
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((frequency, trig), coeff)| TrigAtom { coeff, trig, frequency })
                .collect(),
            singular_terms: sing
                .into_iter()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(power, coeff)| SingularTerm { coeff, power })
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero() && self.trig_atoms.is_empty() && self.singular_terms.is_empty()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let pi = std::f64::consts::PI;
        let atoms: f64 = self
            .trig_atoms
            .iter()
            .map(|a| crate::exactnum::to_f64(&a.coeff) * a.trig.eval(a.frequency as f64 * x))
            .sum();
        let sing: f64 = self.singular_terms.iter().map(|t| t.coeff.eval_f64(pi) * x.powi(t.power as i32)).sum();
        self.poly.eval_f64(x) + atoms + sing
    }
}

impl std::ops::Add for Expression {
    type Output = Expression;

    fn add(self, rhs: Expression) -> Expression {
        let poly = &self.poly + &rhs.poly;
        let atoms = self.trig_atoms.into_iter().chain(rhs.trig_atoms).collect();
        let sing = self.singular_terms.into_iter().chain(rhs.singular_terms).collect();
        Expression::from_parts(poly, atoms, sing)
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.poly.is_zero() {
            parts.push(self.poly.to_string());
        }
        for a in &self.trig_atoms {
            let arg = if a.frequency == 1 { "x".to_string() } else { format!("{}*x", a.frequency) };
            let c = if a.coeff.is_one() {
                String::new()
            } else if (-a.coeff.clone()).is_one() {
                "-".to_string()
            } else {
                format!("{}*", a.coeff)
            };
            parts.push(format!("{c}{}({arg})", a.trig));
        }
        for t in &self.singular_terms {
            let c = match t.coeff.to_string() {
                c if c == "1" => String::new(),
                c if c == "-1" => "-".to_string(),
                c if c.contains(' ') => format!("({c})*"),
                c => format!("{c}*"),
            };
            parts.push(format!("{c}x^{}", t.power));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => out.push_str(&format!(" - {rest}")),
                None => out.push_str(&format!(" + {p}")),
            }
        }
        f.write_str(&out)
    }
}
