//! The identity registry, loaded from `data/identities.reg`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{PiXPolynomial, Rational};
use crate::kinds::{Parity, Trig};
use crate::operator::{DilationShift, ExactRhs, NamedForm, OperatorKind};
use crate::series::{Character, TrigSeries};
use crate::specfun::clausen_closed_form;

pub const REGISTRY_SOURCE: &str = include_str!("../data/identities.reg");
pub const REGISTRY_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum RegistryError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("identity `{id}`: {msg}")]
    Invalid { id: String, msg: String },
    #[error("unsupported registry version {0}")]
    Version(u32),
    #[error("duplicate identity id `{0}`")]
    Duplicate(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LhsForm {
    Operator,
    Series,
    Geometric,
    Taylor,
}

/// The left side of an identity.
#[derive(Clone, Debug, PartialEq)]
pub enum Lhs {
    /// kind(a − iD) trig(x), or the series it generates.
    Operator { form: LhsForm, op: DilationShift, trig: Trig },
    /// Term-by-term application on the Taylor series, then 1/Γ(b + iD).
    Taylor { op: DilationShift, gamma: Option<Rational>, trig: Trig },
    Geometric,
}

impl Lhs {
    pub fn form(&self) -> LhsForm {
        match self {
            Lhs::Operator { form, .. } => *form,
            Lhs::Taylor { .. } => LhsForm::Taylor,
            Lhs::Geometric => LhsForm::Geometric,
        }
    }

    pub fn operator(&self) -> Option<(&DilationShift, Trig)> {
        match self {
            Lhs::Operator { op, trig, .. } | Lhs::Taylor { op, trig, .. } => Some((op, *trig)),
            Lhs::Geometric => None,
        }
    }

    /// The Fourier series produced by the operator acting on trig(x).
    pub fn series(&self) -> Option<TrigSeries> {
        let Lhs::Operator { op, trig, .. } = self else { return None };
        let character = match op.kind {
            OperatorKind::Beta => Character::Beta,
            _ => Character::Trivial,
        };
        let s = op.shift.to_integer().try_into().ok()?;
        Some(TrigSeries::new(*trig, s, character))
    }
}

impl fmt::Display for Lhs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lhs::Operator { form: LhsForm::Series, .. } => write!(f, "{}", self.series().expect("integer shift")),
            Lhs::Operator { op, trig, .. } => write!(f, "{op} {trig}(x)"),
            Lhs::Taylor { op, gamma: Some(b), trig } => write!(f, "{op}/Gamma({b} + iD) on Taylor({trig})"),
            Lhs::Taylor { op, gamma: None, trig } => write!(f, "{op} on Taylor({trig})"),
            Lhs::Geometric => f.write_str("sum_(n>=1) e^(i n x)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Rhs {
    Poly(PiXPolynomial),
    Named(NamedForm),
    Geometric,
}

impl Rhs {
    pub fn exact(&self) -> Option<ExactRhs> {
        match self {
            Rhs::Poly(p) => Some(ExactRhs::Poly(p.clone())),
            Rhs::Named(n) => Some(ExactRhs::Named(*n)),
            Rhs::Geometric => None,
        }
    }
}

impl fmt::Display for Rhs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rhs::Poly(p) => write!(f, "{p}"),
            Rhs::Named(n) => f.write_str(n.formula()),
            Rhs::Geometric => f.write_str("1/(e^(-i x) - 1)"),
        }
    }
}

/// Interval with open or closed ends; `text` keeps the registry spelling.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Domain {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
    pub text: String,
}

impl Domain {
    pub fn contains(&self, x: f64) -> bool {
        let slack = 1e-12;
        let above = if self.lo_closed { x >= self.lo - slack } else { x > self.lo };
        let below = if self.hi_closed { x <= self.hi + slack } else { x < self.hi };
        above && below
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Profile {
    Grid(Grid),
    Exact,
}

/// `points` equally spaced values from `a` to `b` inclusive.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Grid {
    pub a: f64,
    pub b: f64,
    pub points: usize,
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        match self.points {
            0 => Vec::new(),
            1 => vec![self.a],
            n => (0..n).map(|i| self.a + (self.b - self.a) * i as f64 / (n - 1) as f64).collect(),
        }
    }
}

impl std::str::FromStr for Grid {
    type Err = String;

    /// `a:b:points`, endpoints may use pi.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let [a, b, n] = parts.as_slice() else {
            return Err(format!("grid `{s}` is not a:b:points"));
        };
        let points = n.parse::<usize>().map_err(|_| format!("bad point count `{n}`"))?;
        if points == 0 {
            return Err("grid needs at least one point".into());
        }
        Ok(Grid { a: parse_real(a)?, b: parse_real(b)?, points })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityRecord {
    pub id: String,
    /// Family key (`eq3_m`) for members of a family.
    pub family: Option<String>,
    pub m: Option<u32>,
    pub title: String,
    pub lhs: Lhs,
    pub rhs: Rhs,
    pub domain: Domain,
    pub anomaly: Option<Parity>,
    pub pole: Option<i64>,
    pub profile: Profile,
    pub tol: f64,
    pub extractable: bool,
}

#[derive(Clone, Debug)]
pub struct Registry {
    records: Vec<IdentityRecord>,
}

impl Registry {
    /// The registry shipped with the crate.
    pub fn builtin() -> &'static Registry {
        static REG: std::sync::OnceLock<Registry> = std::sync::OnceLock::new();
        REG.get_or_init(|| Registry::parse(REGISTRY_SOURCE).expect("built-in registry is valid"))
    }

    pub fn records(&self) -> &[IdentityRecord] {
        &self.records
    }

    /// An exact id, or a family key which yields every member.
    pub fn lookup(&self, id: &str) -> Vec<&IdentityRecord> {
        self.records.iter().filter(|r| r.id == id || r.family.as_deref() == Some(id)).collect()
    }

    pub fn parse(text: &str) -> Result<Registry, RegistryError> {
        let mut version = None;
        let mut blocks: Vec<(usize, BTreeMap<String, String>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if line == "[identity]" {
                blocks.push((line_no, BTreeMap::new()));
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| RegistryError::Syntax { line: line_no, msg: format!("expected key = value, got `{line}`") })?;
            match blocks.last_mut() {
                None if key == "version" => {
                    let v = value
                        .parse()
                        .map_err(|_| RegistryError::Syntax { line: line_no, msg: format!("bad version `{value}`") })?;
                    version = Some(v);
                }
                None => {
                    return Err(RegistryError::Syntax { line: line_no, msg: format!("`{key}` outside an identity block") });
                }
                Some((_, block)) => {
                    if block.insert(key.clone(), value).is_some() {
                        return Err(RegistryError::Syntax { line: line_no, msg: format!("repeated key `{key}`") });
                    }
                }
            }
        }
        match version {
            Some(REGISTRY_VERSION) => {}
            Some(v) => return Err(RegistryError::Version(v)),
            None => return Err(RegistryError::Syntax { line: 1, msg: "missing version".into() }),
        }
        let mut records = Vec::new();
        for (_, block) in &blocks {
            records.extend(parse_block(block)?);
        }
        let mut seen = std::collections::BTreeSet::new();
        for r in &records {
            if !seen.insert(r.id.clone()) {
                return Err(RegistryError::Duplicate(r.id.clone()));
            }
        }
        Ok(Registry { records })
    }
}

fn parse_block(block: &BTreeMap<String, String>) -> Result<Vec<IdentityRecord>, RegistryError> {
    let id = block.get("id").cloned().ok_or(RegistryError::Syntax { line: 0, msg: "identity without id".into() })?;
    let invalid = |msg: String| RegistryError::Invalid { id: id.clone(), msg };
    let get = |key: &str| block.get(key).map(String::as_str).ok_or_else(|| invalid(format!("missing `{key}`")));
    let family = match block.get("family") {
        None => None,
        Some(range) => {
            let (a, b) = range.split_once("..").ok_or_else(|| invalid(format!("bad family range `{range}`")))?;
            let a: u32 = a.trim().parse().map_err(|_| invalid(format!("bad family range `{range}`")))?;
            let b: u32 = b.trim().parse().map_err(|_| invalid(format!("bad family range `{range}`")))?;
            if !id.ends_with("_m") || a == 0 || a > b {
                return Err(invalid(format!("bad family `{range}`")));
            }
            Some((a, b))
        }
    };
    let members: Vec<Option<u32>> = match family {
        Some((a, b)) => (a..=b).map(Some).collect(),
        None => vec![None],
    };
    let mut out = Vec::new();
    for m in members {
        let member_id = match m {
            Some(m) => format!("{}_{m}", id.trim_end_matches("_m")),
            None => id.clone(),
        };
        let int_expr = |key: &str| -> Result<i64, RegistryError> {
            let v = get(key)?;
            parse_linear_in_m(v, m).ok_or_else(|| invalid(format!("bad `{key}` value `{v}`")))
        };
        let form = match get("lhs")? {
            "operator" => LhsForm::Operator,
            "series" => LhsForm::Series,
            "geometric" => LhsForm::Geometric,
            "taylor" => LhsForm::Taylor,
            other => return Err(invalid(format!("unknown lhs `{other}`"))),
        };
        let lhs = if form == LhsForm::Geometric {
            Lhs::Geometric
        } else {
            let kind: OperatorKind = get("kind")?.parse().map_err(invalid)?;
            if kind == OperatorKind::RecipGamma {
                return Err(invalid("lhs kind must be zeta or beta".into()));
            }
            let shift = int_expr("shift")?;
            let op = DilationShift::new(kind, Rational::from_integer(shift.into()));
            let trig: Trig = get("trig")?.parse().map_err(invalid)?;
            if form == LhsForm::Taylor {
                let gamma = match block.get("gamma") {
                    Some(_) => Some(Rational::from_integer(int_expr("gamma")?.into())),
                    None => None,
                };
                Lhs::Taylor { op, gamma, trig }
            } else {
                Lhs::Operator { form, op, trig }
            }
        };
        let rhs_text = get("rhs")?;
        let rhs = if rhs_text == "geometric" {
            Rhs::Geometric
        } else {
            let (tag, body) = rhs_text.split_once(':').ok_or_else(|| invalid(format!("bad rhs `{rhs_text}`")))?;
            let body = body.trim();
            match tag.trim() {
                "poly" => Rhs::Poly(body.parse().map_err(|e| invalid(format!("{e}")))?),
                "named" => Rhs::Named(body.parse().map_err(invalid)?),
                "clausen" => {
                    let (trig, mm) = body.split_once(' ').ok_or_else(|| invalid(format!("bad clausen rhs `{body}`")))?;
                    let trig: Trig = trig.parse().map_err(invalid)?;
                    let mm = parse_linear_in_m(mm.trim(), m)
                        .filter(|v| *v >= 1)
                        .ok_or_else(|| invalid(format!("bad clausen order `{mm}`")))?;
                    Rhs::Poly(clausen_closed_form(trig, mm as u32))
                }
                other => return Err(invalid(format!("unknown rhs tag `{other}`"))),
            }
        };
        let domain = parse_domain(get("domain")?).map_err(invalid)?;
        let anomaly = match get("anomaly")? {
            "none" => None,
            p => Some(p.parse::<Parity>().map_err(invalid)?),
        };
        let pole = match get("pole")? {
            "none" => None,
            _ => Some(int_expr("pole")?),
        };
        let profile_text = get("profile")?;
        let profile = if profile_text == "exact" {
            Profile::Exact
        } else {
            let body = profile_text
                .strip_prefix("grid:")
                .ok_or_else(|| invalid(format!("bad profile `{profile_text}`")))?;
            Profile::Grid(body.trim().parse().map_err(invalid)?)
        };
        let tol = match block.get("tol") {
            Some(t) => t.parse().map_err(|_| invalid(format!("bad tol `{t}`")))?,
            None => 1e-6,
        };
        let extractable = match get("extractable")? {
            "yes" => true,
            "no" => false,
            other => return Err(invalid(format!("extractable must be yes or no, got `{other}`"))),
        };
        out.push(IdentityRecord {
            id: member_id,
            family: m.map(|_| id.clone()),
            m,
            title: block.get("title").cloned().unwrap_or_default(),
            lhs,
            rhs,
            domain,
            anomaly,
            pole,
            profile,
            tol,
            extractable,
        });
    }
    Ok(out)
}

/// `k`, `m`, `km`, `km+c` or `km-c`.
fn parse_linear_in_m(s: &str, m: Option<u32>) -> Option<i64> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(pos) = s.find('m') else {
        return s.parse().ok();
    };
    let m = m? as i64;
    let coef = match &s[..pos] {
        "" => 1,
        "-" => -1,
        c => c.parse().ok()?,
    };
    let rest = &s[pos + 1..];
    let offset = if rest.is_empty() { 0 } else { rest.strip_prefix('+').unwrap_or(rest).parse().ok()? };
    Some(coef * m + offset)
}

/// Sums of terms like `2`, `0.1`, `pi`, `2pi`, `3*pi/2`, `inf`.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty number".into());
    }
    let mut total = 0.0;
    let mut start = 0;
    let bytes = compact.as_bytes();
    for i in 1..=bytes.len() {
        let boundary =
            i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
        if boundary {
            total += parse_real_term(&compact[start..i]).ok_or_else(|| format!("cannot read `{s}` as a number"))?;
            start = i;
        }
    }
    Ok(total)
}

fn parse_real_term(t: &str) -> Option<f64> {
    let (sign, body) = match t.as_bytes().first()? {
        b'-' => (-1.0, &t[1..]),
        b'+' => (1.0, &t[1..]),
        _ => (1.0, t),
    };
    if body == "inf" {
        return Some(sign * f64::INFINITY);
    }
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, d.parse::<f64>().ok()?),
        None => (body, 1.0),
    };
    let value = match num.strip_suffix("pi") {
        Some(c) => {
            let c = c.strip_suffix('*').unwrap_or(c);
            let c = if c.is_empty() { 1.0 } else { c.parse::<f64>().ok()? };
            c * PI
        }
        None => num.parse::<f64>().ok()?,
    };
    Some(sign * value / den)
}

fn parse_domain(s: &str) -> Result<Domain, String> {
    let s = s.trim();
    let lo_closed = match s.chars().next() {
        Some('[') => true,
        Some('(') => false,
        _ => return Err(format!("domain `{s}` must start with [ or (")),
    };
    let hi_closed = match s.chars().last() {
        Some(']') => true,
        Some(')') => false,
        _ => return Err(format!("domain `{s}` must end with ] or )")),
    };
    let inner = &s[1..s.len() - 1];
    let (a, b) = inner.split_once(',').ok_or_else(|| format!("domain `{s}` needs two endpoints"))?;
    let (lo, hi) = (parse_real(a)?, parse_real(b)?);
    if lo >= hi {
        return Err(format!("empty domain `{s}`"));
    }
    Ok(Domain { lo, hi, lo_closed, hi_closed, text: s.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_registry_loads() {
        let reg = Registry::builtin();
        let ids: Vec<&str> = reg.records().iter().map(|r| r.id.as_str()).collect();
        for id in [
            "eq1", "eq2", "eq3_1", "eq3_5", "eq4_1", "eq4_5", "eq5", "eq6", "eq10", "eq17", "eq18", "eq19", "eq21_sin",
            "sec4_cos", "beta_sin_s0", "beta_cos_s0", "beta_sin_s1",
        ] {
            assert!(ids.contains(&id), "{id} missing");
        }
        assert_eq!(reg.lookup("eq3_m").len(), 5);
        assert_eq!(reg.lookup("eq2").len(), 1);
        assert!(reg.lookup("nope").is_empty());
    }

    #[test]
    fn displayed_polynomials_match_the_clausen_forms() {
        let reg = Registry::builtin();
        let rhs = |id: &str| match &reg.lookup(id)[0].rhs {
            Rhs::Poly(p) => p.clone(),
            other => panic!("{other:?}"),
        };
        assert_eq!(rhs("eq2"), clausen_closed_form(Trig::Sin, 1));
        assert_eq!(rhs("eq18"), clausen_closed_form(Trig::Cos, 1));
        assert_eq!(rhs("eq19"), clausen_closed_form(Trig::Sin, 2));
        assert_eq!(rhs("eq4_1"), rhs("eq2"));
    }

    #[test]
    fn family_members_substitute_m() {
        let reg = Registry::builtin();
        let r = &reg.lookup("eq4_3")[0];
        assert_eq!(r.m, Some(3));
        assert_eq!(r.pole, Some(4));
        let (op, trig) = r.lhs.operator().unwrap();
        assert_eq!(op, &DilationShift::zeta(5));
        assert_eq!(trig, Trig::Sin);
    }

    #[test]
    fn domains_are_verbatim() {
        let reg = Registry::builtin();
        let eq2 = &reg.lookup("eq2")[0].domain;
        assert!(eq2.contains(0.0) && eq2.contains(PI) && !eq2.contains(-0.1));
        let eq1 = &reg.lookup("eq1")[0].domain;
        assert!(!eq1.contains(0.0) && eq1.contains(PI));
        assert_eq!(eq1.text, "(0, pi]");
    }

    #[test]
    fn real_expressions() {
        assert_eq!(parse_real("pi").unwrap(), PI);
        assert_eq!(parse_real("2pi-0.1").unwrap(), 2.0 * PI - 0.1);
        assert_eq!(parse_real("-pi/2").unwrap(), -PI / 2.0);
        assert_eq!(parse_real("3*pi/2").unwrap(), 1.5 * PI);
        assert_eq!(parse_real("1e-3").unwrap(), 1e-3);
        assert_eq!(parse_real("-inf").unwrap(), f64::NEG_INFINITY);
        assert!(parse_real("pie").is_err());
        assert_eq!(parse_linear_in_m("2m-1", Some(3)), Some(5));
        assert_eq!(parse_linear_in_m("m", Some(4)), Some(4));
        assert_eq!(parse_linear_in_m("-3", None), Some(-3));
        assert_eq!(parse_linear_in_m("2m", None), None);
    }

    #[test]
    fn grid_parsing() {
        let g: Grid = "0.1:3.1:50".parse().unwrap();
        let v = g.values();
        assert_eq!(v.len(), 50);
        assert_eq!(v[0], 0.1);
        assert!((v[49] - 3.1).abs() < 1e-15);
        assert!("1:2".parse::<Grid>().is_err());
        assert!("1:2:0".parse::<Grid>().is_err());
    }

    #[test]
    fn malformed_registries() {
        assert!(matches!(Registry::parse("version = 2\n"), Err(RegistryError::Version(2))));
        assert!(matches!(Registry::parse("[identity]\nid = a\n"), Err(RegistryError::Syntax { .. })));
        let dup = format!("{REGISTRY_SOURCE}\n[identity]\nid = eq2\nlhs = geometric\nrhs = geometric\ndomain = (0, 1)\nanomaly = none\npole = none\nprofile = exact\nextractable = no\n");
        assert!(matches!(Registry::parse(&dup), Err(RegistryError::Duplicate(_))));
    }
}
