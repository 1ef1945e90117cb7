//! Command-line front end. [`run`] is the whole program; `main` only wires
//! it to the process.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::divmatrix::{build_matrix, consistency_check, matrix_apply};
use crate::exactnum::{bernoulli_number, euler_number, int, to_f64, Rational};
use crate::operator::{exact_value, OperatorKind};
use crate::registry::{Grid, Registry};
use crate::specfun::{dirichlet_beta, zeta_value, SpecFunError};
use crate::verify::{extract, pi_value_text, value_label, verify, Mode, VerificationReport, VerifyError};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest deviation accepted by `matrix --check`.
const MATRIX_CHECK_TOL: f64 = 1e-8;

#[derive(Parser, Debug)]
#[command(name = "zetalab", version, about = "Operator-valued zeta functions: identity checks, special values, divisibility matrix")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify a registry identity (or every member of a family such as eq3_m).
    Verify {
        id: String,
        /// a:b:points, endpoints may use pi (e.g. 0.1:pi:50).
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<Grid>,
        #[arg(long)]
        tol: Option<f64>,
        /// Compare both sides exactly in Q[pi] instead of on a grid.
        #[arg(long)]
        exact: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print zeta, beta, Bernoulli or Euler values. Complex arguments with
    /// a leading minus go after `--`.
    #[command(allow_negative_numbers = true)]
    Values {
        kind: ValueKind,
        #[arg(required = true)]
        args: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Infer special values from an identity by coefficient matching.
    Extract {
        id: String,
        /// Number of unknowns to solve for.
        #[arg(long, default_value_t = 6)]
        terms: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Export the sine-basis matrix of zeta(1 - iD), apply it, or check it.
    Matrix {
        #[arg(long)]
        size: usize,
        /// Print the matrix applied to the basis vector e_n.
        #[arg(long, conflicts_with = "check")]
        apply: Option<usize>,
        /// Compare column n with quadrature Fourier coefficients.
        #[arg(long)]
        check: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the registry.
    List {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ValueKind {
    Zeta,
    Beta,
    Bernoulli,
    Euler,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Verify { id, grid, tol, exact, format } => cmd_verify(&id, grid.as_ref(), tol, exact, format, out),
        Command::Values { kind, args, format } => cmd_values(kind, &args, format, out),
        Command::Extract { id, terms, format } => cmd_extract(&id, terms, format, out),
        Command::Matrix { size, apply, check, format } => cmd_matrix(size, apply, check, format, out),
        Command::List { format } => cmd_list(format, out),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAIL
        }
    }
}

enum CliError {
    Usage(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult = Result<i32, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn json_line(out: &mut dyn Write, value: &impl Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.into()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn cmd_verify(
    id: &str,
    grid: Option<&Grid>,
    tol: Option<f64>,
    exact: bool,
    format: Format,
    out: &mut dyn Write,
) -> CliResult {
    let records = Registry::builtin().lookup(id);
    if records.is_empty() {
        return Err(usage(format!("unknown identity `{id}` (see `zetalab list`)")));
    }
    let mut reports = Vec::new();
    for r in records {
        match verify(r, grid, tol, exact) {
            Ok(rep) => reports.push(rep),
            Err(e @ (VerifyError::GridOutsideDomain { .. } | VerifyError::NoExactForm(_))) => {
                return Err(usage(e.to_string()));
            }
            Err(e) => return Err(usage(e.to_string())),
        }
    }
    match format {
        Format::Json => json_line(out, &reports)?,
        Format::Csv => {
            writeln!(out, "id,x,lhs,rhs,deviation,method")?;
            for rep in &reports {
                for row in &rep.rows {
                    let show = |s: &Option<crate::verify::Sample>| s.map(|v| v.to_string()).unwrap_or_default();
                    writeln!(
                        out,
                        "{},{},{},{},{},{}",
                        rep.id,
                        row.x,
                        csv_field(&show(&row.lhs)),
                        csv_field(&show(&row.rhs)),
                        row.deviation,
                        row.method
                    )?;
                }
            }
        }
        Format::Text => {
            for rep in &reports {
                write_report_text(rep, out)?;
            }
        }
    }
    Ok(if reports.iter().all(|r| r.pass) { EXIT_PASS } else { EXIT_FAIL })
}

fn write_report_text(rep: &VerificationReport, out: &mut dyn Write) -> Result<(), CliError> {
    let record = Registry::builtin().lookup(&rep.id)[0];
    writeln!(out, "# {}: {} = {}  on {}", rep.id, record.lhs, record.rhs, record.domain.text)?;
    match rep.mode {
        Mode::Exact => {
            writeln!(out, "lhs: {}", rep.exact_lhs.as_deref().unwrap_or(""))?;
            writeln!(out, "rhs: {}", rep.exact_rhs.as_deref().unwrap_or(""))?;
        }
        Mode::Grid => {
            writeln!(out, "{:>22} {:>24} {:>24} {:>12}  method", "x", "lhs", "rhs", "deviation")?;
            for row in &rep.rows {
                let lhs = row.lhs.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
                let rhs = row.rhs.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
                write!(out, "{:>22} {:>24} {:>24} {:>12.3e}  {}", row.x, lhs, rhs, row.deviation, row.method)?;
                match &row.error {
                    Some(e) => writeln!(out, "  error: {e}")?,
                    None => writeln!(out)?,
                }
            }
        }
    }
    for ev in &rep.pole_events {
        let effect = serde_json::to_value(ev.effect).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        match &ev.term {
            Some(t) => writeln!(out, "pole: degree {} {effect}, term {t}", ev.degree)?,
            None => writeln!(out, "pole: degree {} {effect}", ev.degree)?,
        }
    }
    let verdict = if rep.pass { "PASS" } else { "FAIL" };
    match rep.mode {
        Mode::Exact => writeln!(out, "{verdict} {}: exact comparison, poles as expected: {}", rep.id, rep.poles_as_expected)?,
        Mode::Grid => writeln!(
            out,
            "{verdict} {}: max deviation {:.3e}, tol {:e}, {} points, poles as expected: {}",
            rep.id,
            rep.max_abs_deviation,
            rep.tolerance,
            rep.rows.len(),
            rep.poles_as_expected
        )?,
    }
    Ok(())
}

#[derive(Serialize)]
struct ValueRow {
    label: String,
    value: String,
    exact: Option<String>,
    abs_error_estimate: f64,
    method: String,
}

fn cmd_values(kind: ValueKind, args: &[String], format: Format, out: &mut dyn Write) -> CliResult {
    let mut rows = Vec::new();
    for a in args {
        rows.push(value_row(kind, a)?);
    }
    match format {
        Format::Json => json_line(out, &rows)?,
        Format::Csv => {
            writeln!(out, "label,value,exact,abs_error_estimate,method")?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    csv_field(&r.label),
                    csv_field(&r.value),
                    csv_field(r.exact.as_deref().unwrap_or("")),
                    r.abs_error_estimate,
                    r.method
                )?;
            }
        }
        Format::Text => {
            for r in &rows {
                match &r.exact {
                    Some(e) => writeln!(out, "{} = {} ({}, {e})", r.label, r.value, r.method)?,
                    None => writeln!(out, "{} = {} ({}, error <= {:.1e})", r.label, r.value, r.method, r.abs_error_estimate)?,
                }
            }
        }
    }
    Ok(EXIT_PASS)
}

fn value_row(kind: ValueKind, arg: &str) -> Result<ValueRow, CliError> {
    let name = match kind {
        ValueKind::Zeta => "zeta",
        ValueKind::Beta => "beta",
        ValueKind::Bernoulli => "bernoulli",
        ValueKind::Euler => "euler",
    };
    if matches!(kind, ValueKind::Bernoulli | ValueKind::Euler) {
        let n: usize = arg.parse().map_err(|_| usage(format!("{name} needs a nonnegative integer, got `{arg}`")))?;
        let q = match kind {
            ValueKind::Bernoulli => bernoulli_number(n),
            _ => Rational::from_integer(euler_number(n)),
        };
        return Ok(ValueRow {
            label: format!("{name}({n})"),
            value: to_f64(&q).to_string(),
            exact: Some(q.to_string()),
            abs_error_estimate: 0.0,
            method: "exact".into(),
        });
    }
    let s: Complex64 = arg
        .parse()
        .ok()
        .filter(|z: &Complex64| z.re.is_finite() && z.im.is_finite())
        .ok_or_else(|| usage(format!("cannot read `{arg}` as a number")))?;
    let op_kind = if kind == ValueKind::Zeta { OperatorKind::Zeta } else { OperatorKind::Beta };
    let label = format!("{name}({arg})");
    if s.im == 0.0 && s.re.fract() == 0.0 && s.re.abs() < 1e6 {
        let k = s.re as i64;
        if kind == ValueKind::Zeta && k == 1 {
            return Ok(ValueRow { label, value: "pole".into(), exact: None, abs_error_estimate: f64::INFINITY, method: "pole".into() });
        }
        if let Some(v) = exact_value(op_kind, &int(k)) {
            return Ok(ValueRow {
                label,
                value: v.eval_f64(std::f64::consts::PI).to_string(),
                exact: Some(pi_value_text(&v)),
                abs_error_estimate: 0.0,
                method: "exact".into(),
            });
        }
    }
    let r = match kind {
        ValueKind::Zeta => zeta_value(s),
        _ => dirichlet_beta(s),
    };
    let show = |z: Complex64| if z.im == 0.0 { z.re.to_string() } else { crate::verify::Sample::Complex { re: z.re, im: z.im }.to_string() };
    Ok(match r {
        Ok(v) => ValueRow { label, value: show(v.value), exact: None, abs_error_estimate: v.abs_error_estimate, method: "euler_maclaurin".into() },
        Err(SpecFunError::PrecisionLoss { value, estimate }) => {
            ValueRow { label, value: show(value), exact: None, abs_error_estimate: estimate, method: "precision_loss".into() }
        }
        Err(e) => return Err(usage(e.to_string())),
    })
}

#[derive(Serialize)]
struct ExtractRow {
    label: String,
    argument: i64,
    value: String,
    expected: Option<String>,
    matched: bool,
}

#[derive(Serialize)]
struct ExtractReport {
    id: String,
    anomaly: Option<String>,
    removed_singular: Vec<String>,
    annihilated_degrees: Vec<i64>,
    values: Vec<ExtractRow>,
}

fn cmd_extract(id: &str, terms: usize, format: Format, out: &mut dyn Write) -> CliResult {
    let records = Registry::builtin().lookup(id);
    if records.is_empty() {
        return Err(usage(format!("unknown identity `{id}` (see `zetalab list`)")));
    }
    let mut reports = Vec::new();
    for r in records {
        let ex = extract(r, terms).map_err(|e| usage(e.to_string()))?;
        reports.push(ExtractReport {
            id: r.id.clone(),
            anomaly: ex.anomaly.map(|a| a.to_poly().to_string()),
            removed_singular: ex
                .removed_singular
                .iter()
                .map(|t| crate::operator::Expression::singular(t.coeff.clone(), t.power).to_string())
                .collect(),
            annihilated_degrees: ex.annihilated,
            values: ex
                .values
                .iter()
                .map(|v| ExtractRow {
                    label: value_label(v.kind, v.argument),
                    argument: v.argument,
                    value: pi_value_text(&v.value),
                    expected: v.expected.as_ref().map(pi_value_text),
                    matched: v.matched,
                })
                .collect(),
        });
    }
    match format {
        Format::Json => json_line(out, &reports)?,
        Format::Csv => {
            writeln!(out, "id,label,value,expected,matched")?;
            for rep in &reports {
                for v in &rep.values {
                    writeln!(
                        out,
                        "{},{},{},{},{}",
                        rep.id,
                        v.label,
                        csv_field(&v.value),
                        csv_field(v.expected.as_deref().unwrap_or("")),
                        v.matched
                    )?;
                }
            }
        }
        Format::Text => {
            for rep in &reports {
                writeln!(out, "# {}", rep.id)?;
                if let Some(a) = &rep.anomaly {
                    writeln!(out, "anomaly removed: {a}")?;
                }
                for s in &rep.removed_singular {
                    writeln!(out, "singular part removed: {s}")?;
                }
                if !rep.annihilated_degrees.is_empty() {
                    writeln!(out, "annihilated degrees: {:?}", rep.annihilated_degrees)?;
                }
                for v in &rep.values {
                    let status = if v.matched { "matched" } else { "UNMATCHED" };
                    writeln!(out, "{} = {}  {status}", v.label, v.value)?;
                }
            }
        }
    }
    let all = reports.iter().all(|r| r.values.iter().all(|v| v.matched));
    Ok(if all { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_matrix(size: usize, apply: Option<usize>, check: Option<usize>, format: Format, out: &mut dyn Write) -> CliResult {
    let a = build_matrix(size).map_err(|e| usage(e.to_string()))?;
    if let Some(n) = apply.or(check) {
        if n == 0 || n > size {
            return Err(usage(format!("basis index {n} outside 1..={size}")));
        }
    }
    if let Some(n) = check {
        let rep = consistency_check(n, size).map_err(|e| usage(e.to_string()))?;
        match format {
            Format::Json => json_line(out, &rep)?,
            Format::Csv => {
                writeln!(out, "m,quadrature,exact")?;
                for r in &rep.rows {
                    writeln!(out, "{},{},{}", r.m, r.quadrature, r.exact)?;
                }
            }
            Format::Text => {
                for r in &rep.rows {
                    writeln!(out, "{:>4} {:>24} {:>24}", r.m, r.quadrature, r.exact)?;
                }
                writeln!(out, "column {n}, size {size}: max deviation {:.3e}", rep.max_abs_deviation)?;
            }
        }
        return Ok(if rep.max_abs_deviation < MATRIX_CHECK_TOL { EXIT_PASS } else { EXIT_FAIL });
    }
    if let Some(n) = apply {
        let e: Vec<Rational> = (1..=size).map(|m| if m == n { int(1) } else { int(0) }).collect();
        let v = matrix_apply(&a, &e).map_err(|e| usage(e.to_string()))?;
        match format {
            Format::Json => json_line(out, &v.iter().map(ToString::to_string).collect::<Vec<_>>())?,
            Format::Csv | Format::Text => {
                for x in &v {
                    writeln!(out, "{x}")?;
                }
            }
        }
        return Ok(EXIT_PASS);
    }
    match format {
        Format::Text => out.write_all(a.to_triplets().as_bytes())?,
        Format::Csv => {
            writeln!(out, "m,n,num,den")?;
            for (m, n, v) in a.entries() {
                writeln!(out, "{m},{n},{},{}", v.numer(), v.denom())?;
            }
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Entry {
                m: usize,
                n: usize,
                num: String,
                den: String,
            }
            let entries: Vec<Entry> = a
                .entries()
                .map(|(m, n, v)| Entry { m, n, num: v.numer().to_string(), den: v.denom().to_string() })
                .collect();
            json_line(out, &entries)?;
        }
    }
    Ok(EXIT_PASS)
}

#[derive(Serialize)]
struct ListRow {
    id: String,
    lhs: String,
    rhs: String,
    domain: String,
    anomaly: Option<String>,
    pole: Option<i64>,
    profile: String,
    extractable: bool,
}

fn cmd_list(format: Format, out: &mut dyn Write) -> CliResult {
    let rows: Vec<ListRow> = Registry::builtin()
        .records()
        .iter()
        .map(|r| ListRow {
            id: r.id.clone(),
            lhs: r.lhs.to_string(),
            rhs: r.rhs.to_string(),
            domain: r.domain.text.clone(),
            anomaly: r.anomaly.map(|p| p.to_string()),
            pole: r.pole,
            profile: match &r.profile {
                crate::registry::Profile::Exact => "exact".into(),
                crate::registry::Profile::Grid(g) => format!("grid {}:{}:{}", g.a, g.b, g.points),
            },
            extractable: r.extractable,
        })
        .collect();
    match format {
        Format::Json => json_line(out, &rows)?,
        Format::Csv => {
            writeln!(out, "id,lhs,rhs,domain,anomaly,pole,profile,extractable")?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    r.id,
                    csv_field(&r.lhs),
                    csv_field(&r.rhs),
                    csv_field(&r.domain),
                    r.anomaly.as_deref().unwrap_or("none"),
                    r.pole.map_or("none".to_string(), |p| p.to_string()),
                    r.profile,
                    r.extractable
                )?;
            }
        }
        Format::Text => {
            for r in &rows {
                writeln!(out, "{:<12} {} = {}  on {}", r.id, r.lhs, r.rhs, r.domain)?;
            }
        }
    }
    Ok(EXIT_PASS)
}
