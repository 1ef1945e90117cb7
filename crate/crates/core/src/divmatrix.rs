//! ζ(1 − iD) in the sine basis {√(2/π) sin(nx)} on [0, π]: the entry
//! (m, n) is n/m when n divides m and zero otherwise.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{to_f64, Rational};
use crate::quad::composite_gauss_legendre;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix size must be at least 1")]
    EmptyMatrix,
    #[error("vector has length {got}, matrix size is {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("column {column} outside 1..={size}")]
    ColumnOutOfRange { column: usize, size: usize },
}

/// Sparse, exact, 1-indexed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityMatrix {
    size: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl DivisibilityMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, m: usize, n: usize) -> Option<&Rational> {
        self.entries.get(&(m, n))
    }

    /// Entries in (m, n) order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(m, n), v)| (m, n, v))
    }

    pub fn column(&self, n: usize) -> Result<Vec<Rational>, MatrixError> {
        if n == 0 || n > self.size {
            return Err(MatrixError::ColumnOutOfRange { column: n, size: self.size });
        }
        Ok((1..=self.size).map(|m| self.get(m, n).cloned().unwrap_or_else(Rational::zero)).collect())
    }

    /// One `m n num den` line per entry, sorted by (m, n).
    pub fn to_triplets(&self) -> String {
        let mut out = String::new();
        for (m, n, v) in self.entries() {
            writeln!(out, "{m} {n} {} {}", v.numer(), v.denom()).expect("writing to a String");
        }
        out
    }
}

/// Enumerates multiples, so the cost is O(M log M).
pub fn build_matrix(size: usize) -> Result<DivisibilityMatrix, MatrixError> {
    if size == 0 {
        return Err(MatrixError::EmptyMatrix);
    }
    let mut entries = BTreeMap::new();
    for n in 1..=size {
        for m in (n..=size).step_by(n) {
            entries.insert((m, n), Rational::new(n.into(), m.into()));
        }
    }
    Ok(DivisibilityMatrix { size, entries })
}

pub fn matrix_apply(a: &DivisibilityMatrix, v: &[Rational]) -> Result<Vec<Rational>, MatrixError> {
    if v.len() != a.size {
        return Err(MatrixError::DimensionMismatch { expected: a.size, got: v.len() });
    }
    let mut out = vec![Rational::zero(); a.size];
    for (m, n, x) in a.entries() {
        if !v[n - 1].is_zero() {
            out[m - 1] += x * &v[n - 1];
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyRow {
    pub m: usize,
    pub quadrature: f64,
    pub exact: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyReport {
    pub column: usize,
    pub size: usize,
    pub rows: Vec<ConsistencyRow>,
    pub max_abs_deviation: f64,
}

/// Sawtooth at frequency n, Σ_k sin(knx)/k, as a closed form.
fn sawtooth(n: usize, x: f64) -> f64 {
    let y = (n as f64 * x).rem_euclid(2.0 * PI);
    if y == 0.0 { 0.0 } else { 0.5 * (PI - y) }
}

/// Compares column n with the Fourier sine coefficients of
/// ζ(1 − iD) sin(nx) = Σ_k sin(knx)/k, integrated piecewise between the
/// jumps at 2πj/n.
pub fn consistency_check(n: usize, size: usize) -> Result<ConsistencyReport, MatrixError> {
    let a = build_matrix(size)?;
    let column = a.column(n)?;
    let mut breaks: Vec<f64> = (0..).map(|j| 2.0 * PI * j as f64 / n as f64).take_while(|&b| b < PI).collect();
    breaks.push(PI);
    let panels = 4 + 2 * size / breaks.len();
    let rows: Vec<ConsistencyRow> = (1..=size)
        .map(|m| {
            let integral = composite_gauss_legendre(|x| sawtooth(n, x) * (m as f64 * x).sin(), &breaks, panels, 20);
            ConsistencyRow { m, quadrature: 2.0 / PI * integral, exact: to_f64(&column[m - 1]) }
        })
        .collect();
    let max_abs_deviation = rows.iter().map(|r| (r.quadrature - r.exact).abs()).fold(0.0, f64::max);
    Ok(ConsistencyReport { column: n, size, rows, max_abs_deviation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn unit(size: usize, n: usize) -> Vec<Rational> {
        (1..=size).map(|m| if m == n { int(1) } else { int(0) }).collect()
    }

    #[test]
    fn small_matrices() {
        let a = build_matrix(1).unwrap();
        assert_eq!(a.nnz(), 1);
        assert_eq!(a.get(1, 1), Some(&int(1)));
        let a = build_matrix(6).unwrap();
        assert_eq!(a.get(6, 3), Some(&rat(1, 2)));
        assert_eq!(a.get(6, 4), None);
        assert_eq!(a.nnz(), 14);
        assert_eq!(a.to_triplets().lines().count(), 14);
        assert!(a.to_triplets().starts_with("1 1 1 1\n2 1 1 2\n2 2 1 1\n"));
        assert_eq!(build_matrix(0), Err(MatrixError::EmptyMatrix));
    }

    #[test]
    fn apply() {
        let a = build_matrix(4).unwrap();
        assert_eq!(matrix_apply(&a, &unit(4, 1)).unwrap(), vec![int(1), rat(1, 2), rat(1, 3), rat(1, 4)]);
        assert_eq!(matrix_apply(&a, &[int(0), int(0), int(0), int(0)]).unwrap(), vec![int(0); 4]);
        let a6 = build_matrix(6).unwrap();
        assert_eq!(matrix_apply(&a6, &unit(6, 2)).unwrap(), vec![int(0), int(1), int(0), rat(1, 2), int(0), rat(1, 3)]);
        assert_eq!(matrix_apply(&a, &[int(1)]), Err(MatrixError::DimensionMismatch { expected: 4, got: 1 }));
    }

    #[test]
    fn lower_unit_triangular() {
        let a = build_matrix(40).unwrap();
        for (m, n, v) in a.entries() {
            assert!(n <= m);
            if m == n {
                assert_eq!(v, &int(1));
            }
        }
    }

    #[test]
    fn square_gives_divisor_counts() {
        let size = 64;
        let a = build_matrix(size).unwrap();
        let col = matrix_apply(&a, &matrix_apply(&a, &unit(size, 1)).unwrap()).unwrap();
        for m in 1..=size {
            let d = (1..=m).filter(|k| m % k == 0).count() as i64;
            assert_eq!(col[m - 1], rat(d, m as i64), "m = {m}");
        }
    }

    #[test]
    fn quadrature_agrees_with_columns() {
        let r = consistency_check(1, 32).unwrap();
        assert!(r.max_abs_deviation < 1e-8, "{}", r.max_abs_deviation);
        let r = consistency_check(2, 32).unwrap();
        assert!(r.max_abs_deviation < 1e-8);
        for row in &r.rows {
            assert_eq!(row.exact != 0.0, row.m % 2 == 0);
        }
        let r = consistency_check(1, 1).unwrap();
        assert!((r.rows[0].quadrature - 1.0).abs() < 1e-12);
        assert!(consistency_check(3, 2).is_err());
    }
}
