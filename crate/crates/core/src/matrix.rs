//! Dense rational matrices and their JSON / CSV text forms.

use std::fmt::Write as _;
use std::ops::Index;

use thiserror::Error;

use crate::rational::{parse_rational, ParseRationalError, Rational};

#[derive(Debug, Error)]
pub enum MatrixError {
    #[error("matrix must have at least one row and one column")]
    Empty,
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, found: usize, expected: usize },
    #[error("entry at row {row}, column {col}: {source}")]
    Entry {
        row: usize,
        col: usize,
        #[source]
        source: ParseRationalError,
    },
    #[error("invalid matrix JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// Row-major dense matrix of canonical rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || cols == 0 {
            return Err(MatrixError::Empty);
        }
        let n_rows = rows.len();
        let mut data = Vec::with_capacity(n_rows * cols);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(MatrixError::Ragged { row: r, found: row.len(), expected: cols });
            }
            data.extend(row);
        }
        Ok(ExactMatrix { rows: n_rows, cols, data })
    }

    /// Builds an `n x n` matrix from an entry function. Panics if `n == 0`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        assert!(n > 0, "matrix dimension must be positive");
        let data = (0..n * n).map(|i| f(i / n, i % n)).collect();
        ExactMatrix { rows: n, cols: n, data }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        ExactMatrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| Rational::from_integer(v)).collect())
                .collect(),
        )
        .expect("well-formed integer matrix")
    }

    pub fn identity(n: usize) -> Self {
        ExactMatrix::from_fn(n, |r, c| if r == c { Rational::one() } else { Rational::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    pub fn scale_row(&mut self, r: usize, factor: &Rational) {
        for c in 0..self.cols {
            self.data[r * self.cols + c] *= factor;
        }
    }

    pub fn max_entry_bits(&self) -> u64 {
        self.data.iter().map(Rational::bits).max().unwrap_or(0)
    }

    /// JSON array of arrays of rational strings, compact.
    pub fn to_json(&self) -> String {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(ToString::to_string).collect())
            .collect();
        serde_json::to_string(&rows).expect("string matrix serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, MatrixError> {
        let raw: Vec<Vec<String>> = serde_json::from_str(text)?;
        parse_grid(raw.iter().map(|row| row.iter().map(String::as_str).collect()).collect())
    }

    /// One line per row, comma-separated canonical text, each line ending in `\n`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in 0..self.rows {
            for (c, value) in self.row(r).iter().enumerate() {
                if c > 0 {
                    out.push(',');
                }
                write!(out, "{value}").expect("write to String");
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, MatrixError> {
        parse_grid(text.lines().map(|line| line.split(',').collect()).collect())
    }
}

fn parse_grid(raw: Vec<Vec<&str>>) -> Result<ExactMatrix, MatrixError> {
    let rows = raw
        .into_iter()
        .enumerate()
        .map(|(r, row)| {
            row.into_iter()
                .enumerate()
                .map(|(c, cell)| {
                    parse_rational(cell).map_err(|source| MatrixError::Entry { row: r, col: c, source })
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    ExactMatrix::from_rows(rows)
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = Rational;

    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        self.get(r, c)
    }
}

impl std::fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries((0..self.rows).map(|r| self.row(r))).finish()
    }
}
