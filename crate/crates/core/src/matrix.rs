//! Sparse matrices over a semiring.
//!
//! A [`SparseMatrix`] stores no zeros and is indexed by positions in two
//! [`Space`]s, each a named mode with ordered labels. Rows are kept as
//! ordered maps so iteration, accumulation, and the text dump are fully
//! deterministic; the product walks rows of the left operand and, per
//! nonzero, the matching row of the right operand.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

use crate::semiring::Semiring;

/// A named index space: the mode it ranges over and one label per position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Space {
    pub mode: String,
    pub labels: Vec<String>,
}

impl Space {
    pub fn new(mode: impl Into<String>, labels: Vec<String>) -> Self {
        Space {
            mode: mode.into(),
            labels,
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Spaces are compatible for composition when mode and dimension agree.
    pub fn compatible(&self, other: &Space) -> bool {
        self.mode == other.mode && self.dim() == other.dim()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error(
        "space mismatch in product: left columns are {left_mode}:{left_dim}, right rows are {right_mode}:{right_dim}"
    )]
    SpaceMismatch {
        left_mode: String,
        left_dim: usize,
        right_mode: String,
        right_dim: usize,
    },
    #[error("entry ({row},{col}) is outside a {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
}

/// A sparse row-major matrix; absent entries are the semiring zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    row_space: Space,
    col_space: Space,
    rows: Vec<BTreeMap<usize, f64>>,
}

impl SparseMatrix {
    pub fn zeros(row_space: Space, col_space: Space) -> Self {
        let rows = vec![BTreeMap::new(); row_space.dim()];
        SparseMatrix {
            row_space,
            col_space,
            rows,
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets, combining repeats
    /// with the semiring addition and dropping semiring zeros.
    pub fn from_triplets(
        row_space: Space,
        col_space: Space,
        triplets: impl IntoIterator<Item = (usize, usize, f64)>,
        sr: &Semiring,
    ) -> Result<Self, MatrixError> {
        let mut m = SparseMatrix::zeros(row_space, col_space);
        for (r, c, v) in triplets {
            m.accumulate(r, c, v, sr)?;
        }
        m.drop_zeros(sr);
        Ok(m)
    }

    pub fn identity(space: Space, sr: &Semiring) -> Self {
        let mut m = SparseMatrix::zeros(space.clone(), space);
        let one = sr.one();
        if !sr.is_zero(one) {
            for (i, row) in m.rows.iter_mut().enumerate() {
                row.insert(i, one);
            }
        }
        m
    }

    pub fn row_space(&self) -> &Space {
        &self.row_space
    }

    pub fn col_space(&self) -> &Space {
        &self.col_space
    }

    pub fn n_rows(&self) -> usize {
        self.row_space.dim()
    }

    pub fn n_cols(&self) -> usize {
        self.col_space.dim()
    }

    /// Stored value at `(r, c)`; `None` stands for the semiring zero.
    pub fn get(&self, r: usize, c: usize) -> Option<f64> {
        self.rows.get(r).and_then(|row| row.get(&c).copied())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(&c, &v)| (r, c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|row| row.len()).sum()
    }

    fn accumulate(&mut self, r: usize, c: usize, v: f64, sr: &Semiring) -> Result<(), MatrixError> {
        if r >= self.n_rows() || c >= self.n_cols() {
            return Err(MatrixError::IndexOutOfRange {
                row: r,
                col: c,
                rows: self.n_rows(),
                cols: self.n_cols(),
            });
        }
        let row = &mut self.rows[r];
        match row.get_mut(&c) {
            Some(slot) => *slot = sr.add(*slot, v),
            None => {
                row.insert(c, v);
            }
        }
        Ok(())
    }

    fn drop_zeros(&mut self, sr: &Semiring) {
        for row in &mut self.rows {
            row.retain(|_, v| !sr.is_zero(*v));
        }
    }

    /// Transpose; an involution that swaps the two spaces.
    pub fn transpose(&self) -> SparseMatrix {
        let mut rows = vec![BTreeMap::new(); self.n_cols()];
        for (r, c, v) in self.entries() {
            rows[c].insert(r, v);
        }
        SparseMatrix {
            row_space: self.col_space.clone(),
            col_space: self.row_space.clone(),
            rows,
        }
    }

    /// Semiring matrix product. The left column space must match the right
    /// row space in mode and dimension.
    pub fn matmul(&self, other: &SparseMatrix, sr: &Semiring) -> Result<SparseMatrix, MatrixError> {
        if !self.col_space.compatible(&other.row_space) {
            return Err(MatrixError::SpaceMismatch {
                left_mode: self.col_space.mode.clone(),
                left_dim: self.col_space.dim(),
                right_mode: other.row_space.mode.clone(),
                right_dim: other.row_space.dim(),
            });
        }
        let mut rows: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); self.n_rows()];
        for (i, row) in self.rows.iter().enumerate() {
            let acc = &mut rows[i];
            for (&k, &a) in row {
                for (&j, &b) in &other.rows[k] {
                    let term = sr.mul(a, b);
                    match acc.get_mut(&j) {
                        Some(slot) => *slot = sr.add(*slot, term),
                        None => {
                            acc.insert(j, term);
                        }
                    }
                }
            }
            acc.retain(|_, v| !sr.is_zero(*v));
        }
        Ok(SparseMatrix {
            row_space: self.row_space.clone(),
            col_space: other.col_space.clone(),
            rows,
        })
    }

    /// Text dump: a header naming both spaces, then one line per stored
    /// entry, `row-label col-label value`, sorted lexicographically.
    pub fn dump(&self) -> String {
        let mut lines: Vec<(String, String, f64)> = self
            .entries()
            .map(|(r, c, v)| {
                (
                    self.row_space.labels[r].clone(),
                    self.col_space.labels[c].clone(),
                    v,
                )
            })
            .collect();
        lines.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)).then(a.2.total_cmp(&b.2)));
        let mut out = format!(
            "rows={}:{} cols={}:{}\n",
            self.row_space.mode,
            self.n_rows(),
            self.col_space.mode,
            self.n_cols()
        );
        for (r, c, v) in lines {
            let _ = writeln!(out, "{r} {c} {v}");
        }
        out
    }
}
