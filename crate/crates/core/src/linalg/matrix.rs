use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::elim::{free_columns, rref};
use crate::linalg::subspace::Subspace;
use crate::linalg::vector::{self, SparseVec};

/// A sparse matrix stored by columns. Maps act on the left: a `rows × cols`
/// matrix sends `k^cols` to `k^rows`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, columns: alloc::vec![Vec::new(); cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let columns = (0..n).map(|i| vector::unit(field, i)).collect();
        Matrix { field, rows: n, cols: n, columns }
    }

    /// Builds a matrix from sparse columns; entries are normalized.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: Vec<SparseVec>) -> Result<Self> {
        let cols = columns.len();
        let columns: Vec<SparseVec> =
            columns.into_iter().map(|c| vector::normalize(field, c)).collect();
        for c in &columns {
            if let Some((i, _)) = c.last() {
                if *i >= rows {
                    return Err(Error::AmbientMismatch { expected: rows, found: i + 1 });
                }
            }
            if c.iter().any(|(_, x)| !field.contains(x)) {
                return Err(Error::MixedFields);
            }
        }
        Ok(Matrix { field, rows, cols, columns })
    }

    pub fn from_triplets(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Self> {
        let mut columns = alloc::vec![Vec::new(); cols];
        for (r, c, x) in triplets {
            if c >= cols {
                return Err(Error::AmbientMismatch { expected: cols, found: c + 1 });
            }
            columns[c].push((r, x));
        }
        Matrix::from_columns(field, rows, columns)
    }

    /// Row-major integer entries; convenient for small literal matrices.
    pub fn from_rows_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let triplets = rows.iter().enumerate().flat_map(|(i, r)| {
            assert_eq!(r.len(), cols, "ragged rows");
            r.iter().enumerate().map(move |(j, x)| (i, j, field.from_i64(*x)))
        });
        Matrix::from_triplets(field, rows.len(), cols, triplets).expect("shape is consistent")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        vector::get(&self.columns[c], r).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// Nonzero entries as `(row, col, value)`, ordered by row then column.
    pub fn triplets(&self) -> Vec<(usize, usize, Scalar)> {
        let mut out: Vec<_> = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, x)| (*i, j, x.clone())))
            .collect();
        out.sort_by_key(|(i, j, _)| (*i, *j));
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut columns = alloc::vec![Vec::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, x) in c {
                columns[*i].push((j, x.clone()));
            }
        }
        Matrix { field: self.field, rows: self.cols, cols: self.rows, columns }
    }

    /// `self · v` for a sparse vector of length `cols`.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc: SparseVec = Vec::new();
        for (j, x) in v {
            acc.extend(self.columns[*j].iter().map(|(i, y)| (*i, self.field.mul(x, y))));
        }
        vector::normalize(self.field, acc)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        if self.cols != other.rows {
            return Err(Error::AmbientMismatch { expected: self.cols, found: other.rows });
        }
        let columns = other.columns.iter().map(|c| self.apply(c)).collect();
        Ok(Matrix { field: self.field, rows: self.rows, cols: other.cols, columns })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.combine(other, &self.field.one())
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.combine(other, &self.field.from_i64(-1))
    }

    fn combine(&self, other: &Matrix, coeff: &Scalar) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::AmbientMismatch { expected: self.cols, found: other.cols });
        }
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| vector::axpy(self.field, a, coeff, b))
            .collect();
        Ok(Matrix { field: self.field, rows: self.rows, cols: self.cols, columns })
    }

    pub fn scale(&self, a: &Scalar) -> Matrix {
        let columns = self.columns.iter().map(|c| vector::scale(self.field, a, c)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, columns }
    }

    /// `[self | other]`
    pub fn hcat(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::AmbientMismatch { expected: self.rows, found: other.rows });
        }
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        Ok(Matrix { field: self.field, rows: self.rows, cols: columns.len(), columns })
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let columns = cols.iter().map(|&j| self.columns[j].clone()).collect();
        Matrix { field: self.field, rows: self.rows, cols: cols.len(), columns }
    }

    /// Keeps the listed rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut position = alloc::vec![usize::MAX; self.rows];
        for (k, &r) in rows.iter().enumerate() {
            position[r] = k;
        }
        let columns = self
            .columns
            .iter()
            .map(|c| {
                let mut v: SparseVec = c
                    .iter()
                    .filter(|(i, _)| position[*i] != usize::MAX)
                    .map(|(i, x)| (position[*i], x.clone()))
                    .collect();
                v.sort_by_key(|(i, _)| *i);
                v
            })
            .collect();
        Matrix { field: self.field, rows: rows.len(), cols: self.cols, columns }
    }

    pub fn rank(&self) -> usize {
        rref(self.field, &self.columns, self.rows).rank()
    }

    /// Reduced column echelon form: the first `rank` columns are the canonical
    /// basis of the column span, the remaining columns are zero.
    pub fn echelonize(&self) -> (Matrix, usize) {
        let e = rref(self.field, &self.columns, self.rows);
        let rank = e.rank();
        let mut columns = e.rows;
        columns.resize(self.cols, Vec::new());
        (Matrix { field: self.field, rows: self.rows, cols: self.cols, columns }, rank)
    }

    pub fn kernel(&self) -> Subspace {
        let t = self.transpose();
        let e = rref(self.field, t.columns(), self.cols);
        let minus_one = self.field.from_i64(-1);
        let generators: Vec<SparseVec> = free_columns(&e.pivots, self.cols)
            .into_iter()
            .map(|f| {
                let mut v: SparseVec = vec_entry(self.field.one(), f);
                for (row, &piv) in e.rows.iter().zip(&e.pivots) {
                    if let Some(c) = vector::get(row, f) {
                        v.push((piv, self.field.mul(&minus_one, c)));
                    }
                }
                vector::normalize(self.field, v)
            })
            .collect();
        Subspace::span_unchecked(self.field, self.cols, &generators)
    }

    pub fn image(&self) -> Subspace {
        Subspace::span_unchecked(self.field, self.rows, &self.columns)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

fn vec_entry(x: Scalar, i: usize) -> SparseVec {
    alloc::vec![(i, x)]
}

/// Renders like `| 1 0 |` per row, columns left-aligned; an empty matrix
/// renders as `0`.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return f.write_str("0");
        }
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| alloc::format!("{}", self.get(i, j))).collect())
            .collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(1))
            .collect();
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            f.write_str("|")?;
            for (cell, w) in row.iter().zip(&widths) {
                write!(f, " {cell:<w$}")?;
            }
            f.write_str(" |")?;
        }
        Ok(())
    }
}
