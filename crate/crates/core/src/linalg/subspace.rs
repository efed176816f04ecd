use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::elim::{rref, Echelon};
use crate::linalg::matrix::Matrix;
use crate::linalg::vector::{self, SparseVec};

/// A subspace of `k^n` held in canonical form: the reduced echelon basis of
/// its span. Two values are equal iff they are the same subspace.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: FieldSpec,
    ambient_dim: usize,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace { field, ambient_dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            basis: (0..ambient_dim).map(|i| vector::unit(field, i)).collect(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of coordinate vectors `e_i` for the listed indices.
    pub fn coordinate(field: FieldSpec, ambient_dim: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        assert!(idx.last().is_none_or(|&i| i < ambient_dim), "index out of range");
        Subspace {
            field,
            ambient_dim,
            basis: idx.iter().map(|&i| vector::unit(field, i)).collect(),
            pivots: idx,
        }
    }

    pub fn span(field: FieldSpec, ambient_dim: usize, vectors: &[SparseVec]) -> Result<Self> {
        for v in vectors {
            if let Some((i, _)) = v.last() {
                if *i >= ambient_dim {
                    return Err(Error::AmbientMismatch { expected: ambient_dim, found: i + 1 });
                }
            }
        }
        let vectors: Vec<SparseVec> = vectors.iter().map(|v| vector::normalize(field, v.clone())).collect();
        Ok(Subspace::span_unchecked(field, ambient_dim, &vectors))
    }

    pub(crate) fn span_unchecked(field: FieldSpec, ambient_dim: usize, vectors: &[SparseVec]) -> Self {
        let Echelon { rows, pivots } = rref(field, vectors, ambient_dim);
        Subspace { field, ambient_dim, basis: rows, pivots }
    }

    /// Row-major integer spanning vectors, for literals in tests and examples.
    pub fn from_rows_i64(field: FieldSpec, ambient_dim: usize, rows: &[&[i64]]) -> Self {
        let vs: Vec<SparseVec> = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), ambient_dim);
                vector::from_dense(field, &r.iter().map(|x| field.from_i64(*x)).collect::<Vec<_>>())
            })
            .collect();
        Subspace::span_unchecked(field, ambient_dim, &vs)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient_dim
    }

    /// Canonical basis vectors, pivots strictly increasing.
    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The basis as an `ambient_dim × dim` matrix (reduced column echelon form).
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.ambient_dim, self.basis.clone())
            .expect("basis vectors fit the ambient space")
    }

    /// `v` minus its component along the pivots; zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (row, &piv) in self.basis.iter().zip(&self.pivots) {
            let Some(c) = vector::get(&out, piv) else { continue };
            let c = self.field.neg(c);
            out = vector::axpy(self.field, &out, &c, row);
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Coefficients of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        let coeffs: Vec<Scalar> = self
            .pivots
            .iter()
            .map(|&p| vector::get(v, p).cloned().unwrap_or_else(|| self.field.zero()))
            .collect();
        let mut rebuilt: SparseVec = Vec::new();
        for (c, row) in coeffs.iter().zip(&self.basis) {
            rebuilt = vector::axpy(self.field, &rebuilt, c, row);
        }
        (rebuilt == *v).then_some(coeffs)
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch { expected: self.ambient_dim, found: other.ambient_dim });
        }
        Ok(())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check(other)?;
        Ok(self.dim() <= other.dim() && self.basis.iter().all(|v| other.contains(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        if self.is_zero() || other.is_full() {
            return Ok(other.clone());
        }
        if other.is_zero() || self.is_full() {
            return Ok(self.clone());
        }
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Ok(Subspace::span_unchecked(self.field, self.ambient_dim, &vs))
    }

    /// Intersection, computed as the image of the smaller basis restricted to
    /// the preimage of the larger subspace.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        if self.is_zero() || other.is_full() {
            return Ok(self.clone());
        }
        if other.is_zero() || self.is_full() {
            return Ok(other.clone());
        }
        let (small, large) = if self.dim() <= other.dim() { (self, other) } else { (other, self) };
        let b = small.basis_matrix();
        let coeffs = preimage(&b, large)?;
        let vs: Vec<SparseVec> = coeffs.basis().iter().map(|c| b.apply(c)).collect();
        Ok(Subspace::span_unchecked(self.field, self.ambient_dim, &vs))
    }

    /// Image of this subspace under `m`.
    pub fn map(&self, m: &Matrix) -> Result<Subspace> {
        if m.cols() != self.ambient_dim {
            return Err(Error::AmbientMismatch { expected: m.cols(), found: self.ambient_dim });
        }
        let vs: Vec<SparseVec> = self.basis.iter().map(|v| m.apply(v)).collect();
        Ok(Subspace::span_unchecked(self.field, m.rows(), &vs))
    }
}

pub fn kernel(m: &Matrix) -> Subspace {
    m.kernel()
}

pub fn image(m: &Matrix) -> Subspace {
    m.image()
}

/// `{v : m·v ∈ w}`. Each column of `m` is reduced modulo `w`, which realizes
/// the projection onto `k^rows / w`; the preimage is the kernel of that map.
pub fn preimage(m: &Matrix, w: &Subspace) -> Result<Subspace> {
    if w.ambient_dim() != m.rows() {
        return Err(Error::AmbientMismatch { expected: m.rows(), found: w.ambient_dim() });
    }
    if w.field() != m.field() {
        return Err(Error::MixedFields);
    }
    if w.is_full() {
        return Ok(Subspace::full(m.field(), m.cols()));
    }
    if w.is_zero() {
        return Ok(m.kernel());
    }
    let reduced: Vec<SparseVec> = m.columns().iter().map(|c| w.reduce(c)).collect();
    Ok(Matrix::from_columns(m.field(), m.rows(), reduced)?.kernel())
}
