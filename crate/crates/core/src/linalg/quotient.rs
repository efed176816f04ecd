use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::elim::rref;
use crate::linalg::matrix::Matrix;
use crate::linalg::subspace::Subspace;
use crate::linalg::vector::{self, SparseVec};

/// A presentation of `numerator / denominator` inside a common ambient space.
///
/// The representatives complete the echelon basis of the denominator to one
/// of the numerator: they are reduced modulo the denominator (zero at its
/// pivots) and mutually reduced, so the class coordinate of `x` along
/// representative `j` is the entry of `x mod denominator` at that
/// representative's pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientPresentation {
    numerator: Subspace,
    denominator: Subspace,
    representatives: Vec<SparseVec>,
    rep_pivots: Vec<usize>,
}

impl QuotientPresentation {
    pub fn new(numerator: Subspace, denominator: Subspace) -> Result<Self> {
        if !denominator.is_subspace_of(&numerator)? {
            return Err(Error::NotASubspace);
        }
        let field = numerator.field();
        let n = numerator.ambient_dim();
        let (representatives, rep_pivots) = if numerator.dim() == denominator.dim() {
            (Vec::new(), Vec::new())
        } else {
            let reduced: Vec<SparseVec> =
                numerator.basis().iter().map(|v| denominator.reduce(v)).collect();
            let e = rref(field, &reduced, n);
            (e.rows, e.pivots)
        };
        debug_assert_eq!(representatives.len(), numerator.dim() - denominator.dim());
        Ok(QuotientPresentation { numerator, denominator, representatives, rep_pivots })
    }

    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        let z = Subspace::zero(field, ambient_dim);
        QuotientPresentation {
            numerator: z.clone(),
            denominator: z,
            representatives: Vec::new(),
            rep_pivots: Vec::new(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.numerator.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.numerator.ambient_dim()
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_zero(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn numerator(&self) -> &Subspace {
        &self.numerator
    }

    pub fn denominator(&self) -> &Subspace {
        &self.denominator
    }

    pub fn representatives(&self) -> &[SparseVec] {
        &self.representatives
    }

    /// Representatives as the columns of an `ambient × dim` matrix.
    pub fn representatives_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field(), self.ambient_dim(), self.representatives.clone())
            .expect("representatives fit the ambient space")
    }

    /// Class coordinates of `x`, a vector of the numerator.
    pub fn coordinates(&self, x: &SparseVec) -> Result<SparseVec> {
        let field = self.field();
        let rest = self.denominator.reduce(x);
        let coords: SparseVec = self
            .rep_pivots
            .iter()
            .enumerate()
            .filter_map(|(j, &p)| vector::get(&rest, p).map(|c| (j, c.clone())))
            .collect();
        let mut rebuilt: SparseVec = Vec::new();
        for (j, c) in &coords {
            rebuilt = vector::axpy(field, &rebuilt, c, &self.representatives[*j]);
        }
        if rebuilt != rest {
            return Err(Error::NotASubspace);
        }
        Ok(coords)
    }

    pub fn coordinates_dense(&self, x: &SparseVec) -> Result<Vec<Scalar>> {
        Ok(vector::to_dense(self.field(), &self.coordinates(x)?, self.dim()))
    }
}

pub fn quotient(v: &Subspace, w: &Subspace) -> Result<QuotientPresentation> {
    QuotientPresentation::new(v.clone(), w.clone())
}

/// The matrix of the map on class coordinates induced by `m`. Fails with
/// `NotWellDefined` unless `m` carries the source numerator into the target
/// numerator and the source denominator into the target denominator.
pub fn induced_map(
    m: &Matrix,
    src: &QuotientPresentation,
    tgt: &QuotientPresentation,
) -> Result<Matrix> {
    if m.cols() != src.ambient_dim() {
        return Err(Error::AmbientMismatch { expected: m.cols(), found: src.ambient_dim() });
    }
    if m.rows() != tgt.ambient_dim() {
        return Err(Error::AmbientMismatch { expected: m.rows(), found: tgt.ambient_dim() });
    }
    for w in src.denominator().basis() {
        if !tgt.denominator().contains(&m.apply(w)) {
            return Err(Error::NotWellDefined);
        }
    }
    let mut columns = Vec::with_capacity(src.dim());
    for r in src.representatives() {
        let image = m.apply(r);
        columns.push(tgt.coordinates(&image).map_err(|_| Error::NotWellDefined)?);
    }
    Matrix::from_columns(m.field(), tgt.dim(), columns)
}
