//! Gaussian elimination kernels.
//!
//! Everything in the linear-algebra layer bottoms out in [`rref`]: the
//! reduced row echelon form of a list of vectors, i.e. the canonical basis of
//! their span. Inputs are converted once into a typed representation
//! (`u32` residues or `BigRational`) so the inner loops avoid dispatching on
//! the field per operation.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Zero;

use crate::field::{inv_mod, FieldSpec, Scalar};
use crate::linalg::vector::SparseVec;

/// Ambient dimensions below this use dense elimination; larger ones use the
/// incremental sparse reducer.
pub const DENSE_THRESHOLD: usize = 64;

pub(crate) trait Arith {
    type E: Clone + PartialEq;
    /// Take the first nonzero candidate as pivot instead of scanning for the cheapest.
    const FIRST_PIVOT: bool;

    fn zero(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// `y - c·x`
    fn sub_mul(&self, y: &Self::E, c: &Self::E, x: &Self::E) -> Self::E;
    fn cost(&self, a: &Self::E) -> u64;
    fn lift(&self, s: &Scalar) -> Self::E;
    fn lower(&self, e: Self::E) -> Scalar;
}

pub(crate) struct ModArith {
    p: u64,
}

impl Arith for ModArith {
    type E = u32;
    const FIRST_PIVOT: bool = true;

    fn zero(&self) -> u32 {
        0
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u32) -> u32 {
        inv_mod(*a, self.p as u32)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p) as u32
    }
    fn sub_mul(&self, y: &u32, c: &u32, x: &u32) -> u32 {
        let prod = (*c as u64 * *x as u64) % self.p;
        ((*y as u64 + self.p - prod) % self.p) as u32
    }
    fn cost(&self, _: &u32) -> u64 {
        0
    }
    fn lift(&self, s: &Scalar) -> u32 {
        match s {
            Scalar::Residue(v) => *v,
            Scalar::Rational(_) => panic!("rational scalar in a prime field"),
        }
    }
    fn lower(&self, e: u32) -> Scalar {
        Scalar::Residue(e)
    }
}

pub(crate) struct RatArith;

impl Arith for RatArith {
    type E = BigRational;
    const FIRST_PIVOT: bool = false;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn sub_mul(&self, y: &BigRational, c: &BigRational, x: &BigRational) -> BigRational {
        y - c * x
    }
    fn cost(&self, a: &BigRational) -> u64 {
        a.numer().bits() + a.denom().bits()
    }
    fn lift(&self, s: &Scalar) -> BigRational {
        match s {
            Scalar::Rational(q) => q.clone(),
            Scalar::Residue(_) => panic!("residue in the rationals"),
        }
    }
    fn lower(&self, e: BigRational) -> Scalar {
        Scalar::Rational(e)
    }
}

/// Runs `$body` with `$a` bound to the typed arithmetic of `$field`.
macro_rules! with_arith {
    ($field:expr, $a:ident => $body:expr) => {
        match $field {
            $crate::field::FieldSpec::Rationals => {
                let $a = &$crate::linalg::elim::RatArith;
                $body
            }
            $crate::field::FieldSpec::Prime(p) => {
                let $a = &$crate::linalg::elim::ModArith { p: p as u64 };
                $body
            }
        }
    };
}

/// Canonical basis of a span: rows in reduced echelon form, with strictly
/// increasing pivot columns and a `1` at each pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub rows: Vec<SparseVec>,
    pub pivots: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Auto,
    Dense,
    Sparse,
}

/// Reduced row echelon form of the span of `vectors` (each of length `dim`).
pub fn rref(field: FieldSpec, vectors: &[SparseVec], dim: usize) -> Echelon {
    rref_with(field, vectors, dim, Strategy::Auto)
}

pub fn rref_with(field: FieldSpec, vectors: &[SparseVec], dim: usize, strategy: Strategy) -> Echelon {
    let dense = match strategy {
        Strategy::Auto => dim < DENSE_THRESHOLD,
        Strategy::Dense => true,
        Strategy::Sparse => false,
    };
    with_arith!(field, a => {
        let (rows, pivots) = if dense {
            rref_dense(a, vectors, dim)
        } else {
            rref_sparse(a, vectors, dim)
        };
        Echelon { rows, pivots }
    })
}

fn rref_dense<A: Arith>(a: &A, vectors: &[SparseVec], dim: usize) -> (Vec<SparseVec>, Vec<usize>) {
    let mut m: Vec<Vec<A::E>> = vectors
        .iter()
        .filter(|v| !v.is_empty())
        .map(|v| {
            let mut row = alloc::vec![a.zero(); dim];
            for (i, x) in v {
                row[*i] = a.lift(x);
            }
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..dim {
        if rank == m.len() {
            break;
        }
        let mut best: Option<(usize, u64)> = None;
        for (i, row) in m.iter().enumerate().skip(rank) {
            if a.is_zero(&row[col]) {
                continue;
            }
            let c = a.cost(&row[col]);
            if best.is_none_or(|(_, bc)| c < bc) {
                best = Some((i, c));
                if A::FIRST_PIVOT {
                    break;
                }
            }
        }
        let Some((i, _)) = best else { continue };
        m.swap(rank, i);
        let inv = a.inv(&m[rank][col]);
        for x in m[rank][col..].iter_mut() {
            if !a.is_zero(x) {
                *x = a.mul(&inv, x);
            }
        }
        let (head, tail) = m.split_at_mut(rank);
        let (pivot_row, rest) = tail.split_first_mut().unwrap();
        for row in head.iter_mut().chain(rest.iter_mut()) {
            if a.is_zero(&row[col]) {
                continue;
            }
            let c = row[col].clone();
            for j in col..dim {
                if !a.is_zero(&pivot_row[j]) {
                    row[j] = a.sub_mul(&row[j], &c, &pivot_row[j]);
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    m.truncate(rank);
    let rows = m
        .into_iter()
        .map(|row| {
            row.into_iter()
                .enumerate()
                .filter(|(_, x)| !a.is_zero(x))
                .map(|(i, x)| (i, a.lower(x)))
                .collect()
        })
        .collect();
    (rows, pivots)
}

/// Incremental reducer keeping a fully reduced basis keyed by pivot.
fn rref_sparse<A: Arith>(a: &A, vectors: &[SparseVec], dim: usize) -> (Vec<SparseVec>, Vec<usize>) {
    let mut basis: BTreeMap<usize, Vec<(usize, A::E)>> = BTreeMap::new();
    let mut scratch = alloc::vec![a.zero(); dim];
    let mut touched = alloc::vec![false; dim];
    let mut touched_list: Vec<usize> = Vec::new();
    for v in vectors {
        if v.is_empty() {
            continue;
        }
        for (i, x) in v {
            scratch[*i] = a.lift(x);
            if !touched[*i] {
                touched[*i] = true;
                touched_list.push(*i);
            }
        }
        // The basis is fully reduced, so each pivot coefficient is read once.
        for (piv, row) in basis.iter() {
            if a.is_zero(&scratch[*piv]) {
                continue;
            }
            let c = scratch[*piv].clone();
            for (j, x) in row {
                scratch[*j] = a.sub_mul(&scratch[*j], &c, x);
                if !touched[*j] {
                    touched[*j] = true;
                    touched_list.push(*j);
                }
            }
        }
        touched_list.sort_unstable();
        let mut new_row: Vec<(usize, A::E)> = Vec::new();
        for &j in &touched_list {
            let x = core::mem::replace(&mut scratch[j], a.zero());
            touched[j] = false;
            if !a.is_zero(&x) {
                new_row.push((j, x));
            }
        }
        touched_list.clear();
        let Some((lead, lead_val)) = new_row.first().cloned() else { continue };
        let inv = a.inv(&lead_val);
        for (_, x) in new_row.iter_mut() {
            *x = a.mul(&inv, x);
        }
        for row in basis.values_mut() {
            let Ok(k) = row.binary_search_by_key(&lead, |(j, _)| *j) else { continue };
            let c = row[k].1.clone();
            *row = sparse_sub_mul(a, row, &c, &new_row);
        }
        basis.insert(lead, new_row);
    }
    let pivots = basis.keys().copied().collect();
    let rows = basis
        .into_values()
        .map(|row| row.into_iter().map(|(i, x)| (i, a.lower(x))).collect())
        .collect();
    (rows, pivots)
}

fn sparse_sub_mul<A: Arith>(
    a: &A,
    y: &[(usize, A::E)],
    c: &A::E,
    x: &[(usize, A::E)],
) -> Vec<(usize, A::E)> {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    let zero = a.zero();
    while i < y.len() || j < x.len() {
        let yi = y.get(i).map_or(usize::MAX, |e| e.0);
        let xj = x.get(j).map_or(usize::MAX, |e| e.0);
        if yi < xj {
            out.push(y[i].clone());
            i += 1;
        } else {
            let (idx, base) = if xj < yi { (xj, &zero) } else { (yi, &y[i].1) };
            let s = a.sub_mul(base, c, &x[j].1);
            if !a.is_zero(&s) {
                out.push((idx, s));
            }
            if yi == xj {
                i += 1;
            }
            j += 1;
        }
    }
    out
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Subtracts the span from `v`, returning the remainder (zero at every pivot).
    pub fn reduce(&self, field: FieldSpec, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let Some(c) = crate::linalg::vector::get(&out, piv) else { continue };
            let c = field.neg(c);
            out = crate::linalg::vector::axpy(field, &out, &c, row);
        }
        out
    }
}

/// Column indices that are not pivots.
pub fn free_columns(pivots: &[usize], dim: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(dim - pivots.len());
    let mut k = 0;
    for j in 0..dim {
        if k < pivots.len() && pivots[k] == j {
            k += 1;
        } else {
            out.push(j);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector::from_dense;
    use alloc::vec;

    fn vecs(field: FieldSpec, rows: &[&[i64]]) -> Vec<SparseVec> {
        rows.iter()
            .map(|r| from_dense(field, &r.iter().map(|x| field.from_i64(*x)).collect::<Vec<_>>()))
            .collect()
    }

    #[test]
    fn dense_and_sparse_agree_on_small_input() {
        for field in [FieldSpec::Rationals, FieldSpec::Prime(5)] {
            let v = vecs(field, &[&[0, 2, 4, 1], &[1, 1, 0, 0], &[1, 3, 4, 1], &[0, 0, 0, 3]]);
            let d = rref_with(field, &v, 4, Strategy::Dense);
            let s = rref_with(field, &v, 4, Strategy::Sparse);
            assert_eq!(d, s);
            assert_eq!(d.rank(), 3);
            assert_eq!(d.pivots, vec![0, 1, 3]);
        }
    }

    #[test]
    fn zero_vectors_give_empty_echelon() {
        let field = FieldSpec::Rationals;
        let e = rref(field, &[Vec::new(), Vec::new()], 3);
        assert_eq!(e.rank(), 0);
        assert!(e.pivots.is_empty());
    }

    #[test]
    fn reduce_clears_pivots() {
        let field = FieldSpec::Rationals;
        let e = rref(field, &vecs(field, &[&[1, 2, 3]]), 3);
        let r = e.reduce(field, &vecs(field, &[&[2, 0, 1]])[0]);
        assert!(crate::linalg::vector::get(&r, 0).is_none());
    }

    #[test]
    fn free_columns_complement_pivots() {
        assert_eq!(free_columns(&[0, 2], 4), vec![1, 3]);
        assert_eq!(free_columns(&[], 2), vec![0, 1]);
    }
}
