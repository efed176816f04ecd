//! Sparse vectors: `(index, value)` pairs sorted by index, no stored zeros.

use alloc::vec::Vec;

use crate::field::{FieldSpec, Scalar};

pub type SparseVec = Vec<(usize, Scalar)>;

/// Sorts, merges duplicates and drops zeros.
pub fn normalize(field: FieldSpec, mut v: SparseVec) -> SparseVec {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = field.add(y, &x),
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !field.is_zero(x));
    out
}

pub fn get(v: &SparseVec, i: usize) -> Option<&Scalar> {
    v.binary_search_by_key(&i, |(j, _)| *j).ok().map(|k| &v[k].1)
}

/// `y + a·x`.
pub fn axpy(field: FieldSpec, y: &SparseVec, a: &Scalar, x: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        let yi = y.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let xj = x.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if yi < xj {
            out.push(y[i].clone());
            i += 1;
        } else if xj < yi {
            out.push((xj, field.mul(a, &x[j].1)));
            j += 1;
        } else {
            let s = field.add(&y[i].1, &field.mul(a, &x[j].1));
            if !field.is_zero(&s) {
                out.push((yi, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(field: FieldSpec, a: &Scalar, x: &SparseVec) -> SparseVec {
    if field.is_zero(a) {
        return Vec::new();
    }
    x.iter().map(|(i, v)| (*i, field.mul(a, v))).collect()
}

/// Re-indexes entries by `offset`.
pub fn shifted(x: &SparseVec, offset: usize) -> SparseVec {
    x.iter().map(|(i, v)| (i + offset, v.clone())).collect()
}

/// Keeps entries with index in `[lo, hi)`, re-based to start at 0.
pub fn window(x: &SparseVec, lo: usize, hi: usize) -> SparseVec {
    x.iter()
        .filter(|(i, _)| *i >= lo && *i < hi)
        .map(|(i, v)| (i - lo, v.clone()))
        .collect()
}

pub fn from_dense(field: FieldSpec, v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !field.is_zero(x))
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(field: FieldSpec, x: &SparseVec, len: usize) -> Vec<Scalar> {
    let mut out = alloc::vec![field.zero(); len];
    for (i, v) in x {
        out[*i] = v.clone();
    }
    out
}

pub fn unit(field: FieldSpec, i: usize) -> SparseVec {
    alloc::vec![(i, field.one())]
}
