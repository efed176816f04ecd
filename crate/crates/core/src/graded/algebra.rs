//! Finite-dimensional standard-graded quotients `R = k[x_1..x_n]/I`, built
//! one degree at a time by echelonizing `I_d` inside `S_d`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::poly::{monomial_degree, monomials, Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{rref, vector, Matrix, SparseVec};

#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    field: FieldSpec,
    var_names: Vec<String>,
    relations: Vec<Polynomial>,
    /// `basis[d]`: standard monomials of degree `d`, in the order of [`monomials`].
    basis: Vec<Vec<Monomial>>,
    /// Normal form of every monomial of degree `d`, in coordinates of `basis[d]`.
    normal: Vec<BTreeMap<Monomial, SparseVec>>,
    /// `mult[i][d]`: multiplication by `x_i` from degree `d` to `d + 1`.
    mult: Vec<Vec<Matrix>>,
}

/// A homogeneous element of a [`GradedAlgebra`]: coordinates in `basis(degree)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    pub degree: usize,
    pub coeffs: SparseVec,
}

impl AlgebraElement {
    pub fn zero(degree: usize) -> Self {
        AlgebraElement { degree, coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl GradedAlgebra {
    /// `R = S/(gens)` for homogeneous `gens`. Fails unless some degree
    /// `≤ top_bound` has an empty basis, which forces every higher degree to
    /// vanish as well.
    pub fn build_quotient_algebra(
        field: FieldSpec,
        var_names: Vec<String>,
        gens: Vec<Polynomial>,
        top_bound: usize,
    ) -> Result<Self> {
        let n = var_names.len();
        let mut relations = Vec::new();
        for g in gens {
            if g.num_vars() != n {
                return Err(Error::Invalid(alloc::format!("relation uses {} variables, expected {n}", g.num_vars())));
            }
            if g.is_zero() {
                continue;
            }
            if g.homogeneous_degree().is_none() {
                return Err(Error::NotHomogeneous(g.to_string_with(&var_names)));
            }
            relations.push(g);
        }
        let mut basis = Vec::new();
        let mut normal = Vec::new();
        let mut top = None;
        for d in 0..=top_bound {
            let all = monomials(n, d);
            let index: BTreeMap<&Monomial, usize> = all.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut ideal: Vec<SparseVec> = Vec::new();
            for g in &relations {
                let e = g.homogeneous_degree().unwrap();
                if e > d {
                    continue;
                }
                for m in monomials(n, d - e) {
                    let v: SparseVec = g
                        .terms()
                        .map(|(t, c)| {
                            let prod: Monomial = t.iter().zip(&m).map(|(a, b)| a + b).collect();
                            (index[&prod], c.clone())
                        })
                        .collect();
                    ideal.push(vector::normalize(field, v));
                }
            }
            let ech = rref(field, &ideal, all.len());
            let mut is_pivot = alloc::vec![false; all.len()];
            for &p in &ech.pivots {
                is_pivot[p] = true;
            }
            let standard: Vec<usize> = (0..all.len()).filter(|&i| !is_pivot[i]).collect();
            let position: BTreeMap<usize, usize> = standard.iter().enumerate().map(|(k, &i)| (i, k)).collect();
            let mut forms = BTreeMap::new();
            for (i, m) in all.iter().enumerate() {
                let reduced = ech.reduce(field, &vector::unit(field, i));
                let coords: SparseVec = reduced.into_iter().map(|(j, c)| (position[&j], c)).collect();
                forms.insert(m.clone(), coords);
            }
            basis.push(standard.iter().map(|&i| all[i].clone()).collect::<Vec<_>>());
            normal.push(forms);
            if basis[d].is_empty() {
                top = Some(d);
                break;
            }
        }
        let Some(vanishing) = top else {
            return Err(Error::NotFiniteDimensional { bound: top_bound });
        };
        if vanishing == 0 {
            return Err(Error::Invalid("the relations generate the unit ideal".into()));
        }
        // drop the empty degree; everything above it is zero too
        basis.pop();
        normal.pop();
        let mut alg = GradedAlgebra { field, var_names, relations, basis, normal, mult: Vec::new() };
        alg.mult = (0..n)
            .map(|i| (0..alg.basis.len()).map(|d| alg.compute_mult(i, d)).collect())
            .collect();
        Ok(alg)
    }

    fn compute_mult(&self, i: usize, d: usize) -> Matrix {
        let columns = self.basis[d]
            .iter()
            .map(|m| {
                let mut prod = m.clone();
                prod[i] += 1;
                self.normal_form(&prod)
            })
            .collect();
        Matrix::from_columns(self.field, self.dim(d as i64 + 1), columns).expect("normal forms fit the next degree")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn num_vars(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    /// Highest degree with a nonzero piece.
    pub fn top_degree(&self) -> usize {
        self.basis.len() - 1
    }

    /// Dimension of the degree-`d` piece (zero for negative or large `d`).
    pub fn dim(&self, d: i64) -> usize {
        usize::try_from(d).ok().and_then(|d| self.basis.get(d)).map_or(0, Vec::len)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.basis.iter().map(Vec::len).sum()
    }

    pub fn basis(&self, d: usize) -> &[Monomial] {
        self.basis.get(d).map_or(&[], Vec::as_slice)
    }

    /// Multiplication by `x_i` from degree `d` to `d + 1`.
    pub fn mult(&self, i: usize, d: usize) -> Matrix {
        match self.mult.get(i).and_then(|m| m.get(d)) {
            Some(m) => m.clone(),
            None => Matrix::zero(self.field, self.dim(d as i64 + 1), self.dim(d as i64)),
        }
    }

    /// Normal form of a monomial, in coordinates of `basis(deg m)`.
    pub fn normal_form(&self, m: &[u32]) -> SparseVec {
        self.normal.get(monomial_degree(m)).and_then(|t| t.get(m)).cloned().unwrap_or_default()
    }

    pub fn variable(&self, i: usize) -> AlgebraElement {
        let mut m = alloc::vec![0; self.num_vars()];
        m[i] = 1;
        AlgebraElement { degree: 1, coeffs: self.normal_form(&m) }
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement { degree: 0, coeffs: vector::unit(self.field, 0) }
    }

    pub fn scalar(&self, c: Scalar) -> AlgebraElement {
        AlgebraElement { degree: 0, coeffs: vector::normalize(self.field, alloc::vec![(0, c)]) }
    }

    pub fn element(&self, p: &Polynomial) -> Result<AlgebraElement> {
        if p.is_zero() {
            return Ok(AlgebraElement::zero(0));
        }
        let degree = p.homogeneous_degree().ok_or_else(|| Error::NotHomogeneous(p.to_string_with(&self.var_names)))?;
        let mut coeffs = Vec::new();
        for (m, c) in p.terms() {
            coeffs = vector::axpy(self.field, &coeffs, c, &self.normal_form(m));
        }
        Ok(AlgebraElement { degree, coeffs })
    }

    /// Product of the basis monomial `a` (degree `da`) with the basis
    /// monomial `b` (degree `db`), in coordinates of `basis(da + db)`.
    pub fn basis_product(&self, da: usize, a: usize, db: usize, b: usize) -> SparseVec {
        let prod: Monomial = self.basis[da][a].iter().zip(&self.basis[db][b]).map(|(x, y)| x + y).collect();
        self.normal_form(&prod)
    }

    /// `f · b` where `b` is basis monomial number `idx` of degree `d`.
    pub fn times_basis(&self, f: &AlgebraElement, d: usize, idx: usize) -> SparseVec {
        let mut out = Vec::new();
        for (k, c) in &f.coeffs {
            out = vector::axpy(self.field, &out, c, &self.basis_product(f.degree, *k, d, idx));
        }
        out
    }

    pub fn multiply(&self, f: &AlgebraElement, g: &AlgebraElement) -> AlgebraElement {
        let mut out = Vec::new();
        for (k, c) in &g.coeffs {
            out = vector::axpy(self.field, &out, c, &self.times_basis(f, g.degree, *k));
        }
        AlgebraElement { degree: f.degree + g.degree, coeffs: out }
    }
}
