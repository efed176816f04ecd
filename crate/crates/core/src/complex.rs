//! Bounded chain complexes of labeled finite-dimensional vector spaces.
//!
//! Indexing is homological: `diff(n)` maps `term(n)` to `term(n-1)`.

use alloc::borrow::Cow;
use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{quotient, Matrix, QuotientPresentation, SparseVec, Subspace};

/// An opaque basis label. Composite labels record how a basis element was
/// built so that downstream layers can recover internal degrees.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Name(String),
    Tensor(Box<Label>, Box<Label>),
    /// Matrix unit sending basis element `from` to `to`.
    Hom { from: Box<Label>, to: Box<Label> },
    /// Basis element `monomial · generator` of a graded free module, sitting
    /// in internal degree `degree`.
    Graded { generator: usize, monomial: Vec<u32>, degree: i64 },
}

impl Label {
    pub fn name(s: impl Into<String>) -> Label {
        Label::Name(s.into())
    }

    /// Internal degree, when every leaf of the label carries one. Degrees add
    /// under tensor products; a Hom unit has degree `deg(to) - deg(from)`.
    pub fn internal_degree(&self) -> Option<i64> {
        match self {
            Label::Name(_) => None,
            Label::Graded { degree, .. } => Some(*degree),
            Label::Tensor(a, b) => Some(a.internal_degree()? + b.internal_degree()?),
            Label::Hom { from, to } => Some(to.internal_degree()? - from.internal_degree()?),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Name(s) => f.write_str(s),
            Label::Tensor(a, b) => write!(f, "({a}*{b})"),
            Label::Hom { from, to } => write!(f, "({from}->{to})"),
            Label::Graded { generator, monomial, degree } => {
                write!(f, "g{generator}")?;
                for (i, e) in monomial.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => write!(f, "x{}", i + 1)?,
                        _ => write!(f, "x{}^{e}", i + 1)?,
                    }
                }
                write!(f, "@{degree}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    field: FieldSpec,
    lo: i64,
    terms: Vec<Vec<Label>>,
    /// `diffs[k]` is `diff(lo + k)`, for `k` in `0..=terms.len()`.
    diffs: Vec<Matrix>,
}

impl ChainComplex {
    /// Builds and validates a complex with terms in degrees `lo, lo+1, ...`.
    /// `diffs` lists `diff(lo+1), ..., diff(hi)`.
    pub fn new(field: FieldSpec, lo: i64, terms: Vec<Vec<Label>>, diffs: Vec<Matrix>) -> Result<Self> {
        let c = ChainComplex::new_unchecked(field, lo, terms, diffs)?;
        c.validate()?;
        Ok(c)
    }

    /// Like [`ChainComplex::new`] but only checks shapes, not `d∘d = 0`.
    pub fn new_unchecked(field: FieldSpec, lo: i64, terms: Vec<Vec<Label>>, diffs: Vec<Matrix>) -> Result<Self> {
        let len = terms.len();
        if diffs.len() != len.saturating_sub(1) {
            return Err(Error::Invalid(alloc::format!(
                "expected {} differentials for {} terms, got {}",
                len.saturating_sub(1),
                len,
                diffs.len()
            )));
        }
        let mut all = Vec::with_capacity(len + 1);
        all.push(Matrix::zero(field, 0, terms.first().map_or(0, Vec::len)));
        for (k, d) in diffs.into_iter().enumerate() {
            let degree = lo + k as i64 + 1;
            if d.field() != field {
                return Err(Error::MixedFields);
            }
            if d.cols() != terms[k + 1].len() || d.rows() != terms[k].len() {
                return Err(Error::NotAComplex { degree });
            }
            all.push(d);
        }
        all.push(Matrix::zero(field, terms.last().map_or(0, Vec::len), 0));
        Ok(ChainComplex { field, lo, terms, diffs: all })
    }

    /// A single basis vector in degree `degree`.
    pub fn unit(field: FieldSpec, degree: i64) -> Self {
        ChainComplex::new_unchecked(field, degree, alloc::vec![alloc::vec![Label::name("1")]], Vec::new())
            .expect("one term needs no differential")
    }

    /// The zero complex.
    pub fn zero(field: FieldSpec) -> Self {
        ChainComplex::new_unchecked(field, 0, Vec::new(), Vec::new()).expect("empty")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Lowest degree of the support.
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest degree of the support (`lo - 1` for the zero complex).
    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn degrees(&self) -> core::ops::RangeInclusive<i64> {
        self.lo()..=self.hi()
    }

    fn index(&self, n: i64) -> Option<usize> {
        (n >= self.lo && n <= self.hi()).then(|| (n - self.lo) as usize)
    }

    pub fn dim(&self, n: i64) -> usize {
        self.index(n).map_or(0, |k| self.terms[k].len())
    }

    pub fn labels(&self, n: i64) -> &[Label] {
        self.index(n).map_or(&[], |k| &self.terms[k])
    }

    /// `diff(n): term(n) → term(n-1)`, zero (with the right shape) outside the support.
    pub fn diff(&self, n: i64) -> Cow<'_, Matrix> {
        if n >= self.lo && n <= self.hi() + 1 {
            Cow::Borrowed(&self.diffs[(n - self.lo) as usize])
        } else {
            Cow::Owned(Matrix::zero(self.field, self.dim(n - 1), self.dim(n)))
        }
    }

    /// Checks shapes and `diff(n-1)·diff(n) = 0`.
    pub fn validate(&self) -> Result<()> {
        for n in self.lo..=self.hi() + 1 {
            let d = self.diff(n);
            if d.rows() != self.dim(n - 1) || d.cols() != self.dim(n) {
                return Err(Error::NotAComplex { degree: n });
            }
        }
        for n in self.lo + 1..=self.hi() {
            if !self.diff(n - 1).mul(&self.diff(n))?.is_zero() {
                return Err(Error::NotAComplex { degree: n - 1 });
            }
        }
        Ok(())
    }

    pub fn cycles(&self, n: i64) -> Subspace {
        self.diff(n).kernel()
    }

    pub fn boundaries(&self, n: i64) -> Subspace {
        self.diff(n + 1).image()
    }

    pub fn homology(&self, n: i64) -> QuotientPresentation {
        quotient(&self.cycles(n), &self.boundaries(n)).expect("boundaries are cycles in a validated complex")
    }

    /// `dim H_n` for every degree of the support.
    pub fn betti(&self) -> BTreeMap<i64, usize> {
        self.degrees().map(|n| (n, self.homology_dim(n))).collect()
    }

    /// `dim ker d_n - rank d_{n+1}`.
    pub fn homology_dim(&self, n: i64) -> usize {
        let d = self.diff(n);
        d.cols() - d.rank() - self.diff(n + 1).rank()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|n| if n.rem_euclid(2) == 0 { 1 } else { -1 } * self.dim(n) as i64).sum()
    }

    /// Multiplies every differential by `s`.
    pub fn scale_differentials(&self, s: &Scalar) -> ChainComplex {
        ChainComplex {
            field: self.field,
            lo: self.lo,
            terms: self.terms.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(s)).collect(),
        }
    }

    /// `term(n)` of the result is `term(n - s)` of `self`; differentials pick up `(-1)^s`.
    pub fn shift(&self, s: i64) -> ChainComplex {
        let sign = self.field.sign(s);
        ChainComplex {
            field: self.field,
            lo: self.lo + s,
            terms: self.terms.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(&sign)).collect(),
        }
    }

    /// `(self ⊗ other)_n = ⊕_{i+j=n} self_i ⊗ other_j`, with differential
    /// `d(x⊗y) = dx⊗y + (-1)^i x⊗dy`.
    pub fn tensor(&self, other: &ChainComplex) -> Result<ChainComplex> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        let field = self.field;
        let layout = TensorLayout::new(self, other);
        if layout.is_empty() {
            return Ok(ChainComplex::zero(field));
        }
        let terms: Vec<Vec<Label>> = layout
            .degrees()
            .map(|n| {
                let mut labels = Vec::with_capacity(layout.dim(n));
                for i in layout.blocks(n) {
                    for a in self.labels(i) {
                        for b in other.labels(n - i) {
                            labels.push(Label::Tensor(Box::new(a.clone()), Box::new(b.clone())));
                        }
                    }
                }
                labels
            })
            .collect();
        let mut diffs = Vec::new();
        for n in layout.lo + 1..=layout.hi {
            let mut columns: Vec<SparseVec> = Vec::with_capacity(layout.dim(n));
            for i in layout.blocks(n) {
                let j = n - i;
                let dc = self.diff(i);
                let dd = other.diff(j);
                let sign = field.sign(i);
                for a in 0..self.dim(i) {
                    for b in 0..other.dim(j) {
                        let mut col: SparseVec = Vec::new();
                        for (a2, x) in dc.column(a) {
                            col.push((layout.offset(n - 1, i - 1, *a2, b), x.clone()));
                        }
                        for (b2, y) in dd.column(b) {
                            col.push((layout.offset(n - 1, i, a, *b2), field.mul(&sign, y)));
                        }
                        columns.push(col);
                    }
                }
            }
            diffs.push(Matrix::from_columns(field, layout.dim(n - 1), columns)?);
        }
        ChainComplex::new_unchecked(field, layout.lo, terms, diffs)
    }

    /// `Hom(self, other)_n = ⊕_i Hom(self_i, other_{i+n})` with differential
    /// `D f = d∘f - (-1)^n f∘d`. Basis: matrix units, blocks by increasing
    /// `i`, then source index, then target index.
    pub fn hom(&self, other: &ChainComplex) -> Result<ChainComplex> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        let field = self.field;
        let layout = HomLayout::new(self, other);
        if layout.is_empty() {
            return Ok(ChainComplex::zero(field));
        }
        let terms: Vec<Vec<Label>> = layout
            .degrees()
            .map(|n| {
                let mut labels = Vec::with_capacity(layout.dim(n));
                for i in layout.blocks(n) {
                    for a in self.labels(i) {
                        for b in other.labels(i + n) {
                            labels.push(Label::Hom { from: Box::new(a.clone()), to: Box::new(b.clone()) });
                        }
                    }
                }
                labels
            })
            .collect();
        let mut diffs = Vec::new();
        for n in layout.lo + 1..=layout.hi {
            let mut columns: Vec<SparseVec> = Vec::with_capacity(layout.dim(n));
            let minus_sign = field.neg(&field.sign(n));
            for i in layout.blocks(n) {
                let dd = other.diff(i + n);
                let dc_t = self.diff(i + 1).transpose();
                for a in 0..self.dim(i) {
                    for b in 0..other.dim(i + n) {
                        let mut col: SparseVec = Vec::new();
                        for (b2, x) in dd.column(b) {
                            col.push((layout.offset(n - 1, i, a, *b2), x.clone()));
                        }
                        // row a of d_c(i+1), indexed by sources a2 in self_{i+1}
                        if i < self.hi() {
                            for (a2, y) in dc_t.column(a) {
                                col.push((layout.offset(n - 1, i + 1, *a2, b), field.mul(&minus_sign, y)));
                            }
                        }
                        columns.push(col);
                    }
                }
            }
            diffs.push(Matrix::from_columns(field, layout.dim(n - 1), columns)?);
        }
        ChainComplex::new_unchecked(field, layout.lo, terms, diffs)
    }
}

/// Free function forms of the binary constructions.
pub fn tensor(c: &ChainComplex, d: &ChainComplex) -> Result<ChainComplex> {
    c.tensor(d)
}

pub fn hom_complex(c: &ChainComplex, d: &ChainComplex) -> Result<ChainComplex> {
    c.hom(d)
}

pub fn shift(c: &ChainComplex, s: i64) -> ChainComplex {
    c.shift(s)
}

/// Basis bookkeeping for `c ⊗ d`: in total degree `n`, blocks `c_i ⊗ d_{n-i}`
/// in increasing `i`, each ordered lexicographically by `(a, b)`.
#[derive(Clone, Debug)]
pub struct TensorLayout {
    pub lo: i64,
    pub hi: i64,
    c_lo: i64,
    c_hi: i64,
    d_lo: i64,
    d_hi: i64,
    c_dims: Vec<usize>,
    d_dims: Vec<usize>,
    /// offsets[n - lo][i - c_lo] = start of block i in degree n
    offsets: Vec<Vec<usize>>,
    dims: Vec<usize>,
}

impl TensorLayout {
    pub fn new(c: &ChainComplex, d: &ChainComplex) -> Self {
        TensorLayout::from_dims(
            c.lo(),
            c.degrees().map(|i| c.dim(i)).collect(),
            d.lo(),
            d.degrees().map(|j| d.dim(j)).collect(),
        )
    }

    pub fn from_dims(c_lo: i64, c_dims: Vec<usize>, d_lo: i64, d_dims: Vec<usize>) -> Self {
        let c_hi = c_lo + c_dims.len() as i64 - 1;
        let d_hi = d_lo + d_dims.len() as i64 - 1;
        let (lo, hi) = (c_lo + d_lo, c_hi + d_hi);
        let mut offsets = Vec::new();
        let mut dims = Vec::new();
        if !c_dims.is_empty() && !d_dims.is_empty() {
            for n in lo..=hi {
                let mut row = alloc::vec![0; c_dims.len()];
                let mut acc = 0;
                for i in c_lo..=c_hi {
                    row[(i - c_lo) as usize] = acc;
                    let j = n - i;
                    if j >= d_lo && j <= d_hi {
                        acc += c_dims[(i - c_lo) as usize] * d_dims[(j - d_lo) as usize];
                    }
                }
                offsets.push(row);
                dims.push(acc);
            }
        }
        TensorLayout { lo, hi, c_lo, c_hi, d_lo, d_hi, c_dims, d_dims, offsets, dims }
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn degrees(&self) -> core::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }

    pub fn dim(&self, n: i64) -> usize {
        if self.is_empty() || n < self.lo || n > self.hi {
            return 0;
        }
        self.dims[(n - self.lo) as usize]
    }

    /// First-factor degrees `i` contributing to total degree `n`.
    pub fn blocks(&self, n: i64) -> core::ops::RangeInclusive<i64> {
        self.c_lo.max(n - self.d_hi)..=self.c_hi.min(n - self.d_lo)
    }

    pub fn c_dim(&self, i: i64) -> usize {
        if i < self.c_lo || i > self.c_hi {
            0
        } else {
            self.c_dims[(i - self.c_lo) as usize]
        }
    }

    pub fn d_dim(&self, j: i64) -> usize {
        if j < self.d_lo || j > self.d_hi {
            0
        } else {
            self.d_dims[(j - self.d_lo) as usize]
        }
    }

    /// Index of `c_i[a] ⊗ d_{n-i}[b]` in the degree-`n` basis.
    pub fn offset(&self, n: i64, i: i64, a: usize, b: usize) -> usize {
        let start = self.offsets[(n - self.lo) as usize][(i - self.c_lo) as usize];
        start + a * self.d_dim(n - i) + b
    }
}

/// Basis bookkeeping for `Hom(c, d)`: in degree `n`, blocks
/// `Hom(c_i, d_{i+n})` in increasing `i`, each ordered by `(a, b)`.
#[derive(Clone, Debug)]
pub struct HomLayout {
    pub lo: i64,
    pub hi: i64,
    c_lo: i64,
    c_hi: i64,
    d_lo: i64,
    d_hi: i64,
    c_dims: Vec<usize>,
    d_dims: Vec<usize>,
    offsets: Vec<Vec<usize>>,
    dims: Vec<usize>,
}

impl HomLayout {
    pub fn new(c: &ChainComplex, d: &ChainComplex) -> Self {
        let c_dims: Vec<usize> = c.degrees().map(|i| c.dim(i)).collect();
        let d_dims: Vec<usize> = d.degrees().map(|j| d.dim(j)).collect();
        let (c_lo, c_hi, d_lo, d_hi) = (c.lo(), c.hi(), d.lo(), d.hi());
        let (lo, hi) = (d_lo - c_hi, d_hi - c_lo);
        let mut offsets = Vec::new();
        let mut dims = Vec::new();
        if !c_dims.is_empty() && !d_dims.is_empty() {
            for n in lo..=hi {
                let mut row = alloc::vec![0; c_dims.len()];
                let mut acc = 0;
                for i in c_lo..=c_hi {
                    row[(i - c_lo) as usize] = acc;
                    let j = i + n;
                    if j >= d_lo && j <= d_hi {
                        acc += c_dims[(i - c_lo) as usize] * d_dims[(j - d_lo) as usize];
                    }
                }
                offsets.push(row);
                dims.push(acc);
            }
        }
        HomLayout { lo, hi, c_lo, c_hi, d_lo, d_hi, c_dims, d_dims, offsets, dims }
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn degrees(&self) -> core::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }

    pub fn dim(&self, n: i64) -> usize {
        if self.is_empty() || n < self.lo || n > self.hi {
            return 0;
        }
        self.dims[(n - self.lo) as usize]
    }

    /// Source degrees `i` contributing to Hom degree `n`.
    pub fn blocks(&self, n: i64) -> core::ops::RangeInclusive<i64> {
        self.c_lo.max(self.d_lo - n)..=self.c_hi.min(self.d_hi - n)
    }

    pub fn c_dim(&self, i: i64) -> usize {
        if i < self.c_lo || i > self.c_hi {
            0
        } else {
            self.c_dims[(i - self.c_lo) as usize]
        }
    }

    pub fn d_dim(&self, j: i64) -> usize {
        if j < self.d_lo || j > self.d_hi {
            0
        } else {
            self.d_dims[(j - self.d_lo) as usize]
        }
    }

    /// Index of the unit `c_i[a] ↦ d_{i+n}[b]` in the degree-`n` basis.
    pub fn offset(&self, n: i64, i: i64, a: usize, b: usize) -> usize {
        let start = self.offsets[(n - self.lo) as usize][(i - self.c_lo) as usize];
        start + a * self.d_dim(i + n) + b
    }
}

/// A degree-preserving map of complexes commuting with the differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    components: BTreeMap<i64, Matrix>,
}

impl ChainMap {
    /// `components` may omit degrees, which are then zero.
    pub fn new(source: ChainComplex, target: ChainComplex, components: BTreeMap<i64, Matrix>) -> Result<Self> {
        if source.field() != target.field() {
            return Err(Error::MixedFields);
        }
        for (&n, m) in &components {
            if m.rows() != target.dim(n) || m.cols() != source.dim(n) {
                return Err(Error::NotAChainMap { degree: n });
            }
        }
        let f = ChainMap { source, target, components };
        f.validate()?;
        Ok(f)
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let components = c.degrees().map(|n| (n, Matrix::identity(c.field(), c.dim(n)))).collect();
        ChainMap { source: c.clone(), target: c.clone(), components }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn component(&self, n: i64) -> Cow<'_, Matrix> {
        match self.components.get(&n) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(Matrix::zero(self.source.field(), self.target.dim(n), self.source.dim(n))),
        }
    }

    fn validate(&self) -> Result<()> {
        let lo = self.source.lo().min(self.target.lo());
        let hi = self.source.hi().max(self.target.hi()) + 1;
        for n in lo..=hi {
            let left = self.target.diff(n).mul(&self.component(n))?;
            let right = self.component(n - 1).mul(&self.source.diff(n))?;
            if left != right {
                return Err(Error::NotAChainMap { degree: n });
            }
        }
        Ok(())
    }

    /// Image of the map in degree `n`, a subspace of `target.term(n)`.
    pub fn image(&self, n: i64) -> Subspace {
        self.component(n).image()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn names(prefix: &str, n: usize) -> Vec<Label> {
        (0..n).map(|i| Label::name(alloc::format!("{prefix}{i}"))).collect()
    }

    /// k --id--> k in degrees 1 → 0
    fn interval() -> ChainComplex {
        ChainComplex::new(Q, 0, vec![names("a", 1), names("b", 1)], vec![Matrix::identity(Q, 1)]).unwrap()
    }

    fn hollow_triangle() -> ChainComplex {
        // reduced: degrees -1, 0, 1
        let d0 = Matrix::from_rows_i64(Q, &[&[1, 1, 1]]);
        // edges xy, xz, yz
        let d1 = Matrix::from_rows_i64(Q, &[&[-1, -1, 0], &[1, 0, -1], &[0, 1, 1]]);
        ChainComplex::new(Q, -1, vec![names("e", 1), names("v", 3), names("s", 3)], vec![d0, d1]).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(interval().validate().is_ok());
        let id = Matrix::identity(Q, 1);
        let bad = ChainComplex::new(Q, 0, vec![names("a", 1), names("b", 1), names("c", 1)], vec![id.clone(), id]);
        assert_eq!(bad, Err(Error::NotAComplex { degree: 1 }));
    }

    #[test]
    fn shape_errors() {
        let r = ChainComplex::new(Q, 0, vec![names("a", 2), names("b", 1)], vec![Matrix::identity(Q, 1)]);
        assert_eq!(r, Err(Error::NotAComplex { degree: 1 }));
        let r = ChainComplex::new(Q, 0, vec![names("a", 2)], vec![Matrix::identity(Q, 1)]);
        assert!(matches!(r, Err(Error::Invalid(_))));
    }

    #[test]
    fn homology_of_circle() {
        let c = hollow_triangle();
        assert_eq!(c.homology(1).dim(), 1);
        assert_eq!(c.homology(0).dim(), 0);
        assert_eq!(c.homology(-1).dim(), 0);
        assert_eq!(c.homology_dim(1), 1);
    }

    #[test]
    fn tensor_unit_and_dimensions() {
        let c = hollow_triangle();
        let t = c.tensor(&ChainComplex::unit(Q, 0)).unwrap();
        t.validate().unwrap();
        for n in c.degrees() {
            assert_eq!(t.dim(n), c.dim(n));
            assert_eq!(*t.diff(n), *c.diff(n));
        }
        assert_eq!(t.labels(0)[1], Label::Tensor(Box::new(Label::name("v1")), Box::new(Label::name("1"))));

        let z = ChainComplex::new(Q, 0, vec![names("a", 1), names("b", 1)], vec![Matrix::zero(Q, 1, 1)]).unwrap();
        let zz = z.tensor(&z).unwrap();
        assert_eq!((zz.dim(0), zz.dim(1), zz.dim(2)), (1, 2, 1));
        zz.validate().unwrap();
    }

    #[test]
    fn hom_units() {
        let c = hollow_triangle();
        let h = ChainComplex::unit(Q, 0).hom(&c).unwrap();
        h.validate().unwrap();
        for n in c.degrees() {
            assert_eq!(*h.diff(n), *c.diff(n));
        }
        let dual = c.hom(&ChainComplex::unit(Q, 0)).unwrap();
        dual.validate().unwrap();
        assert_eq!((dual.lo(), dual.hi()), (-1, 1));
        for n in c.degrees() {
            assert_eq!(dual.dim(-n), c.dim(n));
        }
        assert_eq!(dual.homology_dim(-1), 1);
    }

    #[test]
    fn shift_examples() {
        let c = hollow_triangle();
        assert_eq!(c.shift(0), c);
        let s = c.shift(1);
        s.validate().unwrap();
        assert_eq!(s.homology_dim(2), 1);
        assert_eq!(s.homology_dim(1), 0);
        assert_eq!(c.shift(1).shift(1), c.shift(2));
    }

    #[test]
    fn chain_maps() {
        let c = interval();
        assert!(ChainMap::new(c.clone(), c.clone(), ChainMap::identity(&c).components.clone()).is_ok());
        // identity in degree 1 only does not commute with d
        let mut comps = BTreeMap::new();
        comps.insert(1, Matrix::identity(Q, 1));
        assert_eq!(ChainMap::new(c.clone(), c.clone(), comps), Err(Error::NotAChainMap { degree: 1 }));
    }

    #[test]
    fn internal_degrees_of_labels() {
        let g = |d| Label::Graded { generator: 0, monomial: vec![], degree: d };
        assert_eq!(Label::Tensor(Box::new(g(1)), Box::new(g(2))).internal_degree(), Some(3));
        assert_eq!(Label::Hom { from: Box::new(g(1)), to: Box::new(g(3)) }.internal_degree(), Some(2));
        assert_eq!(Label::name("x").internal_degree(), None);
    }
}
