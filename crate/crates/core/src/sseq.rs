//! Spectral sequences of bounded filtered complexes.
//!
//! Nothing is computed when a [`SpectralSequence`] is created. Cycle
//! subspaces, page entries and page maps are computed on first request and
//! memoized; the memo tables accept concurrent readers, and two threads
//! racing on the same key compute identical values, so whichever insert lands
//! first is kept.
//!
//! With `n = p + q`, the page entries are
//!
//! ```text
//! Z^r(p,q) = F_p C_n ∩ d^{-1}(F_{p-r} C_{n-1})          (Z^r = F_p C_n for r ≤ 0)
//! B^r(p,q) = Z^{r-1}(p-1,q+1) + d Z^{r-1}(p+r-1,q-r+2)
//! E^r(p,q) = Z^r(p,q) / B^r(p,q)
//! ```
//!
//! and `d^r: E^r(p,q) → E^r(p-r,q+r-1)` is induced by the ambient differential.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use spin::RwLock;

use crate::error::{Error, Result};
use crate::filtered::FilteredComplex;
use crate::linalg::{induced_map, preimage, Matrix, QuotientPresentation, SparseVec, Subspace};

type Key = (i64, i64, i64);

pub struct SpectralSequence {
    source: FilteredComplex,
    cycles: RwLock<BTreeMap<Key, Arc<Subspace>>>,
    boundaries: RwLock<BTreeMap<Key, Arc<Subspace>>>,
    entries: RwLock<BTreeMap<Key, Arc<QuotientPresentation>>>,
    maps: RwLock<BTreeMap<Key, Arc<Matrix>>>,
}

fn memo<V>(table: &RwLock<BTreeMap<Key, Arc<V>>>, key: Key, compute: impl FnOnce() -> V) -> Arc<V> {
    if let Some(v) = table.read().get(&key) {
        return v.clone();
    }
    let v = Arc::new(compute());
    table.write().entry(key).or_insert(v).clone()
}

impl SpectralSequence {
    pub fn new(source: FilteredComplex) -> Self {
        SpectralSequence {
            source,
            cycles: RwLock::new(BTreeMap::new()),
            boundaries: RwLock::new(BTreeMap::new()),
            entries: RwLock::new(BTreeMap::new()),
            maps: RwLock::new(BTreeMap::new()),
        }
    }

    pub fn filtered(&self) -> &FilteredComplex {
        &self.source
    }

    /// Number of memoized values across all tables.
    pub fn cached_len(&self) -> usize {
        self.cycles.read().len() + self.boundaries.read().len() + self.entries.read().len() + self.maps.read().len()
    }

    /// Index from which every page equals the limit: beyond it each
    /// differential has its source or target outside the filtration window.
    pub fn stable_page_index(&self) -> i64 {
        self.source.width() + 2
    }

    pub fn in_window(&self, p: i64, q: i64) -> bool {
        let c = self.source.ambient();
        p >= self.source.p_min() && p <= self.source.p_max() && p + q >= c.lo() && p + q <= c.hi()
    }

    /// `Z^r(p,q)`.
    pub fn cycles(&self, r: i64, p: i64, q: i64) -> Arc<Subspace> {
        let r = r.max(0);
        memo(&self.cycles, (r, p, q), || {
            let n = p + q;
            let layer = self.source.layer(p, n);
            if r == 0 || layer.is_zero() {
                return layer.into_owned();
            }
            let target = self.source.layer(p - r, n - 1);
            if target.is_full() {
                return layer.into_owned();
            }
            // solve inside the layer: coefficients c with d(B c) ∈ F_{p-r}
            let basis = layer.basis_matrix();
            let image = self.source.ambient().diff(n).mul(&basis).expect("layer lives in term(n)");
            let coeffs = preimage(&image, &target).expect("target lives in term(n-1)");
            if coeffs.is_full() {
                return layer.into_owned();
            }
            let vs: Vec<SparseVec> = coeffs.basis().iter().map(|c| basis.apply(c)).collect();
            Subspace::span(self.source.field(), layer.ambient_dim(), &vs).expect("vectors of term(n)")
        })
    }

    /// `B^r(p,q)`, the relations of `E^r(p,q)`.
    pub fn boundaries(&self, r: i64, p: i64, q: i64) -> Arc<Subspace> {
        let r = r.max(0);
        memo(&self.boundaries, (r, p, q), || {
            let lower = self.cycles(r - 1, p - 1, q + 1);
            let from_above = self.cycles(r - 1, p + r - 1, q - r + 2);
            let d = self.source.ambient().diff(p + q + 1);
            let image = from_above.map(&d).expect("cycles live in term(n+1)");
            lower.sum(&image).expect("both live in term(n)")
        })
    }

    /// `E^r(p,q)` as a quotient presentation inside `term(p+q)`.
    pub fn entry(&self, r: i64, p: i64, q: i64) -> Arc<QuotientPresentation> {
        let r = r.max(0);
        memo(&self.entries, (r, p, q), || {
            let z = self.cycles(r, p, q);
            if z.is_zero() {
                return QuotientPresentation::zero(self.source.field(), z.ambient_dim());
            }
            let b = self.boundaries(r, p, q);
            QuotientPresentation::new((*z).clone(), (*b).clone()).expect("B^r ⊆ Z^r")
        })
    }

    pub fn dim(&self, r: i64, p: i64, q: i64) -> usize {
        self.entry(r, p, q).dim()
    }

    /// Matrix of `d^r: E^r(p,q) → E^r(p-r, q+r-1)` in the class bases of the
    /// two entries.
    pub fn differential(&self, r: i64, p: i64, q: i64) -> Result<Arc<Matrix>> {
        let r = r.max(0);
        if let Some(m) = self.maps.read().get(&(r, p, q)) {
            return Ok(m.clone());
        }
        let src = self.entry(r, p, q);
        let tgt = self.entry(r, p - r, q + r - 1);
        let m = if src.is_zero() || tgt.is_zero() {
            Matrix::zero(self.source.field(), tgt.dim(), src.dim())
        } else {
            induced_map(&self.source.ambient().diff(p + q), &src, &tgt)?
        };
        Ok(self.maps.write().entry((r, p, q)).or_insert(Arc::new(m)).clone())
    }

    /// Positions `(p, q)` of the filtration window, `p` ascending then `q` ascending.
    pub fn positions(&self) -> Vec<(i64, i64)> {
        let c = self.source.ambient();
        let mut out = Vec::new();
        for p in self.source.p_min()..=self.source.p_max() {
            for n in c.degrees() {
                out.push((p, n - p));
            }
        }
        out
    }

    pub fn page(&self, r: i64) -> Page {
        let entries = self.positions().into_iter().map(|(p, q)| ((p, q), self.entry(r, p, q))).collect();
        Page { r: r.max(0), entries, pruned: false, stable: r >= self.stable_page_index() }
    }

    pub fn page_map(&self, r: i64) -> Result<PageMap> {
        let mut maps = BTreeMap::new();
        for (p, q) in self.positions() {
            maps.insert((p, q), self.differential(r, p, q)?);
        }
        Ok(PageMap { r: r.max(0), maps })
    }

    pub fn infinity_page(&self) -> Page {
        self.page(self.stable_page_index())
    }

    /// `dim gr_p H_n`, computed from the ambient complex alone:
    /// `(Z_n ∩ F_p + B_n) / (Z_n ∩ F_{p-1} + B_n)`.
    pub fn graded_homology_dims(&self, n: i64) -> BTreeMap<i64, usize> {
        let c = self.source.ambient();
        let z = c.cycles(n);
        let b = c.boundaries(n);
        let mut out = BTreeMap::new();
        let mut prev = b.dim();
        for p in self.source.p_min()..=self.source.p_max() {
            let s = z.intersect(&self.source.layer(p, n)).and_then(|x| x.sum(&b)).expect("same ambient");
            out.insert(p, s.dim() - prev);
            prev = s.dim();
        }
        out
    }

    /// Compares `E^∞` with the associated graded of the ambient homology at
    /// every position of the window.
    pub fn limit_comparison(&self) -> LimitReport {
        let r = self.stable_page_index();
        let mut rows = Vec::new();
        for n in self.source.ambient().degrees() {
            let gr = self.graded_homology_dims(n);
            for (p, g) in gr {
                rows.push(LimitRow { n, p, e_inf: self.dim(r, p, n - p), gr: g });
            }
        }
        LimitReport { rows }
    }
}

/// All entries of one page.
#[derive(Clone, Debug)]
pub struct Page {
    r: i64,
    entries: BTreeMap<(i64, i64), Arc<QuotientPresentation>>,
    pruned: bool,
    stable: bool,
}

impl Page {
    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn is_pruned(&self) -> bool {
        self.pruned
    }

    /// Whether this page is known to equal the limit page.
    pub fn is_stable(&self) -> bool {
        self.stable
    }

    pub fn entry(&self, p: i64, q: i64) -> Option<&QuotientPresentation> {
        self.entries.get(&(p, q)).map(|e| &**e)
    }

    pub fn dim(&self, p: i64, q: i64) -> usize {
        self.entry(p, q).map_or(0, QuotientPresentation::dim)
    }

    /// `(p, q, dim)` for every stored position.
    pub fn dims(&self) -> impl Iterator<Item = (i64, i64, usize)> + '_ {
        self.entries.iter().map(|(&(p, q), e)| (p, q, e.dim()))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (i64, i64, usize)> + '_ {
        self.dims().filter(|&(_, _, d)| d > 0)
    }

    /// Keeps only nonzero entries; each is presented on the standard basis
    /// `k^dim` whose change of basis to the ambient is the representative
    /// list. Pruning twice equals pruning once.
    pub fn prune(&self) -> Page {
        Page {
            r: self.r,
            entries: self.entries.iter().filter(|(_, e)| !e.is_zero()).map(|(k, e)| (*k, e.clone())).collect(),
            pruned: true,
            stable: self.stable,
        }
    }

    pub fn positions(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.entries.keys().copied()
    }
}

impl PartialEq for Page {
    fn eq(&self, other: &Page) -> bool {
        self.r == other.r
            && self.pruned == other.pruned
            && self.entries.len() == other.entries.len()
            && self.entries.iter().zip(&other.entries).all(|((k, a), (l, b))| k == l && a == b)
    }
}

/// All differentials of one page, in the class bases of the entries.
#[derive(Clone, Debug)]
pub struct PageMap {
    r: i64,
    maps: BTreeMap<(i64, i64), Arc<Matrix>>,
}

impl PageMap {
    pub fn r(&self) -> i64 {
        self.r
    }

    /// The component leaving `(p, q)`.
    pub fn get(&self, p: i64, q: i64) -> Option<&Matrix> {
        self.maps.get(&(p, q)).map(|m| &**m)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64), &Matrix)> + '_ {
        self.maps.iter().map(|(k, m)| (*k, &**m))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LimitRow {
    pub n: i64,
    pub p: i64,
    pub e_inf: usize,
    pub gr: usize,
}

impl LimitRow {
    pub fn ok(&self) -> bool {
        self.e_inf == self.gr
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitReport {
    pub rows: Vec<LimitRow>,
}

impl LimitReport {
    pub fn is_ok(&self) -> bool {
        self.rows.iter().all(LimitRow::ok)
    }

    pub fn verify(&self) -> Result<()> {
        match self.rows.iter().find(|r| !r.ok()) {
            None => Ok(()),
            Some(r) => Err(Error::ComparisonFailure { n: r.n, p: r.p, e_inf: r.e_inf, gr: r.gr }),
        }
    }

    /// `Σ_p dim E^∞_{p,n-p}` for each `n`.
    pub fn totals(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for r in &self.rows {
            *out.entry(r.n).or_insert(0) += r.e_inf;
        }
        out
    }
}

/// One line per row: `n p dim_Einf dim_grH ok|FAIL`.
impl fmt::Display for LimitReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{} {} {} {} {}", r.n, r.p, r.e_inf, r.gr, if r.ok() { "ok" } else { "FAIL" })?;
        }
        Ok(())
    }
}
