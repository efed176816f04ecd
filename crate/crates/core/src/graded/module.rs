//! Graded free modules over a [`GradedAlgebra`], complexes of them, and their
//! degreewise expansion into vector-space chain complexes.
//!
//! Twists follow the `R(t)` convention: a generator of twist `t` sits in
//! internal degree `-t`, so `R(-2)` is generated in degree 2.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::algebra::{AlgebraElement, GradedAlgebra};
use crate::complex::{ChainComplex, Label, TensorLayout};
use crate::error::{Error, Result};
use crate::filtered::FilteredComplex;
use crate::linalg::{quotient, vector, Matrix, SparseVec, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedFreeModule {
    twists: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(twists: Vec<i64>) -> Self {
        GradedFreeModule { twists }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn generator_degree(&self, j: usize) -> i64 {
        -self.twists[j]
    }

    pub fn dim_in_degree(&self, alg: &GradedAlgebra, d: i64) -> usize {
        self.twists.iter().map(|t| alg.dim(d + t)).sum()
    }

    /// Internal degrees where the module can be nonzero.
    fn degree_range(&self, alg: &GradedAlgebra) -> core::ops::RangeInclusive<i64> {
        let lo = self.twists.iter().map(|t| -t).min().unwrap_or(0);
        let hi = self.twists.iter().map(|t| -t).max().unwrap_or(-1) + alg.top_degree() as i64;
        lo..=hi
    }

    /// Start of each generator's block inside the degree-`d` piece, or `None`
    /// when that generator contributes nothing in degree `d`.
    fn piece_offsets(&self, alg: &GradedAlgebra, d: i64) -> (Vec<Option<usize>>, usize) {
        let mut acc = 0;
        let offsets = (0..self.rank())
            .map(|j| {
                let k = alg.dim(d - self.generator_degree(j));
                let start = (k > 0).then_some(acc);
                acc += k;
                start
            })
            .collect();
        (offsets, acc)
    }

    /// Multiplication by `x_i` from the degree-`d` piece to the degree-`d+1` piece.
    fn mult_var(&self, alg: &GradedAlgebra, i: usize, d: i64, v: &SparseVec) -> SparseVec {
        let (src, _) = self.piece_offsets(alg, d);
        let (tgt, _) = self.piece_offsets(alg, d + 1);
        let mut out = Vec::new();
        for j in 0..self.rank() {
            let (Some(s), Some(t)) = (src[j], tgt[j]) else { continue };
            let e = (d - self.generator_degree(j)) as usize;
            let block = vector::window(v, s, s + alg.dim(e as i64));
            let image = alg.mult(i, e).apply(&block);
            out.extend(vector::shifted(&image, t));
        }
        out
    }
}

/// A degree-preserving map of graded free modules, given by homogeneous
/// entries `entry(a, b)` of degree `deg(generator b) - deg(generator a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModuleMap {
    source: GradedFreeModule,
    target: GradedFreeModule,
    entries: BTreeMap<(usize, usize), AlgebraElement>,
}

impl GradedModuleMap {
    pub fn new(
        source: GradedFreeModule,
        target: GradedFreeModule,
        entries: impl IntoIterator<Item = ((usize, usize), AlgebraElement)>,
    ) -> Result<Self> {
        let mut kept = BTreeMap::new();
        for ((a, b), f) in entries {
            if a >= target.rank() || b >= source.rank() {
                return Err(Error::Invalid(alloc::format!("entry ({a}, {b}) outside a {}x{} map", target.rank(), source.rank())));
            }
            if f.is_zero() {
                continue;
            }
            let want = source.generator_degree(b) - target.generator_degree(a);
            if want != f.degree as i64 {
                return Err(Error::NotHomogeneous(alloc::format!(
                    "entry ({a}, {b}) has degree {} but the twists require {want}",
                    f.degree
                )));
            }
            kept.insert((a, b), f);
        }
        Ok(GradedModuleMap { source, target, entries: kept })
    }

    pub fn source(&self) -> &GradedFreeModule {
        &self.source
    }

    pub fn target(&self) -> &GradedFreeModule {
        &self.target
    }

    pub fn entry(&self, a: usize, b: usize) -> Option<&AlgebraElement> {
        self.entries.get(&(a, b))
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &AlgebraElement)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    /// No entry is a unit: every nonzero entry has positive degree.
    pub fn is_minimal(&self) -> bool {
        self.entries.values().all(|f| f.degree >= 1)
    }

    /// The map restricted to internal degree `d`, in piece coordinates.
    pub fn degree_piece(&self, alg: &GradedAlgebra, d: i64) -> Matrix {
        let (src, cols) = self.source.piece_offsets(alg, d);
        let (tgt, rows) = self.target.piece_offsets(alg, d);
        let mut columns = alloc::vec![Vec::new(); cols];
        for (&(a, b), f) in &self.entries {
            let (Some(s), Some(t)) = (src[b], tgt[a]) else { continue };
            let e = (d - self.source.generator_degree(b)) as usize;
            for mu in 0..alg.dim(e as i64) {
                let prod = vector::shifted(&alg.times_basis(f, e, mu), t);
                let col: &mut SparseVec = &mut columns[s + mu];
                *col = vector::axpy(alg.field(), col, &alg.field().one(), &prod);
            }
        }
        Matrix::from_columns(alg.field(), rows, columns).expect("piece offsets bound every product")
    }
}

/// A bounded complex of graded free modules: `modules[k]` sits in homological
/// degree `lo + k` and `maps[k]: modules[k+1] → modules[k]`.
#[derive(Clone, Debug)]
pub struct GradedComplex {
    algebra: Arc<GradedAlgebra>,
    lo: i64,
    modules: Vec<GradedFreeModule>,
    maps: Vec<GradedModuleMap>,
}

impl GradedComplex {
    pub fn new(algebra: Arc<GradedAlgebra>, lo: i64, modules: Vec<GradedFreeModule>, maps: Vec<GradedModuleMap>) -> Result<Self> {
        if modules.is_empty() || maps.len() + 1 != modules.len() {
            return Err(Error::Invalid(alloc::format!("{} modules need {} maps", modules.len(), modules.len().saturating_sub(1))));
        }
        for (k, m) in maps.iter().enumerate() {
            if m.source != modules[k + 1] || m.target != modules[k] {
                return Err(Error::Invalid(alloc::format!("map out of degree {} has the wrong modules", lo + k as i64 + 1)));
            }
        }
        Ok(GradedComplex { algebra, lo, modules, maps })
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.modules.len() as i64 - 1
    }

    pub fn degrees(&self) -> core::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn module(&self, n: i64) -> Option<&GradedFreeModule> {
        usize::try_from(n - self.lo).ok().and_then(|k| self.modules.get(k))
    }

    pub fn rank(&self, n: i64) -> usize {
        self.module(n).map_or(0, GradedFreeModule::rank)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(GradedFreeModule::rank).collect()
    }

    /// The differential out of degree `n`.
    pub fn map(&self, n: i64) -> Option<&GradedModuleMap> {
        usize::try_from(n - self.lo - 1).ok().and_then(|k| self.maps.get(k))
    }

    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(GradedModuleMap::is_minimal)
    }

    /// The complex of vector spaces underlying this one. Each term is ordered
    /// by internal degree, then generator, then monomial.
    pub fn expand(&self) -> ChainComplex {
        let alg = &*self.algebra;
        let field = alg.field();
        let terms: Vec<Vec<Label>> = self
            .modules
            .iter()
            .map(|m| {
                let mut labels = Vec::new();
                for d in m.degree_range(alg) {
                    for j in 0..m.rank() {
                        let e = d - m.generator_degree(j);
                        if e < 0 {
                            continue;
                        }
                        for mono in alg.basis(e as usize) {
                            labels.push(Label::Graded { generator: j, monomial: mono.clone(), degree: d });
                        }
                    }
                }
                labels
            })
            .collect();
        let diffs = self
            .maps
            .iter()
            .map(|f| {
                let (src, tgt) = (&f.source, &f.target);
                let rows: usize = tgt.degree_range(alg).map(|d| tgt.dim_in_degree(alg, d)).sum();
                let (sr, tr) = (src.degree_range(alg), tgt.degree_range(alg));
                let mut columns = Vec::new();
                let mut row_start = 0;
                // internal degree is preserved, so the expansion is block diagonal
                for d in *sr.start().min(tr.start())..=*sr.end().max(tr.end()) {
                    if sr.contains(&d) {
                        for c in f.degree_piece(alg, d).columns() {
                            columns.push(vector::shifted(c, row_start));
                        }
                    }
                    if tr.contains(&d) {
                        row_start += tgt.dim_in_degree(alg, d);
                    }
                }
                Matrix::from_columns(field, rows, columns).expect("expanded pieces fit")
            })
            .collect();
        ChainComplex::new_unchecked(field, self.lo, terms, diffs).expect("expanded shapes are consistent")
    }

    /// `self ⊗_R other`: generators are pairs `(a, b)` with added twists,
    /// blocks ordered by the first factor's degree, and
    /// `d(a ⊗ b) = da ⊗ b + (-1)^i a ⊗ db` for `a` in degree `i`.
    pub fn tensor(&self, other: &GradedComplex) -> Result<GradedComplex> {
        if !Arc::ptr_eq(&self.algebra, &other.algebra) {
            return Err(Error::Invalid("tensor factors live over different algebras".into()));
        }
        let alg = &*self.algebra;
        let layout = self.layout_with(other);
        let modules: Vec<GradedFreeModule> = layout
            .degrees()
            .map(|n| {
                let mut twists = alloc::vec![0; layout.dim(n)];
                for i in layout.blocks(n) {
                    let (f, g) = (self.module(i).unwrap(), other.module(n - i).unwrap());
                    for a in 0..f.rank() {
                        for b in 0..g.rank() {
                            twists[layout.offset(n, i, a, b)] = f.twists[a] + g.twists[b];
                        }
                    }
                }
                GradedFreeModule::new(twists)
            })
            .collect();
        let mut maps = Vec::new();
        for n in layout.lo + 1..=layout.hi {
            let mut entries: BTreeMap<(usize, usize), AlgebraElement> = BTreeMap::new();
            let mut add = |key: (usize, usize), f: AlgebraElement| {
                let slot = entries.entry(key).or_insert_with(|| AlgebraElement::zero(f.degree));
                slot.coeffs = vector::axpy(alg.field(), &slot.coeffs, &alg.field().one(), &f.coeffs);
            };
            for i in layout.blocks(n) {
                let j = n - i;
                let (f, g) = (self.module(i).unwrap(), other.module(j).unwrap());
                let sign = alg.field().sign(i);
                if let Some(df) = self.map(i) {
                    for ((a2, a), e) in df.entries() {
                        for b in 0..g.rank() {
                            add((layout.offset(n - 1, i - 1, a2, b), layout.offset(n, i, a, b)), e.clone());
                        }
                    }
                }
                if let Some(dg) = other.map(j) {
                    for ((b2, b), e) in dg.entries() {
                        let scaled = AlgebraElement { degree: e.degree, coeffs: vector::scale(alg.field(), &sign, &e.coeffs) };
                        for a in 0..f.rank() {
                            add((layout.offset(n - 1, i, a, b2), layout.offset(n, i, a, b)), scaled.clone());
                        }
                    }
                }
            }
            let k = (n - layout.lo) as usize;
            maps.push(GradedModuleMap::new(modules[k].clone(), modules[k - 1].clone(), entries)?);
        }
        GradedComplex::new(self.algebra.clone(), layout.lo, modules, maps)
    }

    fn layout_with(&self, other: &GradedComplex) -> TensorLayout {
        TensorLayout::from_dims(self.lo, self.ranks(), other.lo, other.ranks())
    }
}

/// Which factor of `F ⊗_R G` indexes the filtration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FilterBy {
    First,
    Second,
}

/// The expansion of `f ⊗_R g`, filtered by the homological degree of one
/// factor: basis element `m · (a ⊗ b)` with `a ∈ f_i`, `b ∈ g_j` sits at
/// level `i` (`FilterBy::First`) or `j` (`FilterBy::Second`).
pub fn tensor_filtration(f: &GradedComplex, g: &GradedComplex, by: FilterBy) -> Result<FilteredComplex> {
    let t = f.tensor(g)?;
    let layout = f.layout_with(g);
    let expanded = t.expand();
    let levels: Vec<Vec<i64>> = expanded
        .degrees()
        .map(|n| {
            let blocks: Vec<(i64, usize)> = layout.blocks(n).map(|i| (i, layout.offset(n, i, 0, 0))).collect();
            expanded
                .labels(n)
                .iter()
                .map(|label| {
                    let Label::Graded { generator, .. } = label else { unreachable!("expanded labels are graded") };
                    let i = blocks.iter().rev().find(|(_, start)| start <= generator).expect("generator in a block").0;
                    match by {
                        FilterBy::First => i,
                        FilterBy::Second => n - i,
                    }
                })
                .collect()
        })
        .collect();
    FilteredComplex::from_basis_levels(expanded, &levels)
}

/// The Koszul complex on the variables: `K_q` has one generator per
/// `q`-subset `S` (lexicographic order), twist `-q`, and
/// `d(e_S) = Σ_k (-1)^k x_{s_k} e_{S \ s_k}`.
pub fn koszul_complex(alg: Arc<GradedAlgebra>) -> GradedComplex {
    let n = alg.num_vars();
    let subsets: Vec<Vec<Vec<usize>>> = (0..=n).map(|q| k_subsets(n, q)).collect();
    let modules: Vec<GradedFreeModule> =
        subsets.iter().enumerate().map(|(q, s)| GradedFreeModule::new(alloc::vec![-(q as i64); s.len()])).collect();
    let field = alg.field();
    let maps = (1..=n)
        .map(|q| {
            let index: BTreeMap<&Vec<usize>, usize> = subsets[q - 1].iter().enumerate().map(|(i, s)| (s, i)).collect();
            let mut entries = Vec::new();
            for (b, s) in subsets[q].iter().enumerate() {
                for (k, &v) in s.iter().enumerate() {
                    let mut face = s.clone();
                    face.remove(k);
                    let x = alg.variable(v);
                    let coeffs = vector::scale(field, &field.sign(k as i64), &x.coeffs);
                    entries.push(((index[&face], b), AlgebraElement { degree: 1, coeffs }));
                }
            }
            GradedModuleMap::new(modules[q].clone(), modules[q - 1].clone(), entries).expect("Koszul entries are linear")
        })
        .collect();
    GradedComplex::new(alg, 0, modules, maps).expect("Koszul shapes")
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Minimal free resolution `F_0 ← F_1 ← … ← F_L` of the residue field.
/// Generators of `F_{p+1}` are chosen degree by degree, lowest internal
/// degree first, as echelon representatives of `ker d_p / m · ker d_p`.
pub fn minimal_free_resolution(alg: Arc<GradedAlgebra>, length_limit: usize) -> GradedComplex {
    let a = &*alg;
    let field = a.field();
    let mut modules = alloc::vec![GradedFreeModule::new(alloc::vec![0])];
    let mut maps: Vec<GradedModuleMap> = Vec::new();
    for p in 0..length_limit {
        let m = modules[p].clone();
        let range = m.degree_range(a);
        let mut twists = Vec::new();
        let mut images: Vec<(i64, SparseVec)> = Vec::new();
        let mut prev_kernel: Option<Subspace> = None;
        for d in range.clone() {
            let dim = m.dim_in_degree(a, d);
            let kernel = if p == 0 {
                if d == 0 { Subspace::zero(field, dim) } else { Subspace::full(field, dim) }
            } else {
                maps[p - 1].degree_piece(a, d).kernel()
            };
            let decomposables: Vec<SparseVec> = match &prev_kernel {
                Some(k) if d > *range.start() => k
                    .basis()
                    .iter()
                    .flat_map(|v| { let m = &m; (0..a.num_vars()).map(move |i| m.mult_var(a, i, d - 1, v)) })
                    .collect(),
                _ => Vec::new(),
            };
            let decomposables = Subspace::span(field, dim, &decomposables).expect("products stay in the piece");
            let fresh = quotient(&kernel, &decomposables).expect("m·ker lies in ker");
            for rep in fresh.representatives() {
                twists.push(-d);
                images.push((d, rep.clone()));
            }
            prev_kernel = Some(kernel);
        }
        let source = GradedFreeModule::new(twists);
        let mut entries = Vec::new();
        for (b, (d, rep)) in images.iter().enumerate() {
            let (offsets, _) = m.piece_offsets(a, *d);
            for (j, start) in offsets.iter().enumerate() {
                let Some(s) = start else { continue };
                let e = (*d - m.generator_degree(j)) as usize;
                let coeffs = vector::window(rep, *s, s + a.dim(e as i64));
                if !coeffs.is_empty() {
                    entries.push(((j, b), AlgebraElement { degree: e, coeffs }));
                }
            }
        }
        maps.push(GradedModuleMap::new(source.clone(), m, entries).expect("kernel elements are homogeneous"));
        modules.push(source);
    }
    GradedComplex::new(alg, 0, modules, maps).expect("resolution shapes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::graded::{image_length, Polynomial};
    use crate::sseq::SpectralSequence;
    use alloc::string::{String, ToString};
    use alloc::vec;

    fn algebra(field: FieldSpec, vars: &[&str], rels: &[&str]) -> Arc<GradedAlgebra> {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let gens = rels.iter().map(|r| Polynomial::parse(field, &names, r).unwrap()).collect();
        Arc::new(GradedAlgebra::build_quotient_algebra(field, names, gens, 20).unwrap())
    }

    fn square_zero(field: FieldSpec) -> Arc<GradedAlgebra> {
        algebra(field, &["x", "y"], &["x^2", "x*y", "y^2"])
    }

    /// Homology of an expanded complex, by internal degree.
    fn homology_degrees(c: &ChainComplex, n: i64) -> BTreeMap<i64, usize> {
        let h = c.homology(n);
        let mut out = BTreeMap::new();
        for rep in h.representatives() {
            let d = c.labels(n)[rep[0].0].internal_degree().unwrap();
            assert!(rep.iter().all(|(i, _)| c.labels(n)[*i].internal_degree() == Some(d)));
            *out.entry(d).or_default() += 1;
        }
        out
    }

    #[test]
    fn koszul_over_square_zero_algebra() {
        let k = koszul_complex(square_zero(FieldSpec::Rationals));
        assert_eq!(k.ranks(), vec![1, 2, 1]);
        for q in 0..=2 {
            assert!(k.module(q).unwrap().twists().iter().all(|&t| t == -q));
        }
        let e = k.expand();
        e.validate().unwrap();
        assert_eq!(e.degrees().map(|n| e.dim(n)).collect::<Vec<_>>(), vec![3, 6, 3]);
        assert_eq!(homology_degrees(&e, 0), BTreeMap::from([(0, 1)]));
        assert_eq!(homology_degrees(&e, 1), BTreeMap::from([(2, 3)]));
        assert_eq!(homology_degrees(&e, 2), BTreeMap::from([(3, 2)]));
    }

    #[test]
    fn koszul_of_truncated_polynomial_ring() {
        for big_n in 2..5 {
            let rel = alloc::format!("x^{big_n}");
            let k = koszul_complex(algebra(FieldSpec::Rationals, &["x"], &[&rel]));
            let e = k.expand();
            assert_eq!(homology_degrees(&e, 0), BTreeMap::from([(0, 1)]));
            assert_eq!(homology_degrees(&e, 1), BTreeMap::from([(big_n as i64, 1)]));
        }
    }

    #[test]
    fn resolution_of_residue_field() {
        let f = FieldSpec::prime(101).unwrap();
        let res = minimal_free_resolution(square_zero(f), 6);
        assert_eq!(res.ranks(), vec![1, 2, 4, 8, 16, 32, 64]);
        for p in 0..=6 {
            assert!(res.module(p).unwrap().twists().iter().all(|&t| t == -p));
        }
        assert!(res.is_minimal());
        let e = res.expand();
        e.validate().unwrap();
        assert_eq!(homology_degrees(&e, 0), BTreeMap::from([(0, 1)]));
        for n in 1..6 {
            assert_eq!(e.homology_dim(n), 0, "H_{n}");
        }
    }

    #[test]
    fn resolution_over_the_field_itself() {
        let k = algebra(FieldSpec::Rationals, &[], &[]);
        assert_eq!(k.dims(), vec![1]);
        let res = minimal_free_resolution(k, 3);
        assert_eq!(res.ranks(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn resolution_of_truncated_polynomial_ring_is_periodic() {
        // over k[x]/(x^3): generators in degrees 0, 1, 3, 4, 6, ...
        let res = minimal_free_resolution(algebra(FieldSpec::Rationals, &["x"], &["x^3"]), 4);
        let degrees: Vec<i64> = (0..=4).map(|p| res.module(p).unwrap().generator_degree(0)).collect();
        assert_eq!(degrees, vec![0, 1, 3, 4, 6]);
        assert_eq!(res.ranks(), vec![1; 5]);
    }

    #[test]
    fn homogeneity_is_enforced() {
        let a = square_zero(FieldSpec::Rationals);
        let m0 = GradedFreeModule::new(vec![0]);
        let m1 = GradedFreeModule::new(vec![-2]);
        assert!(GradedModuleMap::new(m1.clone(), m0.clone(), [((0, 0), a.variable(0))]).is_err());
        assert!(GradedModuleMap::new(m1, m0, [((1, 0), a.variable(0))]).is_err());
    }

    #[test]
    fn tensor_dims_and_validity() {
        let a = square_zero(FieldSpec::Rationals);
        let f = minimal_free_resolution(a.clone(), 2);
        let k = koszul_complex(a);
        let t = f.tensor(&k).unwrap();
        // ranks of F ⊗_R K: (1,2,4) ⊗ (1,2,1)
        assert_eq!(t.ranks(), vec![1, 4, 9, 10, 4]);
        let e = t.expand();
        e.validate().unwrap();
        for n in e.degrees() {
            assert_eq!(e.dim(n), 3 * t.rank(n));
        }
    }

    #[test]
    fn seeing_cancellations() {
        let a = square_zero(FieldSpec::prime(101).unwrap());
        let f = minimal_free_resolution(a.clone(), 6);
        let k = koszul_complex(a);
        let ss = SpectralSequence::new(tensor_filtration(&f, &k, FilterBy::First).unwrap());
        assert_eq!(image_length(&ss, 2, 3, 0).unwrap().total, 6);
        assert_eq!(image_length(&ss, 3, 3, 0).unwrap().total, 2);
    }
}
