//! Bounded increasing filtrations of chain complexes by subcomplexes.

use alloc::borrow::Cow;
use alloc::vec::Vec;

use crate::complex::{ChainComplex, ChainMap, HomLayout, TensorLayout};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{SparseVec, Subspace};
use crate::simplicial::{inclusion_map, SimplicialComplex};

/// An ambient complex with layers `F_p C_n` for `p_min ≤ p ≤ p_max`.
///
/// Layers below `p_min` are zero and layers above `p_max` are the full term;
/// queries outside the stored range answer accordingly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    ambient: ChainComplex,
    p_min: i64,
    p_max: i64,
    /// layers[p - p_min][n - lo]
    layers: Vec<Vec<Subspace>>,
}

impl FilteredComplex {
    /// Builds and validates a filtration. `layers[k][m]` is the layer with
    /// `p = p_min + k` in degree `n = ambient.lo() + m`.
    pub fn new(ambient: ChainComplex, p_min: i64, layers: Vec<Vec<Subspace>>) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::InvalidFiltration("at least one filtration level is required".into()));
        }
        let width = ambient.degrees().count();
        for (k, row) in layers.iter().enumerate() {
            if row.len() != width {
                return Err(Error::InvalidFiltration(alloc::format!(
                    "level {} has {} degrees, ambient has {}",
                    p_min + k as i64,
                    row.len(),
                    width
                )));
            }
            for (m, s) in row.iter().enumerate() {
                let n = ambient.lo() + m as i64;
                if s.field() != ambient.field() {
                    return Err(Error::MixedFields);
                }
                if s.ambient_dim() != ambient.dim(n) {
                    return Err(Error::AmbientMismatch { expected: ambient.dim(n), found: s.ambient_dim() });
                }
            }
        }
        let p_max = p_min + layers.len() as i64 - 1;
        let f = FilteredComplex { ambient, p_min, p_max, layers };
        f.validate()?;
        Ok(f)
    }

    /// Checks nesting, exhaustion at `p_max`, and closure under the differential.
    pub fn validate(&self) -> Result<()> {
        for n in self.ambient.degrees() {
            if !self.layer(self.p_max, n).is_full() {
                return Err(Error::InvalidFiltration(alloc::format!(
                    "top level {} is not the whole term in degree {n}",
                    self.p_max
                )));
            }
            for p in self.p_min + 1..=self.p_max {
                if !self.layer(p - 1, n).is_subspace_of(&self.layer(p, n))? {
                    return Err(Error::NotNested);
                }
            }
            let d = self.ambient.diff(n);
            for p in self.p_min..=self.p_max {
                let target = self.layer(p, n - 1);
                if !self.layer(p, n).basis().iter().all(|v| target.contains(&d.apply(v))) {
                    return Err(Error::InvalidFiltration(alloc::format!(
                        "layer {p} is not closed under the differential in degree {n}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> FieldSpec {
        self.ambient.field()
    }

    pub fn ambient(&self) -> &ChainComplex {
        &self.ambient
    }

    pub fn p_min(&self) -> i64 {
        self.p_min
    }

    pub fn p_max(&self) -> i64 {
        self.p_max
    }

    pub fn width(&self) -> i64 {
        self.p_max - self.p_min
    }

    /// `F_p C_n`; full above `p_max`, zero below `p_min`.
    pub fn layer(&self, p: i64, n: i64) -> Cow<'_, Subspace> {
        let dim = self.ambient.dim(n);
        if n < self.ambient.lo() || n > self.ambient.hi() {
            return Cow::Owned(Subspace::zero(self.field(), dim));
        }
        if p < self.p_min {
            return Cow::Owned(Subspace::zero(self.field(), dim));
        }
        if p > self.p_max {
            return Cow::Owned(Subspace::full(self.field(), dim));
        }
        Cow::Borrowed(&self.layers[(p - self.p_min) as usize][(n - self.ambient.lo()) as usize])
    }

    /// `dim F_p C_n - dim F_{p-1} C_n`.
    pub fn graded_piece_dim(&self, p: i64, n: i64) -> usize {
        self.layer(p, n).dim() - self.layer(p - 1, n).dim()
    }

    /// Filtration whose layers are spans of basis vectors: basis element `k`
    /// of degree `n` enters at level `levels[n - lo][k]`.
    pub fn from_basis_levels(ambient: ChainComplex, levels: &[Vec<i64>]) -> Result<Self> {
        let field = ambient.field();
        let all = levels.iter().flatten();
        let (Some(&p_min), Some(&p_max)) = (all.clone().min(), all.max()) else {
            return FilteredComplex::trivial(ambient);
        };
        let layers = (p_min..=p_max)
            .map(|p| {
                ambient
                    .degrees()
                    .zip(levels)
                    .map(|(n, lv)| {
                        Subspace::coordinate(
                            field,
                            ambient.dim(n),
                            lv.iter().enumerate().filter(|(_, l)| **l <= p).map(|(k, _)| k),
                        )
                    })
                    .collect()
            })
            .collect();
        FilteredComplex::new(ambient, p_min, layers)
    }

    /// One level, `F_0 = C`.
    pub fn trivial(ambient: ChainComplex) -> Result<Self> {
        let layers = alloc::vec![ambient.degrees().map(|n| Subspace::full(ambient.field(), ambient.dim(n))).collect()];
        FilteredComplex::new(ambient, 0, layers)
    }

    /// Filtration by the images of maps into a common target. The first map
    /// gets the top index `p_min + maps.len() - 1`, the next one less, and so on.
    pub fn from_chain_maps(maps: &[ChainMap]) -> Result<Self> {
        FilteredComplex::from_chain_maps_at(maps, 0)
    }

    pub fn from_chain_maps_at(maps: &[ChainMap], p_min: i64) -> Result<Self> {
        let Some(first) = maps.first() else {
            return Err(Error::InvalidFiltration("no maps given".into()));
        };
        let ambient = first.target().clone();
        for m in maps {
            if m.target().field() != ambient.field() {
                return Err(Error::MixedFields);
            }
            if *m.target() != ambient {
                return Err(Error::InvalidFiltration("maps do not share a common target".into()));
            }
        }
        let images: Vec<Vec<Subspace>> =
            maps.iter().map(|m| ambient.degrees().map(|n| m.image(n)).collect()).collect();
        for a in 0..images.len() {
            for b in a + 1..images.len() {
                let below = images[b].iter().zip(&images[a]).all(|(x, y)| x.is_subspace_of(y) == Ok(true));
                let above = images[a].iter().zip(&images[b]).all(|(x, y)| x.is_subspace_of(y) == Ok(true));
                if !below && !above {
                    return Err(Error::NotNested);
                }
            }
        }
        // listed top first; the stored order is bottom first
        let mut layers = images;
        layers.reverse();
        FilteredComplex::new(ambient, p_min, layers)
    }

    /// `complexes[0]` is the whole space; each later entry is a subcomplex of it
    /// and sits one filtration level lower.
    pub fn from_simplicial(complexes: &[SimplicialComplex], field: FieldSpec) -> Result<Self> {
        let Some(top) = complexes.first() else {
            return Err(Error::InvalidFiltration("no complexes given".into()));
        };
        let maps = complexes
            .iter()
            .map(|s| inclusion_map(s, top, field))
            .collect::<Result<Vec<_>>>()?;
        FilteredComplex::from_chain_maps(&maps)
    }

    /// Brutal truncation from above: `F_p C_n = C_n` for `n ≤ p`, else 0.
    pub fn truncation(c: &ChainComplex) -> Result<Self> {
        if c.degrees().count() == 0 {
            return FilteredComplex::trivial(c.clone());
        }
        let layers = c
            .degrees()
            .map(|p| {
                c.degrees()
                    .map(|n| if n <= p { Subspace::full(c.field(), c.dim(n)) } else { Subspace::zero(c.field(), c.dim(n)) })
                    .collect()
            })
            .collect();
        FilteredComplex::new(c.clone(), c.lo(), layers)
    }

    /// `c ⊗ F_p D`: the filtration of `c ⊗ D` induced from the second factor.
    pub fn tensor_filtration(c: &ChainComplex, fd: &FilteredComplex) -> Result<Self> {
        if c.field() != fd.field() {
            return Err(Error::MixedFields);
        }
        let d = fd.ambient();
        let ambient = c.tensor(d)?;
        let layout = TensorLayout::new(c, d);
        let layers = (fd.p_min..=fd.p_max)
            .map(|p| {
                ambient
                    .degrees()
                    .map(|n| {
                        let mut vs: Vec<SparseVec> = Vec::new();
                        for i in layout.blocks(n) {
                            let sub = fd.layer(p, n - i);
                            for a in 0..c.dim(i) {
                                let start = layout.offset(n, i, a, 0);
                                vs.extend(sub.basis().iter().map(|v| crate::linalg::vector::shifted(v, start)));
                            }
                        }
                        Subspace::span(c.field(), ambient.dim(n), &vs)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        FilteredComplex::new(ambient, fd.p_min, layers)
    }

    /// `F_p C ⊗ d`: the filtration of `C ⊗ d` induced from the first factor.
    pub fn tensor_filtration_mirrored(fc: &FilteredComplex, d: &ChainComplex) -> Result<Self> {
        if d.field() != fc.field() {
            return Err(Error::MixedFields);
        }
        let c = fc.ambient();
        let ambient = c.tensor(d)?;
        let layout = TensorLayout::new(c, d);
        let layers = (fc.p_min..=fc.p_max)
            .map(|p| {
                ambient
                    .degrees()
                    .map(|n| {
                        let mut vs: Vec<SparseVec> = Vec::new();
                        for i in layout.blocks(n) {
                            let j = n - i;
                            for v in fc.layer(p, i).basis() {
                                for b in 0..d.dim(j) {
                                    vs.push(v.iter().map(|(a, x)| (layout.offset(n, i, *a, b), x.clone())).collect());
                                }
                            }
                        }
                        Subspace::span(d.field(), ambient.dim(n), &vs)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        FilteredComplex::new(ambient, fc.p_min, layers)
    }

    /// `Hom(c, F_p D)`: maps landing in the `p`-th layer of the target.
    pub fn hom_filtration(c: &ChainComplex, fd: &FilteredComplex) -> Result<Self> {
        if c.field() != fd.field() {
            return Err(Error::MixedFields);
        }
        let d = fd.ambient();
        let ambient = c.hom(d)?;
        let layout = HomLayout::new(c, d);
        let layers = (fd.p_min..=fd.p_max)
            .map(|p| {
                ambient
                    .degrees()
                    .map(|n| {
                        let mut vs: Vec<SparseVec> = Vec::new();
                        for i in layout.blocks(n) {
                            let sub = fd.layer(p, i + n);
                            for a in 0..c.dim(i) {
                                let start = layout.offset(n, i, a, 0);
                                vs.extend(sub.basis().iter().map(|v| crate::linalg::vector::shifted(v, start)));
                            }
                        }
                        Subspace::span(c.field(), ambient.dim(n), &vs)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        FilteredComplex::new(ambient, fd.p_min, layers)
    }
}
