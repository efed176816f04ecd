//! Simplicial complexes on ordered vertex sets and their (reduced) chain
//! complexes. Vertex declaration order fixes every boundary sign.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::complex::{ChainComplex, ChainMap, Label};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{Matrix, SparseVec};

/// A face is a strictly increasing list of vertex indices.
pub type Face = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    facets: Vec<Face>,
}

impl SimplicialComplex {
    /// Facets are given by vertex labels. A facet list holding only the empty
    /// face is the empty complex `{∅}`; an empty facet list (the void
    /// complex) is rejected.
    pub fn new<V: AsRef<str>, F: AsRef<str>>(vertices: &[V], facets: &[Vec<F>]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.as_str(), i).is_some() {
                return Err(Error::Invalid(alloc::format!("duplicate vertex {v}")));
            }
        }
        let mut faces = Vec::with_capacity(facets.len());
        for f in facets {
            let mut face = Vec::with_capacity(f.len());
            for v in f {
                let i = *index
                    .get(v.as_ref())
                    .ok_or_else(|| Error::Invalid(alloc::format!("unknown vertex {}", v.as_ref())))?;
                face.push(i);
            }
            faces.push(face);
        }
        SimplicialComplex::from_indices(vertices, faces)
    }

    pub fn from_indices(vertices: Vec<String>, facets: Vec<Face>) -> Result<Self> {
        if facets.is_empty() {
            return Err(Error::Invalid("the void complex (no faces at all) is not supported".into()));
        }
        let mut normalized: Vec<Face> = Vec::new();
        for mut f in facets {
            f.sort_unstable();
            let before = f.len();
            f.dedup();
            if f.len() != before {
                return Err(Error::Invalid("facet repeats a vertex".into()));
            }
            if f.last().is_some_and(|&v| v >= vertices.len()) {
                return Err(Error::Invalid("facet uses an unknown vertex".into()));
            }
            normalized.push(f);
        }
        // keep only maximal faces
        normalized.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        normalized.dedup();
        let mut facets: Vec<Face> = Vec::new();
        for f in normalized {
            if !facets.iter().any(|g| is_subset(&f, g)) {
                facets.push(f);
            }
        }
        facets.sort();
        Ok(SimplicialComplex { vertices, facets })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    /// Dimension (`-1` for the empty complex).
    pub fn dim(&self) -> i64 {
        self.facets.iter().map(|f| f.len() as i64 - 1).max().unwrap_or(-1)
    }

    pub fn contains_face(&self, face: &[usize]) -> bool {
        self.facets.iter().any(|f| is_subset(face, f))
    }

    /// All faces with `i + 1` vertices, sorted lexicographically in vertex order.
    pub fn faces(&self, i: i64) -> Vec<Face> {
        if i < -1 {
            return Vec::new();
        }
        let k = (i + 1) as usize;
        let mut out = BTreeSet::new();
        for f in &self.facets {
            if f.len() >= k {
                subsets(f, k, &mut out);
            }
        }
        out.into_iter().collect()
    }

    pub fn face_name(&self, face: &[usize]) -> String {
        if face.is_empty() {
            return "{}".to_string();
        }
        face.iter().map(|&v| self.vertices[v].as_str()).collect()
    }

    /// Reduced simplicial chain complex: the empty face spans degree `-1`.
    pub fn reduced_chain_complex(&self, field: FieldSpec) -> ChainComplex {
        self.chain_complex(field, true)
    }

    pub fn chain_complex(&self, field: FieldSpec, reduced: bool) -> ChainComplex {
        let lo = if reduced { -1 } else { 0 };
        let top = self.dim().max(lo);
        let faces: Vec<Vec<Face>> = (lo..=top).map(|i| self.faces(i)).collect();
        let terms: Vec<Vec<Label>> = faces
            .iter()
            .map(|fs| fs.iter().map(|f| Label::Name(self.face_name(f))).collect())
            .collect();
        let mut diffs = Vec::new();
        for k in 1..faces.len() {
            let lookup: BTreeMap<&Face, usize> = faces[k - 1].iter().enumerate().map(|(i, f)| (f, i)).collect();
            let columns: Vec<SparseVec> = faces[k]
                .iter()
                .map(|f| {
                    (0..f.len())
                        .map(|j| {
                            let mut g = f.clone();
                            g.remove(j);
                            (lookup[&g], field.sign(j as i64))
                        })
                        .collect()
                })
                .collect();
            diffs.push(Matrix::from_columns(field, faces[k - 1].len(), columns).expect("faces index rows"));
        }
        ChainComplex::new_unchecked(field, lo, terms, diffs).expect("boundary shapes match face counts")
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

fn subsets(f: &[usize], k: usize, out: &mut BTreeSet<Face>) {
    fn go(f: &[usize], k: usize, start: usize, cur: &mut Face, out: &mut BTreeSet<Face>) {
        if cur.len() == k {
            out.insert(cur.clone());
            return;
        }
        for i in start..f.len() {
            if f.len() - i < k - cur.len() {
                break;
            }
            cur.push(f[i]);
            go(f, k, i + 1, cur, out);
            cur.pop();
        }
    }
    go(f, k, 0, &mut Vec::with_capacity(k), out);
}

/// The inclusion of reduced chain complexes induced by `sub ⊆ sup`. Vertices
/// are matched by label; if `sub` orders them differently the basis map
/// carries the sign of the reordering.
pub fn inclusion_map(sub: &SimplicialComplex, sup: &SimplicialComplex, field: FieldSpec) -> Result<ChainMap> {
    inclusion_map_with(sub, sup, field, true)
}

pub fn inclusion_map_with(
    sub: &SimplicialComplex,
    sup: &SimplicialComplex,
    field: FieldSpec,
    reduced: bool,
) -> Result<ChainMap> {
    let position: BTreeMap<&str, usize> = sup.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let source = sub.chain_complex(field, reduced);
    let target = sup.chain_complex(field, reduced);
    let mut components = BTreeMap::new();
    for n in source.degrees() {
        let sup_faces = sup.faces(n);
        let lookup: BTreeMap<&Face, usize> = sup_faces.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut columns = Vec::new();
        for face in sub.faces(n) {
            let mut mapped = Vec::with_capacity(face.len());
            for &v in &face {
                let label = sub.vertices[v].as_str();
                let Some(&w) = position.get(label) else {
                    return Err(Error::NotASubcomplex { face: sub.face_name(&face) });
                };
                mapped.push(w);
            }
            let inversions = (0..mapped.len())
                .flat_map(|i| (i + 1..mapped.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| mapped[i] > mapped[j])
                .count();
            mapped.sort_unstable();
            let Some(&row) = lookup.get(&mapped) else {
                return Err(Error::NotASubcomplex { face: sub.face_name(&face) });
            };
            columns.push(alloc::vec![(row, field.sign(inversions as i64))]);
        }
        components.insert(n, Matrix::from_columns(field, sup_faces.len(), columns)?);
    }
    ChainMap::new(source, target, components)
}
