//! Random bounded complexes and filtrations shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use specseq_core::complex::{ChainComplex, Label};
use specseq_core::filtered::FilteredComplex;
use specseq_core::linalg::{Matrix, SparseVec, Subspace};
use specseq_core::{FieldSpec, Scalar};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn f101() -> FieldSpec {
    FieldSpec::prime(101).unwrap()
}

pub fn fields() -> [FieldSpec; 2] {
    [FieldSpec::Rationals, f101()]
}

pub fn nonzero(field: FieldSpec, rng: &mut impl Rng) -> Scalar {
    loop {
        let v = rng.gen_range(-4i64..=4);
        if v != 0 {
            let s = field.from_i64(v);
            if !field.is_zero(&s) {
                return s;
            }
        }
    }
}

pub fn labels(prefix: &str, n: i64, dim: usize) -> Vec<Label> {
    (0..dim).map(|k| Label::name(format!("{prefix}{n}_{k}"))).collect()
}

/// A random invertible `n × n` matrix together with its inverse, built from
/// transvections `I + c·e_ij` allowed by `ok(i, j)`.
pub fn invertible(
    field: FieldSpec,
    rng: &mut impl Rng,
    n: usize,
    ok: impl Fn(usize, usize) -> bool,
) -> (Matrix, Matrix) {
    let mut g = Matrix::identity(field, n);
    let mut inv = Matrix::identity(field, n);
    if n < 2 {
        return (g, inv);
    }
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j || !ok(i, j) {
            continue;
        }
        let c = nonzero(field, rng);
        let e = Matrix::from_triplets(field, n, n, [(i, j, c.clone())]).unwrap();
        let id = Matrix::identity(field, n);
        g = id.add(&e).unwrap().mul(&g).unwrap();
        inv = inv.mul(&id.sub(&e).unwrap()).unwrap();
    }
    (g, inv)
}

/// Basis element `(degree, index)` with a filtration level.
struct Cell {
    degree: usize,
    level: i64,
}

/// A random filtered complex in degrees `0..len`: a direct sum of pieces
/// `x → y` (`level(y) ≤ level(x)`) and single cells, conjugated first by a
/// filtration-preserving change of basis and then by an arbitrary one, so
/// neither the differential nor the layers are coordinate-aligned.
pub fn random_filtered(field: FieldSpec, rng: &mut impl Rng, len: usize, max_dim: usize, width: i64) -> FilteredComplex {
    let p_min = rng.gen_range(-2..=1);
    let mut cells: Vec<Cell> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new(); // (source cell, target cell)
    let mut dims = vec![0usize; len];
    let budget = rng.gen_range(1..=len * max_dim);
    for _ in 0..budget {
        let degree = rng.gen_range(0..len);
        let level = p_min + rng.gen_range(0..width);
        if degree > 0 && rng.gen_bool(0.6) && dims[degree] < max_dim && dims[degree - 1] < max_dim {
            let low = p_min + rng.gen_range(0..=(level - p_min));
            cells.push(Cell { degree, level });
            cells.push(Cell { degree: degree - 1, level: low });
            edges.push((cells.len() - 2, cells.len() - 1));
            dims[degree] += 1;
            dims[degree - 1] += 1;
        } else if dims[degree] < max_dim {
            cells.push(Cell { degree, level });
            dims[degree] += 1;
        }
    }
    // position of each cell inside its degree, ordered by level
    let mut order: Vec<usize> = (0..cells.len()).collect();
    order.sort_by_key(|&c| (cells[c].degree, cells[c].level, c));
    let mut position = vec![0; cells.len()];
    let mut seen = vec![0; len];
    for &c in &order {
        position[c] = seen[cells[c].degree];
        seen[cells[c].degree] += 1;
    }
    let levels: Vec<Vec<i64>> = (0..len)
        .map(|n| {
            let mut lv = vec![0; dims[n]];
            for (c, cell) in cells.iter().enumerate() {
                if cell.degree == n {
                    lv[position[c]] = cell.level;
                }
            }
            lv
        })
        .collect();
    let mut diffs: Vec<Matrix> = (1..len).map(|n| Matrix::zero(field, dims[n - 1], dims[n])).collect();
    for &(s, t) in &edges {
        let n = cells[s].degree;
        let c = nonzero(field, rng);
        let m = Matrix::from_triplets(field, dims[n - 1], dims[n], [(position[t], position[s], c)]).unwrap();
        diffs[n - 1] = diffs[n - 1].add(&m).unwrap();
    }
    // filtration-preserving change of basis, then a generic one
    let mut changes = Vec::new();
    for n in 0..len {
        let lv = levels[n].clone();
        let (g, gi) = invertible(field, rng, dims[n], |i, j| lv[i] <= lv[j]);
        let (h, hi) = invertible(field, rng, dims[n], |_, _| true);
        changes.push((h.mul(&g).unwrap(), gi.mul(&hi).unwrap()));
    }
    let diffs: Vec<Matrix> = (1..len)
        .map(|n| changes[n - 1].0.mul(&diffs[n - 1]).unwrap().mul(&changes[n].1).unwrap())
        .collect();
    let terms = (0..len).map(|n| labels("c", n as i64, dims[n])).collect();
    let ambient = ChainComplex::new(field, 0, terms, diffs).unwrap();
    let p_max = p_min + width - 1;
    let layers = (p_min..=p_max)
        .map(|p| {
            (0..len)
                .map(|n| {
                    let cols: Vec<SparseVec> = levels[n]
                        .iter()
                        .enumerate()
                        .filter(|(_, &l)| l <= p)
                        .map(|(k, _)| changes[n].0.column(k).clone())
                        .collect();
                    Subspace::span(field, dims[n], &cols).unwrap()
                })
                .collect()
        })
        .collect();
    FilteredComplex::new(ambient, p_min, layers).unwrap()
}

/// A random bounded complex with `len` terms starting at `lo`.
pub fn random_complex(field: FieldSpec, rng: &mut impl Rng, lo: i64, len: usize, max_dim: usize) -> ChainComplex {
    let f = random_filtered(field, rng, len, max_dim, 1);
    let ambient = f.ambient();
    let terms = ambient.degrees().map(|n| labels("r", n + lo, ambient.dim(n))).collect();
    let diffs = ambient.degrees().skip(1).map(|n| ambient.diff(n).into_owned()).collect();
    ChainComplex::new(field, lo, terms, diffs).unwrap()
}

/// `dim H_n(layer p / layer p-1)`, computed from an explicit matrix model of
/// the quotient complex.
pub fn relative_homology_dim(f: &FilteredComplex, p: i64, n: i64) -> usize {
    use specseq_core::linalg::{quotient, QuotientPresentation};
    let piece = |m: i64| -> QuotientPresentation { quotient(&f.layer(p, m), &f.layer(p - 1, m)).unwrap() };
    let quotient_diff = |m: i64| -> Matrix {
        let (src, tgt) = (piece(m), piece(m - 1));
        let d = f.ambient().diff(m);
        let cols = src.representatives().iter().map(|v| tgt.coordinates(&d.apply(v)).unwrap()).collect();
        Matrix::from_columns(f.field(), tgt.dim(), cols).unwrap()
    };
    piece(n).dim() - quotient_diff(n).rank() - quotient_diff(n + 1).rank()
}
