//! Text formats: triplet matrices, complexes, filtered complexes and
//! simplicial complexes. All readers work on a [`Cursor`] so errors carry the
//! line and column of the offending token.

use std::fmt::{self, Write as _};

use specseq_core::complex::{ChainComplex, Label};
use specseq_core::filtered::FilteredComplex;
use specseq_core::linalg::{Matrix, SparseVec, Subspace};
use specseq_core::simplicial::SimplicialComplex;
use specseq_core::FieldSpec;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// A token and its 1-based column.
#[derive(Clone, Copy, Debug)]
pub struct Token<'a> {
    pub column: usize,
    pub text: &'a str,
}

#[derive(Clone, Debug)]
pub struct Line<'a> {
    pub number: usize,
    pub tokens: Vec<Token<'a>>,
}

impl<'a> Line<'a> {
    fn new(number: usize, raw: &'a str) -> Self {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (i, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    tokens.push(Token { column: body[..s].chars().count() + 1, text: &body[s..i] });
                    start = None;
                }
                _ => {}
            }
        }
        Line { number, tokens }
    }

    pub fn keyword(&self) -> &'a str {
        self.tokens[0].text
    }

    pub fn error(&self, index: usize, message: impl Into<String>) -> ParseError {
        let column = self.tokens.get(index).map_or_else(|| self.end_column(), |t| t.column);
        ParseError { line: self.number, column, message: message.into() }
    }

    fn end_column(&self) -> usize {
        self.tokens.last().map_or(1, |t| t.column + t.text.chars().count())
    }

    /// Requires exactly `n` tokens after the keyword.
    pub fn expect_args(&self, n: usize) -> Result<(), ParseError> {
        match self.tokens.len() - 1 {
            k if k < n => Err(self.error(k + 1, format!("`{}` needs {n} argument(s)", self.keyword()))),
            k if k > n => Err(self.error(n + 1, "unexpected extra token")),
            _ => Ok(()),
        }
    }

    pub fn int<T: std::str::FromStr>(&self, index: usize) -> Result<T, ParseError> {
        let tok = self.tokens.get(index).ok_or_else(|| self.error(index, "missing number"))?;
        tok.text.parse().map_err(|_| self.error(index, format!("expected an integer, found `{}`", tok.text)))
    }

    pub fn field(&self, index: usize) -> Result<FieldSpec, ParseError> {
        let tok = self.tokens.get(index).ok_or_else(|| self.error(index, "missing field"))?;
        tok.text.parse().map_err(|e| self.error(index, format!("{e}")))
    }

    /// The raw text after token `index`, joined by single spaces.
    pub fn rest(&self, index: usize) -> String {
        self.tokens.iter().skip(index).map(|t| t.text).collect::<Vec<_>>().join(" ")
    }
}

/// Non-blank, comment-stripped lines with their original numbers.
pub struct Cursor<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
    last_line: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(text: &'a str) -> Self {
        let lines: Vec<Line<'a>> =
            text.lines().enumerate().map(|(i, l)| Line::new(i + 1, l)).filter(|l| !l.tokens.is_empty()).collect();
        Cursor { lines, pos: 0, last_line: text.lines().count().max(1) }
    }

    pub fn peek(&self) -> Option<&Line<'a>> {
        self.lines.get(self.pos)
    }

    pub fn peek_keyword(&self) -> Option<&'a str> {
        self.peek().map(Line::keyword)
    }

    pub fn next_line(&mut self) -> Option<Line<'a>> {
        let l = self.lines.get(self.pos).cloned();
        self.pos += 1;
        l
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.lines.len()
    }

    pub fn eof_error(&self, message: impl Into<String>) -> ParseError {
        ParseError { line: self.last_line, column: 1, message: message.into() }
    }

    pub fn expect(&mut self, keyword: &str) -> Result<Line<'a>, ParseError> {
        match self.next_line() {
            Some(l) if l.keyword() == keyword => Ok(l),
            Some(l) => Err(l.error(0, format!("expected `{keyword}`, found `{}`", l.keyword()))),
            None => Err(self.eof_error(format!("expected `{keyword}`, found end of input"))),
        }
    }
}

/// Reads a triplet block: a header `rows cols field`, then one `row col
/// scalar` line per nonzero entry. Entries are read in `field`; the header's
/// field must be `declared`.
pub fn read_matrix(cur: &mut Cursor, declared: FieldSpec, field: FieldSpec) -> Result<Matrix, ParseError> {
    let header = cur.next_line().ok_or_else(|| cur.eof_error("expected a matrix header `rows cols field`"))?;
    header.expect_args(2)?;
    let rows: usize = header.int(0)?;
    let cols: usize = header.int(1)?;
    let f = header.field(2)?;
    if f != declared {
        return Err(header.error(2, format!("matrix over {f} in a {declared} scenario")));
    }
    let mut triplets = Vec::new();
    while let Some(l) = cur.peek() {
        if !l.keyword().starts_with(|c: char| c.is_ascii_digit()) {
            break;
        }
        let l = cur.next_line().unwrap();
        l.expect_args(2)?;
        let (r, c): (usize, usize) = (l.int(0)?, l.int(1)?);
        if r >= rows || c >= cols {
            return Err(l.error(0, format!("entry ({r}, {c}) outside a {rows}x{cols} matrix")));
        }
        let v = field.parse_scalar(l.tokens[2].text).map_err(|e| l.error(2, e.to_string()))?;
        triplets.push((r, c, v));
    }
    Matrix::from_triplets(field, rows, cols, triplets).map_err(|e| header.error(0, e.to_string()))
}

pub fn write_matrix(out: &mut String, m: &Matrix) {
    let _ = writeln!(out, "{} {} {}", m.rows(), m.cols(), m.field());
    for (r, c, v) in m.triplets() {
        let _ = writeln!(out, "{r} {c} {v}");
    }
}

/// The parts of a complex as written in a file, not yet validated.
#[derive(Clone, Debug)]
pub struct ComplexSpec {
    pub field: FieldSpec,
    pub lo: i64,
    pub terms: Vec<Vec<Label>>,
    pub diffs: Vec<Matrix>,
}

impl ComplexSpec {
    pub fn build(&self) -> specseq_core::Result<ChainComplex> {
        ChainComplex::new(self.field, self.lo, self.terms.clone(), self.diffs.clone())
    }

    fn dim(&self, n: i64) -> usize {
        usize::try_from(n - self.lo).ok().and_then(|k| self.terms.get(k)).map_or(0, Vec::len)
    }
}

/// ```text
/// complex <lo> <hi>
/// labels <n> <label>...
/// diff <n>
/// <triplet block>
/// end
/// ```
pub fn read_complex(cur: &mut Cursor, declared: FieldSpec, field: FieldSpec) -> Result<ComplexSpec, ParseError> {
    let head = cur.expect("complex")?;
    head.expect_args(2)?;
    let (lo, hi): (i64, i64) = (head.int(1)?, head.int(2)?);
    if hi < lo {
        return Err(head.error(2, "hi is below lo"));
    }
    let len = (hi - lo + 1) as usize;
    let mut terms: Vec<Option<Vec<Label>>> = vec![None; len];
    let mut diffs: Vec<Option<(Line, Matrix)>> = vec![None; len];
    loop {
        let l = cur.next_line().ok_or_else(|| cur.eof_error("unterminated complex block (missing `end`)"))?;
        match l.keyword() {
            "end" => break,
            "labels" => {
                let n: i64 = l.int(1)?;
                if n < lo || n > hi {
                    return Err(l.error(1, format!("degree {n} outside {lo}..{hi}")));
                }
                let slot = &mut terms[(n - lo) as usize];
                if slot.is_some() {
                    return Err(l.error(1, format!("labels for degree {n} given twice")));
                }
                *slot = Some(l.tokens[2..].iter().map(|t| Label::name(t.text)).collect());
            }
            "diff" => {
                l.expect_args(1)?;
                let n: i64 = l.int(1)?;
                if n <= lo || n > hi {
                    return Err(l.error(1, format!("no differential out of degree {n} in {lo}..{hi}")));
                }
                let m = read_matrix(cur, declared, field)?;
                diffs[(n - lo) as usize] = Some((l, m));
            }
            other => return Err(l.error(0, format!("unknown complex directive `{other}`"))),
        }
    }
    let terms: Vec<Vec<Label>> = terms.into_iter().map(Option::unwrap_or_default).collect();
    let spec_dims: Vec<usize> = terms.iter().map(Vec::len).collect();
    let mut out = Vec::new();
    for (k, d) in diffs.into_iter().enumerate().skip(1) {
        match d {
            Some((l, m)) => {
                if m.rows() != spec_dims[k - 1] || m.cols() != spec_dims[k] {
                    return Err(l.error(
                        1,
                        format!(
                            "differential out of degree {} must be {}x{}, found {}x{}",
                            lo + k as i64,
                            spec_dims[k - 1],
                            spec_dims[k],
                            m.rows(),
                            m.cols()
                        ),
                    ));
                }
                out.push(m);
            }
            None => out.push(Matrix::zero(field, spec_dims[k - 1], spec_dims[k])),
        }
    }
    Ok(ComplexSpec { field, lo, terms, diffs: out })
}

pub fn write_complex(out: &mut String, c: &ChainComplex) {
    let _ = writeln!(out, "complex {} {}", c.lo(), c.hi());
    for n in c.degrees() {
        let labels: Vec<String> = c.labels(n).iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "labels {n}{}{}", if labels.is_empty() { "" } else { " " }, labels.join(" "));
    }
    for n in c.degrees().skip(1) {
        let _ = writeln!(out, "diff {n}");
        write_matrix(out, &c.diff(n));
    }
    out.push_str("end\n");
}

/// A complex block followed by a filtration block, not yet validated.
#[derive(Clone, Debug)]
pub struct FilteredSpec {
    pub complex: ComplexSpec,
    pub p_min: i64,
    /// `layers[p - p_min][n - lo]`.
    pub layers: Vec<Vec<Subspace>>,
}

impl FilteredSpec {
    pub fn build(&self) -> specseq_core::Result<FilteredComplex> {
        FilteredComplex::new(self.complex.build()?, self.p_min, self.layers.clone())
    }
}

/// ```text
/// filtration <p_min> <p_max>
/// layer <p> <n> full|zero
/// layer <p> <n>
/// <triplet block whose columns span the layer>
/// end
/// ```
/// Layers not mentioned are zero, except at `p_max` where they are full.
pub fn read_filtration(
    cur: &mut Cursor,
    complex: ComplexSpec,
    declared: FieldSpec,
    field: FieldSpec,
) -> Result<FilteredSpec, ParseError> {
    let head = cur.expect("filtration")?;
    head.expect_args(2)?;
    let (p_min, p_max): (i64, i64) = (head.int(1)?, head.int(2)?);
    if p_max < p_min {
        return Err(head.error(2, "p_max is below p_min"));
    }
    let (lo, hi) = (complex.lo, complex.lo + complex.terms.len() as i64 - 1);
    let mut layers: Vec<Vec<Subspace>> = (p_min..=p_max)
        .map(|p| {
            (lo..=hi)
                .map(|n| {
                    let dim = complex.dim(n);
                    if p == p_max { Subspace::full(field, dim) } else { Subspace::zero(field, dim) }
                })
                .collect()
        })
        .collect();
    loop {
        let l = cur.next_line().ok_or_else(|| cur.eof_error("unterminated filtration block (missing `end`)"))?;
        match l.keyword() {
            "end" => break,
            "layer" => {
                let (p, n): (i64, i64) = (l.int(1)?, l.int(2)?);
                if p < p_min || p > p_max {
                    return Err(l.error(1, format!("level {p} outside {p_min}..{p_max}")));
                }
                if n < lo || n > hi {
                    return Err(l.error(2, format!("degree {n} outside {lo}..{hi}")));
                }
                let dim = complex.dim(n);
                let s = match l.tokens.get(3).map(|t| t.text) {
                    Some("full") => Subspace::full(field, dim),
                    Some("zero") => Subspace::zero(field, dim),
                    Some(other) => return Err(l.error(3, format!("expected `full` or `zero`, found `{other}`"))),
                    None => {
                        let m = read_matrix(cur, declared, field)?;
                        if m.rows() != dim {
                            return Err(l.error(2, format!("layer vectors have {} entries, degree {n} has dimension {dim}", m.rows())));
                        }
                        m.image()
                    }
                };
                if l.tokens.len() > 4 {
                    return Err(l.error(4, "unexpected extra token"));
                }
                layers[(p - p_min) as usize][(n - lo) as usize] = s;
            }
            other => return Err(l.error(0, format!("unknown filtration directive `{other}`"))),
        }
    }
    Ok(FilteredSpec { complex, p_min, layers })
}

pub fn write_filtered(out: &mut String, f: &FilteredComplex) {
    write_complex(out, f.ambient());
    let _ = writeln!(out, "filtration {} {}", f.p_min(), f.p_max());
    for p in f.p_min()..=f.p_max() {
        for n in f.ambient().degrees() {
            let s = f.layer(p, n);
            if s.is_full() {
                let _ = writeln!(out, "layer {p} {n} full");
            } else if s.is_zero() {
                let _ = writeln!(out, "layer {p} {n} zero");
            } else {
                let _ = writeln!(out, "layer {p} {n}");
                write_matrix(out, &s.basis_matrix());
            }
        }
    }
    out.push_str("end\n");
}

/// One line of ordered vertices, then one facet per line. A line holding
/// only `{}` is the empty face.
pub fn read_simplicial(text: &str) -> Result<SimplicialComplex, ParseError> {
    let mut cur = Cursor::new(text);
    let head = cur.next_line().ok_or_else(|| cur.eof_error("expected a vertex line"))?;
    let vertices: Vec<&str> = head.tokens.iter().map(|t| t.text).collect();
    let mut facets: Vec<Vec<&str>> = Vec::new();
    while let Some(l) = cur.next_line() {
        if l.tokens.len() == 1 && l.keyword() == "{}" {
            facets.push(Vec::new());
            continue;
        }
        for (i, t) in l.tokens.iter().enumerate() {
            if !vertices.contains(&t.text) {
                return Err(l.error(i, format!("unknown vertex `{}`", t.text)));
            }
        }
        facets.push(l.tokens.iter().map(|t| t.text).collect());
    }
    SimplicialComplex::new(&vertices, &facets).map_err(|e| head.error(0, e.to_string()))
}

pub fn write_simplicial(k: &SimplicialComplex) -> String {
    let mut out = k.vertices().join(" ");
    out.push('\n');
    for f in k.facets() {
        if f.is_empty() {
            out.push_str("{}");
        } else {
            out.push_str(&f.iter().map(|&v| k.vertices()[v].as_str()).collect::<Vec<_>>().join(" "));
        }
        out.push('\n');
    }
    out
}

/// Sparse column vectors printed as `index:value` pairs, for diagnostics.
pub struct VectorDisplay<'a>(pub &'a SparseVec);

impl fmt::Display for VectorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(i, v)| format!("{i}:{v}")).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}
