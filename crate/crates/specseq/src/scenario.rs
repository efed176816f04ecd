//! Scenario files: a field, one construction, and a list of queries. The
//! grammar is documented in the repository README.

use std::sync::Arc;

use specseq_core::filtered::FilteredComplex;
use specseq_core::graded::{
    koszul_complex, minimal_free_resolution, tensor_filtration, FilterBy, GradedAlgebra, Polynomial,
};
use specseq_core::simplicial::SimplicialComplex;
use specseq_core::FieldSpec;

use crate::formats::{read_complex, read_filtration, ComplexSpec, Cursor, FilteredSpec, Line, ParseError};

#[derive(Clone, Debug)]
pub enum Factor {
    Plain(ComplexSpec),
    Filtered(FilteredSpec),
}

#[derive(Clone, Debug)]
pub enum Build {
    /// Whole complex first, then successively smaller subcomplexes.
    Simplicial(Vec<SimplicialComplex>),
    Explicit(FilteredSpec),
    Truncation(ComplexSpec),
    /// Exactly one factor is filtered.
    Tensor(Factor, Factor),
    Hom { source: ComplexSpec, target: FilteredSpec },
    /// `F ⊗_R K` for the resolution `F` of `k` and the Koszul complex `K`.
    Graded { vars: Vec<String>, relations: Vec<Polynomial>, top_bound: usize, length: usize, filter: FilterBy },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Query {
    Page(i64),
    Differential(i64, i64, i64),
    Infinity,
    Compare,
    ImageLength(i64, i64, i64),
}

#[derive(Clone, Debug)]
pub struct Scenario {
    /// The field used for all arithmetic (after any override).
    pub field: FieldSpec,
    pub build: Build,
    /// Each query with the line it came from.
    pub queries: Vec<(usize, Query)>,
}

/// The constructed object queries run against.
pub struct Built {
    pub filtered: FilteredComplex,
    /// Basis labels carry internal degrees.
    pub graded: bool,
}

impl Build {
    pub fn construct(&self, field: FieldSpec) -> specseq_core::Result<Built> {
        let plain = |filtered| Ok(Built { filtered, graded: false });
        match self {
            Build::Simplicial(levels) => plain(FilteredComplex::from_simplicial(levels, field)?),
            Build::Explicit(f) => plain(f.build()?),
            Build::Truncation(c) => plain(FilteredComplex::truncation(&c.build()?)?),
            Build::Tensor(Factor::Plain(c), Factor::Filtered(fd)) => {
                plain(FilteredComplex::tensor_filtration(&c.build()?, &fd.build()?)?)
            }
            Build::Tensor(Factor::Filtered(fc), Factor::Plain(d)) => {
                plain(FilteredComplex::tensor_filtration_mirrored(&fc.build()?, &d.build()?)?)
            }
            Build::Tensor(..) => unreachable!("the parser admits exactly one filtered factor"),
            Build::Hom { source, target } => plain(FilteredComplex::hom_filtration(&source.build()?, &target.build()?)?),
            Build::Graded { vars, relations, top_bound, length, filter } => {
                let alg = Arc::new(GradedAlgebra::build_quotient_algebra(field, vars.clone(), relations.clone(), *top_bound)?);
                let f = minimal_free_resolution(alg.clone(), *length);
                let k = koszul_complex(alg);
                Ok(Built { filtered: tensor_filtration(&f, &k, *filter)?, graded: true })
            }
        }
    }
}

const KINDS: &str = "simplicial, explicit, truncation, tensor, hom, graded";

impl Scenario {
    /// Parses a scenario. With `field_override`, arithmetic happens in that
    /// field while embedded matrix headers must still name the declared one.
    pub fn parse(text: &str, field_override: Option<FieldSpec>) -> Result<Scenario, ParseError> {
        let mut cur = Cursor::new(text);
        let head = cur.expect("field")?;
        head.expect_args(1)?;
        let declared = head.field(1)?;
        let field = field_override.unwrap_or(declared);
        let b = cur.expect("build")?;
        b.expect_args(1)?;
        let build = match b.tokens[1].text {
            "simplicial" => parse_simplicial(&mut cur)?,
            "explicit" => {
                let c = read_complex(&mut cur, declared, field)?;
                Build::Explicit(read_filtration(&mut cur, c, declared, field)?)
            }
            "truncation" => Build::Truncation(read_complex(&mut cur, declared, field)?),
            "tensor" => {
                let left = read_factor(&mut cur, declared, field)?;
                let right = read_factor(&mut cur, declared, field)?;
                match (&left, &right) {
                    (Factor::Plain(_), Factor::Filtered(_)) | (Factor::Filtered(_), Factor::Plain(_)) => {}
                    _ => return Err(b.error(1, "a tensor build needs exactly one filtered factor")),
                }
                Build::Tensor(left, right)
            }
            "hom" => {
                let source = read_complex(&mut cur, declared, field)?;
                let c = read_complex(&mut cur, declared, field)?;
                Build::Hom { source, target: read_filtration(&mut cur, c, declared, field)? }
            }
            "graded" => parse_graded(&mut cur, field)?,
            other => return Err(b.error(1, format!("unknown build kind `{other}` (expected one of {KINDS})"))),
        };
        let mut queries = Vec::new();
        if !cur.at_end() {
            cur.expect("queries")?.expect_args(0)?;
            while let Some(l) = cur.next_line() {
                queries.push((l.number, parse_query(&l)?));
            }
        }
        Ok(Scenario { field, build, queries })
    }
}

fn read_factor(cur: &mut Cursor, declared: FieldSpec, field: FieldSpec) -> Result<Factor, ParseError> {
    let c = read_complex(cur, declared, field)?;
    if cur.peek_keyword() == Some("filtration") {
        Ok(Factor::Filtered(read_filtration(cur, c, declared, field)?))
    } else {
        Ok(Factor::Plain(c))
    }
}

/// ```text
/// vertices x y z w
/// level x y z, z w
/// level x y, w
/// ```
fn parse_simplicial(cur: &mut Cursor) -> Result<Build, ParseError> {
    let v = cur.expect("vertices")?;
    if v.tokens.len() < 2 {
        return Err(v.error(1, "no vertices declared"));
    }
    let vertices: Vec<&str> = v.tokens[1..].iter().map(|t| t.text).collect();
    let mut levels = Vec::new();
    while cur.peek_keyword() == Some("level") {
        let l = cur.next_line().unwrap();
        let facets = parse_facets(&l, &vertices)?;
        let k = SimplicialComplex::new(&vertices, &facets).map_err(|e| l.error(0, e.to_string()))?;
        levels.push(k);
    }
    if levels.is_empty() {
        return Err(match cur.peek() {
            Some(l) => l.error(0, "expected at least one `level` line"),
            None => cur.eof_error("expected at least one `level` line"),
        });
    }
    Ok(Build::Simplicial(levels))
}

/// Facets separated by commas, vertices by whitespace; `{}` is the empty face.
fn parse_facets<'a>(l: &Line<'a>, vertices: &[&str]) -> Result<Vec<Vec<&'a str>>, ParseError> {
    let mut facets = vec![Vec::new()];
    for (i, t) in l.tokens.iter().enumerate().skip(1) {
        for (k, piece) in t.text.split(',').enumerate() {
            if k > 0 {
                facets.push(Vec::new());
            }
            if piece.is_empty() || piece == "{}" {
                continue;
            }
            if !vertices.contains(&piece) {
                return Err(l.error(i, format!("unknown vertex `{piece}`")));
            }
            facets.last_mut().unwrap().push(piece);
        }
    }
    Ok(facets)
}

/// ```text
/// vars x y
/// relations x^2, x*y, y^2
/// top-bound 32          (optional)
/// resolution 6
/// filter resolution|koszul
/// ```
fn parse_graded(cur: &mut Cursor, field: FieldSpec) -> Result<Build, ParseError> {
    let v = cur.expect("vars")?;
    let vars: Vec<String> = v.tokens[1..].iter().map(|t| t.text.to_string()).collect();
    let mut relations = Vec::new();
    let mut top_bound = 32;
    let mut length = None;
    let mut filter = None;
    while let Some(kw) = cur.peek_keyword() {
        if kw == "queries" {
            break;
        }
        let l = cur.next_line().unwrap();
        match kw {
            "relations" => {
                let text = l.rest(1);
                for piece in text.split(',') {
                    let p = Polynomial::parse(field, &vars, piece.trim()).map_err(|e| l.error(1, e.to_string()))?;
                    relations.push(p);
                }
            }
            "top-bound" => {
                l.expect_args(1)?;
                top_bound = l.int(1)?;
            }
            "resolution" => {
                l.expect_args(1)?;
                length = Some(l.int(1)?);
            }
            "filter" => {
                l.expect_args(1)?;
                filter = Some(match l.tokens[1].text {
                    "resolution" => FilterBy::First,
                    "koszul" => FilterBy::Second,
                    other => return Err(l.error(1, format!("expected `resolution` or `koszul`, found `{other}`"))),
                });
            }
            other => return Err(l.error(0, format!("unknown graded directive `{other}`"))),
        }
    }
    let missing = |what: &str| match cur.peek() {
        Some(l) => l.error(0, format!("graded build is missing `{what}`")),
        None => cur.eof_error(format!("graded build is missing `{what}`")),
    };
    Ok(Build::Graded {
        vars,
        relations,
        top_bound,
        length: length.ok_or_else(|| missing("resolution"))?,
        filter: filter.ok_or_else(|| missing("filter"))?,
    })
}

fn parse_query(l: &Line) -> Result<Query, ParseError> {
    let nonneg = |i: usize| -> Result<i64, ParseError> {
        let r: i64 = l.int(i)?;
        if r < 0 {
            return Err(l.error(i, "page index must be at least 0"));
        }
        Ok(r)
    };
    Ok(match l.keyword() {
        "page" => {
            l.expect_args(1)?;
            Query::Page(nonneg(1)?)
        }
        "differential" => {
            l.expect_args(3)?;
            Query::Differential(nonneg(1)?, l.int(2)?, l.int(3)?)
        }
        "image-length" => {
            l.expect_args(3)?;
            Query::ImageLength(nonneg(1)?, l.int(2)?, l.int(3)?)
        }
        "infinity" => {
            l.expect_args(0)?;
            Query::Infinity
        }
        "compare" => {
            l.expect_args(0)?;
            Query::Compare
        }
        other => {
            return Err(l.error(
                0,
                format!("unknown query `{other}` (expected page, differential, infinity, compare, image-length)"),
            ))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const DELTA: &str = "field QQ\nbuild simplicial\nvertices x y z w\nlevel x y z, z w\nlevel x y, w\nlevel x, w\n\
                         queries\npage 2\ndifferential 2 2 -1\n";

    #[test]
    fn parses_simplicial_scenario() {
        let s = Scenario::parse(DELTA, None).unwrap();
        let Build::Simplicial(levels) = &s.build else { panic!() };
        assert_eq!(levels.len(), 3);
        assert_eq!(levels[0].faces(1).len(), 4);
        assert_eq!(s.queries, vec![(8, Query::Page(2)), (9, Query::Differential(2, 2, -1))]);
        let built = s.build.construct(s.field).unwrap();
        assert_eq!(built.filtered.p_max(), 2);
    }

    #[test]
    fn field_override() {
        let s = Scenario::parse(DELTA, Some(FieldSpec::prime(3).unwrap())).unwrap();
        assert_eq!(s.field, FieldSpec::prime(3).unwrap());
    }

    #[test]
    fn no_queries_section_means_no_queries() {
        let s = Scenario::parse("field QQ\nbuild simplicial\nvertices a\nlevel a\n", None).unwrap();
        assert!(s.queries.is_empty());
    }

    #[test]
    fn errors_carry_positions() {
        let cases = [
            ("build simplicial\n", 1, 1),
            ("field QQ\nbuild cubes\n", 2, 7),
            ("field QQ\nbuild simplicial\nvertices x y\nlevel x q\n", 4, 9),
            ("field QQ\nbuild simplicial\nvertices x\nlevel x\nqueries\npage -1\n", 6, 6),
            ("field QQ\nbuild simplicial\nvertices x\nlevel x\nqueries\npages 1\n", 6, 1),
            ("field QQ\nbuild simplicial\nvertices x\nlevel x\nqueries\npage 1 2\n", 6, 8),
            ("field ZZ/4\n", 1, 7),
            ("field QQ\nbuild graded\nvars x\nrelations x^3 + \nresolution 2\nfilter koszul\n", 4, 11),
            ("field QQ\nbuild graded\nvars x\nrelations x^3\nfilter koszul\n", 5, 1),
        ];
        for (text, line, column) in cases {
            let e = Scenario::parse(text, None).unwrap_err();
            assert_eq!((e.line, e.column), (line, column), "{text:?}: {e}");
        }
    }

    #[test]
    fn tensor_needs_one_filtered_factor() {
        let c = "complex 0 0\nlabels 0 a\nend\n";
        let text = format!("field QQ\nbuild tensor\n{c}{c}");
        assert!(Scenario::parse(&text, None).unwrap_err().message.contains("exactly one"));
        let text = format!("field QQ\nbuild tensor\n{c}{c}filtration 0 0\nend\n");
        let s = Scenario::parse(&text, None).unwrap();
        assert!(s.build.construct(s.field).is_ok());
    }

    #[test]
    fn graded_build() {
        let text = "field ZZ/101\nbuild graded\nvars x y\nrelations x^2, x*y, y^2\nresolution 2\nfilter koszul\n";
        let s = Scenario::parse(text, None).unwrap();
        let built = s.build.construct(s.field).unwrap();
        assert!(built.graded);
        assert_eq!(built.filtered.p_max(), 2);
    }
}
