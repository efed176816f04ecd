//! Executes a parsed scenario and collects its output.
//!
//! Exit codes: 0 on success, 1 when an invariant or the limit comparison
//! fails, 2 for malformed input (parse errors, unknown scenarios, rejected
//! algebra data).

use std::fmt::Write as _;

use specseq_core::graded::image_length;
use specseq_core::sseq::SpectralSequence;
use specseq_core::{Error, FieldSpec};

use crate::formats::write_matrix;
use crate::render::{render_page, PageView, Style};
use crate::scenario::{Built, Query, Scenario};

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub field: Option<FieldSpec>,
    /// Worker threads used to precompute page entries; 0 or 1 means none.
    pub threads: usize,
    pub machine: bool,
    pub check: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn fail(&mut self, code: i32, message: impl std::fmt::Display) {
        let _ = writeln!(self.stderr, "error: {message}");
        self.code = self.code.max(code);
    }
}

/// 1 for violated invariants and failed comparisons, 2 for bad input.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotAComplex { .. }
        | Error::NotAChainMap { .. }
        | Error::NotASubcomplex { .. }
        | Error::NotNested
        | Error::InvalidFiltration(_)
        | Error::ComparisonFailure { .. }
        | Error::NotWellDefined
        | Error::NotGraded => 1,
        _ => 2,
    }
}

pub fn run(text: &str, opts: &Options) -> Outcome {
    let mut out = Outcome::default();
    let scenario = match Scenario::parse(text, opts.field) {
        Ok(s) => s,
        Err(e) => {
            out.fail(2, e);
            return out;
        }
    };
    let Built { filtered, graded } = match scenario.build.construct(scenario.field) {
        Ok(b) => b,
        Err(e) => {
            out.fail(exit_code(&e), format_args!("construction failed: {e}"));
            return out;
        }
    };
    let ss = SpectralSequence::new(filtered);
    if opts.check {
        match check(&ss) {
            Ok(count) => {
                let _ = writeln!(out.stdout, "check: ok ({count} invariants)");
            }
            Err(e) => {
                let _ = writeln!(out.stdout, "check: FAIL");
                out.fail(exit_code(&e).max(1), format_args!("check failed: {e}"));
            }
        }
    }
    let style = if opts.machine { Style::Machine } else { Style::Grid };
    for (line, q) in &scenario.queries {
        if let Err(e) = answer(&ss, *q, graded, style, opts.threads, &mut out.stdout) {
            out.fail(exit_code(&e), format_args!("query on line {line}: {e}"));
        }
    }
    out
}

fn view(ss: &SpectralSequence, r: i64, graded: bool, threads: usize) -> specseq_core::Result<PageView> {
    prefetch(ss, r, threads);
    if graded {
        PageView::graded(ss, r)
    } else {
        Ok(PageView::from_page(&ss.page(r)))
    }
}

fn answer(
    ss: &SpectralSequence,
    q: Query,
    graded: bool,
    style: Style,
    threads: usize,
    out: &mut String,
) -> specseq_core::Result<()> {
    let machine = style == Style::Machine;
    match q {
        Query::Page(r) => out.push_str(&render_page(&view(ss, r, graded, threads)?, style)),
        Query::Infinity => {
            let r = ss.stable_page_index();
            let v = view(ss, r, graded, threads)?;
            if !machine {
                let _ = writeln!(out, "E^inf = E^{r}");
            }
            out.push_str(&render_page(&v, style));
        }
        Query::Differential(r, p, qq) => {
            let m = ss.differential(r, p, qq)?;
            if machine {
                let _ = writeln!(out, "differential {r} {p} {qq}");
                write_matrix(out, &m);
            } else {
                let _ = writeln!(
                    out,
                    "d^{r}({p},{qq}): E^{r}({p},{qq}) -> E^{r}({},{}) [{}x{}, rank {}]",
                    p - r,
                    qq + r - 1,
                    m.rows(),
                    m.cols(),
                    m.rank()
                );
                let _ = writeln!(out, "{m}");
            }
        }
        Query::ImageLength(r, p, qq) => {
            let len = image_length(ss, r, p, qq)?;
            let degrees: Vec<String> = len.by_degree.iter().map(|(d, k)| format!("{d}:{k}")).collect();
            if machine {
                let _ = writeln!(out, "image-length {r} {p} {qq} {} {}", len.total, degrees.join(" "));
            } else {
                let _ = writeln!(out, "image-length of d^{r}({p},{qq}): {} ({})", len.total, degrees.join(" "));
            }
        }
        Query::Compare => {
            prefetch(ss, ss.stable_page_index(), threads);
            let report = ss.limit_comparison();
            if !machine {
                out.push_str("compare: n p E^inf gr_pH\n");
            }
            let _ = write!(out, "{report}");
            report.verify()?;
        }
    }
    Ok(())
}

/// Fills the entry cache for page `r` from `threads` scoped workers.
fn prefetch(ss: &SpectralSequence, r: i64, threads: usize) {
    if threads <= 1 {
        return;
    }
    let positions = ss.positions();
    let chunk = positions.len().div_ceil(threads).max(1);
    std::thread::scope(|s| {
        for part in positions.chunks(chunk) {
            s.spawn(move || {
                for &(p, q) in part {
                    ss.entry(r, p, q);
                }
            });
        }
    });
}

/// Validates the filtration, `d^r ∘ d^r = 0` and `E^{r+1} ≅ H(E^r, d^r)` on
/// every page up to the stable one, and the limit comparison. Returns the
/// number of checks made.
pub fn check(ss: &SpectralSequence) -> specseq_core::Result<usize> {
    let f = ss.filtered();
    f.validate()?;
    let mut count = 1;
    let top = ss.stable_page_index();
    for r in 0..=top {
        for (p, q) in ss.positions() {
            let d = ss.differential(r, p, q)?;
            let next = ss.differential(r, p - r, q + r - 1)?;
            if !next.mul(&d)?.is_zero() {
                return Err(Error::NotAComplex { degree: p + q });
            }
            if r < top {
                let incoming = ss.differential(r, p + r, q - r + 1)?;
                let homology = d.cols() - d.rank() - incoming.rank();
                if homology != ss.dim(r + 1, p, q) {
                    return Err(Error::InvalidFiltration(format!(
                        "E^{}({p},{q}) has dimension {} but the homology of d^{r} there has dimension {homology}",
                        r + 1,
                        ss.dim(r + 1, p, q)
                    )));
                }
            }
            count += 2;
        }
    }
    ss.limit_comparison().verify()?;
    Ok(count + 1)
}
