//! Page renderings: a transcript-style grid, a list, and a machine format
//! (`r p q dim [degree:dim ...]`) that [`parse_machine`] reads back.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use specseq_core::graded::entry_length;
use specseq_core::sseq::{Page, SpectralSequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Grid,
    List,
    Machine,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub p: i64,
    pub q: i64,
    pub dim: usize,
    /// Internal-degree breakdown, for pages of expanded graded complexes.
    pub degrees: Option<BTreeMap<i64, usize>>,
}

impl Cell {
    fn text(&self) -> String {
        match &self.degrees {
            Some(d) if self.dim > 0 => {
                let parts: Vec<String> = d.iter().map(|(deg, k)| format!("{deg}:{k}")).collect();
                format!("{} ({})", self.dim, parts.join(" "))
            }
            _ if self.dim == 0 => ".".into(),
            _ => self.dim.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageView {
    pub r: i64,
    pub cells: Vec<Cell>,
}

impl PageView {
    pub fn from_page(page: &Page) -> Self {
        let cells = page.dims().map(|(p, q, dim)| Cell { p, q, dim, degrees: None }).collect();
        PageView { r: page.r(), cells }
    }

    /// Like [`PageView::from_page`], with the internal-degree breakdown of
    /// every nonzero entry.
    pub fn graded(ss: &SpectralSequence, r: i64) -> specseq_core::Result<Self> {
        let mut view = PageView::from_page(&ss.page(r));
        for cell in &mut view.cells {
            if cell.dim > 0 {
                cell.degrees = Some(entry_length(ss, r, cell.p, cell.q)?.by_degree);
            }
        }
        Ok(view)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| c.dim > 0)
    }
}

pub fn render_page(view: &PageView, style: Style) -> String {
    match style {
        Style::Grid => render_grid(view),
        Style::List => {
            let mut out = String::new();
            for c in view.nonzero() {
                let _ = writeln!(out, "E^{}({},{}) = {}", view.r, c.p, c.q, c.text());
            }
            out
        }
        Style::Machine => {
            let mut out = String::new();
            for c in view.nonzero() {
                let _ = write!(out, "{} {} {} {}", view.r, c.p, c.q, c.dim);
                for (d, k) in c.degrees.iter().flatten() {
                    let _ = write!(out, " {d}:{k}");
                }
                out.push('\n');
            }
            out
        }
    }
}

/// Rows by descending `q` (only rows holding a nonzero entry), columns by
/// ascending `p` across the whole window. Zero cells print as `.`.
fn render_grid(view: &PageView) -> String {
    let mut out = format!("E^{}\n", view.r);
    let ps: Vec<i64> = {
        let mut v: Vec<i64> = view.cells.iter().map(|c| c.p).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let mut qs: Vec<i64> = view.nonzero().map(|c| c.q).collect();
    qs.sort_unstable_by(|a, b| b.cmp(a));
    qs.dedup();
    let lookup: BTreeMap<(i64, i64), String> = view.cells.iter().map(|c| ((c.p, c.q), c.text())).collect();
    let cell = |p: i64, q: i64| lookup.get(&(p, q)).cloned().unwrap_or_else(|| ".".into());
    let corner = "q\\p";
    let head_w = qs.iter().map(|q| q.to_string().len()).chain([corner.len()]).max().unwrap();
    let widths: Vec<usize> = ps
        .iter()
        .map(|&p| qs.iter().map(|&q| cell(p, q).len()).chain([p.to_string().len()]).max().unwrap())
        .collect();
    let mut line = format!("{corner:>head_w$}");
    for (p, w) in ps.iter().zip(&widths) {
        let _ = write!(line, "  {p:>w$}");
    }
    out.push_str(line.trim_end());
    out.push('\n');
    for &q in &qs {
        let mut line = format!("{q:>head_w$}");
        for (&p, w) in ps.iter().zip(&widths) {
            let _ = write!(line, "  {:>w$}", cell(p, q));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("machine line {line}: {message}")]
pub struct MachineParseError {
    pub line: usize,
    pub message: String,
}

/// Reads machine-format lines back into nonzero cells grouped by page.
pub fn parse_machine(text: &str) -> Result<Vec<PageView>, MachineParseError> {
    let mut pages: Vec<PageView> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let err = |message: String| MachineParseError { line: i + 1, message };
        let toks: Vec<&str> = raw.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        if toks.len() < 4 {
            return Err(err(format!("expected `r p q dim`, found `{raw}`")));
        }
        let num = |s: &str| s.parse::<i64>().map_err(|_| err(format!("bad integer `{s}`")));
        let (r, p, q) = (num(toks[0])?, num(toks[1])?, num(toks[2])?);
        let dim = toks[3].parse::<usize>().map_err(|_| err(format!("bad dimension `{}`", toks[3])))?;
        let degrees = if toks.len() > 4 {
            let mut m = BTreeMap::new();
            for t in &toks[4..] {
                let (d, k) = t.split_once(':').ok_or_else(|| err(format!("bad degree entry `{t}`")))?;
                let k = k.parse::<usize>().map_err(|_| err(format!("bad degree entry `{t}`")))?;
                m.insert(num(d)?, k);
            }
            Some(m)
        } else {
            None
        };
        let cell = Cell { p, q, dim, degrees };
        match pages.last_mut() {
            Some(pg) if pg.r == r => pg.cells.push(cell),
            _ => pages.push(PageView { r, cells: vec![cell] }),
        }
    }
    Ok(pages)
}
