//! Module lengths of page entries and of images of page differentials, with
//! their internal-degree breakdown. Over a field-based graded algebra every
//! composition factor is a copy of `k`, so length is dimension.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{image, SparseVec};
use crate::sseq::SpectralSequence;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedLength {
    pub total: usize,
    pub by_degree: BTreeMap<i64, usize>,
}

impl GradedLength {
    fn from_degrees(degrees: impl IntoIterator<Item = i64>) -> Self {
        let mut out = GradedLength::default();
        for d in degrees {
            out.total += 1;
            *out.by_degree.entry(d).or_default() += 1;
        }
        out
    }

    /// True when every summand sits in internal degree `d`.
    pub fn concentrated_in(&self, d: i64) -> bool {
        self.by_degree.keys().all(|&e| e == d)
    }
}

fn vector_degree(degrees: &[i64], v: &SparseVec) -> Result<i64> {
    let mut it = v.iter().map(|(i, _)| degrees[*i]);
    let d = it.next().ok_or(Error::NotGraded)?;
    if it.all(|e| e == d) {
        Ok(d)
    } else {
        Err(Error::NotGraded)
    }
}

/// Internal degree of each class representative of `E^r(p, q)`.
pub fn entry_degrees(ss: &SpectralSequence, r: i64, p: i64, q: i64) -> Result<Vec<i64>> {
    let entry = ss.entry(r, p, q);
    if entry.is_zero() {
        return Ok(Vec::new());
    }
    let labels = ss.filtered().ambient().labels(p + q);
    let degrees: Vec<i64> = labels.iter().map(|l| l.internal_degree().ok_or(Error::NotGraded)).collect::<Result<_>>()?;
    entry.representatives().iter().map(|v| vector_degree(&degrees, v)).collect()
}

/// Length of `E^r(p, q)`.
pub fn entry_length(ss: &SpectralSequence, r: i64, p: i64, q: i64) -> Result<GradedLength> {
    Ok(GradedLength::from_degrees(entry_degrees(ss, r, p, q)?))
}

/// Length of the image of `d^r: E^r(p, q) → E^r(p - r, q + r - 1)`.
pub fn image_length(ss: &SpectralSequence, r: i64, p: i64, q: i64) -> Result<GradedLength> {
    let d = ss.differential(r, p, q)?;
    let im = image(&d);
    if im.is_zero() {
        return Ok(GradedLength::default());
    }
    let target = entry_degrees(ss, r, p - r, q + r - 1)?;
    let degrees: Vec<i64> = im.basis().iter().map(|v| vector_degree(&target, v)).collect::<Result<_>>()?;
    Ok(GradedLength::from_degrees(degrees))
}
