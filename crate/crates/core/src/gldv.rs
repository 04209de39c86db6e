//! Grey level difference vectors.
//!
//! A symmetric co-occurrence matrix collapses along |i - j| into a
//! 256-entry difference vector; the vector collapses further into 13 fixed
//! difference groups (0-19, 20-39, ..., 220-239, 240-255). Both are derived
//! from the matrix, never from a separate pixel pass, so the matrix stays
//! the single source of truth.

use crate::error::{Error, Result};
use crate::glcm::{CooccurrenceMatrix, LEVELS, MatrixTag};
use crate::grid::SymmetricAxis;

/// Inclusive difference bounds of the 13 fixed groups.
pub const GROUP_RANGES: [(u8, u8); 13] = [
    (0, 19),
    (20, 39),
    (40, 59),
    (60, 79),
    (80, 99),
    (100, 119),
    (120, 139),
    (140, 159),
    (160, 179),
    (180, 199),
    (200, 219),
    (220, 239),
    (240, 255),
];

/// Distribution of the absolute grey-level difference |i - j| over all
/// pairs of a symmetric co-occurrence matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferenceVector {
    counts: Vec<u64>,
    probabilities: Vec<f64>,
    axis: SymmetricAxis,
    total_pairs: u64,
}

impl DifferenceVector {
    pub fn axis(&self) -> SymmetricAxis {
        self.axis
    }

    pub fn total_pairs(&self) -> u64 {
        self.total_pairs
    }

    /// Number of pairs whose grey levels differ by exactly `difference`.
    pub fn count(&self, difference: usize) -> u64 {
        self.counts[difference]
    }

    pub fn probability(&self, difference: usize) -> f64 {
        self.probabilities[difference]
    }

    /// All 256 entries as (difference, count, probability).
    pub fn entries(&self) -> impl Iterator<Item = (usize, u64, f64)> + '_ {
        self.counts
            .iter()
            .zip(&self.probabilities)
            .enumerate()
            .map(|(d, (&count, &p))| (d, count, p))
    }
}

/// The difference vector reduced to the 13 fixed groups.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupedDifferenceVector {
    counts: [u64; 13],
    probabilities: [f64; 13],
    axis: SymmetricAxis,
    total_pairs: u64,
}

impl GroupedDifferenceVector {
    pub fn axis(&self) -> SymmetricAxis {
        self.axis
    }

    pub fn total_pairs(&self) -> u64 {
        self.total_pairs
    }

    pub fn count(&self, group: usize) -> u64 {
        self.counts[group]
    }

    pub fn probability(&self, group: usize) -> f64 {
        self.probabilities[group]
    }

    /// All 13 groups as (lo, hi, count, probability).
    pub fn entries(&self) -> impl Iterator<Item = (u8, u8, u64, f64)> + '_ {
        GROUP_RANGES
            .iter()
            .zip(self.counts.iter().zip(&self.probabilities))
            .map(|(&(lo, hi), (&count, &p))| (lo, hi, count, p))
    }
}

/// Collapse a symmetric co-occurrence matrix along |i - j|.
///
/// The count at difference `d` sums every cell whose indices differ by
/// `d` (the main diagonal for 0, the two parallels for each d > 0);
/// probabilities divide by the matrix's total pair count.
pub fn gldv(glcm: &CooccurrenceMatrix) -> Result<DifferenceVector> {
    let axis = match glcm.tag() {
        MatrixTag::Axis(axis) => axis,
        MatrixTag::Direction(d) => {
            return Err(Error::Contract(format!(
                "difference vector requires a symmetric-axis matrix, got direction {:?}",
                d.label()
            )));
        }
    };
    if glcm.total_pairs() == 0 {
        return Err(Error::DegenerateGeometry(
            "cannot form a difference vector from a matrix with zero pairs".into(),
        ));
    }

    let mut counts = vec![0u64; LEVELS];
    for (i, row) in glcm.counts().chunks_exact(LEVELS).enumerate() {
        for (j, &count) in row.iter().enumerate() {
            counts[i.abs_diff(j)] += count;
        }
    }
    let total = glcm.total_pairs() as f64;
    let probabilities = counts.iter().map(|&c| c as f64 / total).collect();
    Ok(DifferenceVector {
        counts,
        probabilities,
        axis,
        total_pairs: glcm.total_pairs(),
    })
}

/// Sum the difference vector into the 13 fixed groups; probabilities are
/// renormalized against the same total.
pub fn group_gldv(vector: &DifferenceVector) -> GroupedDifferenceVector {
    let mut counts = [0u64; 13];
    for (difference, count, _) in vector.entries() {
        counts[group_index(difference)] += count;
    }
    let total = vector.total_pairs() as f64;
    let mut probabilities = [0.0f64; 13];
    for (slot, &count) in probabilities.iter_mut().zip(&counts) {
        *slot = count as f64 / total;
    }
    GroupedDifferenceVector {
        counts,
        probabilities,
        axis: vector.axis(),
        total_pairs: vector.total_pairs(),
    }
}

/// Group index for a difference in [0, 255]; the last group spans 16
/// values, all others span 20.
fn group_index(difference: usize) -> usize {
    if difference >= 240 { 12 } else { difference / 20 }
}
