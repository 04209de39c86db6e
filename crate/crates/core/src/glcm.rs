//! Co-occurrence matrix construction and normalization.
//!
//! A co-occurrence matrix counts how often grey level `i` sits next to grey
//! level `j` one step away in a given direction. Matrices are always
//! logically 256x256 regardless of the grey levels actually present; for
//! colour grids the pairs from all three planes pool into one matrix and no
//! cross-channel pairs are formed.

use crate::error::{Error, Result};
use crate::grid::{Direction, PixelGrid, SymmetricAxis};

/// Number of representable grey levels; matrices are `LEVELS` x `LEVELS`.
pub const LEVELS: usize = 256;

const CELLS: usize = LEVELS * LEVELS;

/// What a count matrix was accumulated over: a single direction, or the
/// two opposite directions of a symmetric axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixTag {
    Direction(Direction),
    Axis(SymmetricAxis),
}

/// A 256x256 matrix of pair counts, indexed (reference level, neighbor
/// level), together with the tag describing how it was built and the total
/// number of pairs recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CooccurrenceMatrix {
    counts: Vec<u64>,
    tag: MatrixTag,
    total_pairs: u64,
}

impl CooccurrenceMatrix {
    /// Build a matrix from raw row-major counts (256 * 256 entries).
    ///
    /// Axis-tagged matrices must be symmetric; the total pair count is the
    /// sum of all cells.
    pub fn from_counts(counts: Vec<u64>, tag: MatrixTag) -> Result<CooccurrenceMatrix> {
        if counts.len() != CELLS {
            return Err(Error::Contract(format!(
                "count matrix must have {CELLS} cells, got {}",
                counts.len()
            )));
        }
        if let MatrixTag::Axis(axis) = tag {
            for i in 0..LEVELS {
                for j in (i + 1)..LEVELS {
                    if counts[i * LEVELS + j] != counts[j * LEVELS + i] {
                        return Err(Error::Contract(format!(
                            "counts for {} axis are not symmetric at ({i}, {j})",
                            axis.label()
                        )));
                    }
                }
            }
        }
        let total_pairs = counts.iter().sum();
        Ok(CooccurrenceMatrix {
            counts,
            tag,
            total_pairs,
        })
    }

    pub fn tag(&self) -> MatrixTag {
        self.tag
    }

    pub fn total_pairs(&self) -> u64 {
        self.total_pairs
    }

    /// Count for the (reference, neighbor) pair.
    pub fn count(&self, reference: usize, neighbor: usize) -> u64 {
        self.counts[reference * LEVELS + neighbor]
    }

    /// All cells row-major, `LEVELS` per row.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Nonzero cells as (reference, neighbor, count), in row-major order,
    /// which sorts them by (reference, neighbor).
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.counts.iter().enumerate().filter_map(|(idx, &count)| {
            (count > 0).then_some((idx / LEVELS, idx % LEVELS, count))
        })
    }
}

/// A normalized co-occurrence matrix: every cell holds the joint
/// probability of its grey-level pair along one symmetric axis.
#[derive(Debug, Clone)]
pub struct ProbabilityMatrix {
    probs: Vec<f64>,
    axis: SymmetricAxis,
    total_pairs: u64,
}

impl ProbabilityMatrix {
    pub fn axis(&self) -> SymmetricAxis {
        self.axis
    }

    /// Denominator used during normalization.
    pub fn total_pairs(&self) -> u64 {
        self.total_pairs
    }

    pub fn prob(&self, reference: usize, neighbor: usize) -> f64 {
        self.probs[reference * LEVELS + neighbor]
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Nonzero cells as (reference, neighbor, probability), row-major.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.probs.iter().enumerate().filter_map(|(idx, &p)| {
            (p > 0.0).then_some((idx / LEVELS, idx % LEVELS, p))
        })
    }
}

/// Window of positions whose neighbor at (dr, dc) stays inside the grid.
/// Returns (row range, col range) or a degenerate-geometry error.
fn pair_window(
    image: &PixelGrid,
    dr: i32,
    dc: i32,
    what: &str,
) -> Result<(std::ops::Range<usize>, std::ops::Range<usize>)> {
    let rows = image.rows();
    let cols = image.cols();
    let r0 = (-dr).max(0) as usize;
    let r1 = rows.saturating_sub(dr.max(0) as usize);
    let c0 = (-dc).max(0) as usize;
    let c1 = cols.saturating_sub(dc.max(0) as usize);
    if r0 >= r1 || c0 >= c1 {
        return Err(Error::DegenerateGeometry(format!(
            "{rows}x{cols} image has no {what} pixel pairs"
        )));
    }
    Ok((r0..r1, c0..c1))
}

/// Count the co-occurrences of (reference, neighbor) grey levels one step
/// along `direction`, pooled over all channels.
pub fn directional_glcm(image: &PixelGrid, direction: Direction) -> Result<CooccurrenceMatrix> {
    let (dr, dc) = direction.offset();
    let (row_range, col_range) = pair_window(image, dr, dc, direction.label())?;
    let cols = image.cols();
    let width = col_range.end - col_range.start;

    let mut counts = vec![0u64; CELLS];
    for channel in 0..image.channels() {
        let plane = image.plane(channel);
        for r in row_range.clone() {
            let src_start = r * cols + col_range.start;
            let dst_start = (r as i64 + dr as i64) as usize * cols
                + (col_range.start as i64 + dc as i64) as usize;
            let src = &plane[src_start..src_start + width];
            let dst = &plane[dst_start..dst_start + width];
            for (&i, &j) in src.iter().zip(dst) {
                counts[(i as usize) * LEVELS + j as usize] += 1;
            }
        }
    }

    let total_pairs = (image.channels() as u64)
        * (row_range.end - row_range.start) as u64
        * width as u64;
    Ok(CooccurrenceMatrix {
        counts,
        tag: MatrixTag::Direction(direction),
        total_pairs,
    })
}

/// Build the symmetric matrix for an axis in a single pass, recording both
/// (i, j) and (j, i) for every pair along the axis's canonical direction.
///
/// The result equals the elementwise sum of the two opposite directional
/// matrices, and also D + transpose(D) for either constituent D.
pub fn symmetric_glcm(image: &PixelGrid, axis: SymmetricAxis) -> Result<CooccurrenceMatrix> {
    let (canonical, _) = axis.directions();
    let (dr, dc) = canonical.offset();
    let (row_range, col_range) = pair_window(image, dr, dc, axis.label())?;
    let cols = image.cols();
    let width = col_range.end - col_range.start;

    let mut counts = vec![0u64; CELLS];
    for channel in 0..image.channels() {
        let plane = image.plane(channel);
        for r in row_range.clone() {
            let src_start = r * cols + col_range.start;
            let dst_start = (r as i64 + dr as i64) as usize * cols
                + (col_range.start as i64 + dc as i64) as usize;
            let src = &plane[src_start..src_start + width];
            let dst = &plane[dst_start..dst_start + width];
            for (&i, &j) in src.iter().zip(dst) {
                counts[(i as usize) * LEVELS + j as usize] += 1;
                counts[(j as usize) * LEVELS + i as usize] += 1;
            }
        }
    }

    let total_pairs = 2
        * (image.channels() as u64)
        * (row_range.end - row_range.start) as u64
        * width as u64;
    Ok(CooccurrenceMatrix {
        counts,
        tag: MatrixTag::Axis(axis),
        total_pairs,
    })
}

/// Divide every cell of a symmetric count matrix by the total pair count,
/// yielding the joint probability matrix.
pub fn normalize(glcm: &CooccurrenceMatrix) -> Result<ProbabilityMatrix> {
    let axis = match glcm.tag() {
        MatrixTag::Axis(axis) => axis,
        MatrixTag::Direction(d) => {
            return Err(Error::Contract(format!(
                "normalization requires a symmetric-axis matrix, got direction {:?}",
                d.label()
            )));
        }
    };
    if glcm.total_pairs == 0 {
        return Err(Error::DegenerateGeometry(
            "cannot normalize a matrix with zero pairs".into(),
        ));
    }
    let total = glcm.total_pairs as f64;
    let probs = glcm.counts.iter().map(|&c| c as f64 / total).collect();
    Ok(ProbabilityMatrix {
        probs,
        axis,
        total_pairs: glcm.total_pairs,
    })
}

/// Reference construction: the most literal double loop over every pixel
/// with a bounds-checked neighbor. Shares no accumulation code with
/// [`directional_glcm`]; kept as the oracle the test suites compare against.
pub fn oracle_glcm(image: &PixelGrid, direction: Direction) -> Result<CooccurrenceMatrix> {
    let (dr, dc) = direction.offset();
    let mut counts = vec![0u64; CELLS];
    let mut total_pairs = 0u64;
    for channel in 0..image.channels() {
        for row in 0..image.rows() {
            for col in 0..image.cols() {
                let nr = row as i64 + dr as i64;
                let nc = col as i64 + dc as i64;
                if nr < 0 || nc < 0 || nr >= image.rows() as i64 || nc >= image.cols() as i64 {
                    continue;
                }
                let i = image.value(channel, row, col) as usize;
                let j = image.value(channel, nr as usize, nc as usize) as usize;
                counts[i * LEVELS + j] += 1;
                total_pairs += 1;
            }
        }
    }
    if total_pairs == 0 {
        return Err(Error::DegenerateGeometry(format!(
            "{}x{} image has no {} pixel pairs",
            image.rows(),
            image.cols(),
            direction.label()
        )));
    }
    Ok(CooccurrenceMatrix {
        counts,
        tag: MatrixTag::Direction(direction),
        total_pairs,
    })
}
