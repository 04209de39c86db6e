//! Second-order texture statistics of a probability matrix.
//!
//! All ten measures are computed in one fixed row-major order with
//! compensated summation, so results are reproducible across runs and
//! platforms. Zero cells are skipped; with the 0 * ln 0 = 0 convention for
//! entropy this is behavior-identical to the full loop.

use crate::error::{Error, Result};
use crate::glcm::{LEVELS, ProbabilityMatrix};
use crate::grid::SymmetricAxis;

/// The ten scalar texture measures of one symmetric axis.
///
/// `degenerate_correlation` marks the zero-variance case (constant image):
/// the correlation denominator vanishes, and the value is fixed at 1 by
/// convention so batch pipelines stay total.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TextureStatistics {
    pub contrast: f64,
    pub dissimilarity: f64,
    pub homogeneity: f64,
    pub asm: f64,
    pub energy: f64,
    pub max_probability: f64,
    pub entropy: f64,
    pub mean: f64,
    pub std_dev: f64,
    pub correlation: f64,
    pub axis: SymmetricAxis,
    pub degenerate_correlation: bool,
}

/// Neumaier compensated accumulator. Adding 0.0 leaves the state bit-for-bit
/// unchanged, which keeps zero-cell skipping behavior-identical.
#[derive(Clone, Copy, Default)]
struct Accumulator {
    sum: f64,
    compensation: f64,
}

impl Accumulator {
    fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.compensation
    }
}

/// Compute all ten statistics of a probability matrix.
///
/// The matrix must still sum to 1 within 1e-9 (guaranteed for matrices
/// produced by normalization, re-checked here as a contract guard).
/// Symmetry lets the mean and standard deviation use a single marginal:
/// the row and column marginals of a symmetric matrix coincide exactly.
pub fn compute_stats(matrix: &ProbabilityMatrix) -> Result<TextureStatistics> {
    let probs = matrix.probs();

    let mut total = Accumulator::default();
    for &p in probs {
        total.add(p);
    }
    if (total.value() - 1.0).abs() > 1e-9 {
        return Err(Error::Contract(format!(
            "probability matrix sums to {}, expected 1 within 1e-9",
            total.value()
        )));
    }

    // grey-level marginal: row k summed left to right
    let mut marginal = [0.0f64; LEVELS];
    for (k, row) in probs.chunks_exact(LEVELS).enumerate() {
        let mut acc = Accumulator::default();
        for &p in row {
            acc.add(p);
        }
        marginal[k] = acc.value();
    }

    let mut mean_acc = Accumulator::default();
    for (k, &m) in marginal.iter().enumerate() {
        if m != 0.0 {
            mean_acc.add(k as f64 * m);
        }
    }
    let mean = mean_acc.value();

    let mut var_acc = Accumulator::default();
    for (k, &m) in marginal.iter().enumerate() {
        if m != 0.0 {
            let d = k as f64 - mean;
            var_acc.add(d * d * m);
        }
    }
    let variance = var_acc.value();
    let std_dev = variance.sqrt();

    let mut contrast = Accumulator::default();
    let mut dissimilarity = Accumulator::default();
    let mut homogeneity = Accumulator::default();
    let mut asm = Accumulator::default();
    let mut entropy = Accumulator::default();
    let mut corr_num = Accumulator::default();
    let mut max_probability = 0.0f64;

    for (i, row) in probs.chunks_exact(LEVELS).enumerate() {
        for (j, &p) in row.iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            let d = i as f64 - j as f64;
            contrast.add(d * d * p);
            dissimilarity.add(d.abs() * p);
            homogeneity.add(p / (1.0 + d * d));
            asm.add(p * p);
            entropy.add(-p * p.ln());
            corr_num.add(p * (i as f64 - mean) * (j as f64 - mean));
            if p > max_probability {
                max_probability = p;
            }
        }
    }

    let (correlation, degenerate_correlation) = if variance == 0.0 {
        (1.0, true)
    } else {
        (corr_num.value() / variance, false)
    };

    let asm = asm.value();
    Ok(TextureStatistics {
        contrast: contrast.value(),
        dissimilarity: dissimilarity.value(),
        homogeneity: homogeneity.value(),
        asm,
        energy: asm.sqrt(),
        max_probability,
        entropy: entropy.value(),
        mean,
        std_dev,
        correlation,
        axis: matrix.axis(),
        degenerate_correlation,
    })
}

/// Arithmetic mean of the horizontal, vertical, and main-diagonal contrast
/// values; the inputs must carry those axes in that order.
pub fn average_contrast(
    horizontal: &TextureStatistics,
    vertical: &TextureStatistics,
    diagonal: &TextureStatistics,
) -> Result<f64> {
    let got = (horizontal.axis, vertical.axis, diagonal.axis);
    let want = (
        SymmetricAxis::Horizontal,
        SymmetricAxis::Vertical,
        SymmetricAxis::DiagonalMain,
    );
    if got != want {
        return Err(Error::Contract(format!(
            "average contrast needs (horizontal, vertical, diagonal) statistics, got ({}, {}, {})",
            got.0.label(),
            got.1.label(),
            got.2.label()
        )));
    }
    Ok((horizontal.contrast + vertical.contrast + diagonal.contrast) / 3.0)
}

/// Round half away from zero at `decimals` places, the rounding used for
/// report rendering. Returns a value exactly representable at that grid up
/// to binary rounding of the quotient.
pub fn display_round(value: f64, decimals: u32) -> f64 {
    let factor = 10f64.powi(decimals as i32);
    let rounded = (value * factor).round() / factor;
    if rounded == 0.0 { 0.0 } else { rounded }
}

/// Format a value for reports: round half away from zero, then print with
/// exactly `decimals` fraction digits.
pub fn display_format(value: f64, decimals: u32) -> String {
    format!("{:.*}", decimals as usize, display_round(value, decimals))
}
