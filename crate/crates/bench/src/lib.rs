//! Shared helpers for the benchmark targets.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use texturematrix_core::PixelGrid;

/// Deterministic pseudo-random image of the given shape.
pub fn synthetic_image(seed: u64, rows: usize, cols: usize, channels: usize) -> PixelGrid {
    let mut rng = StdRng::seed_from_u64(seed);
    let values = (0..rows * cols * channels).map(|_| rng.random()).collect();
    PixelGrid::new(rows, cols, channels, values).unwrap()
}

/// A smoother image: a gradient with mild noise, closer to natural texture
/// than uniform noise.
pub fn gradient_image(seed: u64, rows: usize, cols: usize) -> PixelGrid {
    let mut rng = StdRng::seed_from_u64(seed);
    let values = (0..rows * cols)
        .map(|idx| {
            let base = ((idx % cols) * 255 / cols.max(1)) as i32;
            (base + rng.random_range(-8..=8)).clamp(0, 255) as u8
        })
        .collect();
    PixelGrid::new(rows, cols, 1, values).unwrap()
}
