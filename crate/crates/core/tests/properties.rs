//! Property tests for the statistic identities and cross-representation
//! equivalences that must hold on every image.

// index loops are deliberate here: the dual-route checks must spell out
// their iteration order
#![allow(clippy::needless_range_loop)]

use proptest::prelude::*;
use texturematrix_core::{
    CooccurrenceMatrix, LEVELS, MatrixTag, PixelGrid, SymmetricAxis, compute_stats, decode,
    encode, gldv, normalize, pearson, symmetric_glcm,
};

fn grid_strategy(max_level: u8) -> impl Strategy<Value = PixelGrid> {
    (1usize..=10, 1usize..=10, prop_oneof![Just(1usize), Just(3usize)]).prop_flat_map(
        move |(rows, cols, channels)| {
            proptest::collection::vec(0..=max_level, rows * cols * channels)
                .prop_map(move |values| PixelGrid::new(rows, cols, channels, values).unwrap())
        },
    )
}

/// Grids that admit pairs on every axis.
fn multi_pixel_grid(max_level: u8) -> impl Strategy<Value = PixelGrid> {
    (2usize..=10, 2usize..=10, prop_oneof![Just(1usize), Just(3usize)]).prop_flat_map(
        move |(rows, cols, channels)| {
            proptest::collection::vec(0..=max_level, rows * cols * channels)
                .prop_map(move |values| PixelGrid::new(rows, cols, channels, values).unwrap())
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn encode_decode_is_the_identity(grid in grid_strategy(255)) {
        prop_assert_eq!(decode(&encode(&grid)).unwrap(), grid);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn statistic_identities_hold(grid in multi_pixel_grid(255), axis_idx in 0usize..4) {
        let axis = SymmetricAxis::ALL[axis_idx];
        let probs = normalize(&symmetric_glcm(&grid, axis).unwrap()).unwrap();
        let stats = compute_stats(&probs).unwrap();

        prop_assert!((stats.energy * stats.energy - stats.asm).abs() <= 1e-12);
        prop_assert!(stats.asm > 0.0 && stats.asm <= 1.0);
        prop_assert!(stats.homogeneity > 0.0 && stats.homogeneity <= 1.0);
        prop_assert!(stats.max_probability >= stats.asm - 1e-12);
        prop_assert!(stats.max_probability <= 1.0);
        prop_assert!(stats.entropy >= 0.0);
        prop_assert!(stats.contrast >= 0.0);
        prop_assert!(stats.dissimilarity >= 0.0);
        prop_assert!((0.0..=255.0).contains(&stats.mean));
        prop_assert!(stats.std_dev >= 0.0);
        if !stats.degenerate_correlation {
            prop_assert!(stats.correlation.abs() <= 1.0 + 1e-12);
        }
        // contrast, dissimilarity, and homogeneity vanish together
        let zero_contrast = stats.contrast == 0.0;
        prop_assert_eq!(zero_contrast, stats.dissimilarity == 0.0);
        prop_assert_eq!(zero_contrast, stats.homogeneity == 1.0);

        // the mean and deviation computed over reference levels equal the
        // ones computed over neighbor levels, bit for bit
        let mut row_marginal = [0.0f64; LEVELS];
        let mut col_marginal = [0.0f64; LEVELS];
        for i in 0..LEVELS {
            for j in 0..LEVELS {
                row_marginal[i] += probs.prob(i, j);
                col_marginal[j] += probs.prob(i, j);
            }
        }
        let mean_over = |marginal: &[f64; LEVELS]| -> f64 {
            marginal.iter().enumerate().map(|(k, &m)| k as f64 * m).sum()
        };
        let mean_i = mean_over(&row_marginal);
        let mean_j = mean_over(&col_marginal);
        prop_assert_eq!(mean_i.to_bits(), mean_j.to_bits());
        let dev_over = |marginal: &[f64; LEVELS], mean: f64| -> f64 {
            marginal
                .iter()
                .enumerate()
                .map(|(k, &m)| (k as f64 - mean) * (k as f64 - mean) * m)
                .sum::<f64>()
                .sqrt()
        };
        prop_assert_eq!(
            dev_over(&row_marginal, mean_i).to_bits(),
            dev_over(&col_marginal, mean_j).to_bits()
        );
        prop_assert!((stats.mean - mean_i).abs() <= 1e-12);
    }

    #[test]
    fn difference_vector_reproduces_window_statistics(
        grid in multi_pixel_grid(255),
        axis_idx in 0usize..4,
    ) {
        let axis = SymmetricAxis::ALL[axis_idx];
        let glcm = symmetric_glcm(&grid, axis).unwrap();
        let stats = compute_stats(&normalize(&glcm).unwrap()).unwrap();
        let vector = gldv(&glcm).unwrap();

        let mut contrast = 0.0;
        let mut dissimilarity = 0.0;
        let mut homogeneity = 0.0;
        for (d, _, p) in vector.entries() {
            let d = d as f64;
            contrast += d * d * p;
            dissimilarity += d * p;
            homogeneity += p / (1.0 + d * d);
        }
        prop_assert!((contrast - stats.contrast).abs() <= 1e-9);
        prop_assert!((dissimilarity - stats.dissimilarity).abs() <= 1e-9);
        prop_assert!((homogeneity - stats.homogeneity).abs() <= 1e-9);
    }

    #[test]
    fn grey_level_shift_moves_only_the_mean(
        grid in multi_pixel_grid(200),
        shift in 1u8..=55,
        axis_idx in 0usize..4,
    ) {
        let axis = SymmetricAxis::ALL[axis_idx];
        let shifted = PixelGrid::new(
            grid.rows(),
            grid.cols(),
            grid.channels(),
            grid.values().iter().map(|&v| v + shift).collect(),
        )
        .unwrap();

        let base = compute_stats(&normalize(&symmetric_glcm(&grid, axis).unwrap()).unwrap()).unwrap();
        let moved =
            compute_stats(&normalize(&symmetric_glcm(&shifted, axis).unwrap()).unwrap()).unwrap();

        prop_assert!((base.contrast - moved.contrast).abs() <= 1e-9);
        prop_assert!((base.dissimilarity - moved.dissimilarity).abs() <= 1e-9);
        prop_assert!((base.homogeneity - moved.homogeneity).abs() <= 1e-9);
        prop_assert!((base.asm - moved.asm).abs() <= 1e-9);
        prop_assert!((base.energy - moved.energy).abs() <= 1e-9);
        prop_assert!((base.max_probability - moved.max_probability).abs() <= 1e-9);
        prop_assert!((base.entropy - moved.entropy).abs() <= 1e-9);
        prop_assert!((base.std_dev - moved.std_dev).abs() <= 1e-9);
        prop_assert!((base.correlation - moved.correlation).abs() <= 1e-9);
        prop_assert!((moved.mean - base.mean - shift as f64).abs() <= 1e-9);
    }

    #[test]
    fn pearson_self_and_affine_invariance(
        xs in proptest::collection::vec(-1000.0f64..1000.0, 3..40),
        ys in proptest::collection::vec(-1000.0f64..1000.0, 3..40),
        a in 0.1f64..10.0,
        b in -100.0f64..100.0,
    ) {
        let ys = &ys[..xs.len().min(ys.len())];
        let xs = &xs[..ys.len()];
        let spread = |v: &[f64]| v.iter().any(|&x| (x - v[0]).abs() > 1e-6);
        prop_assume!(spread(xs) && spread(ys));

        prop_assert!((pearson(xs, xs).unwrap() - 1.0).abs() <= 1e-12);
        let negated: Vec<f64> = xs.iter().map(|&x| -x).collect();
        prop_assert!((pearson(xs, &negated).unwrap() + 1.0).abs() <= 1e-12);

        let scaled: Vec<f64> = xs.iter().map(|&x| a * x + b).collect();
        let r1 = pearson(xs, ys).unwrap();
        let r2 = pearson(&scaled, ys).unwrap();
        prop_assert!((r1 - r2).abs() <= 1e-12, "r1={r1} r2={r2}");
    }
}

#[test]
fn entropy_of_equal_cells_is_ln_n() {
    for n in [1usize, 2, 3, 10, 100, 256] {
        let mut counts = vec![0u64; LEVELS * LEVELS];
        for k in 0..n {
            counts[k * LEVELS + k] = 1;
        }
        let glcm =
            CooccurrenceMatrix::from_counts(counts, MatrixTag::Axis(SymmetricAxis::Horizontal))
                .unwrap();
        let stats = compute_stats(&normalize(&glcm).unwrap()).unwrap();
        assert!(
            (stats.entropy - (n as f64).ln()).abs() <= 1e-12,
            "n={n}: {} vs {}",
            stats.entropy,
            (n as f64).ln()
        );
    }
}
