//! Grey-level co-occurrence analysis of 8-bit images.
//!
//! The pipeline runs: load an image into a [`PixelGrid`], accumulate a
//! directional or symmetric [`CooccurrenceMatrix`], normalize it into a
//! [`ProbabilityMatrix`], then derive the ten second-order
//! [`TextureStatistics`] and the grey-level [`DifferenceVector`] with its
//! 13-group reduction. The corpus functions batch the pipeline over image
//! sets, rank images by contrast, and correlate every statistic against
//! contrast.

mod corpus;
mod error;
mod glcm;
mod gldv;
mod grid;
mod pnm;
mod stats;

pub use corpus::{
    AVERAGE_CONTRAST_CSV, AnalyzeOptions, AxisFailure, CONTRAST_RANKING_CSV, CROSS_STAT_NAMES,
    CorpusTable, CrossStatEntry, CrossStatReport, FIXTURE_CSV_HEADER, LoadFailure, Provenance,
    REFERENCE_STATS_CSV, StatRecord, analyze_corpus, analyze_corpus_lenient,
    analyze_corpus_paths, cross_statistic_report, image_records, parse_fixture_csv, pearson,
    rank_by_contrast, reference_stats, to_fixture_csv,
};
pub use error::{Error, Result};
pub use glcm::{
    CooccurrenceMatrix, LEVELS, MatrixTag, ProbabilityMatrix, directional_glcm, normalize,
    oracle_glcm, symmetric_glcm,
};
pub use gldv::{DifferenceVector, GROUP_RANGES, GroupedDifferenceVector, gldv, group_gldv};
pub use grid::{Direction, PixelGrid, SymmetricAxis};
pub use pnm::{decode, encode, load_image, save_image};
pub use stats::{
    TextureStatistics, average_contrast, compute_stats, display_format, display_round,
};
