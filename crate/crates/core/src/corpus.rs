//! Batch analysis of image sets and the cross-statistic report.
//!
//! A corpus table holds one record per image and axis. Tables come either
//! from computing over image files or from a transcribed reference fixture;
//! the bundled fixture carries the published statistics of twenty-four
//! reference images along the three standard axes and is the ground truth
//! the test suites reproduce.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::glcm::{normalize, symmetric_glcm};
use crate::gldv::{gldv, group_gldv};
use crate::grid::{PixelGrid, SymmetricAxis};
use crate::pnm::load_image;
use crate::stats::{TextureStatistics, compute_stats, display_format};

/// Bundled reference statistics: 24 images x 3 axes, transcribed from the
/// published tables.
pub const REFERENCE_STATS_CSV: &str = include_str!("../fixtures/reference_stats.csv");

/// Bundled reference ranking: per-axis ascending contrast with the
/// probability of a 0-19 grey-level difference.
pub const CONTRAST_RANKING_CSV: &str = include_str!("../fixtures/contrast_ranking.csv");

/// Bundled reference per-image average contrast values.
pub const AVERAGE_CONTRAST_CSV: &str = include_str!("../fixtures/average_contrast.csv");

/// Statistics of one image along one axis, plus the first group-GLDV
/// probability (difference 0-19).
#[derive(Debug, Clone, PartialEq)]
pub struct StatRecord {
    pub image_label: String,
    pub stats: TextureStatistics,
    pub prob_diff_0_19: f64,
}

impl StatRecord {
    pub fn axis(&self) -> SymmetricAxis {
        self.stats.axis
    }
}

/// An axis that could not be computed for an image (for example a
/// one-column image has no horizontal pairs); batches record these instead
/// of aborting.
#[derive(Debug, Clone)]
pub struct AxisFailure {
    pub image_label: String,
    pub axis: SymmetricAxis,
    pub message: String,
}

/// Where a table's records came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Computed,
    Fixture(String),
}

/// An ordered collection of per-image, per-axis records.
#[derive(Debug, Clone)]
pub struct CorpusTable {
    pub records: Vec<StatRecord>,
    pub failures: Vec<AxisFailure>,
    pub provenance: Provenance,
}

/// Options for batch analysis.
#[derive(Debug, Clone, Default)]
pub struct AnalyzeOptions {
    /// Collapse colour images to a single luma plane before analysis.
    pub luma: bool,
    /// Worker threads for the batch; `None` uses the process default.
    pub workers: Option<usize>,
}

/// Compute the standard three axis records for one already-loaded image.
///
/// Axes the image is too small for are reported as failures, not errors.
pub fn image_records(label: &str, image: &PixelGrid) -> (Vec<StatRecord>, Vec<AxisFailure>) {
    let mut records = Vec::with_capacity(3);
    let mut failures = Vec::new();
    for axis in SymmetricAxis::STANDARD {
        match axis_record(label, image, axis) {
            Ok(record) => records.push(record),
            Err(err) => failures.push(AxisFailure {
                image_label: label.to_string(),
                axis,
                message: err.to_string(),
            }),
        }
    }
    (records, failures)
}

fn axis_record(label: &str, image: &PixelGrid, axis: SymmetricAxis) -> Result<StatRecord> {
    let glcm = symmetric_glcm(image, axis)?;
    let stats = compute_stats(&normalize(&glcm)?)?;
    let grouped = group_gldv(&gldv(&glcm)?);
    Ok(StatRecord {
        image_label: label.to_string(),
        stats,
        prob_diff_0_19: grouped.probability(0),
    })
}

/// An image file that could not be loaded during a lenient batch.
#[derive(Debug, Clone)]
pub struct LoadFailure {
    pub path: PathBuf,
    pub message: String,
}

fn run_pooled<T: Send>(
    paths: &[PathBuf],
    workers: Option<usize>,
    work: impl Fn(&PathBuf) -> T + Sync + Send,
) -> Result<Vec<T>> {
    use rayon::prelude::*;
    match workers {
        Some(workers) if workers > 0 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| Error::Contract(format!("cannot build {workers}-thread pool: {e}")))?;
            Ok(pool.install(|| paths.par_iter().map(work).collect()))
        }
        _ => Ok(paths.par_iter().map(work).collect()),
    }
}

fn analyze_one(
    path: &PathBuf,
    options: &AnalyzeOptions,
) -> Result<(Vec<StatRecord>, Vec<AxisFailure>)> {
    let mut image = load_image(path)?;
    if options.luma {
        image = image.to_luma();
    }
    Ok(image_records(&path.display().to_string(), &image))
}

/// Analyze a list of image files into a corpus table.
///
/// Any load failure aborts with the failing path named. Record order is
/// input order then axis order, regardless of worker scheduling.
pub fn analyze_corpus(paths: &[PathBuf], options: &AnalyzeOptions) -> Result<CorpusTable> {
    let per_image = run_pooled(paths, options.workers, |path| analyze_one(path, options))?
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let mut records = Vec::new();
    let mut failures = Vec::new();
    for (mut image_records, mut image_failures) in per_image {
        records.append(&mut image_records);
        failures.append(&mut image_failures);
    }
    Ok(CorpusTable {
        records,
        failures,
        provenance: Provenance::Computed,
    })
}

/// Like [`analyze_corpus`], but images that fail to load are returned as
/// [`LoadFailure`]s instead of aborting the batch.
pub fn analyze_corpus_lenient(
    paths: &[PathBuf],
    options: &AnalyzeOptions,
) -> Result<(CorpusTable, Vec<LoadFailure>)> {
    let per_image = run_pooled(paths, options.workers, |path| {
        analyze_one(path, options).map_err(|e| LoadFailure {
            path: path.clone(),
            message: e.to_string(),
        })
    })?;

    let mut records = Vec::new();
    let mut failures = Vec::new();
    let mut load_failures = Vec::new();
    for outcome in per_image {
        match outcome {
            Ok((mut image_records, mut image_failures)) => {
                records.append(&mut image_records);
                failures.append(&mut image_failures);
            }
            Err(failure) => load_failures.push(failure),
        }
    }
    Ok((
        CorpusTable {
            records,
            failures,
            provenance: Provenance::Computed,
        },
        load_failures,
    ))
}

/// Labels and contrasts for one axis, sorted ascending by contrast with
/// ties broken by label.
pub fn rank_by_contrast(table: &CorpusTable, axis: SymmetricAxis) -> Vec<(String, f64)> {
    let mut ranked: Vec<(String, f64)> = table
        .records
        .iter()
        .filter(|r| r.axis() == axis)
        .map(|r| (r.image_label.clone(), r.stats.contrast))
        .collect();
    ranked.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    ranked
}

/// Sample Pearson correlation coefficient of two equal-length series.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::Contract(format!(
            "series lengths differ: {} vs {}",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < 2 {
        return Err(Error::Contract(
            "correlation needs at least two observations".into(),
        ));
    }
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        let dx = x - mean_x;
        let dy = y - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::Contract(
            "correlation is undefined for a zero-variance series".into(),
        ));
    }
    Ok(sxy / (sxx * syy).sqrt())
}

/// Column order of the cross-statistic report.
pub const CROSS_STAT_NAMES: [&str; 10] = [
    "dissimilarity",
    "homogeneity",
    "entropy",
    "energy",
    "std_dev",
    "correlation",
    "prob_diff_0_19",
    "asm",
    "mean",
    "max_probability",
];

/// One statistic's correlation against contrast; `None` when undefined
/// (zero variance).
#[derive(Debug, Clone, PartialEq)]
pub struct CrossStatEntry {
    pub statistic: &'static str,
    pub r_vs_contrast: Option<f64>,
}

/// Pearson correlation of every other statistic against contrast.
#[derive(Debug, Clone)]
pub struct CrossStatReport {
    /// How records were combined; all records of the table are pooled into
    /// one series per statistic.
    pub pooling: String,
    pub entries: Vec<CrossStatEntry>,
}

impl CrossStatReport {
    pub fn entry(&self, statistic: &str) -> Option<&CrossStatEntry> {
        self.entries.iter().find(|e| e.statistic == statistic)
    }
}

fn stat_column(record: &StatRecord, name: &str) -> f64 {
    match name {
        "dissimilarity" => record.stats.dissimilarity,
        "homogeneity" => record.stats.homogeneity,
        "entropy" => record.stats.entropy,
        "energy" => record.stats.energy,
        "std_dev" => record.stats.std_dev,
        "correlation" => record.stats.correlation,
        "prob_diff_0_19" => record.prob_diff_0_19,
        "asm" => record.stats.asm,
        "mean" => record.stats.mean,
        "max_probability" => record.stats.max_probability,
        other => unreachable!("unknown statistic column {other}"),
    }
}

/// Correlate each statistic against contrast over all records of the table,
/// pooled into a single series per statistic.
pub fn cross_statistic_report(table: &CorpusTable) -> Result<CrossStatReport> {
    if table.records.len() < 2 {
        return Err(Error::Contract(
            "cross-statistic report needs at least two records".into(),
        ));
    }
    let contrast: Vec<f64> = table.records.iter().map(|r| r.stats.contrast).collect();
    let entries = CROSS_STAT_NAMES
        .iter()
        .map(|&name| {
            let column: Vec<f64> = table.records.iter().map(|r| stat_column(r, name)).collect();
            CrossStatEntry {
                statistic: name,
                r_vs_contrast: pearson(&column, &contrast).ok(),
            }
        })
        .collect();
    Ok(CrossStatReport {
        pooling: format!("all {} records pooled", table.records.len()),
        entries,
    })
}

/// Header of the corpus CSV format shared by fixtures and batch output.
pub const FIXTURE_CSV_HEADER: &str = "image,axis,contrast,dissimilarity,homogeneity,asm,entropy,mean,energy,std_dev,correlation,max_probability,prob_diff_0_19";

/// Parse a corpus CSV (the format of [`FIXTURE_CSV_HEADER`]) into a
/// fixture-tagged table.
pub fn parse_fixture_csv(text: &str, name: &str) -> Result<CorpusTable> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim_end() == FIXTURE_CSV_HEADER => {}
        _ => {
            return Err(Error::Format(format!(
                "fixture {name}: missing corpus CSV header"
            )));
        }
    }

    let mut records = Vec::new();
    for (line_no, line) in lines {
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 13 {
            return Err(Error::Format(format!(
                "fixture {name} line {}: expected 13 fields, got {}",
                line_no + 1,
                fields.len()
            )));
        }
        let number = |idx: usize| -> Result<f64> {
            fields[idx].trim().parse::<f64>().map_err(|_| {
                Error::Format(format!(
                    "fixture {name} line {}: bad number {:?}",
                    line_no + 1,
                    fields[idx]
                ))
            })
        };
        let axis = SymmetricAxis::parse_label(fields[1].trim())?;
        records.push(StatRecord {
            image_label: fields[0].trim().to_string(),
            stats: TextureStatistics {
                contrast: number(2)?,
                dissimilarity: number(3)?,
                homogeneity: number(4)?,
                asm: number(5)?,
                entropy: number(6)?,
                mean: number(7)?,
                energy: number(8)?,
                std_dev: number(9)?,
                correlation: number(10)?,
                max_probability: number(11)?,
                axis,
                degenerate_correlation: false,
            },
            prob_diff_0_19: number(12)?,
        });
    }
    Ok(CorpusTable {
        records,
        failures: Vec::new(),
        provenance: Provenance::Fixture(name.to_string()),
    })
}

/// Render a table in the corpus CSV format at report precision (two
/// decimals for grey-level-scaled statistics, four for probabilities and
/// unit-interval measures).
pub fn to_fixture_csv(table: &CorpusTable) -> String {
    let mut out = String::from(FIXTURE_CSV_HEADER);
    out.push('\n');
    for record in &table.records {
        out.push_str(&record_csv_line(record));
        out.push('\n');
    }
    out
}

pub(crate) fn record_csv_line(record: &StatRecord) -> String {
    let s = &record.stats;
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{}",
        record.image_label,
        s.axis.label(),
        display_format(s.contrast, 2),
        display_format(s.dissimilarity, 2),
        display_format(s.homogeneity, 4),
        display_format(s.asm, 4),
        display_format(s.entropy, 2),
        display_format(s.mean, 2),
        display_format(s.energy, 4),
        display_format(s.std_dev, 2),
        display_format(s.correlation, 4),
        display_format(s.max_probability, 4),
        display_format(record.prob_diff_0_19, 4),
    )
}

/// The bundled reference statistics as a parsed table.
pub fn reference_stats() -> CorpusTable {
    parse_fixture_csv(REFERENCE_STATS_CSV, "reference_stats")
        .expect("bundled reference fixture parses")
}

/// Convenience wrapper: analyze paths given as strings.
pub fn analyze_corpus_paths<P: AsRef<Path>>(
    paths: &[P],
    options: &AnalyzeOptions,
) -> Result<CorpusTable> {
    let paths: Vec<PathBuf> = paths.iter().map(|p| p.as_ref().to_path_buf()).collect();
    analyze_corpus(&paths, options)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pearson_is_plus_one_for_identical_series() {
        let xs = [1.0, 2.0, 3.0];
        assert_eq!(pearson(&xs, &xs).unwrap(), 1.0);
    }

    #[test]
    fn pearson_is_minus_one_for_negated_series() {
        let xs = [1.0, 2.0, 3.0];
        let ys = [-1.0, -2.0, -3.0];
        assert!((pearson(&xs, &ys).unwrap() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn pearson_matches_literal_formula_evaluation() {
        // frozen from an independent evaluation of the sum-form definition
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [2.0, 4.0, 5.0, 4.0];
        assert!((pearson(&xs, &ys).unwrap() - 0.7181848464596079).abs() < 1e-15);
    }

    #[test]
    fn pearson_contract_errors() {
        assert!(matches!(
            pearson(&[1.0], &[1.0]),
            Err(Error::Contract(_))
        ));
        assert!(matches!(
            pearson(&[1.0, 2.0], &[1.0]),
            Err(Error::Contract(_))
        ));
        assert!(matches!(
            pearson(&[5.0, 5.0], &[1.0, 2.0]),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn reference_fixture_parses_to_72_records() {
        let table = reference_stats();
        assert_eq!(table.records.len(), 72);
        assert_eq!(
            table.provenance,
            Provenance::Fixture("reference_stats".into())
        );
        for axis in SymmetricAxis::STANDARD {
            assert_eq!(table.records.iter().filter(|r| r.axis() == axis).count(), 24);
        }
        // labels unique within each axis
        for axis in SymmetricAxis::STANDARD {
            let mut labels: Vec<&str> = table
                .records
                .iter()
                .filter(|r| r.axis() == axis)
                .map(|r| r.image_label.as_str())
                .collect();
            labels.sort_unstable();
            labels.dedup();
            assert_eq!(labels.len(), 24);
        }
    }

    #[test]
    fn ranking_sorts_ascending_with_label_tiebreak() {
        let mut table = reference_stats();
        let ranked = rank_by_contrast(&table, SymmetricAxis::Horizontal);
        assert_eq!(ranked.len(), 24);
        assert_eq!(ranked[0], ("Test Image 1".to_string(), 1.11));
        assert_eq!(ranked[23], ("Test Image 24".to_string(), 3462.06));
        assert!(ranked.windows(2).all(|w| w[0].1 <= w[1].1));

        // tie-break on label
        table.records.clear();
        for label in ["b", "a"] {
            let mut record = reference_stats().records[0].clone();
            record.image_label = label.to_string();
            record.stats.contrast = 7.0;
            table.records.push(record);
        }
        let ranked = rank_by_contrast(&table, SymmetricAxis::Horizontal);
        assert_eq!(ranked[0].0, "a");
        assert_eq!(ranked[1].0, "b");
    }

    #[test]
    fn single_record_ranks_as_singleton() {
        let mut table = reference_stats();
        table.records.truncate(1);
        let ranked = rank_by_contrast(&table, SymmetricAxis::Horizontal);
        assert_eq!(ranked.len(), 1);
    }

    #[test]
    fn report_on_constant_records_is_all_undefined() {
        let mut table = reference_stats();
        let record = table.records[0].clone();
        table.records = vec![record.clone(), record];
        let report = cross_statistic_report(&table).unwrap();
        assert!(report.entries.iter().all(|e| e.r_vs_contrast.is_none()));
    }

    #[test]
    fn report_requires_two_records() {
        let mut table = reference_stats();
        table.records.truncate(1);
        assert!(matches!(
            cross_statistic_report(&table),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn csv_round_trip_preserves_display_values() {
        let table = reference_stats();
        let rendered = to_fixture_csv(&table);
        let reparsed = parse_fixture_csv(&rendered, "round-trip").unwrap();
        assert_eq!(reparsed.records.len(), table.records.len());
        for (a, b) in table.records.iter().zip(&reparsed.records) {
            // fixture values are already at display precision
            assert_eq!(a, b, "{} {}", a.image_label, a.axis().label());
        }
    }

    #[test]
    fn bad_fixture_lines_are_named() {
        assert!(matches!(
            parse_fixture_csv("nonsense header\n", "x"),
            Err(Error::Format(_))
        ));
        let text = format!("{FIXTURE_CSV_HEADER}\na,horizontal,1,2\n");
        assert!(matches!(parse_fixture_csv(&text, "x"), Err(Error::Format(_))));
        let text = format!("{FIXTURE_CSV_HEADER}\na,horizontal,x,0,0,0,0,0,0,0,0,0,0\n");
        assert!(matches!(parse_fixture_csv(&text, "x"), Err(Error::Format(_))));
    }
}
