//! The per-image analysis report and its JSON/CSV renderings.
//!
//! JSON carries full-precision values unless rounding is requested; CSV
//! always renders at report precision (two decimals for grey-level-scaled
//! statistics, four for probabilities and unit-interval measures).

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use texturematrix_core::{
    CorpusTable, GroupedDifferenceVector, PixelGrid, Provenance, Result, StatRecord,
    SymmetricAxis, TextureStatistics, average_contrast, compute_stats, display_format,
    display_round, gldv, group_gldv, normalize, symmetric_glcm, to_fixture_csv,
};

pub struct AxisSection {
    pub stats: TextureStatistics,
    pub grouped: GroupedDifferenceVector,
}

/// Everything the `analyze` command reports for one image: statistics and
/// grouped difference vector per requested axis, plus the average contrast
/// when the three standard axes are all present.
pub struct ReportDocument {
    pub label: String,
    pub sections: Vec<AxisSection>,
    pub average_contrast: Option<f64>,
}

impl ReportDocument {
    pub fn build(label: &str, image: &PixelGrid, axes: &[SymmetricAxis]) -> Result<ReportDocument> {
        let mut sections = Vec::with_capacity(axes.len());
        for &axis in axes {
            let glcm = symmetric_glcm(image, axis)?;
            let stats = compute_stats(&normalize(&glcm)?)?;
            let grouped = group_gldv(&gldv(&glcm)?);
            sections.push(AxisSection { stats, grouped });
        }

        let find = |axis: SymmetricAxis| sections.iter().find(|s| s.stats.axis == axis);
        let average_contrast = match (
            find(SymmetricAxis::Horizontal),
            find(SymmetricAxis::Vertical),
            find(SymmetricAxis::DiagonalMain),
        ) {
            (Some(h), Some(v), Some(d)) => {
                Some(average_contrast(&h.stats, &v.stats, &d.stats)?)
            }
            _ => None,
        };

        Ok(ReportDocument {
            label: label.to_string(),
            sections,
            average_contrast,
        })
    }

    pub fn to_json(&self, rounded: bool) -> String {
        let doc = JsonDocument {
            report: self,
            rounded,
        };
        let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn to_csv(&self) -> String {
        let records = self
            .sections
            .iter()
            .map(|section| StatRecord {
                image_label: self.label.clone(),
                stats: section.stats,
                prob_diff_0_19: section.grouped.probability(0),
            })
            .collect();
        let table = CorpusTable {
            records,
            failures: Vec::new(),
            provenance: Provenance::Computed,
        };
        let mut out = to_fixture_csv(&table);

        out.push('\n');
        out.push_str("image,axis,range_lo,range_hi,count,probability\n");
        for section in &self.sections {
            for (lo, hi, count, p) in section.grouped.entries() {
                out.push_str(&format!(
                    "{},{},{lo},{hi},{count},{}\n",
                    self.label,
                    section.stats.axis.label(),
                    display_format(p, 4)
                ));
            }
        }

        if let Some(avg) = self.average_contrast {
            out.push('\n');
            out.push_str("image,average_contrast\n");
            out.push_str(&format!("{},{}\n", self.label, display_format(avg, 2)));
        }
        out
    }
}

struct JsonDocument<'a> {
    report: &'a ReportDocument,
    rounded: bool,
}

#[derive(Serialize)]
struct StatsJson {
    contrast: f64,
    dissimilarity: f64,
    homogeneity: f64,
    asm: f64,
    energy: f64,
    max_probability: f64,
    entropy: f64,
    mean: f64,
    std_dev: f64,
    correlation: f64,
    degenerate_correlation: bool,
}

#[derive(Serialize)]
struct GroupJson {
    range_lo: u8,
    range_hi: u8,
    count: u64,
    probability: f64,
}

#[derive(Serialize)]
struct AxisJson {
    stats: StatsJson,
    group_gldv: Vec<GroupJson>,
}

fn axis_json(section: &AxisSection, rounded: bool) -> AxisJson {
    let s = &section.stats;
    let r = |value: f64, decimals: u32| {
        if rounded {
            display_round(value, decimals)
        } else {
            value
        }
    };
    AxisJson {
        stats: StatsJson {
            contrast: r(s.contrast, 2),
            dissimilarity: r(s.dissimilarity, 2),
            homogeneity: r(s.homogeneity, 4),
            asm: r(s.asm, 4),
            energy: r(s.energy, 4),
            max_probability: r(s.max_probability, 4),
            entropy: r(s.entropy, 2),
            mean: r(s.mean, 2),
            std_dev: r(s.std_dev, 2),
            correlation: r(s.correlation, 4),
            degenerate_correlation: s.degenerate_correlation,
        },
        group_gldv: section
            .grouped
            .entries()
            .map(|(range_lo, range_hi, count, p)| GroupJson {
                range_lo,
                range_hi,
                count,
                probability: r(p, 4),
            })
            .collect(),
    }
}

impl Serialize for JsonDocument<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("image", &self.report.label)?;
        for section in &self.report.sections {
            map.serialize_entry(
                section.stats.axis.label(),
                &axis_json(section, self.rounded),
            )?;
        }
        if let Some(avg) = self.report.average_contrast {
            let avg = if self.rounded {
                display_round(avg, 2)
            } else {
                avg
            };
            map.serialize_entry("average_contrast", &avg)?;
        }
        map.end()
    }
}
