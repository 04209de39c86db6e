//! Hand-emitted SVG bar chart of the 13 difference groups.
//!
//! Fixed template, no rendering library: 13 equal-width bars separated by
//! 20-unit gutters inside an 800x400 viewBox, bar height proportional to
//! group probability with full plot height meaning 1.0, and the axis's
//! contrast value annotated at two decimals.

use texturematrix_core::{GroupedDifferenceVector, SymmetricAxis, display_format};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 400.0;
const MARGIN_LEFT: f64 = 60.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 50.0;
const MARGIN_BOTTOM: f64 = 70.0;
const GUTTER: f64 = 20.0;
const BARS: usize = 13;

fn xml_escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            other => out.push(other),
        }
    }
    out
}

/// Render the chart as a standalone SVG document.
pub fn chart_svg(
    label: &str,
    axis: SymmetricAxis,
    grouped: &GroupedDifferenceVector,
    contrast: f64,
) -> String {
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let baseline = MARGIN_TOP + plot_h;
    let bar_w = (plot_w - GUTTER * (BARS - 1) as f64) / BARS as f64;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" \
         font-family=\"sans-serif\">\n"
    ));
    svg.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
    ));
    svg.push_str(&format!(
        "  <text x=\"{MARGIN_LEFT}\" y=\"26\" font-size=\"16\">{} ({} axis)</text>\n",
        xml_escape(label),
        axis.label()
    ));
    svg.push_str(&format!(
        "  <text class=\"contrast\" x=\"{}\" y=\"26\" font-size=\"14\" text-anchor=\"end\">\
         Contrast: {}</text>\n",
        WIDTH - MARGIN_RIGHT,
        display_format(contrast, 2)
    ));

    // probability axis: ticks every 0.25, full height is probability 1.0
    for tick in 0..=4 {
        let p = f64::from(tick) * 0.25;
        let y = baseline - p * plot_h;
        svg.push_str(&format!(
            "  <line x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"#cccccc\" \
             stroke-width=\"1\"/>\n",
            MARGIN_LEFT,
            WIDTH - MARGIN_RIGHT
        ));
        svg.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"end\">{p:.2}</text>\n",
            MARGIN_LEFT - 6.0,
            y + 3.0
        ));
    }

    for (k, (lo, hi, _, probability)) in grouped.entries().enumerate() {
        let x = MARGIN_LEFT + k as f64 * (bar_w + GUTTER);
        let h = probability * plot_h;
        let y = baseline - h;
        svg.push_str(&format!(
            "  <rect class=\"bar\" x=\"{x:.3}\" y=\"{y:.9}\" width=\"{bar_w:.3}\" \
             height=\"{h:.9}\" fill=\"#4a7ebb\"/>\n"
        ));
        svg.push_str(&format!(
            "  <text class=\"bar-label\" x=\"{:.3}\" y=\"{}\" font-size=\"10\" \
             text-anchor=\"middle\">{lo}-{hi}</text>\n",
            x + bar_w / 2.0,
            baseline + 16.0
        ));
    }

    svg.push_str(&format!(
        "  <line x1=\"{MARGIN_LEFT}\" y1=\"{baseline}\" x2=\"{}\" y2=\"{baseline}\" \
         stroke=\"black\" stroke-width=\"1\"/>\n",
        WIDTH - MARGIN_RIGHT
    ));
    svg.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">\
         Grey-level difference group</text>\n",
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 24.0
    ));
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use texturematrix_core::{PixelGrid, gldv, group_gldv, symmetric_glcm};

    fn grouped_for(image: &PixelGrid) -> GroupedDifferenceVector {
        let glcm = symmetric_glcm(image, SymmetricAxis::Horizontal).unwrap();
        group_gldv(&gldv(&glcm).unwrap())
    }

    #[test]
    fn constant_image_chart_has_one_full_bar() {
        let image = PixelGrid::new(4, 4, 1, vec![9; 16]).unwrap();
        let svg = chart_svg("const.pgm", SymmetricAxis::Horizontal, &grouped_for(&image), 0.0);
        assert_eq!(svg.matches("class=\"bar\"").count(), 13);
        assert!(svg.contains("Contrast: 0.00"));
        assert!(svg.contains("height=\"280.000000000\""));
        assert!(svg.contains(">240-255<"));
        assert!(svg.contains(">0-19<"));
    }

    #[test]
    fn bar_heights_sum_to_plot_height() {
        let values = (0..64).map(|k| (k * 37 % 256) as u8).collect();
        let image = PixelGrid::new(8, 8, 1, values).unwrap();
        let svg = chart_svg("img", SymmetricAxis::Horizontal, &grouped_for(&image), 1.0);
        let mut sum = 0.0;
        let mut bars = 0;
        for piece in svg.split("height=\"").skip(1) {
            let value: f64 = piece.split('"').next().unwrap().parse().unwrap();
            if piece.contains("fill=\"#4a7ebb\"") {
                sum += value;
                bars += 1;
            }
        }
        assert_eq!(bars, 13);
        assert!((sum / 280.0 - 1.0).abs() < 1e-6, "sum {sum}");
    }

    #[test]
    fn labels_are_escaped() {
        let image = PixelGrid::new(1, 2, 1, vec![1, 2]).unwrap();
        let svg = chart_svg(
            "a<b>&\".pgm",
            SymmetricAxis::Horizontal,
            &grouped_for(&image),
            0.5,
        );
        assert!(svg.contains("a&lt;b&gt;&amp;&quot;.pgm"));
    }
}
