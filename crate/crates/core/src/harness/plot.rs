//! Minimal SVG line chart for scaling sweeps.

use std::fmt::Write;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

/// Mean hitting times of one algorithm and, optionally, its fitted constant.
#[derive(Clone, Debug, PartialEq)]
pub struct PlotSeries {
    pub label: String,
    /// `(n, mean evaluations)`.
    pub points: Vec<(f64, f64)>,
    /// `c` of the fitted curve `c · n ln n`.
    pub fit: Option<f64>,
}

/// Renders mean evaluations against `n` with dashed `c · n ln n` curves.
pub fn scaling_svg(series: &[PlotSeries]) -> String {
    let xs = series.iter().flat_map(|s| s.points.iter().map(|p| p.0));
    let (x_lo, x_hi) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
        (lo.min(x), hi.max(x))
    });
    let (x_lo, x_hi) = if x_lo.is_finite() {
        (x_lo.min(2.0), x_hi.max(x_lo + 1.0))
    } else {
        (2.0, 3.0)
    };
    let curve = |c: f64, n: f64| c * n * n.ln();
    let y_hi = series
        .iter()
        .flat_map(|s| {
            let fit_top = s.fit.map(|c| curve(c, x_hi));
            s.points.iter().map(|p| p.1).chain(fit_top)
        })
        .fold(1.0, f64::max);

    let px = |x: f64| MARGIN + (x - x_lo) / (x_hi - x_lo) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - y / y_hi * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (x0, y0, x1, y1) = (px(x_lo), py(0.0), px(x_hi), py(y_hi));
    let _ = writeln!(
        svg,
        r#"<path d="M{x0:.1},{y1:.1} L{x0:.1},{y0:.1} L{x1:.1},{y0:.1}" stroke="black" fill="none"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">n</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="15" y="{:.1}" transform="rotate(-90 15 {:.1})" text-anchor="middle">mean evaluations</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="{x0:.1}" y="{:.1}" text-anchor="middle">{x_lo}</text>"#,
        y0 + 18.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="{x1:.1}" y="{:.1}" text-anchor="middle">{x_hi}</text>"#,
        y0 + 18.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{y1:.1}" text-anchor="end">{y_hi:.0}</text>"#,
        x0 - 5.0
    );

    for (k, s) in series.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        if let Some(c) = s.fit {
            let steps = 64;
            let d: Vec<String> = (0..=steps)
                .map(|i| {
                    let n = x_lo + (x_hi - x_lo) * i as f64 / steps as f64;
                    format!(
                        "{}{:.1},{:.1}",
                        if i == 0 { "M" } else { "L" },
                        px(n),
                        py(curve(c, n))
                    )
                })
                .collect();
            let _ = writeln!(
                svg,
                r#"<path d="{}" stroke="{color}" stroke-dasharray="4 3" fill="none"/>"#,
                d.join(" ")
            );
        }
        for &(x, y) in &s.points {
            let _ = writeln!(
                svg,
                r#"<circle cx="{:.1}" cy="{:.1}" r="3.5" fill="{color}"/>"#,
                px(x),
                py(y)
            );
        }
        let ly = MARGIN + 16.0 * k as f64;
        let fit = s.fit.map_or_else(String::new, |c| format!(" (c = {c:.3})"));
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{ly:.1}" fill="{color}">{}{fit}</text>"#,
            MARGIN + 10.0,
            escape(&s.label)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_points_and_fit() {
        let s = PlotSeries {
            label: "nsga2 <mu=4>".into(),
            points: vec![(32.0, 1000.0), (64.0, 2300.0), (128.0, 5200.0)],
            fit: Some(8.0),
        };
        let svg = scaling_svg(&[s]);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<circle").count(), 3);
        assert!(svg.contains("stroke-dasharray"));
        assert!(svg.contains("nsga2 &lt;mu=4&gt;"));
    }

    #[test]
    fn empty_chart_is_valid() {
        let svg = scaling_svg(&[]);
        assert!(svg.contains("</svg>") && !svg.contains("NaN"));
    }
}
