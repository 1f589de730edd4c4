//! Minimal SVG line charts: axes, tick labels, one polyline per series.

use std::fmt::Write as _;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 56.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// A chart of `series` against `x`. With `log_y`, non-positive values are
/// dropped from the polylines.
pub fn line_chart(title: &str, x: &[f64], series: &[(&str, &[f64])], log_y: bool) -> String {
    let ty = |v: f64| if log_y { v.log10() } else { v };
    let usable = |v: f64| v.is_finite() && (!log_y || v > 0.0);

    let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
    for &v in x.iter().filter(|v| v.is_finite()) {
        x0 = x0.min(v);
        x1 = x1.max(v);
    }
    let (mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY);
    for (_, ys) in series {
        for &v in ys.iter().filter(|v| usable(**v)) {
            y0 = y0.min(ty(v));
            y1 = y1.max(ty(v));
        }
    }
    if !(x0 < x1) {
        x1 = x0 + 1.0;
    }
    if !x0.is_finite() {
        (x0, x1) = (0.0, 1.0);
    }
    if !(y0 < y1) {
        let c = if y0.is_finite() { y0 } else { 0.0 };
        (y0, y1) = (c - 0.5, c + 0.5);
    }
    let px = |v: f64| MARGIN + (v - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let py = |v: f64| HEIGHT - MARGIN - (ty(v) - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        s,
        r#"<path d="M{left},{top} L{left},{bottom} L{right},{bottom}" stroke="black" fill="none"/>"#
    );
    for i in 0..=4 {
        let f = i as f64 / 4.0;
        let xv = x0 + f * (x1 - x0);
        let yv = y0 + f * (y1 - y0);
        let (gx, gy) = (left + f * (right - left), bottom - f * (bottom - top));
        let ylabel = if log_y { format!("1e{yv:.1}") } else { format!("{yv:.3e}") };
        let _ = writeln!(s, r#"<text x="{gx}" y="{}" text-anchor="middle">{xv:.3}</text>"#, bottom + 16.0);
        let _ = writeln!(s, r#"<text x="{}" y="{gy}" text-anchor="end">{ylabel}</text>"#, left - 4.0);
    }
    for (i, (name, ys)) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let pts: Vec<String> = x
            .iter()
            .zip(ys.iter())
            .filter(|(xv, yv)| xv.is_finite() && usable(**yv))
            .map(|(&xv, &yv)| format!("{:.2},{:.2}", px(xv), py(yv)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            pts.join(" ")
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" fill="{color}">{}</text>"#,
            right - 100.0,
            top + 14.0 * (i as f64 + 1.0),
            escape(name)
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_has_one_polyline_per_series() {
        let x = [0.0, 1.0, 2.0];
        let a = [1.0, 0.5, 0.25];
        let b = [0.0, 0.1, 0.2];
        let svg = line_chart("norms <L2>", &x, &[("a", &a), ("b", &b)], true);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains("norms &lt;L2&gt;"));
    }

    #[test]
    fn degenerate_data_still_renders() {
        let svg = line_chart("zero", &[0.0], &[("z", &[0.0])], false);
        assert!(svg.ends_with("</svg>\n"));
        assert!(!svg.contains("NaN"));
    }
}
