//! Self-contained grouped bar chart, 800 × 500, SVG 1.1.

use std::fmt::Write as _;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 500.0;

const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 130.0;
const MARGIN_TOP: f64 = 50.0;
const MARGIN_BOTTOM: f64 = 70.0;
const PALETTE: [&str; 5] = ["#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3"];

pub struct Chart<'a> {
    pub title: &'a str,
    pub y_label: &'a str,
    pub series: &'a [&'a str],
    /// (group label, one value per series)
    pub groups: Vec<(String, Vec<f64>)>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Smallest multiple of 0.5 strictly above the data.
fn axis_top(max: f64) -> f64 {
    ((max / 0.5).floor() + 1.0) * 0.5
}

pub fn render(chart: &Chart) -> String {
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let x0 = MARGIN_LEFT;
    let y0 = MARGIN_TOP + plot_h;
    let max = chart.groups.iter().flat_map(|(_, v)| v.iter().copied()).fold(0.0, f64::max);
    let top = axis_top(max);
    let y_of = |v: f64| y0 - v / top * plot_h;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="28" text-anchor="middle" font-size="16">{}</text>"#,
        WIDTH / 2.0,
        escape(chart.title)
    );

    // y axis, gridlines every 0.5
    let ticks = (top / 0.5).round() as usize;
    for k in 0..=ticks {
        let v = k as f64 * 0.5;
        let y = y_of(v);
        let _ = writeln!(
            s,
            r##"<line x1="{x0:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#dddddd"/>"##,
            x0 + plot_w
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-size="12">{v:.1}</text>"#,
            x0 - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(s, r#"<line x1="{x0:.2}" y1="{:.2}" x2="{x0:.2}" y2="{y0:.2}" stroke="black"/>"#, MARGIN_TOP);
    let _ = writeln!(s, r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{:.2}" y2="{y0:.2}" stroke="black"/>"#, x0 + plot_w);
    let _ = writeln!(
        s,
        r#"<text x="20" y="{:.2}" text-anchor="middle" font-size="13" transform="rotate(-90 20 {:.2})">{}</text>"#,
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0,
        escape(chart.y_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="13">state</text>"#,
        x0 + plot_w / 2.0,
        HEIGHT - 15.0
    );

    let n_groups = chart.groups.len().max(1) as f64;
    let group_w = plot_w / n_groups;
    let bar_w = group_w * 0.8 / chart.series.len().max(1) as f64;
    for (g, (label, values)) in chart.groups.iter().enumerate() {
        let gx = x0 + g as f64 * group_w + group_w * 0.1;
        for (k, &v) in values.iter().enumerate() {
            let x = gx + k as f64 * bar_w;
            let y = y_of(v);
            let _ = writeln!(
                s,
                r#"<rect x="{x:.2}" y="{y:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
                bar_w * 0.9,
                y0 - y,
                PALETTE[k % PALETTE.len()]
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="11">{v:.1}</text>"#,
                x + bar_w * 0.45,
                y - 4.0
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="12">{}</text>"#,
            x0 + (g as f64 + 0.5) * group_w,
            y0 + 20.0,
            escape(label)
        );
    }

    let lx = WIDTH - MARGIN_RIGHT + 20.0;
    for (k, name) in chart.series.iter().enumerate() {
        let y = MARGIN_TOP + 10.0 + k as f64 * 22.0;
        let _ = writeln!(
            s,
            r#"<rect x="{lx:.2}" y="{y:.2}" width="14" height="14" fill="{}"/>"#,
            PALETTE[k % PALETTE.len()]
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="12">{}</text>"#,
            lx + 20.0,
            y + 12.0,
            escape(name)
        );
    }
    s.push_str("</svg>\n");
    s
}
