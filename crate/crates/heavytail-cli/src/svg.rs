//! Minimal self-contained SVG line charts (inline axes, no external assets).

use std::fmt::Write as _;

const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];
const WIDTH: f64 = 760.0;
const PANEL_H: f64 = 250.0;
const MARGIN_L: f64 = 72.0;
const MARGIN_R: f64 = 130.0;
const MARGIN_T: f64 = 34.0;
const MARGIN_B: f64 = 42.0;

pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

pub struct Panel {
    pub title: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

fn nice_ticks(lo: f64, hi: f64) -> Vec<f64> {
    let range = (hi - lo).max(1e-300);
    let raw = range / 4.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|&s| range / s <= 5.5)
        .unwrap_or(10.0 * mag);
    let start = (lo / step).ceil() * step;
    let mut ticks = Vec::new();
    let mut t = start;
    while t <= hi + 1e-9 * range {
        ticks.push(t);
        t += step;
    }
    ticks
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if (0.001..100_000.0).contains(&a) {
        let s = format!("{v:.4}");
        let s = s.trim_end_matches('0').trim_end_matches('.').to_string();
        if s.is_empty() || s == "-" {
            "0".into()
        } else {
            s
        }
    } else {
        format!("{v:.2e}")
    }
}

/// Render stacked panels sharing the x axis semantics (e.g. threshold count).
pub fn render(panels: &[Panel], x_label: &str) -> String {
    let total_h = PANEL_H * panels.len() as f64;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{total_h}" viewBox="0 0 {WIDTH} {total_h}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);

    for (p_idx, panel) in panels.iter().enumerate() {
        let top = p_idx as f64 * PANEL_H;
        let plot_w = WIDTH - MARGIN_L - MARGIN_R;
        let plot_h = PANEL_H - MARGIN_T - MARGIN_B;

        let finite: Vec<(f64, f64)> = panel
            .series
            .iter()
            .flat_map(|s| s.points.iter().copied())
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .collect();
        let (x_lo, x_hi) = finite
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(x, _)| {
                (lo.min(x), hi.max(x))
            });
        let (y_lo, y_hi) = finite
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(_, y)| {
                (lo.min(y), hi.max(y))
            });
        let (x_lo, x_hi) = if x_lo < x_hi {
            (x_lo, x_hi)
        } else {
            (x_lo - 1.0, x_hi + 1.0)
        };
        let (y_lo, y_hi) = if y_lo < y_hi {
            (y_lo, y_hi)
        } else {
            (y_lo - 1.0, y_hi + 1.0)
        };
        let pad = 0.04 * (y_hi - y_lo);
        let (y_lo, y_hi) = (y_lo - pad, y_hi + pad);

        let sx = move |x: f64| MARGIN_L + (x - x_lo) / (x_hi - x_lo) * plot_w;
        let sy = move |y: f64| top + MARGIN_T + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h;

        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="13" font-weight="bold">{}</text>"#,
            MARGIN_L,
            top + 18.0,
            panel.title
        );

        // frame
        let _ = writeln!(
            out,
            r##"<rect x="{MARGIN_L}" y="{}" width="{plot_w}" height="{plot_h}" fill="none" stroke="#444"/>"##,
            top + MARGIN_T
        );

        for t in nice_ticks(x_lo, x_hi) {
            let x = sx(t);
            let y0 = top + MARGIN_T + plot_h;
            let _ = writeln!(
                out,
                r##"<line x1="{x}" y1="{y0}" x2="{x}" y2="{}" stroke="#444"/>"##,
                y0 + 4.0
            );
            let _ = writeln!(
                out,
                r#"<text x="{x}" y="{}" text-anchor="middle">{}</text>"#,
                y0 + 16.0,
                tick_label(t)
            );
        }
        for t in nice_ticks(y_lo, y_hi) {
            let y = sy(t);
            let _ = writeln!(
                out,
                r##"<line x1="{}" y1="{y}" x2="{MARGIN_L}" y2="{y}" stroke="#444"/>"##,
                MARGIN_L - 4.0
            );
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
                MARGIN_L - 7.0,
                y + 3.5,
                tick_label(t)
            );
        }
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle">{x_label}</text>"#,
            MARGIN_L + plot_w / 2.0,
            top + MARGIN_T + plot_h + 32.0
        );
        let _ = writeln!(
            out,
            r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">{}</text>"#,
            top + MARGIN_T + plot_h / 2.0,
            top + MARGIN_T + plot_h / 2.0,
            panel.y_label
        );

        for (s_idx, series) in panel.series.iter().enumerate() {
            let color = PALETTE[s_idx % PALETTE.len()];
            let path: Vec<String> = series
                .points
                .iter()
                .filter(|(x, y)| x.is_finite() && y.is_finite())
                .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                .collect();
            if path.len() >= 2 {
                let _ = writeln!(
                    out,
                    r#"<polyline fill="none" stroke="{color}" stroke-width="1.6" points="{}"/>"#,
                    path.join(" ")
                );
            }
            let ly = top + MARGIN_T + 14.0 * s_idx as f64 + 8.0;
            let lx = WIDTH - MARGIN_R + 12.0;
            let _ = writeln!(
                out,
                r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/>"#,
                lx + 18.0
            );
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}">{}</text>"#,
                lx + 23.0,
                ly + 3.5,
                series.label
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
