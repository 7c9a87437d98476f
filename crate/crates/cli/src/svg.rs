//! Minimal static SVG plot of dispersion branches.
//!
//! Fixed 800x600 viewport, linear axes auto-ranged to the data, one polyline
//! per branch (split at imaginary samples). A convenience view, not a data
//! contract; golden outputs target the CSV.

use mmwave_core::dispersion::DispersionBranch;
use std::fmt::Write;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 30.0;
const MARGIN_B: f64 = 50.0;

const PALETTE: [&str; 9] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22",
];

pub fn render(branches: &[DispersionBranch], title: &str) -> String {
    let mut k_max = 0.0f64;
    let mut w_max = 0.0f64;
    for b in branches {
        for s in &b.samples {
            k_max = k_max.max(s.k);
            if let Some(w) = s.omega.real() {
                w_max = w_max.max(w);
            }
        }
    }
    if k_max <= 0.0 {
        k_max = 1.0;
    }
    if w_max <= 0.0 {
        w_max = 1.0;
    }
    w_max *= 1.05;

    let plot_w = WIDTH - MARGIN_L - MARGIN_R;
    let plot_h = HEIGHT - MARGIN_T - MARGIN_B;
    let x = |k: f64| MARGIN_L + k / k_max * plot_w;
    let y = |w: f64| HEIGHT - MARGIN_B - w / w_max * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(s, "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>");
    let _ = writeln!(
        s,
        "<text x=\"{:.1}\" y=\"20\" font-family=\"monospace\" font-size=\"14\" text-anchor=\"middle\">{}</text>",
        WIDTH / 2.0,
        title
    );

    // Axes.
    let _ = writeln!(
        s,
        "<line x1=\"{MARGIN_L}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"black\"/>",
        HEIGHT - MARGIN_B,
        WIDTH - MARGIN_R,
        HEIGHT - MARGIN_B
    );
    let _ = writeln!(
        s,
        "<line x1=\"{MARGIN_L}\" y1=\"{MARGIN_T}\" x2=\"{MARGIN_L}\" y2=\"{:.1}\" stroke=\"black\"/>",
        HEIGHT - MARGIN_B
    );
    for i in 0..=5 {
        let t = i as f64 / 5.0;
        let kx = x(t * k_max);
        let wy = y(t * w_max);
        let _ = writeln!(
            s,
            "<line x1=\"{kx:.1}\" y1=\"{:.1}\" x2=\"{kx:.1}\" y2=\"{:.1}\" stroke=\"black\"/>",
            HEIGHT - MARGIN_B,
            HEIGHT - MARGIN_B + 5.0
        );
        let _ = writeln!(
            s,
            "<text x=\"{kx:.1}\" y=\"{:.1}\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">{:.3}</text>",
            HEIGHT - MARGIN_B + 18.0,
            t * k_max
        );
        let _ = writeln!(
            s,
            "<line x1=\"{:.1}\" y1=\"{wy:.1}\" x2=\"{MARGIN_L}\" y2=\"{wy:.1}\" stroke=\"black\"/>",
            MARGIN_L - 5.0
        );
        let _ = writeln!(
            s,
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\">{:.3}</text>",
            MARGIN_L - 8.0,
            wy + 4.0,
            t * w_max
        );
    }
    let _ = writeln!(
        s,
        "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">k [1/m]</text>",
        MARGIN_L + plot_w / 2.0,
        HEIGHT - 10.0
    );
    let _ = writeln!(
        s,
        "<text x=\"18\" y=\"{:.1}\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.1})\">omega [1/s]</text>",
        MARGIN_T + plot_h / 2.0,
        MARGIN_T + plot_h / 2.0
    );

    // One polyline per contiguous real run of each branch.
    for (i, b) in branches.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut points = String::new();
        let flush = |points: &mut String, out: &mut String| {
            if points.matches(' ').count() >= 1 {
                let _ = writeln!(
                    out,
                    "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>",
                    points.trim_end()
                );
            }
            points.clear();
        };
        for sample in &b.samples {
            match sample.omega.real() {
                Some(w) => {
                    let _ = write!(points, "{:.2},{:.2} ", x(sample.k), y(w));
                }
                None => flush(&mut points, &mut s),
            }
        }
        flush(&mut points, &mut s);
        // Label at the last real sample.
        if let Some(last) = b.samples.iter().rev().find_map(|q| q.omega.real().map(|w| (q.k, w))) {
            let _ = writeln!(
                s,
                "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"monospace\" font-size=\"10\" fill=\"{color}\">{}</text>",
                (x(last.0) - 28.0).min(WIDTH - MARGIN_R - 30.0),
                y(last.1) - 4.0,
                b.label.id()
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use mmwave_core::dispersion::{k_grid, sweep_relaxed_grid};
    use mmwave_core::params::MaterialParams;

    #[test]
    fn renders_well_formed_svg() {
        let grid = k_grid(10.0, 40).unwrap();
        let branches = sweep_relaxed_grid(&MaterialParams::canonical_unit(), &grid).unwrap();
        let svg = render(&branches, "dispersion");
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<polyline").count(), 9);
        // Deterministic output.
        assert_eq!(svg, render(&branches, "dispersion"));
    }
}
