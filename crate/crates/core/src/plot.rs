//! Rectangle diagrams as SVG or ASCII.
//!
//! The plane has `a` on the horizontal axis and `b` on the vertical one.
//! Closed edges (left, bottom) are solid and open edges (right, top) dashed.
//! An infinite edge runs to the border of the plot area and ends in a
//! dashed terminator. The sublevel bars are drawn against the `b` axis in
//! the left margin.

use std::fmt::Write as _;

use crate::barcode::{Bar, Rectangle, RectangleBarcode};
use crate::extended::fmt_ext;

const CANVAS: f64 = 800.0;
const PLOT_X: f64 = 170.0;
const PLOT_Y: f64 = 30.0;
const PLOT_SIZE: f64 = 520.0;
const BAR_X0: f64 = 20.0;
const BAR_X1: f64 = 140.0;
const LEGEND_Y: f64 = 600.0;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
    "#bcbd22", "#7f7f7f",
];

/// Finite data range padded by 10% on each side.
fn data_range(rb: &RectangleBarcode, bars: &[Bar]) -> (f64, f64) {
    let values: Vec<f64> = rb
        .rectangles()
        .iter()
        .flat_map(|r| [r.left(), r.c, r.top()])
        .chain(bars.iter().flat_map(|b| [b.birth, b.death]))
        .filter(|x| x.is_finite())
        .collect();
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    let pad = if hi > lo { 0.1 * (hi - lo) } else { 1.0 };
    (lo - pad, hi + pad)
}

struct Frame {
    lo: f64,
    hi: f64,
}

impl Frame {
    fn x(&self, a: f64) -> f64 {
        if a == f64::NEG_INFINITY {
            return PLOT_X;
        }
        if a == f64::INFINITY {
            return PLOT_X + PLOT_SIZE;
        }
        PLOT_X + (a - self.lo) / (self.hi - self.lo) * PLOT_SIZE
    }

    fn y(&self, b: f64) -> f64 {
        if b == f64::INFINITY {
            return PLOT_Y;
        }
        if b == f64::NEG_INFINITY {
            return PLOT_Y + PLOT_SIZE;
        }
        PLOT_Y + PLOT_SIZE - (b - self.lo) / (self.hi - self.lo) * PLOT_SIZE
    }
}

fn line(out: &mut String, x1: f64, y1: f64, x2: f64, y2: f64, color: &str, dashed: bool) {
    let dash = if dashed {
        r#" stroke-dasharray="6,4""#
    } else {
        ""
    };
    writeln!(
        out,
        r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{color}" stroke-width="2"{dash}/>"#
    )
    .unwrap();
}

/// A short dashed tick across a border, marking an edge at infinity.
fn terminator(out: &mut String, x: f64, y: f64, horizontal: bool, color: &str) {
    if horizontal {
        line(out, x - 8.0, y, x + 8.0, y, color, true);
    } else {
        line(out, x, y - 8.0, x, y + 8.0, color, true);
    }
}

fn draw_rectangle(out: &mut String, f: &Frame, r: &Rectangle, color: &str) {
    let (x0, x1) = (f.x(r.left()), f.x(r.c));
    let (y0, y1) = (f.y(r.c), f.y(r.top()));
    writeln!(
        out,
        r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{color}" fill-opacity="0.15" stroke="none"/>"#,
        x0,
        y1,
        x1 - x0,
        y0 - y1
    )
    .unwrap();
    // Bottom edge b = c is closed.
    line(out, x0, y0, x1, y0, color, false);
    // Right edge a = c is open.
    line(out, x1, y0, x1, y1, color, true);
    if r.ell1.is_finite() {
        line(out, x0, y0, x0, y1, color, false);
    } else {
        terminator(out, x0, (y0 + y1) / 2.0, true, color);
    }
    if r.ell2.is_finite() {
        line(out, x0, y1, x1, y1, color, true);
    } else {
        terminator(out, (x0 + x1) / 2.0, y1, false, color);
    }
}

/// The SVG diagram of a barcode with its sublevel bars. Output is deterministic.
pub fn render_svg(rb: &RectangleBarcode, bars: &[Bar]) -> String {
    let (lo, hi) = data_range(rb, bars);
    let f = Frame { lo, hi };
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}" font-family="monospace" font-size="12">"#
    )
    .unwrap();
    writeln!(
        out,
        r#"<rect x="0" y="0" width="{CANVAS}" height="{CANVAS}" fill="white"/>"#
    )
    .unwrap();
    writeln!(
        out,
        r##"<rect x="{PLOT_X}" y="{PLOT_Y}" width="{PLOT_SIZE}" height="{PLOT_SIZE}" fill="none" stroke="#444" stroke-width="1"/>"##
    )
    .unwrap();
    writeln!(
        out,
        r##"<text x="{:.2}" y="{:.2}" text-anchor="middle">a</text>"##,
        PLOT_X + PLOT_SIZE / 2.0,
        PLOT_Y + PLOT_SIZE + 36.0
    )
    .unwrap();
    writeln!(
        out,
        r##"<text x="{:.2}" y="{:.2}" text-anchor="middle">b</text>"##,
        PLOT_X + PLOT_SIZE + 16.0,
        PLOT_Y + PLOT_SIZE / 2.0
    )
    .unwrap();
    for (v, anchor) in [(lo, "start"), (hi, "end")] {
        writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="{anchor}">{v:.2}</text>"#,
            f.x(v),
            PLOT_Y + PLOT_SIZE + 16.0
        )
        .unwrap();
    }
    line(
        &mut out,
        f.x(lo),
        f.y(lo),
        f.x(hi),
        f.y(hi),
        "#000000",
        false,
    );

    for (i, r) in rb.rectangles().iter().enumerate() {
        draw_rectangle(&mut out, &f, r, PALETTE[i % PALETTE.len()]);
    }

    let step = if bars.is_empty() {
        0.0
    } else {
        (BAR_X1 - BAR_X0) / bars.len() as f64
    };
    for (i, b) in bars.iter().enumerate() {
        let x = BAR_X0 + step * (i as f64 + 0.5);
        let color = PALETTE[b.degree.rem_euclid(PALETTE.len() as i32) as usize];
        line(&mut out, x, f.y(b.birth), x, f.y(b.death), color, false);
        if b.is_infinite() {
            terminator(&mut out, x, PLOT_Y, true, color);
        }
    }

    let mut y = LEGEND_Y;
    let mut index = 0;
    for k in rb.degrees() {
        writeln!(out, r#"<text x="{PLOT_X}" y="{y:.2}">degree {k}</text>"#).unwrap();
        y += 16.0;
        for r in rb.in_degree(k) {
            let color = PALETTE[index % PALETTE.len()];
            index += 1;
            writeln!(
                out,
                r#"<rect x="{:.2}" y="{:.2}" width="10" height="10" fill="{color}"/>"#,
                PLOT_X + 8.0,
                y - 10.0
            )
            .unwrap();
            writeln!(
                out,
                r#"<text x="{:.2}" y="{y:.2}">{r} [{}] {}</text>"#,
                PLOT_X + 24.0,
                r.rtype,
                escape(&r.generator)
            )
            .unwrap();
            y += 14.0;
        }
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Sample coordinates: every finite endpoint, the midpoints between them and one point beyond each end.
fn sample_axis(rb: &RectangleBarcode) -> Vec<f64> {
    let mut v: Vec<f64> = rb
        .rectangles()
        .iter()
        .flat_map(|r| [r.left(), r.c, r.top()])
        .filter(|x| x.is_finite())
        .collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    let (Some(&first), Some(&last)) = (v.first(), v.last()) else {
        return Vec::new();
    };
    let mut out = vec![first - 1.0];
    for (i, &x) in v.iter().enumerate() {
        if i > 0 {
            out.push((v[i - 1] + x) / 2.0);
        }
        out.push(x);
    }
    out.push(last + 1.0);
    out
}

/// Per degree, the number of rectangles containing each sample point (`.` for none).
pub fn render_ascii(rb: &RectangleBarcode) -> String {
    let axis = sample_axis(rb);
    let labels: Vec<String> = axis.iter().map(|&x| fmt_ext(x)).collect();
    let width = labels.iter().map(String::len).max().unwrap_or(1).max(1);
    let mut out = String::new();
    for k in rb.degrees() {
        writeln!(out, "degree {k}").unwrap();
        for (bi, &b) in axis.iter().enumerate().rev() {
            write!(out, "{:>width$} |", labels[bi]).unwrap();
            for &a in &axis {
                let n = rb.count_containing(k, a, b);
                let cell = if n == 0 {
                    ".".to_string()
                } else {
                    n.to_string()
                };
                write!(out, " {cell:>width$}").unwrap();
            }
            out.push('\n');
        }
        write!(out, "{:>width$} +", "b/a").unwrap();
        for l in &labels {
            write!(out, " {l:>width$}").unwrap();
        }
        out.push('\n');
    }
    out
}
