//! Self-contained SVG line plots of uncertainty curves: axes, polylines with
//! breaks at the guard-band gaps, and an inset panel magnifying the
//! neighbourhood of α = −1. No external resources are referenced; the data
//! mapping is recorded in attributes so tests can re-derive the plotted
//! values.

use su3int::analysis::UncertaintyRecord;
use su3int::coupling::CouplingTriple;

const WIDTH: f64 = 880.0;
const HEIGHT: f64 = 540.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 25.0;
const MARGIN_T: f64 = 45.0;
const MARGIN_B: f64 = 55.0;

struct Frame {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
    xmin: f64,
    xmax: f64,
    ymin: f64,
    ymax: f64,
}

impl Frame {
    fn px(&self, alpha: f64) -> f64 {
        self.x0 + (alpha - self.xmin) / (self.xmax - self.xmin) * (self.x1 - self.x0)
    }

    fn py(&self, v: f64) -> f64 {
        // SVG y grows downward
        self.y1 - (v - self.ymin) / (self.ymax - self.ymin) * (self.y1 - self.y0)
    }
}

fn nice_step(range: f64, target: usize) -> f64 {
    let raw = range / target as f64;
    let mag = 10f64.powf(raw.log10().floor());
    for m in [1.0, 2.0, 5.0, 10.0] {
        if m * mag >= raw {
            return m * mag;
        }
    }
    10.0 * mag
}

/// Split the records into runs that never cross a singular point, so the
/// guard-band gaps render as breaks.
fn segments(records: &[UncertaintyRecord]) -> Vec<&[UncertaintyRecord]> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..records.len() {
        let (a, b) = (records[i - 1].alpha, records[i].alpha);
        if (a < -1.0 && b > -1.0) || (a < 1.0 && b > 1.0) {
            out.push(&records[start..i]);
            start = i;
        }
    }
    out.push(&records[start..]);
    out
}

fn polyline(frame: &Frame, points: &[UncertaintyRecord], class: &str, stroke: &str) -> String {
    let coords: Vec<String> = points
        .iter()
        .map(|r| format!("{:.6},{:.6}", frame.px(r.alpha), frame.py(r.product)))
        .collect();
    format!(
        r##"<polyline class="{class}" fill="none" stroke="{stroke}" stroke-width="1.6" points="{}"/>"##,
        coords.join(" ")
    )
}

fn axes(frame: &Frame, label_x: &str, label_y: &str, font: f64) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        r##"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="#333" stroke-width="1"/>"##,
        frame.x0,
        frame.y0,
        frame.x1 - frame.x0,
        frame.y1 - frame.y0
    ));
    let xstep = nice_step(frame.xmax - frame.xmin, 8);
    let mut t = (frame.xmin / xstep).ceil() * xstep;
    while t <= frame.xmax + 1e-12 {
        let x = frame.px(t);
        s.push_str(&format!(
            r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#333" stroke-width="1"/>"##,
            frame.y1,
            frame.y1 + 5.0
        ));
        s.push_str(&format!(
            r##"<text x="{x:.2}" y="{:.2}" font-size="{font}" text-anchor="middle" fill="#333">{}</text>"##,
            frame.y1 + 7.0 + font,
            (t * 1e9).round() / 1e9
        ));
        t += xstep;
    }
    let ystep = nice_step(frame.ymax - frame.ymin, 6);
    let mut t = (frame.ymin / ystep).ceil() * ystep;
    while t <= frame.ymax + 1e-12 {
        let y = frame.py(t);
        s.push_str(&format!(
            r##"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#333" stroke-width="1"/>"##,
            frame.x0 - 5.0,
            frame.x0
        ));
        s.push_str(&format!(
            r##"<text x="{:.2}" y="{:.2}" font-size="{font}" text-anchor="end" fill="#333">{}</text>"##,
            frame.x0 - 8.0,
            y + 0.35 * font,
            (t * 1e9).round() / 1e9
        ));
        t += ystep;
    }
    s.push_str(&format!(
        r##"<text x="{:.2}" y="{:.2}" font-size="{}" text-anchor="middle" fill="#111">{label_x}</text>"##,
        0.5 * (frame.x0 + frame.x1),
        frame.y1 + 40.0,
        font + 2.0
    ));
    s.push_str(&format!(
        r##"<text x="{:.2}" y="{:.2}" font-size="{}" text-anchor="middle" fill="#111" transform="rotate(-90 {:.2} {:.2})">{label_y}</text>"##,
        frame.x0 - 50.0,
        0.5 * (frame.y0 + frame.y1),
        font + 2.0,
        frame.x0 - 50.0,
        0.5 * (frame.y0 + frame.y1)
    ));
    s
}

/// Render the product-vs-α curve with an inset panel over [−1.05, −0.95]
/// when the scan covers it.
pub fn render_scan(records: &[UncertaintyRecord], triple: &CouplingTriple) -> String {
    assert!(!records.is_empty(), "nothing to plot");
    let xmin = records.first().unwrap().alpha;
    let xmax = records.last().unwrap().alpha;
    let ymax = records.iter().map(|r| r.product).fold(0.0, f64::max);
    let main = Frame {
        x0: MARGIN_L,
        y0: MARGIN_T,
        x1: WIDTH - MARGIN_R,
        y1: HEIGHT - MARGIN_B,
        xmin,
        xmax,
        ymin: 0.0,
        ymax: (ymax * 1.05).max(1e-12),
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"##
    ));
    svg.push('\n');
    svg.push_str(&format!(
        r##"<title>uncertainty product, triple {}</title>"##,
        triple
    ));
    svg.push('\n');
    svg.push_str(r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    svg.push('\n');
    svg.push_str(&format!(
        r##"<text x="{:.2}" y="26" font-size="15" text-anchor="middle" fill="#111">triple {} : product of uncertainties vs alpha</text>"##,
        WIDTH / 2.0,
        triple
    ));
    svg.push('\n');

    svg.push_str(&format!(
        r##"<g id="main-plot" data-xmin="{}" data-xmax="{}" data-ymin="{}" data-ymax="{}" data-px0="{}" data-py0="{}" data-px1="{}" data-py1="{}">"##,
        main.xmin, main.xmax, main.ymin, main.ymax, main.x0, main.y0, main.x1, main.y1
    ));
    svg.push('\n');
    svg.push_str(&axes(&main, "alpha", "product", 12.0));
    for seg in segments(records) {
        if seg.len() >= 2 {
            svg.push_str(&polyline(&main, seg, "product-curve", "#1f77b4"));
            svg.push('\n');
        }
    }
    svg.push_str("</g>\n");

    // inset around alpha = -1
    let inset_data: Vec<UncertaintyRecord> = records
        .iter()
        .filter(|r| r.alpha >= -1.05 && r.alpha <= -0.95)
        .copied()
        .collect();
    if inset_data.len() >= 4 {
        let iymax = inset_data.iter().map(|r| r.product).fold(0.0, f64::max);
        let iymin = inset_data.iter().map(|r| r.product).fold(f64::INFINITY, f64::min);
        let pad = ((iymax - iymin) * 0.1).max(1e-12);
        let inset = Frame {
            x0: main.x0 + 60.0,
            y0: main.y0 + 25.0,
            x1: main.x0 + 300.0,
            y1: main.y0 + 185.0,
            xmin: -1.05,
            xmax: -0.95,
            ymin: (iymin - pad).max(0.0),
            ymax: iymax + pad,
        };
        svg.push_str(&format!(
            r##"<g id="inset-plot" data-xmin="{}" data-xmax="{}" data-ymin="{}" data-ymax="{}" data-px0="{}" data-py0="{}" data-px1="{}" data-py1="{}">"##,
            inset.xmin, inset.xmax, inset.ymin, inset.ymax, inset.x0, inset.y0, inset.x1, inset.y1
        ));
        svg.push('\n');
        svg.push_str(&format!(
            r##"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="#fbfbfb" stroke="#999"/>"##,
            inset.x0,
            inset.y0,
            inset.x1 - inset.x0,
            inset.y1 - inset.y0
        ));
        svg.push_str(&format!(
            r##"<text x="{:.2}" y="{:.2}" font-size="10" text-anchor="middle" fill="#333">around alpha = -1</text>"##,
            0.5 * (inset.x0 + inset.x1),
            inset.y0 - 4.0
        ));
        for seg in segments(&inset_data) {
            if seg.len() >= 2 {
                svg.push_str(&polyline(&inset, seg, "inset-curve", "#d62728"));
                svg.push('\n');
            }
        }
        svg.push_str("</g>\n");
    }

    svg.push_str("</svg>\n");
    svg
}
