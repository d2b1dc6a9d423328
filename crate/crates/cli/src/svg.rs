//! Orthographic projections of a chart trace as a static SVG.

use std::fmt::Write;

use pseudocontact::Point64;

const PANEL: f64 = 300.0;
const MARGIN: f64 = 24.0;
const PANELS: [(&str, usize, usize); 3] = [("xy", 0, 1), ("xz", 0, 2), ("yz", 1, 2)];

/// Three panels (xy, xz, yz). `None` entries break the path.
pub fn projections(title: &str, trace: &[Option<Point64>]) -> String {
    let width = 3.0 * PANEL;
    let height = PANEL + 30.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, r#"<title>{}</title>"#, escape(title));
    for (k, (name, a, b)) in PANELS.iter().enumerate() {
        let x0 = k as f64 * PANEL;
        let pts: Vec<(f64, f64)> = trace.iter().flatten().map(|p| (p[*a], p[*b])).collect();
        let (ua, va) = range(pts.iter().map(|p| p.0));
        let (ub, vb) = range(pts.iter().map(|p| p.1));
        let inner = PANEL - 2.0 * MARGIN;
        let sx = |u: f64| x0 + MARGIN + (u - ua) / (va - ua) * inner;
        let sy = |v: f64| 30.0 + PANEL - MARGIN - (v - ub) / (vb - ub) * inner;
        let _ = writeln!(out, r#"<g id="panel-{name}">"#);
        let _ = writeln!(
            out,
            r#"<rect x="{:.3}" y="{:.3}" width="{inner:.3}" height="{inner:.3}" fill="none" stroke="black" stroke-width="0.5"/>"#,
            x0 + MARGIN,
            30.0 + MARGIN
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.3}" y="20" font-family="sans-serif" font-size="12" text-anchor="middle">{name}</text>"#,
            x0 + PANEL / 2.0
        );
        let mut d = String::new();
        let mut pen_down = false;
        for p in trace {
            match p {
                Some(p) => {
                    let _ = write!(d, "{}{:.3},{:.3} ", if pen_down { "L" } else { "M" }, sx(p[*a]), sy(p[*b]));
                    pen_down = true;
                }
                None => pen_down = false,
            }
        }
        let _ = writeln!(
            out,
            r#"<path d="{}" fill="none" stroke="steelblue" stroke-width="1.5"/>"#,
            d.trim_end()
        );
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    out
}

/// Bounds with 5% padding; a flat range is widened to unit length.
fn range(it: impl Iterator<Item = f64>) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in it {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() {
        return (-1.0, 1.0);
    }
    if hi - lo < 1e-12 {
        return (lo - 0.5, hi + 0.5);
    }
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
