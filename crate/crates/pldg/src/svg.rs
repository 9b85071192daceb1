//! Static SVG 1.1 drawings of a run.

use std::collections::BTreeSet;
use std::fmt::Write;

use pldg_core::sim::RunReport;
use pldg_core::{Point, PointSet};

/// Pixels per radio range.
const SCALE: f64 = 100.0;
/// Blank border around the points, in radio ranges.
const MARGIN: f64 = 0.6;

/// Draws the points, the surviving edges (solid), the edges removed by a
/// certificate (dashed), and a bar one radio range long.
pub fn render(ps: &PointSet, report: &RunReport) -> String {
    let kept: BTreeSet<(usize, usize)> = report.graph(ps).edges().collect();
    let removed: BTreeSet<(usize, usize)> = report
        .certificates
        .iter()
        .map(|c| {
            let (a, b) = c.removed_edge;
            (a.min(b), a.max(b))
        })
        .filter(|e| !kept.contains(e))
        .collect();

    let (lo, hi) = bounds(&ps.points);
    let width = (hi.x - lo.x + 2.0 * MARGIN) * SCALE;
    let height = (hi.y - lo.y + 2.0 * MARGIN) * SCALE;
    // flip y so the drawing keeps the plane's orientation
    let at = |p: Point| ((p.x - lo.x + MARGIN) * SCALE, (hi.y - p.y + MARGIN) * SCALE);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
    );
    let _ = writeln!(
        s,
        "<title>{} on {} points</title>",
        report.variant,
        ps.len()
    );
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);

    let _ = writeln!(
        s,
        r##"<g stroke="#c0392b" stroke-width="1" stroke-dasharray="5 4">"##
    );
    for &(a, b) in &removed {
        line(&mut s, "removed", at(ps[a]), at(ps[b]));
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g stroke="#1f2d3d" stroke-width="1.5">"##);
    for &(a, b) in &kept {
        line(&mut s, "kept", at(ps[a]), at(ps[b]));
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g fill="#1f77b4">"##);
    for &p in &ps.points {
        let (x, y) = at(p);
        let _ = writeln!(s, r#"<circle class="node" cx="{x:.2}" cy="{y:.2}" r="3"/>"#);
    }
    let _ = writeln!(s, "</g>");

    let (x0, y0) = (0.2 * SCALE, height - 0.25 * SCALE);
    let _ = writeln!(
        s,
        r##"<g class="scale-bar" stroke="#000000" stroke-width="2"><line x1="{x0:.2}" y1="{y0:.2}" x2="{:.2}" y2="{y0:.2}"/></g>"##,
        x0 + SCALE
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="middle">1</text>"#,
        x0 + 0.5 * SCALE,
        y0 - 6.0
    );
    s.push_str("</svg>\n");
    s
}

fn line(s: &mut String, class: &str, (x1, y1): (f64, f64), (x2, y2): (f64, f64)) {
    let _ = writeln!(
        s,
        r#"<line class="{class}" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"/>"#
    );
}

fn bounds(points: &[Point]) -> (Point, Point) {
    if points.is_empty() {
        return (Point::new(0.0, 0.0), Point::new(1.0, 1.0));
    }
    let mut lo = points[0];
    let mut hi = points[0];
    for p in points {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    // room for the scale bar
    hi.x = hi.x.max(lo.x + 1.0);
    (lo, hi)
}
