use std::fmt::Write;

use super::Scenario;
use crate::agent::{Navigation, Provenance};
use crate::geom::{Point, Polygon};
use crate::oracle::accessibility;

/// Overlays are skipped past this many grid lines.
const MAX_TILING_LINES: usize = 4000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SvgOptions {
    pub tiling: bool,
}

fn xy(p: Point) -> String {
    format!("{:.6},{:.6}", p.x, -p.y)
}

fn ring_path(poly: &Polygon) -> String {
    let pts: Vec<String> = poly.vertices().iter().map(|&v| xy(v)).collect();
    format!("M{}Z", pts.join("L"))
}

/// SVG 1.1 picture of the scenario and, when given, the agent's run. Output
/// depends only on the inputs.
pub fn render_svg(s: &Scenario, nav: Option<&Navigation>, opts: SvgOptions) -> String {
    let t = s.terrain();
    let bb = t.bbox();
    let size = bb.width().max(bb.height());
    let pad = size * 0.03;
    let sw = size / 600.0;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{:.6} {:.6} {:.6} {:.6}" width="800" height="{}">"#,
        bb.min.x - pad,
        -bb.max.y - pad,
        bb.width() + 2.0 * pad,
        bb.height() + 2.0 * pad,
        (800.0 * (bb.height() + 2.0 * pad) / (bb.width() + 2.0 * pad)).round() as i64,
    );
    let _ = writeln!(out, r##"<path class="outer" d="{}" fill="#fbfaf5" stroke="#222" stroke-width="{sw:.6}"/>"##, ring_path(t.outer()));
    for o in t.obstacles() {
        let _ = writeln!(out, r##"<path class="obstacle" d="{}" fill="#8a8a8a" stroke="#222" stroke-width="{sw:.6}"/>"##, ring_path(o));
    }

    if let (true, Some(nav)) = (opts.tiling, nav) {
        let (a, b) = (nav.tiling.cell_of(bb.min), nav.tiling.cell_of(bb.max));
        let lines = (b.0 - a.0 + 2) as usize + (b.1 - a.1 + 2) as usize;
        if lines <= MAX_TILING_LINES {
            let _ = writeln!(out, r##"<g class="tiling" stroke="#c8d4e6" stroke-width="{:.6}">"##, sw / 2.0);
            for k in a.0..=b.0 + 1 {
                let x = nav.tiling.x_line(k);
                let _ = writeln!(out, r#"<line x1="{x:.6}" y1="{:.6}" x2="{x:.6}" y2="{:.6}"/>"#, -bb.min.y, -bb.max.y);
            }
            for k in a.1..=b.1 + 1 {
                let y = -nav.tiling.y_line(k);
                let _ = writeln!(out, r#"<line x1="{:.6}" y1="{y:.6}" x2="{:.6}" y2="{y:.6}"/>"#, bb.min.x, bb.max.x);
            }
            let _ = writeln!(out, "</g>");
        }
    }

    if let Ok(spec) = accessibility(t, s.treasure()) {
        let q = s.treasure();
        let _ = writeln!(
            out,
            r##"<circle class="treasure-disc" cx="{:.6}" cy="{:.6}" r="{:.6}" fill="#f2c94c" fill-opacity="0.35"/>"##,
            q.x, -q.y, spec.lambda
        );
    }

    if let Some(nav) = nav {
        for piece in nav.trajectory.pieces() {
            let (class, colour) = match piece.kind {
                Provenance::FreeMove => ("free", "#1f6fd1"),
                Provenance::PerimeterWalk => ("walk", "#d1452f"),
            };
            let pts: Vec<String> = piece.points.iter().map(|&p| xy(p)).collect();
            let _ = writeln!(
                out,
                r#"<polyline class="{class}" points="{}" fill="none" stroke="{colour}" stroke-width="{:.6}"/>"#,
                pts.join(" "),
                sw * 1.5
            );
        }
        let m = nav.qprime;
        let _ = writeln!(out, r##"<circle class="qprime" cx="{:.6}" cy="{:.6}" r="{:.6}" fill="#1f6fd1"/>"##, m.x, -m.y, sw * 4.0);
    }

    let (p, q) = (s.start(), s.treasure());
    let _ = writeln!(out, r##"<circle class="start" cx="{:.6}" cy="{:.6}" r="{:.6}" fill="#2a9d4b"/>"##, p.x, -p.y, sw * 4.0);
    let _ = writeln!(out, r##"<circle class="treasure" cx="{:.6}" cy="{:.6}" r="{:.6}" fill="#b8860b"/>"##, q.x, -q.y, sw * 4.0);
    out.push_str("</svg>\n");
    out
}
