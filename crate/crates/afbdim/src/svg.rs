//! Deterministic SVG rendering of plane diagrams with optional overlays:
//! a dashed envelope, bold/dotted extremal paths, and per-vertex labels.
//!
//! Floating point appears here only to format coordinates for display; no
//! geometric decision depends on it.

use std::fmt::Write as _;

use crate::diagram::PlaneDiagram;
use crate::embedding::EmbeddedDiagram;
use crate::error::{Error, Result};
use crate::paths::{PathSide, WitnessPath};
use crate::rational::rat_to_f64;

#[derive(Debug, Clone, Default)]
pub struct Overlays {
    /// draw the envelope as a closed dashed curve below the minimals
    pub envelope: bool,
    /// extremal witnessing paths to emphasise
    pub paths: Vec<WitnessPath>,
    /// extra text labels per vertex id
    pub labels: Vec<(String, String)>,
}

const SCALE: f64 = 18.0;
const MARGIN: f64 = 30.0;

struct Mapper {
    min_x: f64,
    max_y: f64,
}

impl Mapper {
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        // flip y so larger poset elements sit higher on screen
        ((x - self.min_x) * SCALE + MARGIN, (self.max_y - y) * SCALE + MARGIN)
    }
}

fn fmt(v: f64) -> String {
    format!("{v:.2}")
}

/// Renders a validated diagram. Identical inputs produce identical bytes.
pub fn render_svg(d: &PlaneDiagram, overlays: &Overlays) -> Result<String> {
    let report = d.validate();
    if !report.ok {
        return Err(Error::NotValidated(format!("{:?}", report.violations[0])));
    }
    let xs: Vec<f64> = d.positions().iter().map(|p| rat_to_f64(&p.x)).collect();
    let ys: Vec<f64> = d.positions().iter().map(|p| rat_to_f64(&p.y)).collect();
    let bend_xs: Vec<f64> = d
        .edges()
        .iter()
        .flat_map(|e| e.bends.iter().map(|p| rat_to_f64(&p.x)))
        .collect();
    let bend_ys: Vec<f64> = d
        .edges()
        .iter()
        .flat_map(|e| e.bends.iter().map(|p| rat_to_f64(&p.y)))
        .collect();
    let fold = |acc: (f64, f64), v: &f64| (acc.0.min(*v), acc.1.max(*v));
    let (min_x, max_x) = xs.iter().chain(bend_xs.iter()).fold((f64::MAX, f64::MIN), fold);
    let (min_y, max_y) = ys.iter().chain(bend_ys.iter()).fold((f64::MAX, f64::MIN), fold);
    let (min_x, max_x, min_y, max_y) = if d.is_empty() {
        (0.0, 1.0, 0.0, 1.0)
    } else {
        (min_x, max_x, min_y, max_y)
    };
    let m = Mapper { min_x, max_y };
    let width = (max_x - min_x) * SCALE + 2.0 * MARGIN;
    let height = (max_y - min_y) * SCALE + 2.0 * MARGIN + if overlays.envelope { 20.0 } else { 0.0 };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 {} {}">"#,
        fmt(width),
        fmt(height)
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);

    // envelope: a closed dashed curve through points just below each minimal,
    // closed underneath the whole drawing
    if overlays.envelope {
        if let Ok(e) = EmbeddedDiagram::build(d.clone()) {
            if let Ok(env) = e.envelope_order() {
                let mut pts: Vec<(f64, f64)> = env
                    .order
                    .iter()
                    .map(|&v| {
                        let p = d.position(v);
                        m.map(rat_to_f64(&p.x), rat_to_f64(&p.y))
                    })
                    .collect();
                if !pts.is_empty() {
                    let below = (max_y - min_y) * SCALE + MARGIN + 14.0;
                    let first = pts[0];
                    let last = *pts.last().unwrap();
                    let mut dpath = format!("M {} {}", fmt(first.0), fmt(first.1));
                    for &(x, y) in &pts[1..] {
                        let _ = write!(dpath, " L {} {}", fmt(x), fmt(y));
                    }
                    let _ = write!(dpath, " L {} {}", fmt(last.0), fmt(below));
                    let _ = write!(dpath, " L {} {}", fmt(first.0), fmt(below));
                    let _ = write!(dpath, " Z");
                    let _ = writeln!(
                        svg,
                        r##"<path class="envelope" d="{dpath}" fill="none" stroke="#7a7a7a" stroke-width="1.2" stroke-dasharray="6 4"/>"##
                    );
                    pts.clear();
                }
            }
        }
    }

    // edges
    for e in d.edges() {
        let pts = e.polyline(d.positions());
        let mapped: Vec<(f64, f64)> =
            pts.iter().map(|p| m.map(rat_to_f64(&p.x), rat_to_f64(&p.y))).collect();
        let mut dpath = format!("M {} {}", fmt(mapped[0].0), fmt(mapped[0].1));
        for &(x, y) in &mapped[1..] {
            let _ = write!(dpath, " L {} {}", fmt(x), fmt(y));
        }
        let _ = writeln!(
            svg,
            r##"<path class="edge" d="{dpath}" fill="none" stroke="#222222" stroke-width="1.4"/>"##
        );
    }

    // overlay paths: right-most bold, left-most dotted
    for wp in &overlays.paths {
        let mut dpath = String::new();
        for (i, &v) in wp.vertices.iter().enumerate() {
            let p = d.position(v);
            let (x, y) = m.map(rat_to_f64(&p.x), rat_to_f64(&p.y));
            let _ = write!(dpath, "{}{} {}", if i == 0 { "M " } else { " L " }, fmt(x), fmt(y));
        }
        let style = match wp.side {
            PathSide::RightMost => r##"stroke="#b03030" stroke-width="3.0""##,
            PathSide::LeftMost => {
                r##"stroke="#3050b0" stroke-width="2.0" stroke-dasharray="2 3""##
            }
        };
        let _ = writeln!(svg, r#"<path class="witness" d="{dpath}" fill="none" {style}/>"#);
    }

    // vertices and ids
    for v in 0..d.len() {
        let p = d.position(v);
        let (x, y) = m.map(rat_to_f64(&p.x), rat_to_f64(&p.y));
        let _ = writeln!(
            svg,
            r##"<circle class="vertex" cx="{}" cy="{}" r="3.2" fill="#111111"/>"##,
            fmt(x),
            fmt(y)
        );
        let _ = writeln!(
            svg,
            r##"<text x="{}" y="{}" font-size="10" font-family="monospace" fill="#444444">{}</text>"##,
            fmt(x + 5.0),
            fmt(y - 4.0),
            d.id(v)
        );
    }
    for (id, text) in &overlays.labels {
        if let Ok(v) = d.poset().and_then(|p| p.rank(id)) {
            let p = d.position(v);
            let (x, y) = m.map(rat_to_f64(&p.x), rat_to_f64(&p.y));
            let _ = writeln!(
                svg,
                r##"<text x="{}" y="{}" font-size="10" font-family="monospace" fill="#b05010">{}</text>"##,
                fmt(x + 5.0),
                fmt(y + 11.0),
                text
            );
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::tests::diagram;

    #[test]
    fn one_glyph_per_vertex() {
        let d = diagram(
            &[("z", 0, 0), ("l", -2, 1), ("r", 2, 2), ("t", 1, 3)],
            &[("z", "l"), ("z", "r"), ("l", "t"), ("r", "t")],
        );
        let svg = render_svg(&d, &Overlays::default()).unwrap();
        assert_eq!(svg.matches(r#"class="vertex""#).count(), 4);
        assert_eq!(svg.matches(r#"class="edge""#).count(), 4);
    }

    #[test]
    fn byte_identical_output() {
        let d = diagram(&[("a", 0, 0), ("b", 1, 2)], &[("a", "b")]);
        let s1 = render_svg(&d, &Overlays::default()).unwrap();
        let s2 = render_svg(&d, &Overlays::default()).unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn envelope_overlay_is_one_closed_dashed_path() {
        let d = diagram(
            &[("z", 0, 0), ("l", -2, 1), ("r", 2, 2), ("t", 1, 3)],
            &[("z", "l"), ("z", "r"), ("l", "t"), ("r", "t")],
        );
        let overlays = Overlays { envelope: true, ..Default::default() };
        let svg = render_svg(&d, &overlays).unwrap();
        assert_eq!(svg.matches(r#"class="envelope""#).count(), 1);
        let env_line = svg.lines().find(|l| l.contains("envelope")).unwrap();
        assert!(env_line.contains("Z\""));
        assert!(env_line.contains("stroke-dasharray"));
    }

    #[test]
    fn rejects_invalid_diagram() {
        let d = diagram(
            &[("a", 0, 0), ("b", 2, 1), ("c", 1, 5), ("d", 3, 4)],
            &[("a", "d"), ("b", "c")],
        );
        assert!(render_svg(&d, &Overlays::default()).is_err());
    }
}
