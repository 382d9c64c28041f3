//! Browser bindings for the interactive demo page: generate a diagram,
//! analyze it (validation, accessibility, envelope, realizer, dimension),
//! and render it as SVG with overlays.
//!
//! Everything returns JSON strings; errors come back as `{"error": ...}` so
//! the page can show them without exception plumbing.

use wasm_bindgen::prelude::*;

use afbdim::corpus::{self, CorpusSpec, Shape};
use afbdim::diagram::PlaneDiagram;
use afbdim::dimension::DimensionBound;
use afbdim::embedding::EmbeddedDiagram;
use afbdim::realizer::CoverMode;
use afbdim::svg::{render_svg, Overlays};
use serde_json::json;

fn err_json(msg: impl std::fmt::Display) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

/// Deterministic diagram JSON for (shape, seed, n).
#[wasm_bindgen]
pub fn generate(shape: &str, seed: u32, n: u32) -> String {
    let shape: Shape = match shape.parse() {
        Ok(s) => s,
        Err(e) => return err_json(e),
    };
    let spec = CorpusSpec { seed: seed as u64, n: n as usize, shape };
    let d = corpus::generate(&spec);
    serde_json::to_string(&d.to_json()).unwrap_or_else(err_json)
}

/// Full analysis of a diagram: validation report, accessibility, envelope,
/// the realizer with provenance, and the exact dimension when small enough.
#[wasm_bindgen]
pub fn analyze(diagram_json: &str, mode: &str) -> String {
    let d = match PlaneDiagram::from_json_str(diagram_json) {
        Ok(d) => d,
        Err(e) => return err_json(e),
    };
    let report = d.validate();
    if !report.ok {
        return json!({
            "valid": false,
            "violations": serde_json::to_value(&report.violations).unwrap(),
        })
        .to_string();
    }
    let e = match EmbeddedDiagram::build(d) {
        Ok(e) => e,
        Err(e) => return err_json(e),
    };
    let p = e.poset().clone();
    let (afb, violators) = e.afb_check();
    let mut out = json!({
        "valid": true,
        "elements": p.len(),
        "incomparable_pairs": p.incomparable_pairs().len(),
        "afb": afb,
        "violators": violators.iter().map(|&v| p.id(v).to_owned()).collect::<Vec<_>>(),
    });
    if afb {
        if let Ok(env) = e.envelope_order() {
            out["envelope"] =
                json!(env.order.iter().map(|&v| p.id(v).to_owned()).collect::<Vec<_>>());
        }
        let mode = if mode == "seven" { CoverMode::Seven } else { CoverMode::Five };
        match e.realize_afb(mode) {
            Ok(real) => {
                out["realizer"] = serde_json::to_value(real.to_json(&p)).unwrap();
                out["extensions"] = json!(real.realizer.extensions.len());
            }
            Err(err) => out["realizer_error"] = json!(err.to_string()),
        }
    }
    if p.incomparable_pairs().len() <= 40 {
        match p.dimension_exact(6, 40) {
            Ok(DimensionBound::Exact(dim)) => out["dimension"] = json!(dim),
            Ok(DimensionBound::MoreThan(k)) => out["dimension_exceeds"] = json!(k),
            Err(err) => out["dimension_error"] = json!(err.to_string()),
        }
    }
    out.to_string()
}

/// SVG rendering with an optional envelope overlay.
#[wasm_bindgen]
pub fn render(diagram_json: &str, show_envelope: bool) -> String {
    let d = match PlaneDiagram::from_json_str(diagram_json) {
        Ok(d) => d,
        Err(e) => return err_json(e),
    };
    let overlays = Overlays { envelope: show_envelope, ..Default::default() };
    match render_svg(&d, &overlays) {
        Ok(svg) => svg,
        Err(e) => err_json(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generate_analyze_render_round_trip() {
        let d = generate("wraparound", 3, 14);
        assert!(d.contains("vertices"));
        let a = analyze(&d, "five");
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["valid"], true);
        assert_eq!(v["afb"], true);
        assert!(v["extensions"].as_u64().unwrap() <= 6);
        let svg = render(&d, true);
        assert!(svg.starts_with("<svg"));
    }

    #[test]
    fn analyze_reports_trapped_minimals() {
        let d = generate("adversarial", 1, 4);
        let a = analyze(&d, "five");
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["afb"], false);
        assert!(!v["violators"].as_array().unwrap().is_empty());
    }

    #[test]
    fn analyze_rejects_garbage() {
        let a = analyze("not json", "five");
        assert!(a.contains("error"));
    }
}
