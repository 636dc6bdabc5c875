//! Browser demo: a thin wasm-bindgen layer over the core crate exposing
//! three interactive operations — module enumeration at a dimension
//! vector, the degeneration Hasse diagram (with an inline SVG layout),
//! and the decision procedure for a chosen pair with its certificate.
//!
//! All inputs and outputs are JSON strings so the page stays a single
//! static file with no framework.

use std::sync::Arc;

use wasm_bindgen::prelude::*;

use quivdeg::degeneration::DegenConfig;
use quivdeg::json;
use quivdeg::poset::{
    enumerate_indecomposables, enumerate_modules_from, hasse_diagram, indecomposable_labels,
    to_dot, verify_partial_order, DegenerationPoset,
};
use quivdeg::quiver::{DimensionVector, Quiver};
use quivdeg::rep::{ext1_dim, hom_dim};
use quivdeg::scalar::FieldSpec;

fn err(e: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&e.to_string())
}

/// Built-in quivers, or a quiver.json payload when the text starts with
/// a brace.
fn load_quiver(text: &str) -> Result<Arc<Quiver>, JsValue> {
    let text = text.trim();
    if text.starts_with('{') {
        let file: json::QuiverFile = json::from_json_str(text).map_err(err)?;
        return json::quiver_from_file(&file).map_err(err);
    }
    match text {
        "a1" => Ok(Quiver::line(1)),
        "a2" => Ok(Quiver::line(2)),
        "a3" => Ok(Quiver::line(3)),
        "d4" => Ok(Quiver::star_into_sink(3)),
        other => Err(err(format!(
            "unknown quiver preset {:?} (use a1, a2, a3, d4 or quiver JSON)",
            other
        ))),
    }
}

fn parse_dims(text: &str, arity: usize) -> Result<DimensionVector, JsValue> {
    let parts: Result<Vec<usize>, _> = text.split(',').map(|s| s.trim().parse()).collect();
    let parts = parts.map_err(|_| err(format!("bad dimension vector {:?}", text)))?;
    if parts.len() != arity {
        return Err(err(format!(
            "dimension vector needs {} entries, got {}",
            arity,
            parts.len()
        )));
    }
    Ok(DimensionVector(parts))
}

fn field_of(p: u32) -> Result<FieldSpec, JsValue> {
    FieldSpec::prime_field(p as u64).map_err(err)
}

/// The quiver presets as JSON, for display in the page.
#[wasm_bindgen]
pub fn preset_quiver(name: &str) -> Result<String, JsValue> {
    let q = load_quiver(name)?;
    json::to_json_string(&json::quiver_to_file(&q)).map_err(err)
}

/// Lists the iso-classes of modules with the given dimension vector:
/// `{"labels": [...], "indecomposables": [...]}`.
#[wasm_bindgen]
pub fn list_modules(quiver: &str, dimvec: &str, p: u32) -> Result<String, JsValue> {
    let q = load_quiver(quiver)?;
    let field = field_of(p)?;
    let dims = parse_dims(dimvec, q.vertex_count())?;
    let indecs = enumerate_indecomposables(&q, &dims, &field).map_err(err)?;
    let indec_labels = indecomposable_labels(&q, &indecs);
    let modules = enumerate_modules_from(&q, &dims, &field, &indecs).map_err(err)?;
    #[derive(serde::Serialize)]
    struct Listing {
        labels: Vec<String>,
        indecomposables: Vec<String>,
    }
    let listing = Listing {
        labels: modules.iter().map(|m| m.label(&indec_labels)).collect(),
        indecomposables: indec_labels,
    };
    json::to_json_string(&listing).map_err(err)
}

/// Builds the degeneration Hasse diagram at a dimension vector and
/// returns nodes, edge matrix, DOT text, an inline SVG rendering, and
/// the partial-order verification summary.
#[wasm_bindgen]
pub fn hasse(quiver: &str, dimvec: &str, p: u32, bound: i32, seed: u32) -> Result<String, JsValue> {
    let q = load_quiver(quiver)?;
    let field = field_of(p)?;
    let dims = parse_dims(dimvec, q.vertex_count())?;
    let config = DegenConfig {
        dim_bound: if bound < 0 { None } else { Some(bound as usize) },
        seed: seed as u64,
    };
    let poset = hasse_diagram(&q, &dims, &field, &config).map_err(err)?;
    let report = verify_partial_order(&poset);
    #[derive(serde::Serialize)]
    struct HasseOut {
        poset: json::PosetFile,
        dot: String,
        svg: String,
        partial_order_ok: bool,
        unknown_pairs: usize,
    }
    let out = HasseOut {
        dot: to_dot(&poset),
        svg: render_svg(&poset),
        partial_order_ok: report.pass(),
        unknown_pairs: poset.unknowns.len(),
        poset: json::poset_to_file(&poset),
    };
    json::to_json_string(&out).map_err(err)
}

/// Decides degeneration between two modules chosen by their labels from
/// [`list_modules`], returning the verdict JSON (with certificate).
#[wasm_bindgen]
pub fn decide(
    quiver: &str,
    dimvec: &str,
    m_label: &str,
    n_label: &str,
    p: u32,
    bound: i32,
    seed: u32,
) -> Result<String, JsValue> {
    let q = load_quiver(quiver)?;
    let field = field_of(p)?;
    let dims = parse_dims(dimvec, q.vertex_count())?;
    let indecs = enumerate_indecomposables(&q, &dims, &field).map_err(err)?;
    let indec_labels = indecomposable_labels(&q, &indecs);
    let modules = enumerate_modules_from(&q, &dims, &field, &indecs).map_err(err)?;
    let find = |label: &str| {
        modules
            .iter()
            .find(|m| m.label(&indec_labels) == label)
            .ok_or_else(|| err(format!("no module labelled {:?}", label)))
    };
    let m = find(m_label)?;
    let n = find(n_label)?;
    let config = DegenConfig {
        dim_bound: if bound < 0 { None } else { Some(bound as usize) },
        seed: seed as u64,
    };
    let verdict = quivdeg::degeneration::decide_deg_with_test_set(&m.rep, &n.rep, &config, &indecs)
        .map_err(err)?;
    json::to_json_string(&json::verdict_to_file(&verdict)).map_err(err)
}

/// Hom and Ext^1 tables between the indecomposables below a bound.
#[wasm_bindgen]
pub fn hom_table(quiver: &str, max_dim: &str, p: u32) -> Result<String, JsValue> {
    let q = load_quiver(quiver)?;
    let field = field_of(p)?;
    let dims = parse_dims(max_dim, q.vertex_count())?;
    let indecs = enumerate_indecomposables(&q, &dims, &field).map_err(err)?;
    let labels = indecomposable_labels(&q, &indecs);
    let k = indecs.len();
    let mut hom = vec![vec![0usize; k]; k];
    let mut ext = vec![vec![0usize; k]; k];
    for i in 0..k {
        for j in 0..k {
            hom[i][j] = hom_dim(&indecs[i], &indecs[j]).map_err(err)?;
            ext[i][j] = ext1_dim(&indecs[i], &indecs[j]).map_err(err)?;
        }
    }
    #[derive(serde::Serialize)]
    struct Table {
        labels: Vec<String>,
        hom: Vec<Vec<usize>>,
        ext1: Vec<Vec<usize>>,
    }
    json::to_json_string(&Table { labels, hom, ext1: ext }).map_err(err)
}

/// Simple layered SVG: nodes ranked by longest path from a source of the
/// Hasse DAG, most generic at the top.
fn render_svg(p: &DegenerationPoset) -> String {
    let n = p.nodes.len();
    // longest-path layering over the hasse edges
    let mut rank = vec![0usize; n];
    let mut changed = true;
    while changed {
        changed = false;
        for &(a, b) in &p.hasse {
            if rank[b] < rank[a] + 1 {
                rank[b] = rank[a] + 1;
                changed = true;
            }
        }
    }
    let max_rank = rank.iter().copied().max().unwrap_or(0);
    let mut layers: Vec<Vec<usize>> = vec![Vec::new(); max_rank + 1];
    for (i, &r) in rank.iter().enumerate() {
        layers[r].push(i);
    }
    let box_w = 120.0;
    let box_h = 34.0;
    let h_gap = 40.0;
    let v_gap = 60.0;
    let width = layers
        .iter()
        .map(|l| l.len() as f64 * (box_w + h_gap) + h_gap)
        .fold(320.0, f64::max);
    let height = (max_rank + 1) as f64 * (box_h + v_gap) + v_gap;
    let mut pos = vec![(0.0, 0.0); n];
    for (r, layer) in layers.iter().enumerate() {
        let total = layer.len() as f64 * (box_w + h_gap) - h_gap;
        let start = (width - total) / 2.0;
        for (k, &i) in layer.iter().enumerate() {
            pos[i] = (
                start + k as f64 * (box_w + h_gap),
                v_gap / 2.0 + r as f64 * (box_h + v_gap),
            );
        }
    }
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {:.0} {:.0}\" width=\"{:.0}\" height=\"{:.0}\">",
        width, height, width, height
    );
    svg.push_str(
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" \
         markerWidth=\"7\" markerHeight=\"7\" orient=\"auto-start-reverse\">\
         <path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#555\"/></marker></defs>",
    );
    for &(a, b) in &p.hasse {
        let (x1, y1) = pos[a];
        let (x2, y2) = pos[b];
        svg.push_str(&format!(
            "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"#555\" stroke-width=\"1.5\" marker-end=\"url(#arrow)\"/>",
            x1 + box_w / 2.0,
            y1 + box_h,
            x2 + box_w / 2.0,
            y2 - 2.0,
        ));
    }
    for (i, label) in p.labels.iter().enumerate() {
        let (x, y) = pos[i];
        svg.push_str(&format!(
            "<rect x=\"{:.1}\" y=\"{:.1}\" width=\"{:.0}\" height=\"{:.0}\" rx=\"6\" fill=\"#eef4ff\" stroke=\"#446\"/>",
            x, y, box_w, box_h
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\">{}</text>",
            x + box_w / 2.0,
            y + box_h / 2.0 + 4.0,
            label
        ));
    }
    svg.push_str("</svg>");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_and_listing_work_natively() {
        let q = preset_quiver("a2").unwrap();
        assert!(q.contains("\"vertices\""));
        let listing = list_modules("a2", "1,1", 5).unwrap();
        let v: serde_json::Value = serde_json::from_str(&listing).unwrap();
        assert_eq!(v["labels"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn hasse_svg_has_nodes_and_edges() {
        let out = hasse("a2", "1,1", 5, -1, 0).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["partial_order_ok"], true);
        let svg = v["svg"].as_str().unwrap();
        assert!(svg.contains("<rect"));
        assert!(svg.contains("<line"));
        assert!(v["dot"].as_str().unwrap().starts_with("digraph"));
    }

    #[test]
    fn decide_by_labels() {
        let listing = list_modules("a2", "1,1", 5).unwrap();
        let v: serde_json::Value = serde_json::from_str(&listing).unwrap();
        let labels: Vec<String> = v["labels"]
            .as_array()
            .unwrap()
            .iter()
            .map(|l| l.as_str().unwrap().to_string())
            .collect();
        // the indecomposable M11 degenerates to S1+S2
        let (m, n) = if labels[0].contains('+') {
            (labels[1].clone(), labels[0].clone())
        } else {
            (labels[0].clone(), labels[1].clone())
        };
        let verdict = decide("a2", "1,1", &m, &n, 5, -1, 0).unwrap();
        let v: serde_json::Value = serde_json::from_str(&verdict).unwrap();
        assert_eq!(v["status"], "yes");
        let verdict = decide("a2", "1,1", &n, &m, 5, -1, 0).unwrap();
        let v: serde_json::Value = serde_json::from_str(&verdict).unwrap();
        assert_eq!(v["status"], "no");
    }
}
