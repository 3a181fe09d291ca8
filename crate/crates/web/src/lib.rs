//! Browser bindings. Every call takes a graph file as text and returns a JSON report.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use resgraph::io::{self, LoadedGraph};
use resgraph::laufer::{self, Classification};
use resgraph::strata::{self, AnalyticParams, Mode};
use resgraph::{ellseq, fixtures, report};

/// Search nodes allowed per strata call; the page should stay responsive.
const STRATA_CAP: u64 = 2_000_000;

fn load(text: &str) -> resgraph::Result<LoadedGraph> {
    io::parse_graph(text)
}

fn finish(r: resgraph::Result<Value>) -> Result<String, String> {
    r.map(|v| serde_json::to_string_pretty(&v).expect("reports serialize")).map_err(|e| e.to_string())
}

pub fn analyze_json(graph: &str) -> Result<String, String> {
    finish((|| {
        let l = load(graph)?;
        let g = &l.graph;
        let mut out = json!({
            "warnings": l.warnings,
            "classify": report::classify(g),
            "invariants": report::invariants(g),
        });
        if laufer::classify(g) == Classification::Elliptic && g.is_minimal() {
            let seq = ellseq::elliptic_sequence(g)?;
            out["ellseq"] = report::ellseq(g, &seq, 0)?;
        }
        Ok(out)
    })())
}

pub fn criteria_json(graph: &str) -> Result<String, String> {
    finish(load(graph).and_then(|l| report::criteria_for(&l.graph)))
}

pub fn strata_json(graph: &str, lprime: &str, alpha: usize, mode: &str) -> Result<String, String> {
    finish((|| {
        let l = load(graph)?;
        let g = &l.graph;
        let mode: Mode = mode.parse()?;
        let params = AnalyticParams { alpha, mode, trivializable: Vec::new() };
        let lp = -&io::parse_cycle(g, &l.cycles, lprime)?;
        let seq = ellseq::elliptic_sequence(g)?;
        let r = strata::strata_index_sets(g, &seq, &lp, &params, STRATA_CAP)?;
        report::strata(g, &seq, &r)
    })())
}

pub fn fixture_text(name: &str) -> Result<String, String> {
    fixtures::by_name(name)
        .map(|f| io::emit_graph(&f.graph, Some(f.name), &Default::default()))
        .ok_or_else(|| format!("unknown fixture `{name}`"))
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn analyze(graph: &str) -> Result<String, JsError> {
    js(analyze_json(graph))
}

#[wasm_bindgen]
pub fn criteria(graph: &str) -> Result<String, JsError> {
    js(criteria_json(graph))
}

/// `lprime` names the cycle whose negative is used, as on the command line.
#[wasm_bindgen]
pub fn strata(graph: &str, lprime: &str, alpha: usize, mode: &str) -> Result<String, JsError> {
    js(strata_json(graph, lprime, alpha, mode))
}

#[wasm_bindgen]
pub fn fixture(name: &str) -> Result<String, JsError> {
    js(fixture_text(name))
}

#[wasm_bindgen]
pub fn fixture_names() -> String {
    fixtures::NAMES.join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analyze_app() {
        let g = fixture_text("g_app").unwrap();
        let v: Value = serde_json::from_str(&analyze_json(&g).unwrap()).unwrap();
        assert_eq!(v["classify"]["classification"], "elliptic");
        assert_eq!(v["ellseq"]["length"], 2);
    }

    #[test]
    fn strata_app() {
        let g = fixture_text("g_app").unwrap();
        let v: Value = serde_json::from_str(&strata_json(&g, "zk", 0, "generic").unwrap()).unwrap();
        assert_eq!(v["levels"][2]["entries"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn errors_are_messages() {
        assert!(criteria_json("{").is_err());
        let g = fixture_text("a1").unwrap();
        assert!(criteria_json(&g).is_err());
        assert!(fixture_text("nope").is_err());
    }
}
