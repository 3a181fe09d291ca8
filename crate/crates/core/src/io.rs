//! Graph files, cycle literals and their JSON forms.
//!
//! A graph file looks like
//!
//! ```json
//! {"version": 1, "name": "chain",
//!  "vertices": [{"id": "x", "euler": -2}, {"id": "y", "euler": "-3"}],
//!  "edges": [["x", "y"]],
//!  "cycles": {"half": {"x": "1/2"}}}
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::ellseq::EllipticSequence;
use crate::error::{Error, Result};
use crate::laufer;
use crate::lattice::{Cycle, GraphSpec, ResolutionGraph};
use crate::rat::{self, Q};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntLike {
    Int(i64),
    Text(String),
}

impl IntLike {
    fn value(&self, field: &str) -> Result<i64> {
        match self {
            IntLike::Int(x) => Ok(*x),
            IntLike::Text(s) => {
                let q = rat::parse(s).map_err(|_| Error::Parse(format!("{field}: `{s}` is not an integer")))?;
                rat::to_i64(&q).ok_or_else(|| Error::Parse(format!("{field}: `{s}` is not an integer")))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: String,
    pub euler: IntLike,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<IntLike>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cycles: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub name: Option<String>,
    pub graph: ResolutionGraph,
    pub cycles: BTreeMap<String, Cycle>,
    pub warnings: Vec<String>,
}

pub fn parse_graph(text: &str) -> Result<LoadedGraph> {
    let file: GraphFile = serde_json::from_str(text)
        .map_err(|e| {
            let at = format!(" at line {} column {}", e.line(), e.column());
            let msg = e.to_string();
            let msg = msg.strip_suffix(&at).unwrap_or(&msg);
            Error::Parse(format!("graph file, line {} column {}: {msg}", e.line(), e.column()))
        })?;
    if file.version != FORMAT_VERSION {
        return Err(Error::Parse(format!(
            "graph file: version {} is not supported (expected {FORMAT_VERSION})",
            file.version
        )));
    }
    let mut spec = GraphSpec::new();
    for (i, v) in file.vertices.iter().enumerate() {
        spec.vertices.push((v.id.clone(), v.euler.value(&format!("vertices[{i}].euler"))?));
        if let Some(g) = &v.genus {
            spec.genus.push((v.id.clone(), g.value(&format!("vertices[{i}].genus"))?));
        }
    }
    spec.edges = file.edges.iter().map(|[a, b]| (a.clone(), b.clone())).collect();
    let graph = ResolutionGraph::build(&spec)?;
    let warnings = (0..graph.n())
        .filter(|&v| graph.euler(v) == -1)
        .map(|v| format!("vertex `{}` has euler number -1; the resolution is not minimal", graph.id(v)))
        .collect();
    let mut cycles = BTreeMap::new();
    for (name, coeffs) in &file.cycles {
        let c = cycle_from_map(&graph, coeffs).map_err(|e| Error::Parse(format!("cycles.{name}: {e}")))?;
        cycles.insert(name.clone(), c);
    }
    Ok(LoadedGraph { name: file.name, graph, cycles, warnings })
}

pub fn graph_file(g: &ResolutionGraph, name: Option<&str>, cycles: &BTreeMap<String, Cycle>) -> GraphFile {
    GraphFile {
        version: FORMAT_VERSION,
        name: name.map(str::to_string),
        vertices: (0..g.n())
            .map(|v| VertexEntry { id: g.id(v).to_string(), euler: IntLike::Int(g.euler(v)), genus: None })
            .collect(),
        edges: g.edge_ids().into_iter().map(|(a, b)| [a, b]).collect(),
        cycles: cycles.iter().map(|(k, c)| (k.clone(), g.cycle_map(c))).collect(),
    }
}

pub fn emit_graph(g: &ResolutionGraph, name: Option<&str>, cycles: &BTreeMap<String, Cycle>) -> String {
    layout(&serde_json::to_value(graph_file(g, name, cycles)).expect("graph files serialize"))
}

/// JSON with one top-level key per line and one list item or map entry per line below it.
pub fn layout(v: &Value) -> String {
    let compact = |x: &Value| serde_json::to_string(x).expect("values serialize");
    let Value::Object(top) = v else { return compact(v) + "\n" };
    let mut lines = Vec::new();
    for (k, x) in top {
        let body = match x {
            Value::Array(xs) if !xs.is_empty() => {
                let items: Vec<String> = xs.iter().map(|i| format!("    {}", compact(i))).collect();
                format!("[\n{}\n  ]", items.join(",\n"))
            }
            Value::Object(m) if !m.is_empty() => {
                let items: Vec<String> =
                    m.iter().map(|(a, i)| format!("    {}: {}", compact(&json!(a)), compact(i))).collect();
                format!("{{\n{}\n  }}", items.join(",\n"))
            }
            _ => compact(x),
        };
        lines.push(format!("  {}: {body}", compact(&json!(k))));
    }
    format!("{{\n{}\n}}\n", lines.join(",\n"))
}

/// `{id: "p/q"}` with unlisted vertices at zero.
pub fn cycle_from_map(g: &ResolutionGraph, coeffs: &BTreeMap<String, String>) -> Result<Cycle> {
    let mut c = Cycle::zero(g.n());
    for (id, x) in coeffs {
        c.0[g.vertex(id)?] = rat::parse(x)?;
    }
    Ok(c)
}

pub fn cycle_to_json(g: &ResolutionGraph, c: &Cycle) -> Value {
    json!(g.cycle_map(c))
}

pub fn cycle_from_json(g: &ResolutionGraph, v: &Value) -> Result<Cycle> {
    let map: BTreeMap<String, String> =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("cycle: {e}")))?;
    cycle_from_map(g, &map)
}

pub fn sequence_to_json(g: &ResolutionGraph, seq: &EllipticSequence) -> Value {
    json!({
        "m": seq.m(),
        "pre_term": cycle_to_json(g, &seq.pre_term),
        "supports": seq.supports.iter().map(|b| g.set_ids(b)).collect::<Vec<_>>(),
        "cycles": seq.cycles.iter().map(|c| cycle_to_json(g, c)).collect::<Vec<_>>(),
    })
}

pub fn sequence_from_json(g: &ResolutionGraph, v: &Value) -> Result<EllipticSequence> {
    let bad = |what: &str| Error::Parse(format!("elliptic sequence: {what}"));
    let pre_term = cycle_from_json(g, v.get("pre_term").ok_or_else(|| bad("missing pre_term"))?)?;
    let supports = v
        .get("supports")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing supports"))?
        .iter()
        .map(|b| {
            b.as_array()
                .ok_or_else(|| bad("support is not a list"))?
                .iter()
                .map(|id| g.vertex(id.as_str().ok_or_else(|| bad("vertex id is not a string"))?))
                .collect()
        })
        .collect::<Result<Vec<_>>>()?;
    let cycles = v
        .get("cycles")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing cycles"))?
        .iter()
        .map(|c| cycle_from_json(g, c))
        .collect::<Result<Vec<_>>>()?;
    if supports.len() != cycles.len() || supports.is_empty() {
        return Err(bad("supports and cycles differ in length"));
    }
    Ok(EllipticSequence { pre_term, supports, cycles })
}

/// Cycle literals:
///
/// * `0`, `zk`, `zmin`, or the name of a cycle stored in the graph file;
/// * `estar:a8=1,a9=2` for `E*_a8 + 2 E*_a9`;
/// * `cycle:a1=1/2,u=3` for explicit coefficients.
pub fn parse_cycle(g: &ResolutionGraph, named: &BTreeMap<String, Cycle>, text: &str) -> Result<Cycle> {
    let t = text.trim();
    if let Some(body) = t.strip_prefix("estar:") {
        let a = parse_assignments(g, body)?;
        return Ok(g.from_estar(&a.0));
    }
    if let Some(body) = t.strip_prefix("cycle:") {
        return parse_assignments(g, body);
    }
    match t {
        "0" => Ok(Cycle::zero(g.n())),
        "zk" => Ok(g.canonical_cycle().clone()),
        "zmin" => Ok(laufer::fundamental_cycle(g)),
        _ => named.get(t).cloned().ok_or_else(|| {
            Error::Parse(format!(
                "`{t}` is not a cycle literal; use 0, zk, zmin, a stored name, estar:ID=Q,... or cycle:ID=Q,..."
            ))
        }),
    }
}

fn parse_assignments(g: &ResolutionGraph, body: &str) -> Result<Cycle> {
    let mut c = Cycle::zero(g.n());
    for part in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (id, x) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("`{part}` should look like ID=p/q")))?;
        let v = g.vertex(id.trim())?;
        c.0[v] += rat::parse(x)?;
    }
    Ok(c)
}

/// A JSON list whose items are cycle literals or `{id: "p/q"}` maps.
pub fn parse_cycle_list(g: &ResolutionGraph, named: &BTreeMap<String, Cycle>, text: &str) -> Result<Vec<Cycle>> {
    let items: Vec<Value> =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("cycle list: {e}")))?;
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let r = match item {
                Value::String(s) => parse_cycle(g, named, s),
                Value::Object(_) => cycle_from_json(g, item),
                _ => Err(Error::Parse("expected a string or an object".into())),
            };
            r.map_err(|e| Error::Parse(format!("cycle list item {i}: {e}")))
        })
        .collect()
}

pub fn q_json(x: &Q) -> Value {
    Value::String(rat::fmt(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ellseq, fixtures};

    const CHAIN: &str = r#"{"version": 1, "name": "chain",
        "vertices": [{"id": "x", "euler": -2}, {"id": "y", "euler": "−3"}],
        "edges": [["x", "y"]],
        "cycles": {"half": {"x": "1/2"}}}"#;

    #[test]
    fn parses_and_round_trips() {
        let l = parse_graph(CHAIN).unwrap();
        assert_eq!(l.graph.eulers(), &[-2, -3]);
        assert_eq!(l.cycles["half"].0[0], rat::qfrac(1, 2));
        let again = parse_graph(&emit_graph(&l.graph, l.name.as_deref(), &l.cycles)).unwrap();
        assert_eq!(again.graph, l.graph);
        assert_eq!(again.cycles, l.cycles);
    }

    #[test]
    fn rejects_bad_files() {
        let cyc = r#"{"version":1,"vertices":[{"id":"a","euler":-3},{"id":"b","euler":-3},{"id":"c","euler":-3}],
            "edges":[["a","b"],["b","c"],["c","a"]]}"#;
        assert!(matches!(parse_graph(cyc), Err(Error::NotATree(_))));
        assert!(matches!(parse_graph(r#"{"version":2,"vertices":[],"edges":[]}"#), Err(Error::Parse(_))));
        assert!(matches!(parse_graph(r#"{"version":1,"vertices":[{"id":"a"}],"edges":[]}"#), Err(Error::Parse(_))));
        let extra = r#"{"version":1,"vertices":[{"id":"a","euler":-2}],"edges":[],"colour":1}"#;
        assert!(parse_graph(extra).is_err());
        let e = parse_graph("{\n\"version\": 1,\n\"vertices\": [}").unwrap_err();
        assert!(e.to_string().contains("line 3"), "{e}");
    }

    #[test]
    fn minus_one_warns() {
        let text = r#"{"version":1,"vertices":[{"id":"a","euler":"−1"},{"id":"b","euler":-3}],"edges":[["a","b"]]}"#;
        let l = parse_graph(text).unwrap();
        assert_eq!(l.warnings.len(), 1);
    }

    #[test]
    fn literals() {
        let g = fixtures::g_app();
        let none = BTreeMap::new();
        let a8 = g.vertex("a8").unwrap();
        assert_eq!(parse_cycle(&g, &none, "estar:a8=1").unwrap(), g.dual_cycle(a8));
        assert_eq!(parse_cycle(&g, &none, "zk").unwrap(), *g.canonical_cycle());
        assert_eq!(parse_cycle(&g, &none, "0").unwrap(), Cycle::zero(g.n()));
        let c = parse_cycle(&g, &none, "cycle: a1 = 1/2, u=3").unwrap();
        assert_eq!(c.0[0], rat::qfrac(1, 2));
        assert!(parse_cycle(&g, &none, "estar:nope=1").is_err());
        assert!(parse_cycle(&g, &none, "whatever").is_err());
        let list = parse_cycle_list(&g, &none, r#"["zmin", {"a9": "1"}]"#).unwrap();
        assert_eq!(list[0], laufer::fundamental_cycle(&g));
        assert_eq!(list[1], g.basis(g.vertex("a9").unwrap()));
    }

    #[test]
    fn sequences_round_trip() {
        for name in ["g_app", "g_new", "g_left"] {
            let g = fixtures::by_name(name).unwrap().graph;
            let s = ellseq::elliptic_sequence(&g).unwrap();
            let v = sequence_to_json(&g, &s);
            let text = serde_json::to_string(&v).unwrap();
            let back = sequence_from_json(&g, &serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(back, s);
            for c in &s.cycles {
                assert_eq!(&cycle_from_json(&g, &cycle_to_json(&g, c)).unwrap(), c);
            }
        }
    }
}
