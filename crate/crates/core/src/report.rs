//! Report values for each command, and a plain-text rendering of them.
//!
//! Every report is built once as JSON; the text form is a walk over the same
//! value, so both carry the same numbers.

use serde_json::{json, Map, Value};

use crate::criteria::{self, Verdicts};
use crate::ellseq::{self, EllipticSequence};
use crate::error::Result;
use crate::io::{cycle_to_json, q_json, sequence_to_json};
use crate::laufer::{self, Classification};
use crate::lattice::{Cycle, ResolutionGraph};
use crate::oracle::{Outcome, VerifyReport};
use crate::strata::{self, StrataReport, StratumKind};

pub fn classification_name(c: &Classification) -> &'static str {
    match c {
        Classification::Rational => "rational",
        Classification::Elliptic => "elliptic",
        Classification::Other(_) => "other",
    }
}

pub fn classify(g: &ResolutionGraph) -> Value {
    let zmin = laufer::fundamental_cycle(g);
    let c = laufer::classify(g);
    json!({
        "vertices": g.n(),
        "classification": classification_name(&c),
        "chi_zmin": q_json(&g.chi(&zmin)),
        "minimal": g.is_minimal(),
    })
}

pub fn invariants(g: &ResolutionGraph) -> Value {
    let zmin = laufer::fundamental_cycle(g);
    let zk = g.canonical_cycle();
    let estar = |c: &Cycle| {
        let a = g.estar_coordinates(c);
        cycle_to_json(g, &Cycle(a))
    };
    let duals: Map<String, Value> = (0..g.n()).map(|v| (g.id(v).to_string(), cycle_to_json(g, &g.dual_cycle(v)))).collect();
    json!({
        "det": g.det().to_string(),
        "zmin": cycle_to_json(g, &zmin),
        "zmin_estar": estar(&zmin),
        "chi_zmin": q_json(&g.chi(&zmin)),
        "zk": cycle_to_json(g, zk),
        "zk_estar": estar(zk),
        "zk_squared": q_json(&g.form(zk, zk)),
        "numerically_gorenstein": g.is_numerically_gorenstein(),
        "duals": duals,
    })
}

pub fn ellseq(g: &ResolutionGraph, seq: &EllipticSequence, alpha: usize) -> Result<Value> {
    let m = seq.m() as i64;
    let mut partial = Vec::new();
    for t in -1..=m {
        let (c, cp) = seq.partial_sums(t)?;
        partial.push(json!({"t": t, "c": cycle_to_json(g, &c), "c_prime": cycle_to_json(g, &cp)}));
    }
    let c = seq.minimally_elliptic_cycle();
    let pg = ellseq::pg_table(seq, alpha)?
        .into_iter()
        .map(|r| {
            let gor = r.gorenstein.map(|(a, b, c)| json!({"h1_o_c_prime": a, "h1_o_c": b, "h1_o_minus_c": c}));
            json!({"j": r.j, "pg": r.pg, "gorenstein": gor})
        })
        .collect::<Vec<_>>();
    Ok(json!({
        "length": seq.length(),
        "sequence": sequence_to_json(g, seq),
        "partial_sums": partial,
        "minimally_elliptic_cycle": cycle_to_json(g, c),
        "c_squared": q_json(&g.form(c, c)),
        "alpha": alpha,
        "pg_table": pg,
    }))
}

pub fn criteria(g: &ResolutionGraph, v: &Verdicts) -> Value {
    let ext: Vec<Value> = v
        .extension
        .violations
        .iter()
        .map(|x| {
            json!({
                "level": x.level,
                "vertex": g.id(x.vertex),
                "neighbours": x.neighbours.iter().map(|&u| g.id(u)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let branches: Vec<Value> = v
        .monomial
        .branches
        .iter()
        .map(|b| {
            json!({
                "node": g.id(b.node),
                "contact": g.id(b.contact),
                "ends": b.ends.iter().map(|&u| g.id(u)).collect::<Vec<_>>(),
                "witness": b.witness.as_ref().map(|c| cycle_to_json(g, c)),
                "weights": b.weights.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                "negative_only": b.negative_only.as_ref().map(|w| w.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            })
        })
        .collect();
    let bad: Vec<&str> = v.monomial.violations().map(|b| g.id(b.node)).collect();
    json!({
        "wecc": v.wecc,
        "ecc": v.ecc,
        "extension_criterion": {"verdict": v.extension.verdict, "violations": ext},
        "monomial_condition": {"verdict": v.monomial.verdict, "failing_nodes": bad, "branches": branches},
    })
}

/// Runs both criteria for the `criteria` command.
pub fn criteria_for(g: &ResolutionGraph) -> Result<Value> {
    Ok(criteria(g, &criteria::supports(g)?))
}

pub fn strata(g: &ResolutionGraph, seq: &EllipticSequence, r: &StrataReport) -> Result<Value> {
    let h1 = strata::h1_on_image(g, seq, &r.lprime, r.alpha)?;
    let levels: Vec<Value> = r
        .levels
        .iter()
        .rev()
        .map(|(k, entries)| {
            let es: Vec<Value> = entries
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    json!({
                        "index": i,
                        "l": cycle_to_json(g, &e.l),
                        "chern": cycle_to_json(g, &e.chern),
                        "dim": e.dim,
                        "maximal": e.maximal,
                        "excluded_by": e.excluded_by.map(|x| json!({"k": x.k, "index": x.index})),
                    })
                })
                .collect();
            json!({"k": k, "entries": es})
        })
        .collect();
    Ok(json!({
        "lprime": cycle_to_json(g, &r.lprime),
        "pg": r.pg,
        "alpha": r.alpha,
        "mode": r.mode.to_string(),
        "h1_on_abel_image": h1.value,
        "reduction_index": h1.reduction_index,
        "levels": levels,
        "search_nodes": r.search_nodes,
        "notes": [
            "open: whether each included stratum is exactly the image of its Abel map",
        ],
    }))
}

pub fn wstrata(g: &ResolutionGraph, seq: &EllipticSequence, lprime: &Cycle, alpha: usize) -> Result<Value> {
    let ws = strata::w_strata(g, seq, lprime, alpha)?;
    let i = strata::reduction_index(g, seq, lprime)?;
    let rows: Vec<Value> = ws
        .iter()
        .map(|w| {
            json!({
                "k": w.k,
                "dim": w.dim,
                "kind": match w.kind { StratumKind::Linear => "linear", StratumKind::Wandering => "wandering" },
                "count_at_most": w.count_at_most,
            })
        })
        .collect();
    let mut notes = Vec::new();
    if ws.iter().any(|w| w.kind == StratumKind::Wandering) {
        notes.push("open: are the wandering points all distinct?");
    }
    if alpha == 0 {
        notes.push("open: whether the top stratum lies in the Abel image of -C_(j-1) in the Gorenstein case");
    }
    Ok(json!({
        "lprime": cycle_to_json(g, lprime),
        "alpha": alpha,
        "pg": strata::pg(seq, alpha),
        "reduction_index": i,
        "strata": rows,
        "notes": notes,
    }))
}

pub fn verify(r: &VerifyReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            let (status, detail) = match &c.outcome {
                Outcome::Pass => ("pass", None),
                Outcome::Fail(m) => ("fail", Some(m.clone())),
                Outcome::Skipped(m) => ("skipped", Some(m.clone())),
            };
            json!({"name": c.name, "status": status, "detail": detail})
        })
        .collect();
    json!({"passed": r.passed(), "checks": checks})
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// One-line form for scalars, lists of scalars and maps of scalars.
fn inline(v: &Value) -> Option<String> {
    if let Some(s) = scalar(v) {
        return Some(s);
    }
    match v {
        Value::Array(xs) => {
            let parts: Option<Vec<String>> = xs.iter().map(scalar).collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        Value::Object(m) => {
            let parts: Option<Vec<String>> = m.iter().map(|(k, x)| scalar(x).map(|s| format!("{k}: {s}"))).collect();
            parts.map(|p| format!("{{{}}}", p.join(", ")))
        }
        _ => None,
    }
}

fn render_into(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_into(x, indent + 2, out);
                    }
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        let mut item = String::new();
                        render_into(x, indent + 2, &mut item);
                        match item.strip_prefix(&format!("{pad}  ")) {
                            Some(rest) if x.is_object() => out.push_str(&format!("{pad}- {rest}")),
                            _ => {
                                out.push_str(&format!("{pad}-\n"));
                                out.push_str(&item);
                            }
                        }
                    }
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v).unwrap_or_default())),
    }
}

pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render_into(v, 0, &mut out);
    out
}
