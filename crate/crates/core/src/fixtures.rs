//! Bundled graphs.

use crate::criteria;
use crate::ellseq;
use crate::error::{Error, Result};
use crate::laufer::{self, Classification};
use crate::lattice::{GraphSpec, ResolutionGraph};

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub about: &'static str,
    pub graph: ResolutionGraph,
}

pub const NAMES: [&str; 9] =
    ["g_app", "g_new", "g_noecc", "g_pole", "g_left", "g_right", "g_minell", "a1", "d4"];

fn build(spec: GraphSpec) -> ResolutionGraph {
    ResolutionGraph::build(&spec).expect("bundled fixture is valid")
}

fn chain(prefix: &str, len: usize, e: i64) -> (GraphSpec, Vec<String>) {
    let ids: Vec<String> = (1..=len).map(|i| format!("{prefix}{i}")).collect();
    let mut s = GraphSpec::new();
    for id in &ids {
        s = s.vertex(id, e);
    }
    let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
    (s.path(&refs), ids)
}

fn set_euler(s: &mut GraphSpec, id: &str, e: i64) {
    s.vertices.iter_mut().find(|(v, _)| v == id).expect("vertex present").1 = e;
}

fn with_chain(mut s: GraphSpec, prefix: &str, len: usize, attach: &str) -> GraphSpec {
    let (c, ids) = chain(prefix, len, -2);
    s.vertices.extend(c.vertices);
    s.edges.extend(c.edges);
    s.edge(attach, &ids[0])
}

/// Path a1..a9 with u on a3; a8 is the only (-3).
pub fn g_app() -> ResolutionGraph {
    let (mut s, _) = chain("a", 9, -2);
    set_euler(&mut s, "a8", -3);
    build(s.vertex("u", -2).edge("u", "a3"))
}

/// Path b1..b10 with u on b3; b8 and b9 are (-3).
pub fn g_new() -> ResolutionGraph {
    let (mut s, _) = chain("b", 10, -2);
    set_euler(&mut s, "b8", -3);
    set_euler(&mut s, "b9", -3);
    build(s.vertex("u", -2).edge("u", "b3"))
}

/// Path c1..c9 with u3 on c3 and u8 on the (-4) vertex c8.
pub fn g_noecc() -> ResolutionGraph {
    let (mut s, _) = chain("c", 9, -2);
    set_euler(&mut s, "c8", -4);
    build(s.vertex("u3", -2).vertex("u8", -2).edge("u3", "c3").edge("u8", "c8"))
}

/// Non-minimal graph with two (-1) vertices.
pub fn g_pole() -> ResolutionGraph {
    let (mut s, _) = chain("d", 8, -2);
    for (i, e) in [-2, -1, -7, -3, -3, -7, -1, -2].iter().enumerate() {
        set_euler(&mut s, &format!("d{}", i + 1), *e);
    }
    build(s.vertex("u2", -3).vertex("u7", -3).edge("u2", "d2").edge("u7", "d7"))
}

/// 24 vertices, m = 3; the two middle zones hang off distinct vertices.
pub fn g_left() -> ResolutionGraph {
    let (mut s, _) = chain("p", 10, -2);
    set_euler(&mut s, "p4", -4);
    set_euler(&mut s, "p5", -3);
    set_euler(&mut s, "p7", -3);
    s = s.vertex("q2", -2).vertex("q3", -2).vertex("r", -2);
    s = s.edge("q2", "p2").edge("q3", "p3").edge("r", "p5");
    s = with_chain(s, "s", 5, "p5");
    set_euler(&mut s, "s2", -3);
    s = with_chain(s, "t", 3, "s2");
    s = with_chain(s, "w", 3, "p7");
    build(s)
}

/// 26 vertices, m = 3; two components of a zone share their contact vertex.
pub fn g_right() -> ResolutionGraph {
    let (mut s, _) = chain("p", 10, -2);
    set_euler(&mut s, "p4", -4);
    set_euler(&mut s, "p5", -3);
    set_euler(&mut s, "p6", -3);
    s = s.vertex("q2", -2).vertex("q3", -2).vertex("r", -2);
    s = s.edge("q2", "p2").edge("q3", "p3").edge("r", "p5");
    s = with_chain(s, "s", 5, "p5");
    set_euler(&mut s, "s1", -3);
    s = with_chain(s, "t", 4, "s1");
    s = with_chain(s, "w", 4, "p6");
    build(s)
}

/// The graph of `g_app` with a9 removed; minimally elliptic.
pub fn g_minell() -> ResolutionGraph {
    let (mut s, _) = chain("a", 8, -2);
    set_euler(&mut s, "a8", -3);
    build(s.vertex("u", -2).edge("u", "a3"))
}

pub fn a1() -> ResolutionGraph {
    build(GraphSpec::new().vertex("v", -2))
}

pub fn d4() -> ResolutionGraph {
    build(
        GraphSpec::new()
            .vertex("c", -2)
            .vertex("x", -2)
            .vertex("y", -2)
            .vertex("z", -2)
            .edge("c", "x")
            .edge("c", "y")
            .edge("c", "z"),
    )
}

pub fn by_name(name: &str) -> Option<Fixture> {
    let (about, graph) = match name.to_ascii_lowercase().as_str() {
        "g_app" => ("elliptic, numerically Gorenstein, m = 1", g_app()),
        "g_new" => ("elliptic, not numerically Gorenstein, m = 1", g_new()),
        "g_noecc" => ("elliptic, m = 1, fails the monomial condition at c8", g_noecc()),
        "g_pole" => ("non-minimal, min chi = -1", g_pole()),
        "g_left" => ("elliptic, numerically Gorenstein, m = 3, extension criterion holds", g_left()),
        "g_right" => ("elliptic, numerically Gorenstein, m = 3, extension criterion fails", g_right()),
        "g_minell" => ("minimally elliptic", g_minell()),
        "a1" => ("single (-2) vertex", a1()),
        "d4" => ("D4 star", d4()),
        _ => return None,
    };
    let name = NAMES.iter().find(|n| n.eq_ignore_ascii_case(name))?;
    Some(Fixture { name, about, graph })
}

pub fn all() -> Vec<Fixture> {
    NAMES.iter().map(|n| by_name(n).expect("listed fixture")).collect()
}

/// Stated facts a fixture must satisfy: elliptic, numerically Gorenstein,
/// `m`, and the common verdict of the extension criterion and the monomial
/// condition. `None` for a non-elliptic fixture.
fn expected(name: &str) -> Option<(bool, usize, bool)> {
    match name {
        "g_app" => Some((true, 1, true)),
        "g_new" => Some((false, 1, true)),
        "g_noecc" => Some((true, 1, false)),
        "g_left" => Some((true, 3, true)),
        "g_right" => Some((true, 3, false)),
        "g_minell" => Some((true, 0, true)),
        _ => None,
    }
}

/// Checks a bundled fixture against its stated invariants.
pub fn validate(f: &Fixture) -> Result<()> {
    let g = &f.graph;
    let fail = |what: String| Err(Error::Invariant(format!("fixture {}: {what}", f.name)));
    let class = laufer::classify(g);
    let Some((ng, m, verdict)) = expected(f.name) else {
        let want_other = f.name == "g_pole";
        return match class {
            Classification::Other(_) if want_other => Ok(()),
            Classification::Rational if !want_other => Ok(()),
            c => fail(format!("classified {c}")),
        };
    };
    if class != Classification::Elliptic {
        return fail(format!("classified {class}, expected elliptic"));
    }
    if g.is_numerically_gorenstein() != ng {
        return fail(format!("numerically Gorenstein should be {ng}"));
    }
    let seq = ellseq::elliptic_sequence(g)?;
    if seq.m() != m {
        return fail(format!("m = {}, expected {m}", seq.m()));
    }
    let v = criteria::supports(g)?;
    if v.wecc != verdict {
        return fail(format!("criteria verdict {}, expected {verdict}", v.wecc));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_validates() {
        for f in all() {
            validate(&f).unwrap();
        }
    }

    #[test]
    fn names_are_case_insensitive() {
        assert_eq!(by_name("G_App").unwrap().name, "g_app");
        assert!(by_name("nope").is_none());
    }
}
