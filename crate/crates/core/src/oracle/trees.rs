//! Weighted trees up to isomorphism, grown one leaf at a time and
//! deduplicated by a center-rooted canonical string.

use std::collections::BTreeSet;

use super::brute::Plumbing;
use crate::error::Result;
use crate::lattice::{GraphSpec, ResolutionGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedTree {
    pub euler: Vec<i64>,
    pub adj: Vec<Vec<usize>>,
}

impl WeightedTree {
    fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (v, ns) in self.adj.iter().enumerate() {
            out.extend(ns.iter().filter(|&&u| v < u).map(|&u| (v, u)));
        }
        out
    }

    fn rooted(&self, v: usize, parent: Option<usize>) -> String {
        let mut kids: Vec<String> =
            self.adj[v].iter().filter(|&&u| Some(u) != parent).map(|&u| self.rooted(u, Some(v))).collect();
        kids.sort();
        format!("({}{})", self.euler[v], kids.concat())
    }

    fn centers(&self) -> Vec<usize> {
        let n = self.euler.len();
        let mut deg: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
        let mut left = n;
        while left > 2 {
            left -= layer.len();
            let mut next = Vec::new();
            for &v in &layer {
                for &u in &self.adj[v] {
                    if deg[u] > 1 {
                        deg[u] -= 1;
                        if deg[u] == 1 {
                            next.push(u);
                        }
                    }
                }
                deg[v] = 0;
            }
            layer = next;
        }
        layer
    }

    /// Equal for isomorphic weighted trees.
    pub fn canonical(&self) -> String {
        self.centers().iter().map(|&c| self.rooted(c, None)).min().expect("a tree has a center")
    }

    fn with_leaf(&self, at: usize, euler: i64) -> WeightedTree {
        let mut t = self.clone();
        let v = t.euler.len();
        t.euler.push(euler);
        t.adj.push(vec![at]);
        t.adj[at].push(v);
        t
    }

    pub fn to_graph(&self) -> Result<ResolutionGraph> {
        let id = |v: usize| format!("v{v:02}");
        let mut spec = GraphSpec::new();
        for (v, e) in self.euler.iter().enumerate() {
            spec = spec.vertex(&id(v), *e);
        }
        for (a, b) in self.edges() {
            spec = spec.edge(&id(a), &id(b));
        }
        ResolutionGraph::build(&spec)
    }

    fn negative_definite(&self) -> Result<bool> {
        Plumbing::new(&self.euler, &self.edges()).map_or(Ok(false), |p| p.is_negative_definite())
    }
}

/// All negative definite weighted trees with `1..=max_vertices` vertices and
/// Euler numbers in `eulers`, one per isomorphism class, by increasing size.
/// Negative definiteness passes to subtrees, so each size only extends the
/// survivors of the previous one.
pub fn enumerate_trees(max_vertices: usize, eulers: &[i64]) -> Result<Vec<WeightedTree>> {
    let mut out = Vec::new();
    let mut layer: Vec<WeightedTree> = Vec::new();
    for &e in eulers {
        let t = WeightedTree { euler: vec![e], adj: vec![Vec::new()] };
        if t.negative_definite()? {
            layer.push(t);
        }
    }
    for size in 1..=max_vertices {
        out.extend(layer.iter().cloned());
        if size == max_vertices {
            break;
        }
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &layer {
            for at in 0..t.euler.len() {
                for &e in eulers {
                    let u = t.with_leaf(at, e);
                    if seen.insert(u.canonical()) && u.negative_definite()? {
                        next.push(u);
                    }
                }
            }
        }
        layer = next;
    }
    Ok(out)
}
