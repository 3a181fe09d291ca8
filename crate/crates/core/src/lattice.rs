//! The lattice of a resolution graph: intersection form, dual cycles, the
//! canonical cycle and the Riemann-Roch form.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rat::{self, Q};

/// Input description of a graph before validation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GraphSpec {
    pub vertices: Vec<(String, i64)>,
    pub edges: Vec<(String, String)>,
    /// Vertex genera, if the description carries any.
    pub genus: Vec<(String, i64)>,
}

impl GraphSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, id: &str, euler: i64) -> Self {
        self.vertices.push((id.to_string(), euler));
        self
    }

    pub fn edge(mut self, a: &str, b: &str) -> Self {
        self.edges.push((a.to_string(), b.to_string()));
        self
    }

    pub fn path(mut self, ids: &[&str]) -> Self {
        for w in ids.windows(2) {
            self = self.edge(w[0], w[1]);
        }
        self
    }
}

/// Exact rational vector indexed by the (sorted) vertices of a graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle(pub Vec<Q>);

impl Cycle {
    pub fn zero(n: usize) -> Self {
        Cycle(vec![Q::zero(); n])
    }

    pub fn basis(n: usize, v: usize) -> Self {
        let mut c = Self::zero(n);
        c.0[v] = Q::one();
        c
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Cycle(xs.iter().map(|&x| rat::q(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, v: usize) -> &Q {
        &self.0[v]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    /// Coefficientwise `self <= other`.
    pub fn le(&self, other: &Cycle) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn ge(&self, other: &Cycle) -> bool {
        other.le(self)
    }

    pub fn support(&self) -> BTreeSet<usize> {
        (0..self.len()).filter(|&v| !self.0[v].is_zero()).collect()
    }

    /// Componentwise fractional part.
    pub fn frac(&self) -> Cycle {
        Cycle(self.0.iter().map(rat::frac).collect())
    }

    pub fn scale(&self, k: &Q) -> Cycle {
        Cycle(self.0.iter().map(|x| x * k).collect())
    }

    pub fn add_basis(&mut self, v: usize) {
        self.0[v] += Q::one();
    }

    /// Coefficientwise minimum.
    pub fn min(&self, other: &Cycle) -> Cycle {
        Cycle(self.0.iter().zip(&other.0).map(|(a, b)| a.min(b).clone()).collect())
    }

    pub fn sum_coeffs(&self) -> Q {
        self.0.iter().sum()
    }

    /// Integer coefficients, if integral and small.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(rat::to_i64).collect()
    }
}

impl fmt::Debug for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(rat::fmt).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Add for &Cycle {
    type Output = Cycle;
    fn add(self, o: &Cycle) -> Cycle {
        Cycle(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Cycle {
    type Output = Cycle;
    fn sub(self, o: &Cycle) -> Cycle {
        Cycle(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Cycle {
    type Output = Cycle;
    fn neg(self) -> Cycle {
        Cycle(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&Cycle> for i64 {
    type Output = Cycle;
    fn mul(self, c: &Cycle) -> Cycle {
        c.scale(&rat::q(self))
    }
}

/// Validated weighted tree with a negative definite intersection matrix.
#[derive(Clone)]
pub struct ResolutionGraph {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    euler: Vec<i64>,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    det: BigInt,
    minors: Vec<BigInt>,
    /// Adjugate of -A; -A^{-1} = adj / det.
    adjugate: Vec<Vec<BigInt>>,
    neg_inv: Vec<Vec<Q>>,
    canonical: Cycle,
}

impl fmt::Debug for ResolutionGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ResolutionGraph")
            .field("vertices", &self.ids.iter().zip(&self.euler).collect::<Vec<_>>())
            .field("edges", &self.edge_ids())
            .finish()
    }
}

impl PartialEq for ResolutionGraph {
    fn eq(&self, o: &Self) -> bool {
        self.ids == o.ids && self.euler == o.euler && self.edges == o.edges
    }
}

impl ResolutionGraph {
    pub fn build(spec: &GraphSpec) -> Result<Self> {
        if let Some((v, g)) = spec.genus.iter().find(|(_, g)| *g != 0) {
            return Err(Error::Genus(v.clone(), *g));
        }
        if spec.vertices.is_empty() {
            return Err(Error::Empty);
        }
        let mut sorted: BTreeMap<&str, i64> = BTreeMap::new();
        for (id, e) in &spec.vertices {
            if sorted.insert(id.as_str(), *e).is_some() {
                return Err(Error::DuplicateVertex(id.clone()));
            }
        }
        for (id, e) in &sorted {
            if *e > -1 {
                return Err(Error::EulerTooLarge(id.to_string(), *e));
            }
        }
        let ids: Vec<String> = sorted.keys().map(|s| s.to_string()).collect();
        let euler: Vec<i64> = sorted.values().copied().collect();
        let index: HashMap<String, usize> =
            ids.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let n = ids.len();
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        let mut edges = Vec::new();
        for (k, (a, b)) in spec.edges.iter().enumerate() {
            let ia = *index.get(a).ok_or_else(|| Error::UnknownVertex(a.clone()))?;
            let ib = *index.get(b).ok_or_else(|| Error::UnknownVertex(b.clone()))?;
            if ia == ib {
                return Err(Error::SelfLoop(k, a.clone()));
            }
            let key = (ia.min(ib), ia.max(ib));
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge(k, a.clone(), b.clone()));
            }
            adj[ia].push(ib);
            adj[ib].push(ia);
            edges.push(key);
        }
        if edges.len() != n - 1 {
            return Err(Error::NotATree(format!(
                "{} vertices need {} edges, found {}",
                n,
                n - 1,
                edges.len()
            )));
        }
        let comp = component(&adj, 0, None);
        if comp.len() != n {
            let missing = ids.iter().enumerate().find(|(i, _)| !comp.contains(i)).unwrap().1;
            return Err(Error::NotATree(format!("disconnected; `{missing}` is unreachable")));
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        edges.sort_unstable();

        let mut m = vec![vec![BigInt::zero(); n]; n];
        for v in 0..n {
            m[v][v] = BigInt::from(-euler[v]);
        }
        for &(a, b) in &edges {
            m[a][b] = BigInt::from(-1);
            m[b][a] = BigInt::from(-1);
        }
        let minors = linalg::leading_minors(&m);
        if let Some((k, bad)) = minors.iter().enumerate().find(|(_, x)| !x.is_positive()) {
            return Err(Error::NotNegativeDefinite { order: k + 1, minor: bad.to_string() });
        }
        let (det, adjugate) = linalg::det_adjugate(&m)
            .ok_or_else(|| Error::Internal("singular matrix passed the minor test".into()))?;
        let neg_inv: Vec<Vec<Q>> = adjugate
            .iter()
            .map(|row| row.iter().map(|x| Q::new(x.clone(), det.clone())).collect())
            .collect();
        let mut g = ResolutionGraph {
            ids,
            index,
            euler,
            adj,
            edges,
            det,
            minors,
            adjugate,
            neg_inv,
            canonical: Cycle::zero(0),
        };
        // (Z_K, E_v) = e_v + 2, so the E*-coordinates of Z_K are -(e_v + 2).
        let coords: Vec<Q> = g.euler.iter().map(|e| rat::q(-(e + 2))).collect();
        g.canonical = g.from_estar(&coords);
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn euler(&self, v: usize) -> i64 {
        self.euler[v]
    }

    pub fn eulers(&self) -> &[i64] {
        &self.euler
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_ids(&self) -> Vec<(String, String)> {
        self.edges.iter().map(|&(a, b)| (self.ids[a].clone(), self.ids[b].clone())).collect()
    }

    /// det(-A).
    pub fn det(&self) -> &BigInt {
        &self.det
    }

    /// Leading principal minors of -A; all positive.
    pub fn minors(&self) -> &[BigInt] {
        &self.minors
    }

    pub fn adjugate(&self) -> &[Vec<BigInt>] {
        &self.adjugate
    }

    /// Entry of -A^{-1}.
    pub fn neg_inv(&self, u: usize, v: usize) -> &Q {
        &self.neg_inv[u][v]
    }

    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            vertices: self.ids.iter().cloned().zip(self.euler.iter().copied()).collect(),
            edges: self.edge_ids(),
            genus: Vec::new(),
        }
    }

    /// Fails unless every euler number is at most -2.
    pub fn require_minimal(&self) -> Result<()> {
        match (0..self.n()).find(|&v| self.euler[v] > -2) {
            Some(v) => Err(Error::NotMinimal(self.ids[v].clone(), self.euler[v])),
            None => Ok(()),
        }
    }

    pub fn is_minimal(&self) -> bool {
        self.euler.iter().all(|&e| e <= -2)
    }

    /// Full subgraph on a connected vertex set, with its local indices.
    pub fn induced(&self, vs: &BTreeSet<usize>) -> Result<(ResolutionGraph, Vec<usize>)> {
        let map: Vec<usize> = vs.iter().copied().collect();
        let mut spec = GraphSpec::new();
        for &v in &map {
            spec.vertices.push((self.ids[v].clone(), self.euler[v]));
        }
        for &(a, b) in &self.edges {
            if vs.contains(&a) && vs.contains(&b) {
                spec.edges.push((self.ids[a].clone(), self.ids[b].clone()));
            }
        }
        Ok((ResolutionGraph::build(&spec)?, map))
    }

    /// Is the full subgraph on `vs` connected (and nonempty)?
    pub fn is_connected_set(&self, vs: &BTreeSet<usize>) -> bool {
        match vs.iter().next() {
            None => false,
            Some(&s) => component(&self.adj, s, Some(vs)).len() == vs.len(),
        }
    }

    /// Connected components of the graph with `removed` deleted.
    pub fn components_without(&self, removed: usize) -> Vec<BTreeSet<usize>> {
        let rest: BTreeSet<usize> = (0..self.n()).filter(|&v| v != removed).collect();
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for &v in self.adj[removed].iter() {
            if seen.contains(&v) {
                continue;
            }
            let c = component(&self.adj, v, Some(&rest));
            seen.extend(c.iter().copied());
            out.push(c);
        }
        out
    }

    fn check_len(&self, c: &Cycle) -> Result<()> {
        if c.len() != self.n() {
            return Err(Error::MismatchedGraph { expected: self.n(), got: c.len() });
        }
        Ok(())
    }

    /// `(l, E_v)`.
    pub fn pair_basis(&self, l: &Cycle, v: usize) -> Q {
        let mut s = &l.0[v] * rat::q(self.euler[v]);
        for &u in &self.adj[v] {
            s += &l.0[u];
        }
        s
    }

    /// `A l` as a vector of `(l, E_v)`.
    pub fn pairings(&self, l: &Cycle) -> Vec<Q> {
        (0..self.n()).map(|v| self.pair_basis(l, v)).collect()
    }

    pub fn form(&self, a: &Cycle, b: &Cycle) -> Q {
        (0..self.n()).map(|v| &a.0[v] * self.pair_basis(b, v)).sum()
    }

    pub fn intersection_form(&self, a: &Cycle, b: &Cycle) -> Result<Q> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(self.form(a, b))
    }

    /// Riemann-Roch form `-(l, l - Z_K) / 2`.
    pub fn chi(&self, l: &Cycle) -> Q {
        -self.form(l, &(l - &self.canonical)) / rat::q(2)
    }

    pub fn basis(&self, v: usize) -> Cycle {
        Cycle::basis(self.n(), v)
    }

    /// Sum of all `E_v`.
    pub fn reduced_support_cycle(&self) -> Cycle {
        Cycle(vec![Q::one(); self.n()])
    }

    /// `E*_v`: column `v` of `-A^{-1}`.
    pub fn dual_cycle(&self, v: usize) -> Cycle {
        Cycle((0..self.n()).map(|u| self.neg_inv[u][v].clone()).collect())
    }

    /// `Z_K`, the solution of `(Z_K, E_v) = e_v + 2`.
    pub fn canonical_cycle(&self) -> &Cycle {
        &self.canonical
    }

    /// `a_v = -(l, E_v)`, so that `l = sum a_v E*_v`.
    pub fn estar_coordinates(&self, l: &Cycle) -> Vec<Q> {
        (0..self.n()).map(|v| -self.pair_basis(l, v)).collect()
    }

    pub fn estar_support(&self, l: &Cycle) -> BTreeSet<usize> {
        (0..self.n()).filter(|&v| !self.pair_basis(l, v).is_zero()).collect()
    }

    /// `sum a_v E*_v`.
    pub fn from_estar(&self, a: &[Q]) -> Cycle {
        let n = self.n();
        Cycle(
            (0..n)
                .map(|u| (0..n).filter(|&v| !a[v].is_zero()).map(|v| &a[v] * &self.neg_inv[u][v]).sum())
                .collect(),
        )
    }

    pub fn is_antinef(&self, l: &Cycle) -> bool {
        (0..self.n()).all(|v| !self.pair_basis(l, v).is_positive())
    }

    pub fn same_class(&self, a: &Cycle, b: &Cycle) -> bool {
        (a - b).is_integral()
    }

    pub fn is_numerically_gorenstein(&self) -> bool {
        self.canonical.is_integral()
    }

    /// Zero-extends a cycle on a subgraph (given by its local-to-global map).
    pub fn embed(&self, local: &Cycle, map: &[usize]) -> Cycle {
        let mut c = Cycle::zero(self.n());
        for (i, &v) in map.iter().enumerate() {
            c.0[v] = local.0[i].clone();
        }
        c
    }

    /// Restricts a cycle to a subgraph.
    pub fn restrict(&self, c: &Cycle, map: &[usize]) -> Cycle {
        Cycle(map.iter().map(|&v| c.0[v].clone()).collect())
    }

    /// Cycle from `(id, coefficient)` pairs; absent vertices are zero.
    pub fn cycle_from_ids<'a>(&self, items: impl IntoIterator<Item = (&'a str, Q)>) -> Result<Cycle> {
        let mut c = Cycle::zero(self.n());
        for (id, x) in items {
            let v = self.vertex(id)?;
            c.0[v] += x;
        }
        Ok(c)
    }

    /// Nonzero coefficients keyed by vertex id.
    pub fn cycle_map(&self, c: &Cycle) -> BTreeMap<String, String> {
        (0..self.n())
            .filter(|&v| !c.0[v].is_zero())
            .map(|v| (self.ids[v].clone(), rat::fmt(&c.0[v])))
            .collect()
    }

    pub fn set_ids(&self, s: &BTreeSet<usize>) -> Vec<String> {
        s.iter().map(|&v| self.ids[v].clone()).collect()
    }
}

fn component(adj: &[Vec<usize>], start: usize, within: Option<&BTreeSet<usize>>) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if within.is_some_and(|w| !w.contains(&u)) {
                continue;
            }
            if seen.insert(u) {
                stack.push(u);
            }
        }
    }
    seen
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rat::{q, qfrac};
    use proptest::prelude::*;

    fn single(e: i64) -> ResolutionGraph {
        ResolutionGraph::build(&GraphSpec::new().vertex("v", e)).unwrap()
    }

    #[test]
    fn single_vertex() {
        let g = single(-3);
        assert_eq!(g.det(), &BigInt::from(3));
        assert_eq!(g.dual_cycle(0), Cycle(vec![qfrac(1, 3)]));
        assert_eq!(g.canonical_cycle(), &Cycle(vec![qfrac(1, 3)]));
    }

    #[test]
    fn rejects_bad_descriptions() {
        let two = GraphSpec::new().vertex("a", -1).vertex("b", -1).edge("a", "b");
        assert!(matches!(
            ResolutionGraph::build(&two),
            Err(Error::NotNegativeDefinite { order: 2, .. })
        ));
        let dup = GraphSpec::new().vertex("a", -2).vertex("a", -3);
        assert_eq!(ResolutionGraph::build(&dup), Err(Error::DuplicateVertex("a".into())));
        let cyc = GraphSpec::new()
            .vertex("a", -3)
            .vertex("b", -3)
            .vertex("c", -3)
            .path(&["a", "b", "c", "a"]);
        assert!(matches!(ResolutionGraph::build(&cyc), Err(Error::NotATree(_))));
        let disc = GraphSpec::new().vertex("a", -2).vertex("b", -2).vertex("c", -2).edge("a", "b").edge("a", "b");
        assert!(matches!(ResolutionGraph::build(&disc), Err(Error::DuplicateEdge(..))));
        let mut genus = GraphSpec::new().vertex("a", -2);
        genus.genus.push(("a".into(), 1));
        assert!(matches!(ResolutionGraph::build(&genus), Err(Error::Genus(..))));
        assert!(matches!(
            ResolutionGraph::build(&GraphSpec::new().vertex("a", 0)),
            Err(Error::EulerTooLarge(..))
        ));
    }

    #[test]
    fn intersection_entries() {
        let g = fixtures::g_app();
        let a3 = g.vertex("a3").unwrap();
        let a4 = g.vertex("a4").unwrap();
        let a8 = g.vertex("a8").unwrap();
        assert_eq!(g.form(&g.basis(a3), &g.basis(a4)), q(1));
        assert_eq!(g.form(&g.basis(a8), &g.basis(a8)), q(-3));
        assert_eq!(g.form(&g.basis(a3), &g.basis(a8)), q(0));
        for u in 0..g.n() {
            for v in 0..g.n() {
                let want = if u == v { q(-1) } else { q(0) };
                assert_eq!(g.form(&g.dual_cycle(u), &g.basis(v)), want);
            }
        }
        assert!(g.intersection_form(&Cycle::zero(3), &g.basis(0)).is_err());
    }

    #[test]
    fn g_new_canonical_cycle() {
        let g = fixtures::g_new();
        let path = [14, 28, 42, 35, 28, 21, 14, 7, 4, 2];
        for (i, want) in path.iter().enumerate() {
            let v = g.vertex(&format!("b{}", i + 1)).unwrap();
            assert_eq!(g.canonical_cycle().coeff(v), &qfrac(*want, 3));
        }
        assert_eq!(g.canonical_cycle().coeff(g.vertex("u").unwrap()), &qfrac(21, 3));
        assert!(!g.is_numerically_gorenstein());
    }

    #[test]
    fn g_app_canonical_and_duals() {
        let g = fixtures::g_app();
        let a8 = g.vertex("a8").unwrap();
        assert_eq!(g.canonical_cycle(), &g.dual_cycle(a8));
        assert!(g.is_numerically_gorenstein());
        assert!(g.is_antinef(g.canonical_cycle()));
        assert!(!g.is_antinef(&g.basis(a8)));
        let coords = g.estar_coordinates(&g.canonical_cycle().clone());
        assert_eq!(coords[a8], q(1));
        assert_eq!(coords.iter().filter(|x| !x.is_zero()).count(), 1);
    }

    #[test]
    fn chain_canonical_is_zero() {
        let g = ResolutionGraph::build(
            &GraphSpec::new().vertex("a", -2).vertex("b", -2).vertex("c", -2).path(&["a", "b", "c"]),
        )
        .unwrap();
        assert!(g.canonical_cycle().is_zero());
        assert!(g.is_numerically_gorenstein());
        assert_eq!(g.chi(&Cycle::zero(3)), q(0));
    }

    #[test]
    fn det_clears_denominators() {
        for g in fixtures::all().into_iter().map(|f| f.graph) {
            let det = Q::from_integer(g.det().clone());
            for v in 0..g.n() {
                assert!(g.dual_cycle(v).scale(&det).is_integral());
                assert!(g.dual_cycle(v).0.iter().all(|x| x.is_positive()));
            }
            assert!(g.canonical_cycle().scale(&det).is_integral());
        }
    }

    pub(crate) fn arb_graph(max_n: usize) -> impl Strategy<Value = ResolutionGraph> {
        (1..=max_n)
            .prop_flat_map(|n| {
                (
                    proptest::collection::vec(0usize..64, n.saturating_sub(1)),
                    proptest::collection::vec(-5i64..=-2, n),
                )
            })
            .prop_filter_map("negative definite", |(parents, eulers)| {
                let n = eulers.len();
                let mut spec = GraphSpec::new();
                for (i, e) in eulers.iter().enumerate() {
                    spec = spec.vertex(&format!("v{i}"), *e);
                }
                for i in 1..n {
                    let p = parents[i - 1] % i;
                    spec = spec.edge(&format!("v{p}"), &format!("v{i}"));
                }
                ResolutionGraph::build(&spec).ok()
            })
    }

    fn arb_cycle(n: usize) -> impl Strategy<Value = Cycle> {
        proptest::collection::vec((-9i64..10, 1i64..5), n)
            .prop_map(|v| Cycle(v.into_iter().map(|(a, b)| qfrac(a, b)).collect()))
    }

    proptest! {
        #[test]
        fn inverse_is_positive_and_dual(g in arb_graph(7)) {
            for u in 0..g.n() {
                for w in 0..g.n() {
                    prop_assert!(g.neg_inv(u, w).is_positive());
                    prop_assert_eq!(g.form(&g.dual_cycle(u), &g.dual_cycle(w)), -g.neg_inv(u, w).clone());
                    let want = if u == w { q(-1) } else { q(0) };
                    prop_assert_eq!(g.form(&g.dual_cycle(u), &g.basis(w)), want);
                }
            }
        }

        #[test]
        fn chi_is_quadratic((g, a, b) in arb_graph(6).prop_flat_map(|g| {
            let n = g.n();
            (Just(g), arb_cycle(n), arb_cycle(n))
        })) {
            prop_assert_eq!(g.chi(&(&a + &b)), g.chi(&a) + g.chi(&b) - g.form(&a, &b));
        }

        #[test]
        fn estar_round_trip((g, a) in arb_graph(6).prop_flat_map(|g| {
            let n = g.n();
            (Just(g), arb_cycle(n))
        })) {
            let coords = g.estar_coordinates(&a);
            prop_assert_eq!(g.from_estar(&coords), a.clone());
            let back = g.estar_coordinates(&g.from_estar(&a.0));
            prop_assert_eq!(back, a.0.clone());
        }

        #[test]
        fn class_is_an_equivalence((g, a, b, z) in arb_graph(5).prop_flat_map(|g| {
            let n = g.n();
            (Just(g), arb_cycle(n), arb_cycle(n), proptest::collection::vec(-4i64..5, n))
        })) {
            prop_assert!(g.same_class(&a, &a));
            prop_assert_eq!(g.same_class(&a, &b), g.same_class(&b, &a));
            let shifted = &a + &Cycle::from_ints(&z);
            prop_assert!(g.same_class(&a, &shifted));
            prop_assert_eq!(g.same_class(&shifted, &b), g.same_class(&a, &b));
            let zk = g.canonical_cycle();
            prop_assert!(g.same_class(zk, &(zk + &Cycle::from_ints(&z))));
        }
    }
}
