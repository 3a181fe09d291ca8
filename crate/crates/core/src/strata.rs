//! Numeric side of the Brill-Noether stratification: flag dimensions, h^1 on
//! Abel images, the reduction index, the W-strata tables, fixed-component
//! candidates and the index sets of the strata.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::ellipsoid::Ellipsoid;
use crate::ellseq::{self, EllipticSequence};
use crate::error::{Error, Result};
use crate::laufer;
use crate::lattice::{Cycle, ResolutionGraph};
use crate::rat::{self, Q};

pub const DEFAULT_NODE_CAP: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Generic,
    Wecc,
    Custom,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "generic" => Ok(Mode::Generic),
            "wecc" => Ok(Mode::Wecc),
            "custom" => Ok(Mode::Custom),
            _ => Err(Error::Usage(format!("unknown mode `{s}`; use generic, wecc or custom"))),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Generic => "generic",
            Mode::Wecc => "wecc",
            Mode::Custom => "custom",
        })
    }
}

/// Analytic input: the Gorenstein index and the declared trivializable cycles.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticParams {
    pub alpha: usize,
    pub mode: Mode,
    pub trivializable: Vec<Cycle>,
}

impl AnalyticParams {
    pub fn generic(alpha: usize) -> Self {
        AnalyticParams { alpha, mode: Mode::Generic, trivializable: Vec::new() }
    }

    pub fn wecc(alpha: usize) -> Self {
        AnalyticParams { alpha, mode: Mode::Wecc, trivializable: Vec::new() }
    }

    pub fn custom(alpha: usize, t: Vec<Cycle>) -> Self {
        AnalyticParams { alpha, mode: Mode::Custom, trivializable: t }
    }

    pub fn validate(&self, g: &ResolutionGraph, seq: &EllipticSequence) -> Result<()> {
        if self.alpha > seq.m() {
            return Err(Error::OutOfRange(format!("alpha = {} outside [0, {}]", self.alpha, seq.m())));
        }
        if self.mode != Mode::Custom && !self.trivializable.is_empty() {
            return Err(Error::Usage(format!("trivializable cycles need mode custom, not {}", self.mode)));
        }
        for (i, d) in self.trivializable.iter().enumerate() {
            if d.len() != g.n() {
                return Err(Error::MismatchedGraph { expected: g.n(), got: d.len() });
            }
            if !d.is_integral() || !d.is_effective() || d.is_zero() || !g.is_antinef(d) {
                return Err(Error::Usage(format!(
                    "trivializable cycle #{i} must be nonzero, integral, effective and antinef"
                )));
            }
        }
        Ok(())
    }
}

pub fn depth(seq: &EllipticSequence, v: usize) -> i64 {
    seq.depth(v)
}

/// `dim V(I)`: 0 for the empty set, else the max of `depth(u) - alpha + 1`.
pub fn dim_v(seq: &EllipticSequence, set: &BTreeSet<usize>, alpha: usize) -> usize {
    set.iter().map(|&u| (seq.depth(u) - alpha as i64 + 1).max(0) as usize).max().unwrap_or(0)
}

pub fn pg(seq: &EllipticSequence, alpha: usize) -> usize {
    seq.m() + 1 - alpha
}

/// `p_g` of the germ contracted from `B_j`.
pub fn pg_at(seq: &EllipticSequence, j: usize, alpha: usize) -> usize {
    if j > seq.m() {
        0
    } else {
        seq.m() + 1 - j.max(alpha)
    }
}

fn check_lprime(g: &ResolutionGraph, lprime: &Cycle) -> Result<()> {
    if lprime.len() != g.n() {
        return Err(Error::MismatchedGraph { expected: g.n(), got: lprime.len() });
    }
    if !g.is_antinef(&-lprime) {
        return Err(Error::Usage("l' must lie in -S': its negative has to be antinef".into()));
    }
    Ok(())
}

/// Largest `i` in `[0, m+1]` with `I(-l') ∩ B_{i-1}` nonempty; 0 when empty.
pub fn reduction_index(g: &ResolutionGraph, seq: &EllipticSequence, lprime: &Cycle) -> Result<usize> {
    check_lprime(g, lprime)?;
    let set = g.estar_support(lprime);
    Ok(set.iter().map(|&u| (seq.depth(u) + 1) as usize).max().unwrap_or(0))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1OnImage {
    pub value: usize,
    pub reduction_index: usize,
    /// `p_g` of the germ at the reduction index.
    pub upper_bound: usize,
}

pub fn h1_on_image(
    g: &ResolutionGraph,
    seq: &EllipticSequence,
    lprime: &Cycle,
    alpha: usize,
) -> Result<H1OnImage> {
    let i = reduction_index(g, seq, lprime)?;
    let d = dim_v(seq, &g.estar_support(lprime), alpha);
    Ok(H1OnImage { value: pg(seq, alpha) - d, reduction_index: i, upper_bound: pg_at(seq, i, alpha) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StratumKind {
    Linear,
    Wandering,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WStratum {
    pub k: usize,
    pub dim: usize,
    pub kind: StratumKind,
    /// Upper bound on the number of isolated points, for wandering records.
    pub count_at_most: Option<usize>,
}

pub fn w_strata(
    g: &ResolutionGraph,
    seq: &EllipticSequence,
    lprime: &Cycle,
    alpha: usize,
) -> Result<Vec<WStratum>> {
    if alpha > seq.m() {
        return Err(Error::OutOfRange(format!("alpha = {alpha} outside [0, {}]", seq.m())));
    }
    let i = reduction_index(g, seq, lprime)?;
    let m = seq.m();
    let p = pg(seq, alpha);
    let start = i.max(alpha);
    let mut out: Vec<WStratum> = (start..=m + 1)
        .map(|j| WStratum {
            k: m + 1 - j,
            dim: (p - pg_at(seq, i, alpha)) + (j - start),
            kind: StratumKind::Linear,
            count_at_most: None,
        })
        .collect();
    if alpha > i {
        out.push(WStratum {
            k: pg_at(seq, i, alpha),
            dim: 0,
            kind: StratumKind::Wandering,
            count_at_most: Some(alpha - i),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub cycle: Cycle,
    /// Appears only for non-Gorenstein structures with `(C, C) = -1`.
    pub exceptional: bool,
}

pub fn fixed_component_candidates(
    g: &ResolutionGraph,
    seq: &EllipticSequence,
    alpha: usize,
) -> Result<Vec<Candidate>> {
    if !g.is_numerically_gorenstein() {
        return Err(Error::NotNumericallyGorenstein);
    }
    if alpha > seq.m() {
        return Err(Error::OutOfRange(format!("alpha = {alpha} outside [0, {}]", seq.m())));
    }
    let mut out: Vec<Candidate> = (-1..=seq.m() as i64)
        .map(|t| Candidate { cycle: seq.c(t), exceptional: false })
        .collect();
    let c = seq.minimally_elliptic_cycle();
    if alpha >= 1 && g.form(c, c) == rat::q(-1) {
        out.push(Candidate { cycle: 2 * &laufer::fundamental_cycle(g), exceptional: true });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct EntryRef {
    pub k: usize,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub l: Cycle,
    /// `l' - l`.
    pub chern: Cycle,
    pub dim: usize,
    pub maximal: bool,
    pub excluded_by: Option<EntryRef>,
}

impl Entry {
    pub fn included(&self) -> bool {
        self.excluded_by.is_none()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StrataReport {
    pub lprime: Cycle,
    pub pg: usize,
    pub alpha: usize,
    pub mode: Mode,
    /// Levels `k = pg, ..., 0`; entries sorted by dimension (descending) then cycle.
    pub levels: BTreeMap<usize, Vec<Entry>>,
    pub search_nodes: u64,
}

impl StrataReport {
    pub fn included(&self, k: usize) -> Vec<&Entry> {
        self.levels.get(&k).map(|v| v.iter().filter(|e| e.included()).collect()).unwrap_or_default()
    }

    pub fn excluded(&self, k: usize) -> Vec<&Entry> {
        self.levels.get(&k).map(|v| v.iter().filter(|e| !e.included()).collect()).unwrap_or_default()
    }

    pub fn maximal(&self, k: usize) -> Vec<&Entry> {
        self.included(k).into_iter().filter(|e| e.maximal).collect()
    }

    pub fn entry(&self, r: EntryRef) -> Option<&Entry> {
        self.levels.get(&r.k)?.get(r.index)
    }
}

/// Is `d` a non-negative integral combination of `gens`?
fn in_monoid(d: &Cycle, gens: &[Cycle]) -> bool {
    fn rec(d: &Cycle, gens: &[Cycle], from: usize, budget: &mut u32) -> bool {
        if d.is_zero() {
            return true;
        }
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        (from..gens.len()).any(|i| {
            let r = d - &gens[i];
            r.is_effective() && rec(&r, gens, i, budget)
        })
    }
    let mut budget = 1_000_000;
    rec(d, gens, 0, &mut budget)
}

struct Rules<'a> {
    pg: usize,
    mode: Mode,
    t: &'a [Cycle],
}

impl Rules<'_> {
    /// Whether the subspace of `small` is known to lie inside that of `big`.
    fn contains(&self, big: &Entry, small: &Entry) -> bool {
        if big.dim == self.pg {
            return true;
        }
        if self.mode == Mode::Wecc && small.dim <= big.dim {
            return true;
        }
        if small.dim != big.dim {
            return false;
        }
        let diff = &small.l - &big.l;
        diff.is_effective() && (diff.is_zero() || in_monoid(&diff, self.t))
    }
}

/// Index sets of the strata of `Pic^{l'}`.
pub fn strata_index_sets(
    g: &ResolutionGraph,
    seq: &EllipticSequence,
    lprime: &Cycle,
    params: &AnalyticParams,
    node_cap: u64,
) -> Result<StrataReport> {
    g.require_minimal()?;
    check_lprime(g, lprime)?;
    params.validate(g, seq)?;
    let n = g.n();
    let p = pg(seq, params.alpha);
    let pq = Q::from_integer(BigInt::from(p));
    let half = rat::qfrac(1, 2);
    let center = (&g.canonical_cycle().scale(&half) + lprime).0;
    let form: Vec<Vec<Q>> = (0..n)
        .map(|u| (0..n).map(|v| -g.form(&g.basis(u), &g.basis(v))).collect())
        .collect();
    let cc = Cycle(center.clone());
    let radius = rat::q(2) * &pq - g.form(&cc, &cc);
    let inv_diag: Vec<Q> = (0..n).map(|v| g.neg_inv(v, v).clone()).collect();
    let bx = Ellipsoid::coordinate_box(&center, &radius, &inv_diag);

    // Coordinates are fixed from the last position down; putting vertices there
    // in breadth-first order closes neighbourhoods early, so the antinef test
    // on l - l' prunes partial points.
    let mut order = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        for &u in g.neighbors(order[i]) {
            if !seen[u] {
                seen[u] = true;
                order.push(u);
            }
        }
        i += 1;
    }
    let perm: Vec<usize> = order.iter().rev().copied().collect();
    let mut pos = vec![0; n];
    for (i, &v) in perm.iter().enumerate() {
        pos[v] = i;
    }
    let mut closes: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        let first = g.neighbors(v).iter().map(|&u| pos[u]).chain([pos[v]]).min().expect("nonempty");
        closes[first].push(v);
    }
    let lp_pairs = g.pairings(lprime);
    let keep = |i: usize, x: &[BigInt]| {
        closes[i].iter().all(|&w| {
            let mut s = BigInt::from(g.euler(w)) * &x[pos[w]];
            for &u in g.neighbors(w) {
                s += &x[pos[u]];
            }
            Q::from_integer(s) <= lp_pairs[w]
        })
    };
    let pform: Vec<Vec<Q>> = perm.iter().map(|&u| perm.iter().map(|&v| form[u][v].clone()).collect()).collect();
    let pcenter: Vec<Q> = perm.iter().map(|&v| center[v].clone()).collect();
    let lower: Vec<BigInt> = perm.iter().map(|&v| bx[v].0.clone().max(BigInt::zero())).collect();
    let upper: Vec<BigInt> = perm.iter().map(|&v| bx[v].1.clone()).collect();
    let ell = Ellipsoid::new(&pform, pcenter, radius);

    let mut raw: BTreeMap<usize, Vec<Entry>> = BTreeMap::new();
    let nodes = ell.for_each_pruned(&lower, &upper, node_cap, &keep, &mut |x| {
        let l = Cycle((0..n).map(|v| Q::from_integer(x[pos[v]].clone())).collect());
        let d = &l - lprime;
        if !g.is_antinef(&d) {
            return Err(Error::Internal("pruned search returned a point off the cone".into()));
        }
        let dim = dim_v(seq, &g.estar_support(&d), params.alpha);
        let k = &pq - Q::from_integer(BigInt::from(dim)) - g.chi(&l) - g.form(&l, lprime);
        if !k.is_integer() || k.is_negative() || k > pq {
            return Ok(());
        }
        let k = k.to_integer().to_usize().expect("bounded by pg");
        raw.entry(k).or_default().push(Entry { l, chern: -&d, dim, maximal: false, excluded_by: None });
        Ok(())
    })?;

    let rules = Rules {
        pg: p,
        mode: params.mode,
        t: &params.trivializable,
    };
    let mut levels: BTreeMap<usize, Vec<Entry>> = BTreeMap::new();
    for k in (0..=p).rev() {
        let mut entries = raw.remove(&k).unwrap_or_default();
        entries.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.l.cmp(&b.l)));
        for e in entries.iter_mut() {
            'outer: for (&kk, higher) in levels.iter().rev() {
                for (idx, h) in higher.iter().enumerate() {
                    if h.included() && rules.contains(h, e) {
                        e.excluded_by = Some(EntryRef { k: kk, index: idx });
                        break 'outer;
                    }
                }
            }
        }
        let snapshot = entries.clone();
        for (i, e) in entries.iter_mut().enumerate() {
            if !e.included() {
                continue;
            }
            e.maximal = !snapshot.iter().enumerate().any(|(j, f)| {
                j != i && f.included() && rules.contains(f, e) && !rules.contains(e, f)
            });
        }
        levels.insert(k, entries);
    }
    let report = StrataReport {
        lprime: lprime.clone(),
        pg: p,
        alpha: params.alpha,
        mode: params.mode,
        levels,
        search_nodes: nodes,
    };
    verify_report(g, seq, &report)?;
    Ok(report)
}

/// Re-evaluates every entry against its defining conditions.
pub fn verify_report(g: &ResolutionGraph, seq: &EllipticSequence, r: &StrataReport) -> Result<()> {
    let p = Q::from_integer(BigInt::from(r.pg));
    for (&k, entries) in &r.levels {
        let mut cherns = BTreeSet::new();
        for e in entries {
            let d = &e.l - &r.lprime;
            let dim = dim_v(seq, &g.estar_support(&d), r.alpha);
            let lhs = Q::from_integer(BigInt::from(k)) + g.chi(&e.l) + g.form(&e.l, &r.lprime);
            let ok = e.l.is_integral()
                && e.l.is_effective()
                && g.is_antinef(&d)
                && dim == e.dim
                && e.dim <= r.pg
                && k <= r.pg
                && lhs == &p - Q::from_integer(BigInt::from(dim))
                && e.chern == -&d;
            if !ok {
                return Err(Error::Invariant(format!("strata entry {:?} at k = {k} fails re-evaluation", e.l)));
            }
            if !cherns.insert(e.chern.clone()) {
                return Err(Error::Invariant(format!("two entries at k = {k} share a Chern class")));
            }
        }
    }
    Ok(())
}

/// Convenience wrapper computing the elliptic sequence first.
pub fn strata_for(g: &ResolutionGraph, lprime: &Cycle, params: &AnalyticParams) -> Result<StrataReport> {
    let seq = ellseq::elliptic_sequence(g)?;
    strata_index_sets(g, &seq, lprime, params, DEFAULT_NODE_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn seq(g: &ResolutionGraph) -> EllipticSequence {
        ellseq::elliptic_sequence(g).unwrap()
    }

    #[test]
    fn depths_and_dims() {
        let g = fixtures::g_app();
        let s = seq(&g);
        let a9 = g.vertex("a9").unwrap();
        let a8 = g.vertex("a8").unwrap();
        assert_eq!((depth(&s, a9), depth(&s, a8)), (0, 1));
        assert_eq!(dim_v(&s, &BTreeSet::new(), 0), 0);
        assert_eq!(dim_v(&s, &BTreeSet::from([a9]), 0), 1);
        assert_eq!(dim_v(&s, &BTreeSet::from([a8]), 0), 2);
        let g = fixtures::g_noecc();
        let s = seq(&g);
        for id in ["u8", "c9"] {
            assert_eq!(dim_v(&s, &BTreeSet::from([g.vertex(id).unwrap()]), 0), 1);
        }
    }

    #[test]
    fn h1_and_reduction() {
        let g = fixtures::g_app();
        let s = seq(&g);
        let zero = Cycle::zero(g.n());
        assert_eq!(h1_on_image(&g, &s, &zero, 0).unwrap().value, 2);
        let zk = g.canonical_cycle().clone();
        assert_eq!(h1_on_image(&g, &s, &-&zk, 0).unwrap().value, 0);
        let zmin = laufer::fundamental_cycle(&g);
        assert_eq!(h1_on_image(&g, &s, &-&zmin, 0).unwrap().value, 1);
        assert_eq!(reduction_index(&g, &s, &zero).unwrap(), 0);
        assert_eq!(reduction_index(&g, &s, &-&g.dual_cycle(g.vertex("a9").unwrap())).unwrap(), 1);
        assert_eq!(reduction_index(&g, &s, &-&g.dual_cycle(g.vertex("a8").unwrap())).unwrap(), 2);
        assert!(reduction_index(&g, &s, &zk).is_err());
    }

    #[test]
    fn flag_tables() {
        let g = fixtures::g_app();
        let s = seq(&g);
        let zero = Cycle::zero(g.n());
        let lin = |v: &[WStratum]| v.iter().filter(|w| w.kind == StratumKind::Linear).map(|w| (w.k, w.dim)).collect::<Vec<_>>();
        let w0 = w_strata(&g, &s, &zero, 0).unwrap();
        assert_eq!(lin(&w0), vec![(2, 0), (1, 1), (0, 2)]);
        assert_eq!(w0.len(), 3);
        let w1 = w_strata(&g, &s, &zero, 1).unwrap();
        assert_eq!(lin(&w1), vec![(1, 0), (0, 1)]);
        let wander: Vec<_> = w1.iter().filter(|w| w.kind == StratumKind::Wandering).collect();
        assert_eq!(wander.len(), 1);
        assert_eq!((wander[0].k, wander[0].count_at_most), (1, Some(1)));
        let wk = w_strata(&g, &s, &-g.canonical_cycle(), 0).unwrap();
        assert_eq!(lin(&wk), vec![(0, 2)]);
    }

    #[test]
    fn candidates() {
        let g = fixtures::g_app();
        let s = seq(&g);
        let zmin = laufer::fundamental_cycle(&g);
        let c0: Vec<Cycle> = fixed_component_candidates(&g, &s, 0).unwrap().into_iter().map(|c| c.cycle).collect();
        assert_eq!(c0, vec![Cycle::zero(g.n()), zmin.clone(), g.canonical_cycle().clone()]);
        let c1 = fixed_component_candidates(&g, &s, 1).unwrap();
        assert_eq!(c1.len(), 4);
        assert!(c1[3].exceptional && c1[3].cycle == 2 * &zmin);
        let m = fixtures::g_minell();
        assert_eq!(fixed_component_candidates(&m, &seq(&m), 0).unwrap().len(), 2);
        let n = fixtures::g_new();
        assert!(matches!(fixed_component_candidates(&n, &seq(&n), 0), Err(Error::NotNumericallyGorenstein)));
    }

    #[test]
    fn example_canonical_class() {
        let g = fixtures::g_app();
        let r = strata_for(&g, &-g.canonical_cycle(), &AnalyticParams::generic(0)).unwrap();
        let a9 = g.basis(g.vertex("a9").unwrap());
        let k0: Vec<(Cycle, usize)> = r.included(0).iter().map(|e| (e.l.clone(), e.dim)).collect();
        assert_eq!(k0, vec![(Cycle::zero(g.n()), 2), (a9, 1)]);
        assert!(r.included(0)[0].maximal && !r.included(0)[1].maximal);
        for k in 1..=r.pg {
            assert!(r.levels[&k].is_empty());
        }
    }

    #[test]
    fn example_declared_trivializable() {
        let g = fixtures::g_noecc();
        let s = seq(&g);
        let c9 = g.vertex("c9").unwrap();
        let zmin = laufer::fundamental_cycle(&g);
        let params = AnalyticParams::custom(0, vec![zmin.clone()]);
        let r = strata_index_sets(&g, &s, &-&g.dual_cycle(c9), &params, DEFAULT_NODE_CAP).unwrap();
        let k1: Vec<(Cycle, usize)> = r.included(1).iter().map(|e| (e.l.clone(), e.dim)).collect();
        assert_eq!(k1, vec![(Cycle::zero(g.n()), 1)]);
        let rest: BTreeSet<usize> = (0..g.n()).filter(|&v| v != c9).collect();
        let z0 = ellseq::support_fundamental_cycle(&g, &rest).unwrap();
        let k0: Vec<(Cycle, usize)> = r.included(0).iter().map(|e| (e.l.clone(), e.dim)).collect();
        assert_eq!(k0, vec![(z0, 2)]);
        let ex = r.excluded(0);
        assert_eq!(ex.len(), 1);
        assert_eq!(ex[0].l, zmin);
        assert_eq!(ex[0].excluded_by, Some(EntryRef { k: 1, index: 0 }));
    }

    #[test]
    fn zero_lprime_has_origin() {
        for name in ["g_app", "g_new", "g_noecc", "g_minell"] {
            let g = fixtures::by_name(name).unwrap().graph;
            let r = strata_for(&g, &Cycle::zero(g.n()), &AnalyticParams::generic(0)).unwrap();
            let top = r.included(r.pg);
            assert!(top.iter().any(|e| e.l.is_zero() && e.dim == 0), "{name}");
        }
    }

    #[test]
    fn rejects_bad_params() {
        let g = fixtures::g_app();
        let s = seq(&g);
        let zero = Cycle::zero(g.n());
        let bad_t = AnalyticParams::custom(0, vec![g.basis(0)]);
        assert!(strata_index_sets(&g, &s, &zero, &bad_t, 1000).is_err());
        assert!(strata_index_sets(&g, &s, &zero, &AnalyticParams::generic(2), 1000).is_err());
        assert!(strata_index_sets(&g, &s, g.canonical_cycle(), &AnalyticParams::generic(0), 1000).is_err());
        let mut with_t = AnalyticParams::wecc(0);
        with_t.trivializable.push(laufer::fundamental_cycle(&g));
        assert!(with_t.validate(&g, &s).is_err());
    }
}
