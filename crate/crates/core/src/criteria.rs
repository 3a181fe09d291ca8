//! Topological criteria on elliptic graphs: the extension criterion, the
//! monomial condition and gluing.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ellseq::{self, EllipticSequence};
use crate::error::{Error, Result};
use crate::laufer::{self, Classification};
use crate::lattice::{Cycle, GraphSpec, ResolutionGraph};
use crate::rat::{self, Q};

#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionViolation {
    pub level: usize,
    pub vertex: usize,
    pub neighbours: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionReport {
    pub verdict: bool,
    pub violations: Vec<ExtensionViolation>,
}

/// Every `v ∈ B_i ∖ B_{i+1}` has at most one neighbour in `B_{i-1} ∖ B_i`.
pub fn extension_criterion(g: &ResolutionGraph, seq: &EllipticSequence) -> ExtensionReport {
    let mut violations = Vec::new();
    for i in 0..=seq.m() as i64 {
        let zone = seq.support(g, i);
        let inner = seq.support(g, i + 1);
        let outer: BTreeSet<usize> = seq.support(g, i - 1).difference(&zone).copied().collect();
        for &v in zone.difference(&inner) {
            let hits: Vec<usize> = g.neighbors(v).iter().copied().filter(|u| outer.contains(u)).collect();
            if hits.len() > 1 {
                violations.push(ExtensionViolation { level: i as usize, vertex: v, neighbours: hits });
            }
        }
    }
    ExtensionReport { verdict: violations.is_empty(), violations }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BranchResult {
    pub node: usize,
    /// Neighbour of the node inside the branch.
    pub contact: usize,
    pub branch: BTreeSet<usize>,
    /// End vertices of the whole graph lying in the branch.
    pub ends: Vec<usize>,
    /// Effective integral cycle on the branch, zero-extended, if one exists.
    pub witness: Option<Cycle>,
    /// Coefficients `a_w` of the witness in the branch's dual basis.
    pub weights: Vec<BigInt>,
    /// Set when no witness exists with non-negative weights but one exists
    /// with some negative weight in the searched window.
    pub negative_only: Option<Vec<BigInt>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonomialReport {
    pub verdict: bool,
    pub branches: Vec<BranchResult>,
}

impl MonomialReport {
    pub fn violations(&self) -> impl Iterator<Item = &BranchResult> {
        self.branches.iter().filter(|b| b.witness.is_none())
    }
}

/// Checks a witness against its defining conditions: effective, integral,
/// supported on the branch, and `(E*_node + C, E_u) = 0` for the node and for
/// every branch vertex that is not an end vertex of the graph.
pub fn witness_is_valid(g: &ResolutionGraph, b: &BranchResult, c: &Cycle) -> bool {
    if !c.is_integral() || !c.is_effective() || !c.support().is_subset(&b.branch) {
        return false;
    }
    let lhs = &g.dual_cycle(b.node) + c;
    let ends: BTreeSet<usize> = b.ends.iter().copied().collect();
    std::iter::once(b.node)
        .chain(b.branch.iter().copied().filter(|u| !ends.contains(u)))
        .all(|u| g.pair_basis(&lhs, u).is_zero())
}

/// Finds weights `a_w` in `[lo_w, hi_w]` with `sum a_w E*_w` having coefficient
/// 1 at `contact` and integral coefficients. The last weight is solved for.
fn search_branch(
    duals: &[Cycle],
    contact: usize,
    lo: &[BigInt],
    hi: &[BigInt],
) -> Option<(Cycle, Vec<BigInt>)> {
    let k = duals.len();
    if k == 0 {
        return None;
    }
    let xs: Vec<&Q> = duals.iter().map(|d| d.coeff(contact)).collect();
    let prune = lo.iter().all(|x| !x.is_negative());
    let mut a = vec![BigInt::zero(); k];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        duals: &[Cycle],
        xs: &[&Q],
        lo: &[BigInt],
        hi: &[BigInt],
        prune: bool,
        w: usize,
        used: Q,
        a: &mut Vec<BigInt>,
    ) -> Option<Cycle> {
        let k = duals.len();
        if w + 1 == k {
            let last = (Q::one() - &used) / xs[w];
            if !last.is_integer() {
                return None;
            }
            let last = last.to_integer();
            if last < lo[w] || last > hi[w] {
                return None;
            }
            a[w] = last;
            let mut c = Cycle::zero(duals[0].len());
            for (i, d) in duals.iter().enumerate() {
                if !a[i].is_zero() {
                    c = &c + &d.scale(&Q::from_integer(a[i].clone()));
                }
            }
            return c.is_integral().then_some(c);
        }
        let mut x = lo[w].clone();
        while x <= hi[w] {
            let u = &used + Q::from_integer(x.clone()) * xs[w];
            if prune && u > Q::one() {
                break;
            }
            a[w] = x.clone();
            if let Some(c) = rec(duals, xs, lo, hi, prune, w + 1, u, a) {
                return Some(c);
            }
            x += 1;
        }
        None
    }
    rec(duals, &xs, lo, hi, prune, 0, Q::zero(), &mut a).map(|c| (c, a))
}

/// Decides the monomial condition with non-negative integral weights.
pub fn monomial_condition(g: &ResolutionGraph) -> Result<MonomialReport> {
    let mut branches = Vec::new();
    for node in (0..g.n()).filter(|&v| g.degree(v) >= 3) {
        for branch in g.components_without(node) {
            let contact = *g.neighbors(node).iter().find(|u| branch.contains(u)).expect("branch touches node");
            let ends: Vec<usize> = branch.iter().copied().filter(|&u| g.degree(u) == 1).collect();
            let (sub, map) = g.induced(&branch)?;
            let local = |v: usize| map.iter().position(|&x| x == v).expect("in branch");
            let lc = local(contact);
            let duals: Vec<Cycle> = ends.iter().map(|&w| sub.dual_cycle(local(w))).collect();
            // coefficient 1 at the contact vertex bounds each weight
            let hi: Vec<BigInt> = duals.iter().map(|d| rat::floor_int(&(Q::one() / d.coeff(lc)))).collect();
            let lo = vec![BigInt::zero(); duals.len()];
            let found = search_branch(&duals, lc, &lo, &hi);
            let mut result = BranchResult {
                node,
                contact,
                branch: branch.clone(),
                ends: ends.clone(),
                witness: None,
                weights: Vec::new(),
                negative_only: None,
            };
            match found {
                Some((c, a)) => {
                    result.witness = Some(g.embed(&c, &map));
                    result.weights = a;
                }
                None => {
                    let window: Vec<BigInt> = hi.iter().map(|h| h * 2 + 2).collect();
                    let neg: Vec<BigInt> = window.iter().map(|w| -w).collect();
                    if duals.len() <= 3 {
                        result.negative_only = search_branch(&duals, lc, &neg, &window).map(|x| x.1);
                    }
                }
            }
            if let Some(c) = &result.witness {
                if !witness_is_valid(g, &result, c) {
                    return Err(Error::Invariant(format!(
                        "monomial witness at node {} fails its equations",
                        g.id(node)
                    )));
                }
            }
            branches.push(result);
        }
    }
    let verdict = branches.iter().all(|b| b.witness.is_some());
    Ok(MonomialReport { verdict, branches })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdicts {
    pub wecc: bool,
    pub ecc: bool,
    pub extension: ExtensionReport,
    pub monomial: MonomialReport,
}

/// Both verdicts on an elliptic graph; they must agree.
pub fn supports(g: &ResolutionGraph) -> Result<Verdicts> {
    let seq = ellseq::elliptic_sequence(g)?;
    let extension = extension_criterion(g, &seq);
    let monomial = monomial_condition(g)?;
    if extension.verdict != monomial.verdict {
        return Err(Error::Invariant(format!(
            "extension criterion says {} but monomial condition says {}",
            extension.verdict, monomial.verdict
        )));
    }
    Ok(Verdicts { wecc: extension.verdict, ecc: monomial.verdict, extension, monomial })
}

pub fn supports_wecc(g: &ResolutionGraph) -> Result<bool> {
    supports(g).map(|v| v.wecc)
}

pub fn supports_ecc(g: &ResolutionGraph) -> Result<bool> {
    supports(g).map(|v| v.ecc)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GlueConditions {
    pub zmin_multiplicity: Q,
    pub in_b1: bool,
    /// Present in the numerically Gorenstein case.
    pub end_vertex: Option<bool>,
    pub zk_multiplicity: Option<Q>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GlueReport {
    pub new_vertex: String,
    pub extended: ResolutionGraph,
    pub classification: Classification,
    pub conditions: GlueConditions,
}

fn fresh_id(g: &ResolutionGraph) -> String {
    let taken = |s: &str| g.vertex(s).is_ok();
    if !taken("new") {
        return "new".into();
    }
    (1..).map(|i| format!("new{i}")).find(|s| !taken(s)).expect("unbounded")
}

/// Attaches a new vertex to `v` and classifies the result. If the result is
/// elliptic, the base must satisfy the gluing conditions.
pub fn glue_classify(g: &ResolutionGraph, v: usize, e_new: i64) -> Result<GlueReport> {
    if e_new > -2 {
        return Err(Error::OutOfRange(format!("euler number {e_new} of the new vertex must be <= -2")));
    }
    let seq = ellseq::elliptic_sequence(g)?;
    let id = fresh_id(g);
    let mut spec: GraphSpec = g.to_spec();
    spec = spec.vertex(&id, e_new).edge(g.id(v), &id);
    let extended = ResolutionGraph::build(&spec)?;
    let classification = laufer::classify(&extended);
    let zmin = laufer::fundamental_cycle(g);
    let ng = g.is_numerically_gorenstein();
    let conditions = GlueConditions {
        zmin_multiplicity: zmin.coeff(v).clone(),
        in_b1: seq.support(g, 1).contains(&v),
        end_vertex: ng.then(|| g.degree(v) == 1),
        zk_multiplicity: ng.then(|| g.canonical_cycle().coeff(v).clone()),
    };
    if classification == Classification::Elliptic {
        let one = Q::one();
        let ok = conditions.zmin_multiplicity == one
            && !conditions.in_b1
            && conditions.end_vertex != Some(false)
            && conditions.zk_multiplicity.as_ref().is_none_or(|x| *x == one);
        if !ok {
            return Err(Error::Invariant(format!(
                "gluing at {} stays elliptic but the base conditions fail: {:?}",
                g.id(v),
                conditions
            )));
        }
    }
    Ok(GlueReport { new_vertex: id, extended, classification, conditions })
}

/// Small helper for reports.
pub fn big_to_i64(x: &BigInt) -> i64 {
    x.to_i64().unwrap_or(if x.is_negative() { i64::MIN } else { i64::MAX })
}
