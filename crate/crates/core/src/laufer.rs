//! Computation sequences towards the antinef cone.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Cycle, ResolutionGraph};
use crate::rat::{self, Q};

#[derive(Debug, Clone, PartialEq)]
pub struct ComputationTrace {
    pub start: Cycle,
    pub steps: Vec<usize>,
    pub result: Cycle,
}

impl ComputationTrace {
    /// Replays the steps, checking that each added vertex pairs positively
    /// with the running cycle and that the endpoint is antinef.
    pub fn replay(&self, g: &ResolutionGraph) -> bool {
        let mut z = self.start.clone();
        for &v in &self.steps {
            if !g.pair_basis(&z, v).is_positive() {
                return false;
            }
            z.add_basis(v);
        }
        z == self.result && g.is_antinef(&z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreak {
    Smallest,
    Largest,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Rational,
    Elliptic,
    Other(i64),
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Rational => write!(f, "rational"),
            Classification::Elliptic => write!(f, "elliptic"),
            Classification::Other(x) => write!(f, "other({x})"),
        }
    }
}

/// Upper bound on the number of steps from `l`: `l + N*sum_w det*E*_w` is
/// antinef for `N*det >= max (l, E_v)`, so `s(l) - l` is at most that shift.
fn step_bound(g: &ResolutionGraph, l: &Cycle) -> BigInt {
    let det = g.det();
    let worst = g.pairings(l).into_iter().max().unwrap_or_else(Q::zero);
    let worst = rat::ceil_int(&worst).max(BigInt::zero());
    let n_mult = (&worst + det - 1i32) / det + 1i32;
    let total: BigInt = g.adjugate().iter().flatten().sum();
    n_mult * total + 1i32
}

pub fn antinef_lift(g: &ResolutionGraph, l: &Cycle) -> Result<(Cycle, ComputationTrace)> {
    antinef_lift_with(g, l, TieBreak::Smallest)
}

/// `s(l)`: the smallest antinef cycle in `l + L_{>=0}`.
pub fn antinef_lift_with(g: &ResolutionGraph, l: &Cycle, tie: TieBreak) -> Result<(Cycle, ComputationTrace)> {
    if l.len() != g.n() {
        return Err(Error::MismatchedGraph { expected: g.n(), got: l.len() });
    }
    let n = g.n();
    let limit = step_bound(g, l).to_usize().unwrap_or(usize::MAX);
    let mut z = l.clone();
    let mut p = g.pairings(&z);
    let mut steps = Vec::new();
    loop {
        let pick = match tie {
            TieBreak::Smallest => (0..n).find(|&v| p[v].is_positive()),
            TieBreak::Largest => (0..n).rev().find(|&v| p[v].is_positive()),
        };
        let Some(v) = pick else { break };
        z.add_basis(v);
        p[v] += rat::q(g.euler(v));
        for &u in g.neighbors(v) {
            p[u] += rat::q(1);
        }
        steps.push(v);
        if steps.len() > limit {
            return Err(Error::Internal(format!("computation sequence exceeded {limit} steps")));
        }
    }
    let trace = ComputationTrace { start: l.clone(), steps, result: z.clone() };
    Ok((z, trace))
}

pub fn lift(g: &ResolutionGraph, l: &Cycle) -> Result<Cycle> {
    antinef_lift(g, l).map(|x| x.0)
}

/// `Z_min = s(sum E_v)`.
pub fn fundamental_cycle(g: &ResolutionGraph) -> Cycle {
    lift(g, &g.reduced_support_cycle()).expect("lift of an integral cycle terminates")
}

/// `r_h`: componentwise fractional part.
pub fn cube_representative(l: &Cycle) -> Cycle {
    l.frac()
}

/// `s_h = s(r_h)`.
pub fn minimal_class_representative(g: &ResolutionGraph, l: &Cycle) -> Result<Cycle> {
    lift(g, &cube_representative(l))
}

pub fn classify(g: &ResolutionGraph) -> Classification {
    let chi = g.chi(&fundamental_cycle(g));
    match rat::to_i64(&chi) {
        Some(1) => Classification::Rational,
        Some(0) => Classification::Elliptic,
        Some(x) => Classification::Other(x),
        None => unreachable!("chi of an integral cycle is an integer"),
    }
}

pub fn require_elliptic(g: &ResolutionGraph) -> Result<()> {
    match classify(g) {
        Classification::Elliptic => Ok(()),
        c => Err(Error::NotElliptic(c.to_string())),
    }
}
