//! Brute-force cross-checks for the fast algorithms.
//!
//! [`brute`] depends on nothing but the error type; [`verify`] is the only
//! place where its answers meet the fast code.

pub mod brute;
pub mod trees;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::ellseq;
use crate::error::{Error, Result};
use crate::laufer::{self, Classification};
use crate::lattice::{Cycle, ResolutionGraph};
use crate::rat::{self, Q};

pub use brute::{Plumbing, Scaled, SearchBox, DEFAULT_CAP};
pub use trees::{enumerate_trees, WeightedTree};

fn to_i128(x: &BigInt) -> Result<i128> {
    x.to_i128().ok_or_else(|| Error::ResourceCap(format!("{x} does not fit in i128")))
}

pub fn to_scaled(c: &Cycle) -> Result<Scaled> {
    let den = rat::lcm_denoms(&c.0);
    let num = c
        .0
        .iter()
        .map(|x| to_i128(&(x * Q::from_integer(den.clone())).to_integer()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Scaled::new(num, to_i128(&den)?))
}

pub fn from_scaled(s: &Scaled) -> Cycle {
    Cycle(s.num.iter().map(|&x| Q::new(BigInt::from(x), BigInt::from(s.den))).collect())
}

pub fn from_ints(xs: &[i128]) -> Cycle {
    Cycle(xs.iter().map(|&x| Q::from_integer(BigInt::from(x))).collect())
}

pub fn plumbing(g: &ResolutionGraph) -> Result<Plumbing> {
    Plumbing::new(g.eulers(), g.edges())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        !self.checks.iter().any(|c| matches!(c.outcome, Outcome::Fail(_)))
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| matches!(c.outcome, Outcome::Fail(_)))
    }

    fn record(&mut self, name: &str, r: Result<()>) {
        let outcome = match r {
            Ok(()) => Outcome::Pass,
            Err(Error::ResourceCap(m)) => Outcome::Skipped(m),
            Err(e) => Outcome::Fail(e.to_string()),
        };
        self.checks.push(Check { name: name.into(), outcome });
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Search-node cap for each brute-force search.
    pub cap: u64,
    /// Also search the doubled χ box.
    pub margin: bool,
    pub subsupport_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { cap: DEFAULT_CAP, margin: false, subsupport_cap: ellseq::DEFAULT_SUBSUPPORT_CAP }
    }
}

fn mismatch(what: &str, fast: &Cycle, brute: &Cycle) -> Error {
    Error::Invariant(format!("{what}: fast {fast:?}, brute force {brute:?}"))
}

fn same(what: &str, fast: &Cycle, brute: &Cycle) -> Result<()> {
    if fast == brute {
        Ok(())
    } else {
        Err(mismatch(what, fast, brute))
    }
}

/// Runs every brute-force search against its fast counterpart. A search that
/// hits its cap is reported as skipped.
pub fn verify(g: &ResolutionGraph, opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut report = VerifyReport { checks: Vec::new() };
    let p = match plumbing(g) {
        Ok(p) => p,
        Err(e) => {
            report.record("intersection data", Err(e));
            return Ok(report);
        }
    };
    let n = g.n();

    report.record(
        "intersection data",
        (|| {
            for v in 0..n {
                same(&format!("E*_{}", g.id(v)), &g.dual_cycle(v), &from_scaled(&p.dual(v)?))?;
            }
            same("Z_K", g.canonical_cycle(), &from_scaled(&p.canonical()?))
        })(),
    );

    report.record(
        "antinef lift",
        (|| {
            let mut inputs: Vec<Cycle> = (0..n).map(|v| g.basis(v)).collect();
            inputs.extend((0..n).map(|v| g.dual_cycle(v).frac()));
            for l in &inputs {
                let fast = laufer::lift(g, l)?;
                let slow = from_scaled(&brute::brute_min_antinef(&p, &to_scaled(l)?, opts.cap)?);
                same(&format!("s({l:?})"), &fast, &slow)?;
            }
            Ok(())
        })(),
    );

    report.record(
        "fundamental cycle",
        (|| {
            let slow = from_ints(&brute::brute_fundamental_cycle(&p, opts.cap)?);
            same("Z_min", &laufer::fundamental_cycle(g), &slow)
        })(),
    );

    report.record(
        "class representative",
        (|| {
            let mut inputs = vec![g.canonical_cycle().clone()];
            inputs.extend((0..n).map(|v| g.dual_cycle(v)));
            for l in &inputs {
                let fast = laufer::minimal_class_representative(g, l)?;
                let slow = from_scaled(&brute::brute_min_antinef(&p, &to_scaled(&l.frac())?, opts.cap)?);
                same(&format!("s_[{l:?}]"), &fast, &slow)?;
            }
            Ok(())
        })(),
    );

    let class = laufer::classify(g);
    report.record(
        "classification",
        (|| {
            let (min, _) = brute::brute_min_chi(&p, opts.cap, opts.margin)?;
            let agrees = match class {
                Classification::Rational => min == 1,
                Classification::Elliptic => min == 0,
                Classification::Other(_) => min < 0,
            };
            if agrees {
                Ok(())
            } else {
                Err(Error::Invariant(format!("classified {class} but the minimum of χ is {min}")))
            }
        })(),
    );

    if class != Classification::Elliptic || !g.is_minimal() {
        return Ok(report);
    }
    let seq = match ellseq::elliptic_sequence(g) {
        Ok(s) => s,
        Err(e) => {
            report.record("elliptic sequence", Err(e));
            return Ok(report);
        }
    };

    report.record(
        "minimally elliptic cycle",
        (|| {
            let slow = from_ints(&brute::brute_minimally_elliptic(&p, opts.cap)?);
            same("C", seq.minimally_elliptic_cycle(), &slow)
        })(),
    );

    report.record(
        "antinef cycles below Z_K",
        (|| {
            let mut slow: Vec<Cycle> = brute::brute_lemci(&p, opts.cap)?.iter().map(from_scaled).collect();
            slow.sort();
            let mut fast: Vec<Cycle> = (-1..=seq.m() as i64).map(|t| seq.c(t)).collect();
            fast.sort();
            fast.dedup();
            if fast == slow {
                Ok(())
            } else {
                Err(Error::Invariant(format!("C_t are {fast:?}, brute force found {slow:?}")))
            }
        })(),
    );

    report.record(
        "numerically Gorenstein subsupports",
        (|| {
            let slow = brute::brute_subsupports(&p, opts.subsupport_cap)?;
            let fast: Vec<Vec<usize>> = seq.supports.iter().map(|b| b.iter().copied().collect()).collect();
            if fast == slow {
                Ok(())
            } else {
                Err(Error::Invariant(format!("B_j are {fast:?}, brute force found {slow:?}")))
            }
        })(),
    );

    report.record(
        "sequence identities",
        (|| {
            for j in -1..seq.m() as i64 {
                let z = to_scaled(seq.cycle(j))?;
                let pairs = p.pairings(&z)?;
                for &v in &seq.supports[(j + 1) as usize] {
                    if pairs[v] != 0 {
                        return Err(Error::Invariant(format!("(E_{}, Z_(B_{j})) = {}/{}", g.id(v), pairs[v], z.den)));
                    }
                }
            }
            let zk = p.canonical()?;
            for t in -1..=seq.m() as i64 {
                let (c, cp) = seq.partial_sums(t)?;
                for (name, x) in [("C", c), ("C'", cp)] {
                    let x = to_scaled(&x)?;
                    // χ(x) = -((x, x) - (x, Z_K)) / 2
                    let (a, b) = p.form(&x, &x)?;
                    let (c2, d2) = p.form(&x, &zk)?;
                    if a * d2 != c2 * b {
                        return Err(Error::Invariant(format!("χ({name}_{t}) is not zero")));
                    }
                }
            }
            if seq.c(seq.m() as i64) != from_scaled(&zk) {
                return Err(Error::Invariant("C_m differs from Z_K".into()));
            }
            Ok(())
        })(),
    );

    Ok(report)
}
