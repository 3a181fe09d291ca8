//! Elliptic sequences and the cycles built from them.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::laufer::{self, fundamental_cycle};
use crate::lattice::{Cycle, ResolutionGraph};
use crate::rat::{self, Q};

pub const DEFAULT_SUBSUPPORT_CAP: usize = 14;

#[derive(Debug, Clone, PartialEq)]
pub struct EllipticSequence {
    /// `s_[Z_K]`; zero exactly in the numerically Gorenstein case.
    pub pre_term: Cycle,
    /// `B_0 ⊋ B_1 ⊋ ... ⊋ B_m`.
    pub supports: Vec<BTreeSet<usize>>,
    /// Fundamental cycle of each support, zero-extended.
    pub cycles: Vec<Cycle>,
}

impl EllipticSequence {
    pub fn m(&self) -> usize {
        self.supports.len() - 1
    }

    pub fn length(&self) -> usize {
        self.supports.len()
    }

    /// `B_j` for `-1 <= j <= m + 1`; `B_{-1}` is everything, `B_{m+1}` is empty.
    pub fn support(&self, g: &ResolutionGraph, j: i64) -> BTreeSet<usize> {
        if j < 0 {
            (0..g.n()).collect()
        } else if j as usize >= self.supports.len() {
            BTreeSet::new()
        } else {
            self.supports[j as usize].clone()
        }
    }

    /// `Z_{B_j}` for `-1 <= j <= m`, with `Z_{B_{-1}}` the pre-term.
    pub fn cycle(&self, j: i64) -> &Cycle {
        if j < 0 {
            &self.pre_term
        } else {
            &self.cycles[j as usize]
        }
    }

    /// `(C_t, C'_t)` for `-1 <= t <= m`.
    pub fn partial_sums(&self, t: i64) -> Result<(Cycle, Cycle)> {
        let m = self.m() as i64;
        if t < -1 || t > m {
            return Err(Error::OutOfRange(format!("t = {t} outside [-1, {m}]")));
        }
        let mut c = self.pre_term.clone();
        for j in 0..=t {
            c = &c + &self.cycles[j as usize];
        }
        let mut cp = Cycle::zero(self.pre_term.len());
        for j in t.max(0)..=m {
            cp = &cp + &self.cycles[j as usize];
        }
        Ok((c, cp))
    }

    /// `C_t` for `-1 <= t <= m`.
    pub fn c(&self, t: i64) -> Cycle {
        self.partial_sums(t).expect("index in range").0
    }

    /// `C = Z_{B_m}`.
    pub fn minimally_elliptic_cycle(&self) -> &Cycle {
        self.cycles.last().expect("nonempty sequence")
    }

    /// Largest `j` with `v ∈ B_j`, or -1.
    pub fn depth(&self, v: usize) -> i64 {
        self.supports.iter().rposition(|b| b.contains(&v)).map_or(-1, |j| j as i64)
    }
}

pub fn require_elliptic_minimal(g: &ResolutionGraph) -> Result<()> {
    g.require_minimal()?;
    laufer::require_elliptic(g)
}

/// Fundamental cycle of the full subgraph on `vs`, zero-extended.
pub fn support_fundamental_cycle(g: &ResolutionGraph, vs: &BTreeSet<usize>) -> Result<Cycle> {
    let (sub, map) = g.induced(vs)?;
    Ok(g.embed(&fundamental_cycle(&sub), &map))
}

pub fn elliptic_sequence(g: &ResolutionGraph) -> Result<EllipticSequence> {
    require_elliptic_minimal(g)?;
    let zk = g.canonical_cycle();
    let pre_term = laufer::minimal_class_representative(g, zk)?;
    let mut residual = zk - &pre_term;
    let mut supports = Vec::new();
    let mut cycles = Vec::new();
    while !residual.is_zero() {
        if supports.len() > g.n() {
            return Err(Error::Invariant("elliptic sequence does not terminate".into()));
        }
        let b = residual.support();
        if !g.is_connected_set(&b) {
            return Err(Error::Invariant(format!(
                "support {:?} of the elliptic sequence is disconnected",
                g.set_ids(&b)
            )));
        }
        let z = support_fundamental_cycle(g, &b)?;
        residual = &residual - &z;
        supports.push(b);
        cycles.push(z);
    }
    if supports.is_empty() {
        return Err(Error::Invariant("canonical cycle equals its class representative".into()));
    }
    let seq = EllipticSequence { pre_term, supports, cycles };
    check_invariants(g, &seq)?;
    Ok(seq)
}

fn violation(msg: String) -> Error {
    Error::Invariant(msg)
}

/// Structural properties every elliptic sequence must have.
pub fn check_invariants(g: &ResolutionGraph, seq: &EllipticSequence) -> Result<()> {
    let zero = Q::zero();
    for j in 0..seq.length() {
        let b = &seq.supports[j];
        if j > 0 && !(b.is_subset(&seq.supports[j - 1]) && b.len() < seq.supports[j - 1].len()) {
            return Err(violation(format!("B_{j} is not strictly inside B_{}", j - 1)));
        }
        if !g.is_connected_set(b) {
            return Err(violation(format!("B_{j} is disconnected")));
        }
        if seq.cycles[j].support() != *b {
            return Err(violation(format!("Z_(B_{j}) is not supported on B_{j}")));
        }
        if g.chi(&seq.cycles[j]) != zero {
            return Err(violation(format!("chi(Z_(B_{j})) is not zero")));
        }
    }
    if !seq.pre_term.is_zero() && g.chi(&seq.pre_term) != zero {
        return Err(violation("chi of the pre-term is not zero".into()));
    }
    if seq.pre_term.is_zero() != g.is_numerically_gorenstein() {
        return Err(violation("pre-term vanishes iff numerically Gorenstein fails".into()));
    }
    for j in -1..seq.m() as i64 {
        for &v in &seq.supports[(j + 1) as usize] {
            if g.pair_basis(seq.cycle(j), v) != zero {
                return Err(violation(format!(
                    "(E_{}, Z_(B_{j})) is not zero",
                    g.id(v)
                )));
            }
        }
    }
    let m = seq.m() as i64;
    if seq.c(m) != *g.canonical_cycle() {
        return Err(violation("the cycles do not add up to Z_K".into()));
    }
    for t in -1..=m {
        let (c, cp) = seq.partial_sums(t)?;
        if g.chi(&c) != zero || g.chi(&cp) != zero {
            return Err(violation(format!("chi(C_{t}) or chi(C'_{t}) is not zero")));
        }
    }
    Ok(())
}

pub fn minimally_elliptic_cycle(g: &ResolutionGraph) -> Result<Cycle> {
    Ok(elliptic_sequence(g)?.minimally_elliptic_cycle().clone())
}

/// All antinef `l'` with `[l'] = [Z_K]` and `0 <= l' <= Z_K`, checked against
/// `{C_-1, ..., C_m}`.
pub fn antinef_in_class_below_zk(g: &ResolutionGraph, seq: &EllipticSequence) -> Result<Vec<Cycle>> {
    let found = antinef_below(g, g.canonical_cycle())?;
    let mut expected: Vec<Cycle> = (-1..=seq.m() as i64).map(|t| seq.c(t)).collect();
    expected.sort();
    expected.dedup();
    if found != expected {
        return Err(Error::Invariant(format!(
            "antinef cycles below Z_K in its class: found {}, expected {}",
            found.len(),
            expected.len()
        )));
    }
    Ok(found)
}

/// Antinef cycles `0 <= l <= bound` in the class of `bound`, sorted.
///
/// Searches over E*-coordinates: antinef means `l = sum a_v E*_v` with
/// `a_v >= 0`, and `a_v` is an integer because `(bound, E_v)` is.
pub fn antinef_below(g: &ResolutionGraph, bound: &Cycle) -> Result<Vec<Cycle>> {
    let n = g.n();
    let duals: Vec<Cycle> = (0..n).map(|v| g.dual_cycle(v)).collect();
    let mut out = Vec::new();
    let mut nodes = 0usize;
    fn rec(
        duals: &[Cycle],
        bound: &Cycle,
        v: usize,
        room: Cycle,
        out: &mut Vec<Cycle>,
        nodes: &mut usize,
    ) -> Result<()> {
        *nodes += 1;
        if *nodes > 10_000_000 {
            return Err(Error::ResourceCap("antinef search exceeded 10^7 nodes".into()));
        }
        if v == duals.len() {
            let l = bound - &room;
            if room.is_integral() {
                out.push(l);
            }
            return Ok(());
        }
        let d = &duals[v];
        let max = (0..d.len())
            .map(|w| rat::floor_int(&(&room.0[w] / &d.0[w])))
            .min()
            .expect("nonempty");
        let mut a = num_bigint::BigInt::zero();
        let mut r = room;
        while a <= max {
            rec(duals, bound, v + 1, r.clone(), out, nodes)?;
            r = &r - d;
            a += 1;
        }
        Ok(())
    }
    if !bound.is_effective() {
        return Ok(out);
    }
    rec(&duals, bound, 0, bound.clone(), &mut out, &mut nodes)?;
    out.sort();
    Ok(out)
}

/// Connected vertex sets whose own canonical cycle is integral and nonzero,
/// checked against `{B_0, ..., B_m}`.
pub fn numerically_gorenstein_subsupports(
    g: &ResolutionGraph,
    seq: &EllipticSequence,
    cap: usize,
) -> Result<Vec<BTreeSet<usize>>> {
    if g.n() > cap {
        return Err(Error::ResourceCap(format!(
            "subsupport enumeration refuses {} vertices (cap {cap})",
            g.n()
        )));
    }
    let mut found = Vec::new();
    for mask in 1u64..(1u64 << g.n()) {
        let set: BTreeSet<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
        if !g.is_connected_set(&set) {
            continue;
        }
        let (sub, _) = g.induced(&set)?;
        let zk = sub.canonical_cycle();
        if zk.is_integral() && !zk.is_zero() {
            found.push(set);
        }
    }
    found.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    if found != seq.supports {
        return Err(Error::Invariant(format!(
            "numerically Gorenstein subsupports {:?} differ from the elliptic sequence supports",
            found.iter().map(|s| g.set_ids(s)).collect::<Vec<_>>()
        )));
    }
    Ok(found)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PgRow {
    pub j: usize,
    pub pg: usize,
    /// `(h1(O_{C'_j}), h1(O_{C_j}), h1(O(-C_j)))`, Gorenstein case only.
    pub gorenstein: Option<(usize, usize, usize)>,
}

/// Geometric genera of the contracted germs, `m + 1 - max(j, alpha)`.
pub fn pg_table(seq: &EllipticSequence, alpha: usize) -> Result<Vec<PgRow>> {
    let m = seq.m();
    if alpha > m {
        return Err(Error::OutOfRange(format!("alpha = {alpha} outside [0, {m}]")));
    }
    Ok((0..=m + 1)
        .map(|j| PgRow {
            j,
            pg: if j == m + 1 { 0 } else { m + 1 - j.max(alpha) },
            gorenstein: (alpha == 0 && j <= m).then(|| (m - j + 1, j + 1, m - j)),
        })
        .collect())
}
