//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use resgraph::criteria;
use resgraph::ellseq;
use resgraph::fixtures;
use resgraph::laufer::{self, Classification};
use resgraph::oracle::{self, brute, Outcome, VerifyOptions, WeightedTree};
use resgraph::rat::qfrac;
use resgraph::strata::{self, AnalyticParams, StratumKind};
use resgraph::{Cycle, GraphSpec, ResolutionGraph};

type Check = Result<(), String>;
type Row = (usize, usize, StratumKind, Option<usize>);
type Criterion = (&'static str, fn() -> Check);

/// Extra detail printed after the current criterion's line.
static NOTE: Mutex<String> = Mutex::new(String::new());

fn note(s: String) {
    *NOTE.lock().unwrap() = s;
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Cycle with coefficients `num/den` on the named vertices, zero elsewhere.
fn cycle(g: &ResolutionGraph, den: i64, coeffs: &[(&str, i64)]) -> Cycle {
    let mut c = Cycle::zero(g.n());
    for &(id, x) in coeffs {
        c.0[g.vertex(id).unwrap()] = qfrac(x, den);
    }
    c
}

fn ids(g: &ResolutionGraph, vs: &BTreeSet<usize>) -> Vec<String> {
    vs.iter().map(|&v| g.id(v).to_string()).collect()
}

fn all_but(g: &ResolutionGraph, drop: &[&str]) -> BTreeSet<usize> {
    (0..g.n()).filter(|&v| !drop.contains(&g.id(v))).collect()
}

fn canonical_cycle_values() -> Check {
    let g = fixtures::g_new();
    let b = |xs: [i64; 11]| -> Vec<(String, i64)> {
        let mut out: Vec<(String, i64)> = (1..=10).map(|i| (format!("b{i}"), xs[i - 1])).collect();
        out.push(("u".into(), xs[10]));
        out
    };
    let as_cycle = |xs: Vec<(String, i64)>| {
        let refs: Vec<(&str, i64)> = xs.iter().map(|(s, x)| (s.as_str(), *x)).collect();
        cycle(&g, 3, &refs)
    };
    let zk = as_cycle(b([14, 28, 42, 35, 28, 21, 14, 7, 4, 2, 21]));
    let rep = as_cycle(b([2, 4, 6, 5, 4, 3, 2, 1, 1, 2, 3]));
    ensure(g.canonical_cycle() == &zk, || format!("Z_K = {:?}", g.canonical_cycle()))?;
    let got = laufer::minimal_class_representative(&g, g.canonical_cycle()).map_err(err)?;
    ensure(got == rep, || format!("s_[Z_K] = {got:?}"))?;
    let seq = ellseq::elliptic_sequence(&g).map_err(err)?;
    ensure(seq.pre_term == rep, || "pre-term differs from s_[Z_K]".into())?;
    ensure(seq.length() == 2, || format!("length {}", seq.length()))?;
    ensure(seq.supports[0] == all_but(&g, &["b10"]), || format!("B_0 = {:?}", ids(&g, &seq.supports[0])))?;
    ensure(seq.supports[1] == all_but(&g, &["b9", "b10"]), || format!("B_1 = {:?}", ids(&g, &seq.supports[1])))
}

fn app_invariants() -> Check {
    let g = fixtures::g_app();
    ensure(laufer::classify(&g) == Classification::Elliptic, || "not elliptic".into())?;
    let zmin = laufer::fundamental_cycle(&g);
    let a9 = g.vertex("a9").unwrap();
    let a8 = g.vertex("a8").unwrap();
    ensure(Cycle(g.estar_coordinates(&zmin)) == g.basis(a9), || "Z_min is not E*_a9".into())?;
    ensure(Cycle(g.estar_coordinates(g.canonical_cycle())) == g.basis(a8), || "Z_K is not E*_a8".into())?;
    let seq = ellseq::elliptic_sequence(&g).map_err(err)?;
    ensure(seq.m() == 1, || format!("m = {}", seq.m()))?;
    let c = seq.minimally_elliptic_cycle();
    ensure(g.form(c, c) == qfrac(-1, 1), || format!("(C, C) = {}", g.form(c, c)))?;
    ensure(&zmin + &zmin == g.canonical_cycle() + &g.basis(a9), || "2 Z_min != Z_K + E_a9".into())
}

fn strata_generic_app() -> Check {
    let g = fixtures::g_app();
    let lp = -g.canonical_cycle();
    let r = strata::strata_for(&g, &lp, &AnalyticParams::generic(0)).map_err(err)?;
    for (&k, es) in &r.levels {
        if k >= 1 {
            ensure(es.is_empty(), || format!("level {k} has {} entries", es.len()))?;
        }
    }
    let got: Vec<(Cycle, usize, bool)> =
        r.levels.get(&0).map(|es| es.iter().map(|e| (e.l.clone(), e.dim, e.included())).collect()).unwrap_or_default();
    let want = vec![(Cycle::zero(g.n()), 2, true), (g.basis(g.vertex("a9").unwrap()), 1, true)];
    ensure(got == want, || format!("level 0: {got:?}"))
}

fn strata_custom_noecc() -> Check {
    let g = fixtures::g_noecc();
    let zmin = laufer::fundamental_cycle(&g);
    let lp = -&g.dual_cycle(g.vertex("c9").unwrap());
    let z0 = ellseq::support_fundamental_cycle(&g, &all_but(&g, &["c9"])).map_err(err)?;
    let r = strata::strata_for(&g, &lp, &AnalyticParams::custom(0, vec![zmin.clone()])).map_err(err)?;
    let top: Vec<(Cycle, usize)> = r.included(1).iter().map(|e| (e.l.clone(), e.dim)).collect();
    ensure(top == vec![(Cycle::zero(g.n()), 1)], || format!("k = 1: {top:?}"))?;
    let bottom: Vec<(Cycle, usize)> = r.included(0).iter().map(|e| (e.l.clone(), e.dim)).collect();
    ensure(bottom == vec![(z0, 2)], || format!("k = 0: {bottom:?}"))?;
    let ex = r.excluded(0);
    ensure(ex.len() == 1 && ex[0].l == zmin, || format!("excluded at k = 0: {ex:?}"))?;
    let by = ex[0].excluded_by.unwrap();
    ensure(by.k == 1 && r.entry(by).map(|e| e.l.is_zero()) == Some(true), || format!("excluded by {by:?}"))
}

fn verdicts(g: &ResolutionGraph) -> Result<(bool, bool), String> {
    let seq = ellseq::elliptic_sequence(g).map_err(err)?;
    let ext = criteria::extension_criterion(g, &seq).verdict;
    let mc = criteria::monomial_condition(g).map_err(err)?;
    Ok((ext, mc.verdict))
}

fn criteria_fixtures() -> Check {
    for (name, g, want) in [
        ("g_noecc", fixtures::g_noecc(), false),
        ("g_app", fixtures::g_app(), true),
        ("g_left", fixtures::g_left(), true),
        ("g_right", fixtures::g_right(), false),
    ] {
        let got = verdicts(&g)?;
        ensure(got == (want, want), || format!("{name}: extension {}, monomial {}", got.0, got.1))?;
    }
    let g = fixtures::g_noecc();
    let bad: Vec<String> =
        criteria::monomial_condition(&g).map_err(err)?.violations().map(|b| g.id(b.node).to_string()).collect();
    ensure(bad == ["c8"], || format!("monomial violations at {bad:?}"))?;
    for f in fixtures::all() {
        if laufer::classify(&f.graph) == Classification::Elliptic && f.graph.is_minimal() {
            let w = criteria::supports_wecc(&f.graph).map_err(err)?;
            let e = criteria::supports_ecc(&f.graph).map_err(err)?;
            ensure(w == e, || format!("{}: wecc {w}, ecc {e}", f.name))?;
        }
    }
    Ok(())
}

fn pole_classification() -> Check {
    let g = fixtures::g_pole();
    ensure(matches!(laufer::classify(&g), Classification::Other(_)), || "not classified other".into())?;
    let p = oracle::plumbing(&g).map_err(err)?;
    let (min, _) = brute::brute_min_chi(&p, oracle::DEFAULT_CAP, false).map_err(err)?;
    ensure(min == -1, || format!("min χ = {min}"))
}

fn flag_strata() -> Check {
    let g = fixtures::g_app();
    let seq = ellseq::elliptic_sequence(&g).map_err(err)?;
    let zero = Cycle::zero(g.n());
    let rows = |alpha| -> Result<Vec<Row>, String> {
        Ok(strata::w_strata(&g, &seq, &zero, alpha)
            .map_err(err)?
            .into_iter()
            .map(|w| (w.k, w.dim, w.kind, w.count_at_most))
            .collect())
    };
    let a0 = rows(0)?;
    let want0 = vec![(2, 0, StratumKind::Linear, None), (1, 1, StratumKind::Linear, None), (0, 2, StratumKind::Linear, None)];
    ensure(a0 == want0, || format!("alpha 0: {a0:?}"))?;
    let a1 = rows(1)?;
    let linear: Vec<(usize, usize)> =
        a1.iter().filter(|r| r.2 == StratumKind::Linear).map(|r| (r.0, r.1)).collect();
    ensure(linear == [(1, 0), (0, 1)], || format!("alpha 1 linear: {linear:?}"))?;
    let wandering: Vec<_> = a1.iter().filter(|r| r.2 == StratumKind::Wandering).collect();
    ensure(
        wandering.len() == 1 && wandering[0].0 == 1 && wandering[0].3.is_some_and(|c| c <= 1),
        || format!("alpha 1 wandering: {wandering:?}"),
    )
}

fn flag_consistency() -> Check {
    let mut failures = Vec::new();
    for (name, g) in [("g_app", fixtures::g_app()), ("g_new", fixtures::g_new()), ("g_left", fixtures::g_left())] {
        let seq = ellseq::elliptic_sequence(&g).map_err(err)?;
        let r = strata::strata_for(&g, &Cycle::zero(g.n()), &AnalyticParams::wecc(0)).map_err(err)?;
        for j in 0..=seq.m() + 1 {
            let k = r.pg - j;
            let want = seq.c(j as i64 - 1);
            let got: Vec<(Cycle, usize)> = r.maximal(k).iter().map(|e| (e.l.clone(), e.dim)).collect();
            if got != vec![(want.clone(), j)] {
                let integral = if want.is_integral() { "" } else { " (C_t is not integral; entries are)" };
                failures.push(format!("{name} level {k}: maximal {got:?}, expected C_{} dim {j}{integral}", j as i64 - 1));
                break;
            }
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))
}

fn tree_graph(t: &WeightedTree) -> ResolutionGraph {
    t.to_graph().expect("enumerated trees are negative definite")
}

fn random_tree(rng: &mut StdRng) -> Option<ResolutionGraph> {
    let n = rng.gen_range(1..=8);
    let mut spec = GraphSpec::new();
    let id = |v: usize| format!("r{v}");
    for v in 0..n {
        let e = if rng.gen_bool(0.1) { -1 } else { rng.gen_range(-5..=-2) };
        spec = spec.vertex(&id(v), e);
    }
    for v in 1..n {
        let p = rng.gen_range(0..v);
        spec = spec.edge(&id(p), &id(v));
    }
    ResolutionGraph::build(&spec).ok()
}

/// Runs `work` over `items` on every core and collects the error strings.
fn parallel<T: Sync>(items: &[T], work: impl Fn(&T) -> Vec<String> + Sync) -> Vec<String> {
    let next = AtomicUsize::new(0);
    let out = Mutex::new(Vec::new());
    let threads = std::thread::available_parallelism().map_or(4, |n| n.get());
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(item) = items.get(i) else { break };
                let errs = work(item);
                out.lock().unwrap().extend(errs);
            });
        }
    });
    out.into_inner().unwrap()
}

fn oracle_equivalence() -> Check {
    let mut graphs: Vec<ResolutionGraph> =
        oracle::enumerate_trees(6, &[-2, -3]).map_err(err)?.iter().map(tree_graph).collect();
    let exhaustive = graphs.len();
    let mut rng = StdRng::seed_from_u64(0x5eed_2024);
    let mut random = 0;
    while random < 200 {
        if let Some(g) = random_tree(&mut rng) {
            graphs.push(g);
            random += 1;
        }
    }
    let opts = VerifyOptions::default();
    let passed = AtomicUsize::new(0);
    let problems = parallel(&graphs, |g| match oracle::verify(g, &opts) {
        Err(e) => vec![format!("{:?}: {e}", g.eulers())],
        Ok(r) => {
            passed.fetch_add(r.checks.iter().filter(|c| c.outcome == Outcome::Pass).count(), Ordering::Relaxed);
            r
            .checks
            .iter()
            .filter_map(|c| match &c.outcome {
                Outcome::Pass => None,
                Outcome::Fail(m) => Some(format!("{:?} {}: {m}", g.eulers(), c.name)),
                Outcome::Skipped(m) => Some(format!("{:?} {} skipped: {m}", g.eulers(), c.name)),
            })
            .collect()
        }
    });
    note(format!("{exhaustive} enumerated and 200 random graphs, {} checks", passed.into_inner()));
    ensure(problems.is_empty(), || format!("{} problems over {exhaustive}+200 graphs, first: {}", problems.len(), problems[0]))
}

fn criteria_mass_check() -> Check {
    let trees = oracle::enumerate_trees(7, &[-4, -3, -2]).map_err(err)?;
    let elliptic: Vec<ResolutionGraph> =
        trees.iter().map(tree_graph).filter(|g| laufer::classify(g) == Classification::Elliptic).collect();
    ensure(!elliptic.is_empty(), || "no elliptic trees enumerated".into())?;
    note(format!("{} elliptic trees out of {}", elliptic.len(), trees.len()));
    let problems = parallel(&elliptic, |g| match verdicts(g) {
        Ok((a, b)) if a == b => Vec::new(),
        Ok((a, b)) => vec![format!("{:?}: extension {a}, monomial {b}", g.eulers())],
        Err(e) => vec![format!("{:?}: {e}", g.eulers())],
    });
    ensure(problems.is_empty(), || format!("{} exceptions, first: {}", problems.len(), problems[0]))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("canonical cycle and elliptic sequence on g_new", canonical_cycle_values),
        ("g_app invariants", app_invariants),
        ("generic strata on g_app", strata_generic_app),
        ("custom strata on g_noecc", strata_custom_noecc),
        ("criteria verdicts on fixtures", criteria_fixtures),
        ("g_pole classification", pole_classification),
        ("flag strata on g_app", flag_strata),
        ("wecc strata maxima match C_t", flag_consistency),
        ("oracle equivalence", oracle_equivalence),
        ("criteria agree on elliptic trees", criteria_mass_check),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = check();
        let secs = t.elapsed().as_secs_f64();
        let extra = std::mem::take(&mut *NOTE.lock().unwrap());
        match r {
            Ok(()) if extra.is_empty() => println!("criterion {:>2} PASS {name} ({secs:.1}s)", i + 1),
            Ok(()) => println!("criterion {:>2} PASS {name} ({secs:.1}s): {extra}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.1}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
