//! The `resgraph` command line tool.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::criteria;
use crate::ellseq;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::io::{self, LoadedGraph};
use crate::laufer::{self, Classification};
use crate::lattice::Cycle;
use crate::oracle::{self, VerifyOptions};
use crate::report;
use crate::strata::{self, AnalyticParams, Mode};

/// Environment variable overriding the search caps.
pub const CAP_ENV: &str = "RESGRAPH_MAX_VOLUME";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "resgraph", version, about = "Lattice invariants of resolution graphs")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct GraphArg {
    /// Graph file, `-` for standard input, or `fixture:NAME`.
    pub graph: String,
}

#[derive(Debug, clap::Args)]
pub struct LprimeArg {
    /// Cycle whose negative is l': 0, zk, zmin, a stored name,
    /// estar:ID=Q,... or cycle:ID=Q,...
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub lprime: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rational, elliptic or other.
    Classify(GraphArg),
    /// Fundamental and canonical cycles, duals, determinant.
    Invariants(GraphArg),
    /// Elliptic sequence, partial sums and geometric genera.
    Ellseq {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = 0)]
        alpha: usize,
    },
    /// Extension criterion and monomial condition.
    Criteria(GraphArg),
    /// Index sets of the strata of a Picard component.
    Strata {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = 0)]
        alpha: usize,
        /// generic, wecc or custom
        #[arg(long)]
        mode: Option<String>,
        /// JSON list of cycles declared trivializable (implies custom mode).
        #[arg(long)]
        trivializable: Option<String>,
        #[command(flatten)]
        lprime: LprimeArg,
    },
    /// Dimensions of the h^1 strata.
    Wstrata {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = 0)]
        alpha: usize,
        #[command(flatten)]
        lprime: LprimeArg,
    },
    /// Cross-check the fast algorithms against brute force.
    OracleVerify {
        #[command(flatten)]
        graph: GraphArg,
        /// Also search the doubled χ box.
        #[arg(long)]
        margin: bool,
    },
    /// Weighted trees up to isomorphism.
    Enumerate {
        #[arg(long, default_value_t = 6)]
        max_vertices: usize,
        #[arg(long, default_value_t = -3, allow_hyphen_values = true)]
        euler_min: i64,
        #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
        euler_max: i64,
        /// Compare the two criteria on every minimal elliptic tree.
        #[arg(long)]
        check: bool,
        /// Print every tree.
        #[arg(long)]
        list: bool,
    },
    /// Print a bundled graph as a graph file.
    Fixture {
        /// Fixture name; omit to list them.
        name: Option<String>,
    },
}

fn cap_override() -> Result<Option<u64>> {
    match std::env::var(CAP_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::Usage(format!("{CAP_ENV} must be a positive integer, got `{s}`"))),
        Err(_) => Ok(None),
    }
}

pub fn load(arg: &str) -> Result<LoadedGraph> {
    if let Some(name) = arg.strip_prefix("fixture:") {
        let f = fixtures::by_name(name).ok_or_else(|| {
            Error::Usage(format!("unknown fixture `{name}`; known: {}", fixtures::NAMES.join(", ")))
        })?;
        return Ok(LoadedGraph {
            name: Some(f.name.to_string()),
            graph: f.graph,
            cycles: BTreeMap::new(),
            warnings: Vec::new(),
        });
    }
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| Error::Usage(format!("reading standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Usage(format!("reading `{arg}`: {e}")))?
    };
    io::parse_graph(&text)
}

fn with_graph(l: &LoadedGraph, body: Value) -> Value {
    let mut out = serde_json::Map::new();
    out.insert("graph".into(), json!(l.name.clone().unwrap_or_else(|| "-".into())));
    if let Value::Object(m) = body {
        out.extend(m);
    }
    Value::Object(out)
}

fn lprime_of(l: &LoadedGraph, arg: &LprimeArg) -> Result<Cycle> {
    Ok(-&io::parse_cycle(&l.graph, &l.cycles, &arg.lprime)?)
}

fn execute(cmd: &Command, warn: &mut dyn Write) -> Result<Value> {
    let cap = cap_override()?;
    let mut loaded = |g: &GraphArg| -> Result<LoadedGraph> {
        let l = load(&g.graph)?;
        for w in &l.warnings {
            let _ = writeln!(warn, "warning: {w}");
        }
        Ok(l)
    };
    match cmd {
        Command::Classify(g) => {
            let l = loaded(g)?;
            Ok(with_graph(&l, report::classify(&l.graph)))
        }
        Command::Invariants(g) => {
            let l = loaded(g)?;
            Ok(with_graph(&l, report::invariants(&l.graph)))
        }
        Command::Ellseq { graph, alpha } => {
            let l = loaded(graph)?;
            let seq = ellseq::elliptic_sequence(&l.graph)?;
            Ok(with_graph(&l, report::ellseq(&l.graph, &seq, *alpha)?))
        }
        Command::Criteria(g) => {
            let l = loaded(g)?;
            Ok(with_graph(&l, report::criteria_for(&l.graph)?))
        }
        Command::Strata { graph, alpha, mode, trivializable, lprime } => {
            let l = loaded(graph)?;
            let g = &l.graph;
            let mode: Mode = match (mode, trivializable) {
                (Some(m), _) => m.parse()?,
                (None, Some(_)) => Mode::Custom,
                (None, None) => Mode::Generic,
            };
            let t = match trivializable {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Error::Usage(format!("reading `{path}`: {e}")))?;
                    io::parse_cycle_list(g, &l.cycles, &text)?
                }
                None => Vec::new(),
            };
            let params = AnalyticParams { alpha: *alpha, mode, trivializable: t };
            let lp = lprime_of(&l, lprime)?;
            let seq = ellseq::elliptic_sequence(g)?;
            let r = strata::strata_index_sets(g, &seq, &lp, &params, cap.unwrap_or(strata::DEFAULT_NODE_CAP))?;
            Ok(with_graph(&l, report::strata(g, &seq, &r)?))
        }
        Command::Wstrata { graph, alpha, lprime } => {
            let l = loaded(graph)?;
            let lp = lprime_of(&l, lprime)?;
            let seq = ellseq::elliptic_sequence(&l.graph)?;
            Ok(with_graph(&l, report::wstrata(&l.graph, &seq, &lp, *alpha)?))
        }
        Command::OracleVerify { graph, margin } => {
            let l = loaded(graph)?;
            let mut opts = VerifyOptions { margin: *margin, ..VerifyOptions::default() };
            if let Some(c) = cap {
                opts.cap = c;
            }
            let r = oracle::verify(&l.graph, &opts)?;
            let v = with_graph(&l, report::verify(&r));
            if let Some(f) = r.failures().next() {
                let _ = writeln!(warn, "{}", report::render_text(&v));
                return Err(Error::Invariant(format!("oracle check `{}` failed", f.name)));
            }
            Ok(v)
        }
        Command::Enumerate { max_vertices, euler_min, euler_max, check, list } => {
            enumerate(*max_vertices, *euler_min, *euler_max, *check, *list)
        }
        Command::Fixture { name } => match name {
            None => Ok(json!({
                "fixtures": fixtures::all().iter().map(|f| json!({"name": f.name, "about": f.about})).collect::<Vec<_>>()
            })),
            Some(n) => {
                let f = fixtures::by_name(n)
                    .ok_or_else(|| Error::Usage(format!("unknown fixture `{n}`; known: {}", fixtures::NAMES.join(", "))))?;
                let file = io::graph_file(&f.graph, Some(f.name), &BTreeMap::new());
                Ok(serde_json::to_value(file).expect("graph files serialize"))
            }
        },
    }
}

/// Largest tree size `enumerate` accepts.
pub const MAX_ENUMERATE_VERTICES: usize = 9;

fn enumerate(max: usize, lo: i64, hi: i64, check: bool, list: bool) -> Result<Value> {
    if lo > hi || hi > -1 {
        return Err(Error::Usage(format!("euler range [{lo}, {hi}] must be nonempty and at most -1")));
    }
    if max > MAX_ENUMERATE_VERTICES {
        return Err(Error::ResourceCap(format!("enumeration above {MAX_ENUMERATE_VERTICES} vertices is refused")));
    }
    let eulers: Vec<i64> = (lo..=hi).rev().collect();
    let trees = oracle::enumerate_trees(max, &eulers)?;
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    let (mut checked, mut supported) = (0usize, 0usize);
    let mut items = Vec::new();
    for t in &trees {
        let g = t.to_graph()?;
        let c = laufer::classify(&g);
        *counts.entry(report::classification_name(&c)).or_default() += 1;
        let mut verdict = None;
        if check && c == Classification::Elliptic && g.is_minimal() {
            let v = criteria::supports(&g)?;
            checked += 1;
            supported += usize::from(v.wecc);
            verdict = Some(v.wecc);
        }
        if list {
            items.push(json!({
                "euler": t.euler,
                "edges": g.edges().iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
                "classification": report::classification_name(&c),
                "criteria": verdict,
            }));
        }
    }
    let mut out = json!({
        "max_vertices": max,
        "euler_range": [lo, hi],
        "trees": trees.len(),
        "by_classification": counts,
    });
    if check {
        out["criteria_checked"] = json!(checked);
        out["criteria_hold"] = json!(supported);
    }
    if list {
        out["list"] = Value::Array(items);
    }
    Ok(out)
}

/// Runs the tool and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(&cli.command, err) {
        Ok(v) => {
            // an exported fixture is a graph file, so it stays loadable
            let export = matches!(cli.command, Command::Fixture { name: Some(_) });
            let text = match cli.format {
                _ if export => io::layout(&v),
                Format::Json => serde_json::to_string_pretty(&v).expect("reports serialize") + "\n",
                Format::Text => report::render_text(&v),
            };
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
