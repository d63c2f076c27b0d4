//! `pvc`: solve, profile, reduce and generate partial vertex cover instances.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pvc_core::graph::{is_forest, is_tree};
use pvc_core::lagrangian::{solve_pvc_mnc_traced, SearchOutcome};
use pvc_core::oracle::DEFAULT_MAX_N;
use pvc_core::reduction::{reduce_clique_to_pvcb, verify_reduction, write_artifact};
use pvc_core::treedp::{solve_pvc_tree, tree_profile};
use pvc_core::{
    bipartition, check_mnc, fixture_mnc_counterexample, fixture_weighted_spider,
    gen_random_bipartite, gen_random_tree, parse_graph, write_graph, Error, Graph, Oracle,
    PvcInstance,
};
use serde_json::{Map, Value};

#[derive(Parser)]
#[command(name = "pvc", version, about = "Exact partial vertex cover toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Smallest vertex set covering at least t edges.
    Solve(SolveArgs),
    /// Coverage profile OPT(k) and its concavity verdict.
    Profile(ProfileArgs),
    /// Build the bipartite partial-cover instance for a clique question.
    Reduce(ReduceArgs),
    /// Write a fixture or a seeded random graph.
    Gen(GenArgs),
    /// Decide the clique question and the reduced cover question independently.
    VerifyReduction(VerifyArgs),
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    t: usize,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ProfileArgs {
    #[arg(long)]
    input: PathBuf,
    /// Index by total vertex weight instead of vertex count.
    #[arg(long)]
    weighted: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum, group = "source")]
    fixture: Option<Fixture>,
    /// N SEED
    #[arg(long, num_args = 2, value_names = ["N", "SEED"], group = "source")]
    random_tree: Option<Vec<u64>>,
    /// NL NR MAXDEG SEED
    #[arg(long, num_args = 4, value_names = ["NL", "NR", "MAXDEG", "SEED"], group = "source")]
    random_bipartite: Option<Vec<u64>>,
    /// Chance, in percent, that a left/right pair becomes an edge candidate.
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(0..=100))]
    edge_prob: u32,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Lagrangian,
    TreeDp,
    Brute,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fixture {
    MncCounterexample,
    WeightedSpider,
}

/// Exit codes.
const VERIFY_FALSE: u8 = 1;
const USAGE: u8 = 2;
const INFEASIBLE: u8 = 3;
const MNC_VIOLATION: u8 = 4;
const MISMATCH: u8 = 5;
const GUARD: u8 = 6;

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Infeasible { .. } => INFEASIBLE,
            Error::MncViolation(_) => MNC_VIOLATION,
            Error::NonBipartite(_)
            | Error::InvalidLabeling
            | Error::NotAForest
            | Error::WeightedInput => MISMATCH,
            Error::TooLarge { .. } => GUARD,
            Error::Parse { .. }
            | Error::SelfLoop(_)
            | Error::DuplicateEdge(..)
            | Error::VertexOutOfRange { .. }
            | Error::InvalidWeight { .. }
            | Error::InvalidParameter(_)
            | Error::NotAClique(_) => USAGE,
        };
        Failure::new(code, e.to_string())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

type CliResult<T> = Result<T, Failure>;

/// Ordered key/value report, rendered as `key: value` lines or one JSON
/// object.
#[derive(Default)]
struct Report {
    fields: Vec<(String, Value)>,
    /// Extra text-only lines printed after the fields.
    trailer: Vec<String>,
}

impl Report {
    fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.push((key.to_string(), value.into()));
    }

    fn render(&self, as_json: bool) -> String {
        if as_json {
            let map: Map<String, Value> = self.fields.iter().cloned().collect();
            return format!("{}\n", Value::Object(map));
        }
        let mut out = String::new();
        for (k, v) in &self.fields {
            out += &format!("{k}: {}\n", text_value(v));
        }
        for line in &self.trailer {
            out += line;
            out.push('\n');
        }
        out
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        Value::Array(items) => items.iter().map(text_value).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn read_graph(path: &Path) -> CliResult<Graph> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(USAGE, format!("cannot read {}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| Failure::new(USAGE, format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text)
        .map_err(|e| Failure::new(USAGE, format!("cannot write {}: {e}", path.display())))
}

fn oracle_from_env() -> CliResult<Oracle> {
    match std::env::var("PVC_ORACLE_MAX_N") {
        Ok(raw) => raw
            .trim()
            .parse()
            .map(Oracle::new)
            .map_err(|_| Failure::new(USAGE, format!("PVC_ORACLE_MAX_N: bad value '{raw}'"))),
        Err(_) => Ok(Oracle::new(DEFAULT_MAX_N)),
    }
}

fn class_of(g: &Graph) -> &'static str {
    if is_tree(g) {
        "tree"
    } else if is_forest(g) {
        "forest"
    } else if bipartition(g).is_ok() {
        if g.max_degree() <= 3 {
            "bipartite-max-degree-3"
        } else {
            "bipartite"
        }
    } else {
        "general"
    }
}

fn digest(report: &mut Report, command: &str, g: &Graph) {
    report.set("command", command);
    report.set("n", g.n());
    report.set("m", g.m());
    report.set("class", class_of(g));
}

fn outcome_name(o: SearchOutcome) -> String {
    match o {
        SearchOutcome::Trivial => "trivial".into(),
        SearchOutcome::Exact { j } => format!("exact at j={j}"),
        SearchOutcome::Bracketed { j_low, .. } => format!("bracketed at j={j_low}"),
    }
}

fn cmd_solve(a: &SolveArgs) -> CliResult<u8> {
    let g = read_graph(&a.input)?;
    let oracle = oracle_from_env()?;
    let mut report = Report::default();
    digest(&mut report, "solve", &g);
    report.set("t", a.t);
    let inst = PvcInstance::new(g.clone(), a.t)?;

    let method = match a.method {
        Method::Auto if !g.is_unit_weighted() => return Err(Error::WeightedInput.into()),
        Method::Auto if is_forest(&g) => Method::TreeDp,
        Method::Auto if g.n() <= oracle.max_n => {
            if bipartition(&g).is_ok() {
                Method::Lagrangian
            } else {
                Method::Brute
            }
        }
        Method::Auto => {
            return Err(Failure::new(
                MISMATCH,
                format!(
                    "auto: no exact method for a {} graph with n = {} (> oracle limit {}); \
                     the threshold solver is only exact on concave profiles, which this \
                     class does not guarantee; pass --method lagrangian to run it unverified",
                    class_of(&g),
                    g.n(),
                    oracle.max_n
                ),
            ))
        }
        m => m,
    };

    let solution = match method {
        Method::TreeDp => {
            report.set("method", "tree-dp");
            solve_pvc_tree(&inst)?
        }
        Method::Brute => {
            report.set("method", "brute");
            oracle.solve_pvc_bruteforce(&inst)?
        }
        Method::Lagrangian => {
            let lab = bipartition(&g)?;
            let run = solve_pvc_mnc_traced(&inst, &lab)?;
            report.set("method", "lagrangian");
            report.set("search", outcome_name(run.outcome));
            report.set("relaxations", run.solves);
            if a.method == Method::Auto {
                let check = oracle.solve_pvc_bruteforce(&inst)?;
                if check.size != run.solution.size {
                    return Err(Error::MncViolation(format!(
                        "threshold solver found {} vertices, enumeration found {}",
                        run.solution.size, check.size
                    ))
                    .into());
                }
                report.set("verified", "enumeration");
            }
            run.solution
        }
        Method::Auto => unreachable!("auto resolved above"),
    };
    report.set("size", solution.size);
    report.set("covered", solution.covered);
    report.set("vertices", solution.vertices.clone());

    let text = report.render(a.json);
    match &a.out {
        Some(path) => write_file(path, &text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn cmd_profile(a: &ProfileArgs) -> CliResult<u8> {
    let g = read_graph(&a.input)?;
    let oracle = oracle_from_env()?;
    let profile = if a.weighted {
        oracle.weighted_profile(&g, g.total_weight() as usize)?
    } else if is_forest(&g) && g.is_unit_weighted() {
        tree_profile(&g)?
    } else {
        oracle.opt_profile(&g, g.n())?
    };
    let mnc = check_mnc(&profile);
    let mut report = Report::default();
    digest(&mut report, "profile", &g);
    report.set("weighted", a.weighted);
    if a.json {
        report.set("opt", profile.opt().to_vec());
        report.set("mnc_holds", mnc.holds);
        report.set("first_violation", mnc.first_violation);
    } else {
        for (k, v) in profile.opt().iter().enumerate() {
            report.trailer.push(format!("OPT({k}) = {v}"));
        }
        report.trailer.push(match mnc.first_violation {
            None => "mnc holds".into(),
            Some(k) => format!("mnc violated at k={k}"),
        });
    }
    print!("{}", report.render(a.json));
    Ok(0)
}

fn warning_text() -> &'static str {
    "m' > k(k-1)/2 and k >= 5 do not both hold; a budgeted cover may exist without a clique"
}

fn cmd_reduce(a: &ReduceArgs) -> CliResult<u8> {
    let g = read_graph(&a.input)?;
    let art = reduce_clique_to_pvcb(&g, a.k)?;
    write_file(&a.out, &write_artifact(&art))?;
    let mut report = Report::default();
    digest(&mut report, "reduce", &g);
    report.set("k", a.k);
    report.set("reduced_n", art.bipartite.n());
    report.set("reduced_m", art.bipartite.m());
    report.set("budget", art.budget);
    report.set("target", art.target_t);
    if art.precondition_warning() {
        report.set("warning", warning_text());
    }
    print!("{}", report.render(a.json));
    Ok(0)
}

fn cmd_gen(a: &GenArgs) -> CliResult<u8> {
    let g = if let Some(f) = a.fixture {
        match f {
            Fixture::MncCounterexample => fixture_mnc_counterexample(),
            Fixture::WeightedSpider => fixture_weighted_spider(),
        }
    } else if let Some(v) = &a.random_tree {
        gen_random_tree(v[0] as usize, v[1])?
    } else if let Some(v) = &a.random_bipartite {
        gen_random_bipartite(
            v[0] as usize,
            v[1] as usize,
            v[2] as usize,
            a.edge_prob,
            v[3],
        )?
    } else {
        return Err(Failure::new(
            USAGE,
            "gen needs one of --fixture, --random-tree, --random-bipartite",
        ));
    };
    write_file(&a.out, &write_graph(&g))?;
    println!("wrote {} (n = {}, m = {})", a.out.display(), g.n(), g.m());
    Ok(0)
}

fn cmd_verify(a: &VerifyArgs) -> CliResult<u8> {
    let g = read_graph(&a.input)?;
    let oracle = oracle_from_env()?;
    let v = verify_reduction(&g, a.k, &oracle)?;
    let mut report = Report::default();
    digest(&mut report, "verify-reduction", &g);
    report.set("k", a.k);
    report.set("budget", v.artifact.budget);
    report.set("target", v.artifact.target_t);
    report.set("equivalent", v.equivalent());
    report.set("clique", v.clique.clone());
    report.set("cover", v.cover.clone());
    if v.artifact.precondition_warning() {
        report.set("warning", warning_text());
    }
    print!("{}", report.render(a.json));
    Ok(if v.equivalent() { 0 } else { VERIFY_FALSE })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Profile(a) => cmd_profile(a),
        Command::Reduce(a) => cmd_reduce(a),
        Command::Gen(a) => cmd_gen(a),
        Command::VerifyReduction(a) => cmd_verify(a),
    };
    eprintln!("elapsed_ms: {}", start.elapsed().as_millis());
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}
