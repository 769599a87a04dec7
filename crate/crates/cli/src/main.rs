//! `pcfcolor`: proper conflict-free list coloring from the command line.
//!
//! Every invocation prints exactly one JSON document on stdout, whose
//! `status` field matches the exit code:
//!
//! | code | meaning                                   |
//! |------|-------------------------------------------|
//! | 0    | success / colorable / check passed        |
//! | 1    | not colorable, obstruction, check failed  |
//! | 2    | input error                               |
//! | 3    | search budget exhausted                   |
//!
//! Human-readable progress goes to stderr.

mod input;

use std::process::ExitCode;

use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use pcf_core::generators::{
    self, degree_plus_one_gadget, enumerate_connected_outerplanar, random_outerplanar, theta_hard_lists, Expected,
    NamedInstance,
};
use pcf_core::graph::Graph;
use pcf_core::kernel::verify;
use pcf_core::oracle::{self, OracleError, RefuterStatus, Status, DEFAULT_NODE_BUDGET};
use pcf_core::solver;
use pcf_core::suites::{self, SuiteReport};
use serde_json::{json, Value};

use input::Inputs;

#[derive(Parser)]
#[command(name = "pcfcolor", version, about = "Proper conflict-free list coloring of outerplanar graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Color a graph from lists and print the verified coloring.
    Color(ColorArgs),
    /// Check a coloring against a graph and lists.
    Verify {
        /// Graph file (graph6 or edge list), or `-` for stdin.
        graph: String,
        /// Lists JSON file, or `-`.
        lists: String,
        /// Coloring JSON file, or `-`.
        coloring: String,
    },
    /// Generate graphs and list assignments.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Run a self-check suite.
    Check(CheckArgs),
    /// Search for a (degree+k)-list assignment admitting no coloring.
    Refute {
        /// Graph file (graph6 or edge list), or `-` for stdin.
        graph: String,
        /// List sizes are `d(v) + k`, with k in {0, 1, 2}.
        k: usize,
        /// Largest color used; defaults to the sum of all list sizes.
        #[arg(long)]
        universe: Option<usize>,
        /// Total search nodes before giving up.
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
}

#[derive(Args)]
struct ColorArgs {
    /// Graph file (graph6 or edge list), or `-` for stdin.
    graph: String,
    /// Lists JSON file (`{"lists": [[1,2,3], …]}`), or `-`.
    lists: String,
    /// Cut every list to its d(v) + 2 smallest colors first.
    #[arg(long)]
    trim: bool,
    /// Include the solver's step-by-step trace.
    #[arg(long, conflicts_with = "oracle")]
    trace: bool,
    /// Use exhaustive search instead of the constructive solver.
    #[arg(long)]
    oracle: bool,
    /// Node budget for `--oracle`.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
}

#[derive(Subcommand)]
enum Family {
    /// The cycle C_L.
    Cycle { length: usize },
    /// Two vertices joined by paths of lengths A, B, C.
    Theta {
        a: usize,
        b: usize,
        c: usize,
        /// Attach the uncolorable (degree+1)-lists (requires A = 1).
        #[arg(long)]
        hard_lists: bool,
    },
    /// Host graph with 4-cycles glued at one vertex, with uncolorable
    /// (degree+1)-lists.
    Gadget {
        /// `k2`, `p3`, or a graph file.
        #[arg(long, default_value = "k2")]
        host: String,
        /// Gluing vertex; defaults to an end of K2 or the middle of P3.
        #[arg(long)]
        vertex: Option<usize>,
    },
    /// Every connected outerplanar graph on N vertices, up to isomorphism.
    Corpus { n: usize },
    /// A random connected outerplanar graph on N vertices.
    Random {
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    C5,
    Theta,
    Gadget,
    Mod3,
    Corpus,
    Paths,
    Ears,
    Oracle,
}

#[derive(Args)]
struct CheckArgs {
    suite: Suite,
    /// Size bound: samples for c5, max vertices for corpus/ears/oracle, max
    /// path length for paths.
    bound: Option<usize>,
    /// Random trials per instance (corpus, paths).
    #[arg(long)]
    trials: Option<usize>,
    /// Required by the randomized suites (c5, corpus, paths).
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
}

/// Exit code and the JSON document to print.
struct Reply {
    code: u8,
    doc: Value,
}

impl Reply {
    fn new(code: u8, status: &str, mut doc: Value) -> Self {
        doc["status"] = json!(status);
        Reply { code, doc }
    }
}

/// Bad input, reported with exit code 2.
#[derive(Debug)]
struct InputError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.into())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{e}");
            return emit(Reply::new(2, "input_error", json!({ "error": e.kind().to_string() })));
        }
    };
    let reply = run(cli.command).unwrap_or_else(|InputError(e)| {
        eprintln!("error: {e:#}");
        Reply::new(2, "input_error", json!({ "error": format!("{e:#}") }))
    });
    emit(reply)
}

fn emit(reply: Reply) -> ExitCode {
    println!("{}", reply.doc);
    ExitCode::from(reply.code)
}

fn run(cmd: Command) -> Result<Reply, InputError> {
    match cmd {
        Command::Color(args) => color(args),
        Command::Verify { graph, lists, coloring } => {
            let mut inputs = Inputs::default();
            let g = inputs.graph(&graph)?;
            let lists = inputs.lists(&lists, &g)?;
            let phi = inputs.coloring(&coloring, &g)?;
            let verdict = verify(&g, &lists, &phi);
            let (code, status) = if verdict.ok { (0, "ok") } else { (1, "invalid") };
            Ok(Reply::new(code, status, serde_json::to_value(&verdict)?))
        }
        Command::Gen { family } => gen(family),
        Command::Check(args) => check(args),
        Command::Refute { graph, k, universe, budget } => {
            if k > 2 {
                return Err(anyhow!("k must be 0, 1 or 2, got {k}").into());
            }
            let g = Inputs::default().graph(&graph)?;
            let res = oracle::refute_choosability(&g, k, universe.unwrap_or(usize::MAX), budget);
            let code = match res.status {
                RefuterStatus::ExhaustedChoosable => 0,
                RefuterStatus::NonChoosable { .. } => 1,
                RefuterStatus::Inconclusive => 3,
            };
            let doc = serde_json::to_value(&res)?;
            let status = doc["status"].as_str().unwrap_or_default().to_owned();
            Ok(Reply::new(code, &status, doc))
        }
    }
}

fn color(args: ColorArgs) -> Result<Reply, InputError> {
    let mut inputs = Inputs::default();
    let g = inputs.graph(&args.graph)?;
    let mut lists = inputs.lists(&args.lists, &g)?;
    if args.trim {
        lists = lists.trimmed(&g, 2);
    }
    let (phi, mut doc) = if args.oracle {
        match oracle::solve_with_budget(&g, &lists, args.budget) {
            Ok(res) => match res.status {
                Status::Sat(phi) => (phi, json!({ "engine": "oracle", "nodes_explored": res.nodes_explored })),
                Status::Unsat => {
                    return Ok(Reply::new(
                        1,
                        "unsat",
                        json!({ "engine": "oracle", "nodes_explored": res.nodes_explored }),
                    ))
                }
            },
            Err(OracleError::Budget { budget }) => {
                return Ok(Reply::new(3, "budget_exhausted", json!({ "engine": "oracle", "budget": budget })))
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        match solver::solve(&g, &lists) {
            Ok(s) => {
                let mut doc = json!({ "engine": "solver" });
                if args.trace {
                    doc["trace"] = serde_json::to_value(&s.trace.steps)?;
                }
                (s.coloring, doc)
            }
            Err(obstruction) => {
                let mut doc = serde_json::to_value(&obstruction)?;
                doc["engine"] = json!("solver");
                return Ok(Reply::new(1, "obstruction", doc));
            }
        }
    };
    // Nothing unverified reaches stdout.
    let verdict = verify(&g, &lists, &phi);
    if !verdict.ok {
        doc["violations"] = serde_json::to_value(&verdict.violations)?;
        return Ok(Reply::new(1, "verification_failed", doc));
    }
    doc["colors"] = json!(phi.as_slice());
    doc["verified"] = json!(true);
    Ok(Reply::new(0, "sat", doc))
}

fn bundle(inst: &NamedInstance) -> Value {
    json!({
        "name": inst.name,
        "graph6": inst.graph.to_graph6(),
        "n": inst.graph.n(),
        "m": inst.graph.m(),
        "lists": inst.lists.as_ref().map(|l| json!({ "lists": l.lists() })),
        "expected": inst.expected.to_string(),
    })
}

fn plain(name: String, graph: Graph) -> NamedInstance {
    NamedInstance { name, graph, lists: None, expected: Expected::Unknown }
}

fn gen(family: Family) -> Result<Reply, InputError> {
    let (name, instances, seed) = match family {
        Family::Cycle { length } => ("cycle", vec![plain(format!("cycle_{length}"), generators::cycle(length)?)], None),
        Family::Theta { a, b, c, hard_lists } => {
            let inst = if hard_lists {
                if a != 1 {
                    bail_input("--hard-lists needs the first path length to be 1")?;
                }
                theta_hard_lists(b, c)?
            } else {
                plain(format!("theta_{a}_{b}_{c}"), generators::theta(a, b, c)?)
            };
            ("theta", vec![inst], None)
        }
        Family::Gadget { host, vertex } => {
            let (h, default_v) = match host.as_str() {
                "k2" => (generators::path(2), 0),
                "p3" => (generators::path(3), 1),
                file => (Inputs::default().graph(file)?, 0),
            };
            ("gadget", vec![degree_plus_one_gadget(&h, vertex.unwrap_or(default_v))?], None)
        }
        Family::Corpus { n } => {
            let graphs = enumerate_connected_outerplanar(n)?;
            let insts = graphs.into_iter().enumerate().map(|(i, g)| plain(format!("corpus_{n}_{i}"), g)).collect();
            ("corpus", insts, None)
        }
        Family::Random { n, seed } => {
            let seed = require_seed(seed)?;
            if n == 0 {
                bail_input("random graphs need at least one vertex")?;
            }
            ("random", vec![plain(format!("random_{n}_{seed}"), random_outerplanar(n, seed))], Some(seed))
        }
    };
    let mut doc = json!({
        "family": name,
        "count": instances.len(),
        "instances": instances.iter().map(bundle).collect::<Vec<_>>(),
    });
    if let Some(seed) = seed {
        doc["seed"] = json!(seed);
    }
    Ok(Reply::new(0, "ok", doc))
}

fn bail_input(msg: &str) -> Result<(), InputError> {
    Err(InputError(anyhow!("{msg}")))
}

fn require_seed(seed: Option<u64>) -> Result<u64, InputError> {
    seed.ok_or_else(|| InputError(anyhow!("--seed is required for randomized commands")))
}

fn check(args: CheckArgs) -> Result<Reply, InputError> {
    let within = |value: usize, lo: usize, hi: usize, what: &str| -> Result<usize, InputError> {
        if (lo..=hi).contains(&value) {
            Ok(value)
        } else {
            Err(InputError(anyhow!("{what} must be in {lo}..={hi}, got {value}")))
        }
    };
    let budget = args.budget;
    let mut seed = None;
    let report: SuiteReport = match args.suite {
        Suite::C5 => {
            let s = *seed.insert(require_seed(args.seed)?);
            suites::c5(args.bound.unwrap_or(10_000), s, budget)
        }
        Suite::Theta => suites::theta(budget),
        Suite::Gadget => suites::gadget(budget),
        Suite::Mod3 => suites::mod3(budget),
        Suite::Corpus => {
            let s = *seed.insert(require_seed(args.seed)?);
            let n = within(args.bound.unwrap_or(8), 2, generators::MAX_ENUM_N, "corpus size")?;
            suites::corpus(n, args.trials.unwrap_or(200), s, n.min(6), budget)
        }
        Suite::Paths => {
            let s = *seed.insert(require_seed(args.seed)?);
            let max_s = within(args.bound.unwrap_or(7), 3, 64, "path length")?;
            suites::paths(max_s, args.trials.unwrap_or(1000), s)
        }
        Suite::Ears => suites::ears(4, within(args.bound.unwrap_or(9), 4, generators::MAX_ENUM_N, "graph size")?),
        Suite::Oracle => suites::oracle_consistency(within(args.bound.unwrap_or(5), 1, 7, "graph size")?, budget),
    };
    eprintln!("{}", report.summary_line());
    let (code, status) = if report.budget_exhausted {
        (3, "budget_exhausted")
    } else if report.passed {
        (0, "pass")
    } else {
        (1, "fail")
    };
    let mut doc = serde_json::to_value(&report)?;
    if let Some(s) = seed {
        doc["seed"] = json!(s);
    }
    Ok(Reply::new(code, status, doc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn reply_carries_status() {
        let r = Reply::new(3, "budget_exhausted", json!({ "budget": 5 }));
        assert_eq!(r.doc["status"], "budget_exhausted");
        assert_eq!(r.code, 3);
    }

    #[test]
    fn seed_is_required() {
        assert!(require_seed(None).is_err());
        assert_eq!(require_seed(Some(4)).unwrap(), 4);
    }
}
