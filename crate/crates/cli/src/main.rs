//! `bcast`: broadcast independence solvers, validators and generators.
//!
//! Exit codes: 0 on success, 1 on bad input or usage, 2 when a broadcast
//! fails validation or two computations that must agree do not.

mod report;

use std::fs;
use std::process::ExitCode;
use std::time::Duration;

use bcast_core::generate::{random_tree, Family};
use bcast_core::io::{parse_broadcast, parse_graph, write_broadcast, write_graph, write_role_map};
use bcast_core::oracle::{brute_alpha_b, max_independent_set_until, validate_broadcast, DEFAULT_BRUTE_LIMIT};
use bcast_core::reduction::{build_gadget, target_value};
use bcast_core::rng::SplitMix64;
use bcast_core::tree_dp::{solve, solve_alpha_b_pruned, Mode, RootedTree};
use bcast_core::Graph;
use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use report::RunReport;

#[derive(Debug, Error)]
enum Failure {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Check(String),
}

impl From<bcast_core::Error> for Failure {
    fn from(e: bcast_core::Error) -> Failure {
        match e {
            bcast_core::Error::Internal(_) => Failure::Check(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type CmdResult = Result<String, Failure>;

#[derive(Parser, Debug)]
#[command(name = "bcast", version, about = "Broadcast independence solvers and tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Naive,
    Pruned,
    /// Run both and require equal values.
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Broadcast independence number of a tree by dynamic programming.
    SolveTree {
        graph: String,
        /// Write an optimal broadcast to this file.
        #[arg(long)]
        witness: Option<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Naive)]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        root: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Exact independence or broadcast independence number by search.
    SolveExact {
        graph: String,
        #[arg(long, required_unless_present = "alpha_b")]
        alpha: bool,
        #[arg(long = "alpha-b")]
        alpha_b: bool,
        /// Largest order accepted by the broadcast search.
        #[arg(long, default_value_t = DEFAULT_BRUTE_LIMIT)]
        limit: usize,
    },
    /// Checks that a broadcast is independent.
    Validate { graph: String, broadcast: String },
    /// Builds the degree-4 gadget of a connected cubic graph.
    Reduce {
        graph: String,
        /// Gadget graph output file.
        #[arg(long)]
        out: String,
        /// Role map output file.
        #[arg(long)]
        map: String,
        /// Time allowed for the independence number of the input.
        #[arg(long, default_value_t = 60_000)]
        budget_ms: u64,
    },
    /// Writes a generated graph.
    Gen {
        /// path, star, spider, random_tree, random_connected or cubic.
        kind: String,
        params: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; standard output if absent.
        #[arg(long)]
        out: Option<String>,
    },
    /// Times the tree solver on seeded random trees.
    Bench {
        /// `a..b` (inclusive) or a comma-separated list.
        #[arg(long, default_value = "4..9")]
        sizes: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Naive)]
        mode: ModeArg,
        #[arg(long, default_value_t = 1)]
        repeats: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Cross-check against the brute-force search up to this order.
        #[arg(long, default_value_t = 9)]
        oracle_max: usize,
    },
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let echo = &args[1..];
    let outcome = match cli.command {
        Command::SolveTree { graph, witness, mode, root, threads } => {
            solve_tree(echo, &graph, witness.as_deref(), mode, root, threads)
        }
        Command::SolveExact { graph, alpha, alpha_b, limit } => solve_exact(echo, &graph, alpha, alpha_b, limit),
        Command::Validate { graph, broadcast } => validate(echo, &graph, &broadcast),
        Command::Reduce { graph, out, map, budget_ms } => reduce(echo, &graph, &out, &map, budget_ms),
        Command::Gen { kind, params, seed, out } => gen(echo, &kind, &params, seed, out.as_deref()),
        Command::Bench { sizes, seed, mode, repeats, threads, oracle_max } => {
            bench(&sizes, seed, mode, repeats, threads, oracle_max)
        }
    };
    match outcome {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Check(msg)) => {
            println!("{msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &str) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn write(path: &str, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn graph_from(bytes: &[u8], path: &str) -> Result<Graph, Failure> {
    let text = std::str::from_utf8(bytes).map_err(|_| Failure::Input(format!("{path}: not UTF-8")))?;
    parse_graph(text).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn solve_tree(
    echo: &[String],
    path: &str,
    witness: Option<&str>,
    mode: ModeArg,
    root: usize,
    threads: usize,
) -> CmdResult {
    let mut report = RunReport::new(echo);
    let bytes = read(path)?;
    report.digest_of(&[&bytes]);
    let g = report.time("parse", || graph_from(&bytes, path))?;
    let t = RootedTree::new(&g, root)?;
    let threads = threads.max(1);

    let (value, broadcast) = match mode {
        ModeArg::Pruned if witness.is_none() => (report.time("pruned", || solve_alpha_b_pruned(&t)), None),
        ModeArg::Pruned => {
            let s = report.time("pruned", || solve(&t, Mode::Pruned, threads));
            (s.weight, Some(s.witness))
        }
        ModeArg::Naive | ModeArg::Both => {
            let s = report.time("naive", || solve(&t, Mode::Naive, threads));
            if mode == ModeArg::Both {
                let pruned = report.time("pruned", || solve_alpha_b_pruned(&t));
                if pruned != s.weight {
                    return Err(Failure::Check(format!("modes disagree: naive {} pruned {pruned}", s.weight)));
                }
            }
            (s.weight, Some(s.witness))
        }
    };
    report.value("alpha_b", value);
    if let (Some(out), Some(f)) = (witness, broadcast) {
        let verdict = validate_broadcast(&g, &f)?;
        if !verdict.is_ok() || f.weight() != value {
            return Err(Failure::Check(format!("witness check failed: {:?}", verdict.first())));
        }
        write(out, &write_broadcast(&f))?;
        report.witness(out);
    }
    Ok(report.render())
}

fn solve_exact(echo: &[String], path: &str, alpha: bool, alpha_b: bool, limit: usize) -> CmdResult {
    let mut report = RunReport::new(echo);
    let bytes = read(path)?;
    report.digest_of(&[&bytes]);
    let g = report.time("parse", || graph_from(&bytes, path))?;
    if alpha {
        let (a, _) = report
            .time("alpha", || max_independent_set_until(&g, None))
            .ok_or_else(|| Failure::Check("independence search gave up".into()))?;
        report.value("alpha", a);
    }
    if alpha_b {
        let (b, _) = report.time("alpha_b", || brute_alpha_b(&g, limit))?;
        report.value("alpha_b", b);
    }
    Ok(report.render())
}

fn validate(echo: &[String], graph_path: &str, broadcast_path: &str) -> CmdResult {
    let mut report = RunReport::new(echo);
    let gbytes = read(graph_path)?;
    let fbytes = read(broadcast_path)?;
    report.digest_of(&[&gbytes, &fbytes]);
    let g = graph_from(&gbytes, graph_path)?;
    let ftext =
        std::str::from_utf8(&fbytes).map_err(|_| Failure::Input(format!("{broadcast_path}: not UTF-8")))?;
    let f = parse_broadcast(ftext, g.vertex_count()).map_err(|e| Failure::Input(format!("{broadcast_path}: {e}")))?;
    let verdict = report.time("validate", || validate_broadcast(&g, &f))?;
    match verdict.first() {
        None => {
            report.value("valid weight", f.weight());
            Ok(report.render())
        }
        Some(v) => Err(Failure::Check(format!("invalid {v}"))),
    }
}

fn reduce(echo: &[String], path: &str, out: &str, map: &str, budget_ms: u64) -> CmdResult {
    let mut report = RunReport::new(echo);
    let bytes = read(path)?;
    report.digest_of(&[&bytes]);
    let h = graph_from(&bytes, path)?;
    let gg = report.time("build", || build_gadget(&h))?;
    let s = gg.structure();
    write(out, &write_graph(gg.graph()))?;
    write(map, &write_role_map(&gg))?;
    report.value("order", s.order);
    report.value("endvertices", s.endvertices);
    report.value("max_degree", s.max_degree);
    report.value("connected", s.connected);
    report.value("l_sets", s.l_sizes_ok && s.l_partition_ok);
    let deadline = std::time::Instant::now() + Duration::from_millis(budget_ms);
    match report.time("alpha", || max_independent_set_until(&h, Some(deadline))) {
        Some((a, _)) => report.value("target", target_value(&h, a)?),
        None => report.value("target", "unknown"),
    }
    Ok(report.render())
}

fn gen(echo: &[String], kind: &str, params: &[String], seed: u64, out: Option<&str>) -> CmdResult {
    let params: Vec<&str> = params.iter().map(String::as_str).collect();
    let family = Family::parse(kind, &params)?;
    let g = family.generate(seed)?;
    let text = write_graph(&g);
    match out {
        None => Ok(text),
        Some(path) => {
            write(path, &text)?;
            let mut report = RunReport::new(echo);
            report.seed(seed);
            report.value("family", &family);
            report.value("order", g.vertex_count());
            report.value("size", g.edge_count());
            Ok(report.render())
        }
    }
}

fn parse_sizes(text: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::Input(format!("bad size list `{text}`"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let sizes = match text.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(bad());
            }
            (a..=b).collect()
        }
        None => text.split(',').map(num).collect::<Result<Vec<_>, _>>()?,
    };
    if sizes.contains(&0) {
        return Err(Failure::Input("sizes must be positive".into()));
    }
    Ok(sizes)
}

/// The tree timed for size `n`: independent of the other sizes listed.
fn bench_tree(seed: u64, n: usize) -> Result<Graph, Failure> {
    Ok(random_tree(n, &mut SplitMix64::new(seed.wrapping_add(n as u64)))?)
}

fn bench(sizes: &str, seed: u64, mode: ModeArg, repeats: usize, threads: usize, oracle_max: usize) -> CmdResult {
    let sizes = parse_sizes(sizes)?;
    let modes: &[ModeArg] = match mode {
        ModeArg::Both => &[ModeArg::Naive, ModeArg::Pruned],
        _ => std::slice::from_ref(&mode),
    };
    let threads = threads.max(1);
    let mut out = String::from("n\tmode\tvalue\tms\n");
    for &n in &sizes {
        let g = bench_tree(seed, n)?;
        let t = RootedTree::new(&g, 0)?;
        let oracle = if n <= oracle_max { Some(brute_alpha_b(&g, oracle_max.max(n))?.0) } else { None };
        for &m in modes {
            for _ in 0..repeats {
                let start = std::time::Instant::now();
                let value = match m {
                    ModeArg::Pruned => solve_alpha_b_pruned(&t),
                    _ => solve(&t, Mode::Naive, threads).weight,
                };
                let ms = start.elapsed().as_secs_f64() * 1e3;
                let name = if m == ModeArg::Pruned { "pruned" } else { "naive" };
                out.push_str(&format!("{n}\t{name}\t{value}\t{ms:.3}\n"));
                if let Some(want) = oracle {
                    if value != want {
                        print!("{out}");
                        return Err(Failure::Check(format!("n {n} {name}: value {value} but oracle {want}")));
                    }
                }
            }
        }
        match oracle {
            Some(v) => eprintln!("n {n}: oracle {v} agrees"),
            None => eprintln!("n {n}: no oracle check"),
        }
    }
    Ok(out)
}
