//! `pdag`: generate, extend, orient, check and benchmark partially directed
//! acyclic graphs in the shared edge-list format.
//!
//! Exit codes are a contract: 0 success, 2 negative verdict (no consistent
//! extension / failed check), 64 usage or parse error, 70 internal
//! invariant breach.

mod bench;
mod suite;

use clap::{Parser, Subcommand};
use pdag_core::extension::{brute_force_extend, ExtensionAlgo, ExtensionOutcome};
use pdag_core::generators::{generate, GeneratorConfig, GraphStyle};
use pdag_core::graph::{Dag, Pdag};
use pdag_core::io::{parse_edge_list, write_edge_list};
use pdag_core::orientation::{brute_force_mpdag, direct_meek, maximal_orientation_ce};
use pdag_core::{extend_dtic, is_consistent_extension};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser)]
#[command(
    name = "pdag",
    version,
    about = "Consistent DAG extension and maximal orientation of PDAGs"
)]
struct Cli {
    /// Base RNG seed used by `gen` and as the default for `bench` configs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate an instance and write it as an edge list.
    Gen {
        /// Vertex count.
        #[arg(long)]
        n: usize,
        /// Edge-count rule: 3n, 5n, nlogn, nsqrtn, or an explicit number.
        #[arg(long, default_value = "3n")]
        edges: String,
        /// uniform, scale_free, chordal, or dth_worst_case.
        #[arg(long, default_value = "uniform")]
        style: String,
        /// Chordal subtree-size / worst-case scale parameter.
        #[arg(long)]
        k: Option<usize>,
        /// Inclusive range LO..HI of background arcs for random PDAGs.
        #[arg(long, default_value = "2..5")]
        background_arcs: String,
        /// Output file (stdout when omitted).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Compute a consistent extension; exit 2 if none exists.
    Extend {
        /// dt, dth, dtic, or brute.
        #[arg(long, default_value = "dtic")]
        algo: String,
        input: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Compute the maximal orientation; exit 2 on non-extendable input.
    Orient {
        /// direct (Meek fixpoint) or ce (extension pipeline).
        #[arg(long, default_value = "direct")]
        method: String,
        /// Extension algorithm for the ce pipeline: dt, dth, dtic.
        #[arg(long, default_value = "dtic")]
        extender: String,
        /// Dump rule applications to stderr.
        #[arg(long)]
        trace: bool,
        input: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Validate a result against the brute-force oracles; exit 2 on failure.
    Check {
        /// extension or mpdag.
        kind: String,
        /// The input PDAG.
        g: PathBuf,
        /// The candidate DAG (extension) or PDAG (mpdag).
        d: PathBuf,
    },
    /// Run a benchmark suite and write CSV records.
    Bench {
        #[arg(long)]
        suite: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Comma-separated algorithm ids (dt, dth, dtic, direct-meek,
        /// direct-meek-wl, ce-meek-dt, ce-meek-dth, ce-meek-dtic).
        #[arg(long, default_value = "dt,dth,dtic")]
        algos: String,
        /// Timed repetitions per instance after one warm-up run.
        #[arg(long, default_value_t = 10)]
        reps: usize,
        /// Worker threads; keep 1 for publication-grade timing.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Debug)]
enum CmdError {
    Usage(String),
    Internal(String),
}

impl CmdError {
    fn usage(msg: impl Into<String>) -> Self {
        CmdError::Usage(msg.into())
    }
}

type CmdResult = Result<u8, CmdError>;

fn main() -> ExitCode {
    let outcome = std::panic::catch_unwind(run);
    match outcome {
        Ok(Ok(code)) => ExitCode::from(code),
        Ok(Err(CmdError::Usage(msg))) => {
            eprintln!("pdag: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Ok(Err(CmdError::Internal(msg))) => {
            eprintln!("pdag: internal invariant breach: {msg}");
            ExitCode::from(EXIT_INTERNAL)
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            eprintln!("pdag: internal invariant breach: {msg}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}

fn run() -> CmdResult {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => return Err(CmdError::usage(e.to_string())),
        Err(e) => {
            // --help / --version
            print!("{e}");
            return Ok(EXIT_OK);
        }
    };
    match cli.cmd {
        Cmd::Gen {
            n,
            edges,
            style,
            k,
            background_arcs,
            out,
        } => cmd_gen(cli.seed, n, &edges, &style, k, &background_arcs, out.as_deref()),
        Cmd::Extend { algo, input, out } => cmd_extend(&algo, &input, out.as_deref()),
        Cmd::Orient {
            method,
            extender,
            trace,
            input,
            out,
        } => cmd_orient(&method, &extender, trace, &input, out.as_deref()),
        Cmd::Check { kind, g, d } => cmd_check(&kind, &g, &d),
        Cmd::Bench {
            suite,
            out,
            algos,
            reps,
            jobs,
        } => cmd_bench(cli.seed, &suite, &out, &algos, reps, jobs),
    }
}

fn read_input(path: &Path) -> Result<String, CmdError> {
    std::fs::read_to_string(path)
        .map_err(|e| CmdError::usage(format!("cannot read {}: {e}", path.display())))
}

fn load_pdag(path: &Path) -> Result<Pdag, CmdError> {
    let text = read_input(path)?;
    let g = parse_edge_list(&text)
        .map_err(|e| CmdError::usage(format!("{}: {e}", path.display())))?;
    if let Err(violation) = g.validate() {
        return Err(CmdError::usage(format!(
            "{}: not a valid PDAG: {violation}",
            path.display()
        )));
    }
    Ok(g)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CmdError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CmdError::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_gen(
    seed: u64,
    n: usize,
    edges: &str,
    style: &str,
    k: Option<usize>,
    background_arcs: &str,
    out: Option<&Path>,
) -> CmdResult {
    let edge_rule = edges.parse().map_err(CmdError::Usage)?;
    let style: GraphStyle = style.parse().map_err(CmdError::Usage)?;
    let arcs = suite::parse_arc_range(background_arcs).map_err(CmdError::Usage)?;
    let mut cfg = GeneratorConfig::new(n, edge_rule, style, seed)
        .with_background_arcs(arcs.0, arcs.1);
    if let Some(k) = k {
        cfg = cfg.with_k(k);
    }
    let g = generate(&cfg).map_err(|e| CmdError::usage(e.to_string()))?;
    emit(&write_edge_list(&g, &[cfg.describe()]), out)?;
    Ok(EXIT_OK)
}

fn cmd_extend(algo: &str, input: &Path, out: Option<&Path>) -> CmdResult {
    let g = load_pdag(input)?;
    let outcome = match algo {
        "brute" => brute_force_extend(&g).map_err(|e| CmdError::usage(e.to_string()))?,
        name => {
            let algo: ExtensionAlgo = name.parse().map_err(CmdError::Usage)?;
            algo.run(&g)
        }
    };
    match outcome {
        ExtensionOutcome::Extended {
            dag,
            elimination_order,
        } => {
            let order = elimination_order
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            let header = [format!("elimination order: {order}")];
            emit(&write_edge_list(dag.as_pdag(), &header), out)?;
            Ok(EXIT_OK)
        }
        ExtensionOutcome::NotExtendable => {
            eprintln!("pdag: no consistent extension exists");
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn cmd_orient(
    method: &str,
    extender: &str,
    trace: bool,
    input: &Path,
    out: Option<&Path>,
) -> CmdResult {
    let g = load_pdag(input)?;
    if !extend_dtic(&g).is_extended() {
        eprintln!("pdag: input is not extendable; its maximal orientation is undefined");
        return Ok(EXIT_NEGATIVE);
    }
    let result = match method {
        "direct" => {
            let (m, tr) = direct_meek(&g).map_err(|e| CmdError::Internal(e.to_string()))?;
            if trace {
                eprint!("{}", tr.dump());
            }
            m
        }
        "ce" => {
            let algo: ExtensionAlgo = extender.parse().map_err(CmdError::Usage)?;
            let (m, _) =
                maximal_orientation_ce(&g, algo).map_err(|e| CmdError::Internal(e.to_string()))?;
            m
        }
        other => return Err(CmdError::usage(format!("unknown orient method `{other}`"))),
    };
    emit(&write_edge_list(&result, &[]), out)?;
    Ok(EXIT_OK)
}

fn cmd_check(kind: &str, g_path: &Path, d_path: &Path) -> CmdResult {
    let g = load_pdag(g_path)?;
    match kind {
        "extension" => {
            let d = load_pdag(d_path)?;
            let d = Dag::try_from_pdag(d)
                .map_err(|e| CmdError::usage(format!("{}: {e}", d_path.display())))?;
            if is_consistent_extension(&g, &d) {
                println!("ok: consistent extension");
                Ok(EXIT_OK)
            } else {
                println!("failed: not a consistent extension");
                Ok(EXIT_NEGATIVE)
            }
        }
        "mpdag" => {
            let candidate = load_pdag(d_path)?;
            let oracle = brute_force_mpdag(&g)
                .map_err(|e| CmdError::usage(e.to_string()))?;
            match oracle {
                Some(mpdag) if mpdag == candidate => {
                    println!("ok: maximal orientation matches the enumeration oracle");
                    Ok(EXIT_OK)
                }
                Some(_) => {
                    println!("failed: maximal orientation differs from the enumeration oracle");
                    Ok(EXIT_NEGATIVE)
                }
                None => {
                    println!("failed: input has no consistent extension");
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        other => Err(CmdError::usage(format!("unknown check kind `{other}`"))),
    }
}

fn cmd_bench(
    seed: u64,
    suite_path: &Path,
    out: &Path,
    algos: &str,
    reps: usize,
    jobs: usize,
) -> CmdResult {
    if reps == 0 {
        return Err(CmdError::usage("--reps must be at least 1"));
    }
    let text = read_input(suite_path)?;
    let configs = suite::parse_suite(&text, seed)
        .map_err(|e| CmdError::usage(format!("{}: {e}", suite_path.display())))?;
    if configs.is_empty() {
        return Err(CmdError::usage("suite file contains no configs"));
    }
    let algos: Vec<bench::BenchAlgo> = algos
        .split(',')
        .map(|s| s.trim().parse().map_err(CmdError::Usage))
        .collect::<Result<_, _>>()?;
    let groups = bench::run_suite(&configs, &algos, reps, jobs).map_err(|e| match e {
        bench::BenchError::Gen(g) => CmdError::usage(g.to_string()),
        other => CmdError::Internal(other.to_string()),
    })?;
    let csv = bench::write_csv(&groups);
    std::fs::write(out, csv)
        .map_err(|e| CmdError::usage(format!("cannot write {}: {e}", out.display())))?;
    Ok(EXIT_OK)
}
