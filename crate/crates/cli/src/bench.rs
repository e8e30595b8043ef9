//! Benchmark harness: per config, generate ten instances with derived
//! seeds, run every selected algorithm `reps` times on each (after one
//! excluded warm-up run), and emit one CSV record per run plus mean and
//! standard-deviation rows per (config, algorithm).
//!
//! Timing covers only the algorithm call; generation and I/O stay outside.

use pdag_core::extension::ExtensionAlgo;
use pdag_core::generators::{generate, instance_seeds, GenError, GeneratorConfig};
use pdag_core::graph::Pdag;
use pdag_core::orientation::{
    direct_meek, direct_meek_naive, maximal_orientation_ce, PhaseTimings,
};
use std::time::{Duration, Instant};

pub const INSTANCES_PER_CONFIG: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchAlgo {
    Ext(ExtensionAlgo),
    /// Full-rescan Meek baseline.
    DirectMeek,
    /// Worklist variant of the direct closure.
    DirectMeekWl,
    CeMeek(ExtensionAlgo),
}

impl BenchAlgo {
    pub fn name(self) -> String {
        match self {
            BenchAlgo::Ext(x) => x.name().to_string(),
            BenchAlgo::DirectMeek => "direct-meek".into(),
            BenchAlgo::DirectMeekWl => "direct-meek-wl".into(),
            BenchAlgo::CeMeek(x) => format!("ce-meek-{}", x.name()),
        }
    }
}

impl std::str::FromStr for BenchAlgo {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dt" | "dth" | "dtic" => Ok(BenchAlgo::Ext(s.parse()?)),
            "direct-meek" => Ok(BenchAlgo::DirectMeek),
            "direct-meek-wl" => Ok(BenchAlgo::DirectMeekWl),
            "ce-meek" | "ce-meek-dtic" => Ok(BenchAlgo::CeMeek(ExtensionAlgo::Dtic)),
            "ce-meek-dt" => Ok(BenchAlgo::CeMeek(ExtensionAlgo::Dt)),
            "ce-meek-dth" => Ok(BenchAlgo::CeMeek(ExtensionAlgo::Dth)),
            other => Err(format!("unknown benchmark algorithm `{other}`")),
        }
    }
}

/// One timed run.
#[derive(Debug, Clone)]
pub struct BenchRecord {
    pub algo: BenchAlgo,
    pub n: usize,
    pub m: usize,
    pub style: String,
    pub seed: u64,
    pub instance: usize,
    pub rep: usize,
    pub wall: Duration,
    /// Present iff the algorithm is the ce-meek pipeline.
    pub phases: Option<PhaseTimings>,
    pub adj_tests: u64,
    pub ps_checks: u64,
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("generation failed: {0}")]
    Gen(#[from] GenError),
    #[error("instance unexpectedly not extendable (algorithm {0})")]
    NotExtendable(String),
    #[error("orientation failed: {0}")]
    Orient(#[from] pdag_core::orientation::OrientError),
}

fn run_once(g: &Pdag, algo: BenchAlgo) -> Result<(Duration, Option<PhaseTimings>), BenchError> {
    g.reset_counters();
    match algo {
        BenchAlgo::Ext(x) => {
            let start = Instant::now();
            let outcome = x.run(g);
            let wall = start.elapsed();
            if !outcome.is_extended() {
                return Err(BenchError::NotExtendable(algo.name()));
            }
            Ok((wall, None))
        }
        BenchAlgo::DirectMeek => {
            let start = Instant::now();
            direct_meek_naive(g)?;
            Ok((start.elapsed(), None))
        }
        BenchAlgo::DirectMeekWl => {
            let start = Instant::now();
            direct_meek(g)?;
            Ok((start.elapsed(), None))
        }
        BenchAlgo::CeMeek(x) => {
            let start = Instant::now();
            let (_, phases) = maximal_orientation_ce(g, x)?;
            Ok((start.elapsed(), Some(phases)))
        }
    }
}

/// All timed runs for one (config, instance, algorithm) cell, sequential on
/// the calling worker. The warm-up run is discarded.
fn run_cell(
    cfg: &GeneratorConfig,
    instance: usize,
    instance_seed: u64,
    graph: &Pdag,
    algo: BenchAlgo,
    reps: usize,
) -> Result<Vec<BenchRecord>, BenchError> {
    run_once(graph, algo)?; // warm-up
    let mut out = Vec::with_capacity(reps);
    for rep in 0..reps {
        let (wall, phases) = run_once(graph, algo)?;
        let counters = graph.counters();
        out.push(BenchRecord {
            algo,
            n: cfg.n,
            m: graph.edge_count(),
            style: cfg.style.to_string(),
            seed: instance_seed,
            instance,
            rep,
            wall,
            phases,
            adj_tests: counters.adj_tests,
            ps_checks: counters.ps_checks,
        });
    }
    Ok(out)
}

/// Runs the whole suite and returns records grouped per (config, algorithm),
/// in suite order. `jobs` bounds the worker pool; runs within a cell stay
/// sequential on one worker.
pub fn run_suite(
    configs: &[GeneratorConfig],
    algos: &[BenchAlgo],
    reps: usize,
    jobs: usize,
) -> Result<Vec<Vec<BenchRecord>>, BenchError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("worker pool");

    // generation is untimed and up front
    let mut instances: Vec<Vec<(u64, Pdag)>> = Vec::with_capacity(configs.len());
    for cfg in configs {
        let seeds = instance_seeds(cfg.seed, INSTANCES_PER_CONFIG);
        let mut per_cfg = Vec::with_capacity(seeds.len());
        for s in seeds {
            let g = generate(&GeneratorConfig { seed: s, ..*cfg })?;
            per_cfg.push((s, g));
        }
        instances.push(per_cfg);
    }

    let mut cells: Vec<(usize, usize, usize)> = Vec::new();
    for (ci, _) in configs.iter().enumerate() {
        for (ai, _) in algos.iter().enumerate() {
            for ii in 0..INSTANCES_PER_CONFIG {
                cells.push((ci, ai, ii));
            }
        }
    }

    use rayon::prelude::*;
    let results: Vec<Result<Vec<BenchRecord>, BenchError>> = pool.install(|| {
        cells
            .par_iter()
            .map(|&(ci, ai, ii)| {
                let (seed, graph) = &instances[ci][ii];
                // independent copy per cell keeps counters thread-local
                let local = graph.clone();
                run_cell(&configs[ci], ii, *seed, &local, algos[ai], reps)
            })
            .collect()
    });

    let mut groups: Vec<Vec<BenchRecord>> = vec![Vec::new(); configs.len() * algos.len()];
    for (cell, result) in cells.iter().zip(results) {
        let (ci, ai, _) = *cell;
        groups[ci * algos.len() + ai].extend(result?);
    }
    Ok(groups)
}

pub const CSV_HEADER: &str =
    "algo,n,m,style,seed,instance,rep,wall_us,phase1_us,phase2_us,phase3_us,adj_tests,ps_checks";

fn phase_fields(phases: &Option<PhaseTimings>) -> (String, String, String) {
    match phases {
        Some(p) => (
            p.extension_us().to_string(),
            p.to_cpdag_us().to_string(),
            p.meek_us().to_string(),
        ),
        None => (String::new(), String::new(), String::new()),
    }
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = if values.len() > 1 {
        values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    (mean, var.sqrt())
}

fn stat_field(values: &[f64]) -> Option<(f64, f64)> {
    if values.is_empty() {
        None
    } else {
        Some(mean_std(values))
    }
}

/// Per-run rows followed by `mean` and `std` aggregate rows for the group.
pub fn write_csv(groups: &[Vec<BenchRecord>]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for group in groups {
        if group.is_empty() {
            continue;
        }
        for r in group {
            let (p1, p2, p3) = phase_fields(&r.phases);
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                r.algo.name(),
                r.n,
                r.m,
                r.style,
                r.seed,
                r.instance,
                r.rep,
                r.wall.as_micros(),
                p1,
                p2,
                p3,
                r.adj_tests,
                r.ps_checks
            ));
        }
        let walls: Vec<f64> = group.iter().map(|r| r.wall.as_micros() as f64).collect();
        let phase_vals = |f: fn(&PhaseTimings) -> u64| -> Vec<f64> {
            group
                .iter()
                .filter_map(|r| r.phases.as_ref().map(|p| f(p) as f64))
                .collect()
        };
        let adj: Vec<f64> = group.iter().map(|r| r.adj_tests as f64).collect();
        let ps: Vec<f64> = group.iter().map(|r| r.ps_checks as f64).collect();
        let p1 = phase_vals(PhaseTimings::extension_us);
        let p2 = phase_vals(PhaseTimings::to_cpdag_us);
        let p3 = phase_vals(PhaseTimings::meek_us);
        let first = &group[0];
        for (which, pick) in [("mean", 0usize), ("std", 1usize)] {
            let sel = |pair: Option<(f64, f64)>| -> String {
                match pair {
                    Some(ms) => format!("{:.2}", if pick == 0 { ms.0 } else { ms.1 }),
                    None => String::new(),
                }
            };
            out.push_str(&format!(
                "{},{},{},{},{},all,{},{},{},{},{},{},{}\n",
                first.algo.name(),
                first.n,
                first.m,
                first.style,
                first.seed,
                which,
                sel(stat_field(&walls)),
                sel(stat_field(&p1)),
                sel(stat_field(&p2)),
                sel(stat_field(&p3)),
                sel(stat_field(&adj)),
                sel(stat_field(&ps))
            ));
        }
    }
    out
}
