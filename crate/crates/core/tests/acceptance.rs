//! Acceptance suite: ten numbered criteria, one test each, printing a
//! PASS/FAIL line per criterion (visible with `--nocapture`).
//!
//! Timing-sensitive criteria share a lock so parallel test threads cannot
//! distort wall-clock measurements; run with `--test-threads=1` for
//! publication-grade numbers.

use pdag_core::extension::{
    brute_force_extend, is_consistent_extension, ExtensionAlgo, ExtensionOutcome,
};
use pdag_core::generators::{
    chordal_graph, dth_worst_case, dth_worst_case_edge_count, instance_seeds, random_pdag,
    EdgeRule, GeneratorConfig, GraphStyle,
};
use pdag_core::graph::{is_chordal, Dag, EdgeKind, Pdag, VertexId};
use pdag_core::orientation::{
    brute_force_cpdag, brute_force_mpdag, dag_to_cpdag, direct_meek, direct_meek_naive,
    maximal_orientation_ce,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use std::sync::{Mutex, PoisonError};
use std::time::{Duration, Instant};

static GATE: Mutex<()> = Mutex::new(());

fn serialized() -> std::sync::MutexGuard<'static, ()> {
    GATE.lock().unwrap_or_else(PoisonError::into_inner)
}

fn report(criterion: u32, name: &str, detail: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    println!(
        "[acceptance] criterion {criterion} ({name}): PASS ({detail}, {:.2}s of {:.0}s budget)",
        elapsed.as_secs_f64(),
        budget.as_secs_f64()
    );
    assert!(
        elapsed < budget,
        "criterion {criterion} exceeded its runtime budget: {elapsed:?} >= {budget:?}"
    );
}

fn v(i: u32) -> VertexId {
    VertexId(i)
}

fn fig1_g() -> Pdag {
    let mut g = Pdag::new(5);
    g.add_undirected(v(0), v(1)).unwrap();
    g.add_undirected(v(0), v(2)).unwrap();
    g.add_arc(v(1), v(3)).unwrap();
    g.add_arc(v(2), v(3)).unwrap();
    g.add_undirected(v(3), v(4)).unwrap();
    g.add_undirected(v(0), v(3)).unwrap();
    g
}

fn fig1_m() -> Pdag {
    let mut m = Pdag::new(5);
    m.add_undirected(v(0), v(1)).unwrap();
    m.add_undirected(v(0), v(2)).unwrap();
    m.add_arc(v(1), v(3)).unwrap();
    m.add_arc(v(2), v(3)).unwrap();
    m.add_arc(v(3), v(4)).unwrap();
    m.add_arc(v(0), v(3)).unwrap();
    m
}

fn fig1_d() -> Dag {
    let mut d = Pdag::new(5);
    d.add_arc(v(0), v(1)).unwrap();
    d.add_arc(v(0), v(2)).unwrap();
    d.add_arc(v(1), v(3)).unwrap();
    d.add_arc(v(2), v(3)).unwrap();
    d.add_arc(v(3), v(4)).unwrap();
    d.add_arc(v(0), v(3)).unwrap();
    Dag::try_from_pdag(d).unwrap()
}

/// Seeded small instance with oracle-safe edge counts.
fn small_instance(seed: u64, max_n: usize) -> Pdag {
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    let n = rng.random_range(2..=max_n);
    let cap = (n * (n - 1) / 2).min(18);
    let m = rng.random_range(0..=cap);
    let cfg = GeneratorConfig::new(n, EdgeRule::Explicit(m), GraphStyle::Uniform, seed);
    random_pdag(&cfg).unwrap()
}

/// Criterion 1: extension verdicts of dt, dth and dtic agree with the
/// brute-force oracle on 1,000 random PDAGs with n <= 8 plus 100 mutated
/// non-extendable variants, and every returned DAG passes the checker.
#[test]
fn criterion_01_extension_oracle_equivalence() {
    let _gate = serialized();
    let started = Instant::now();
    let mut instances: Vec<Pdag> = instance_seeds(0x01, 1000)
        .into_iter()
        .map(|s| small_instance(s, 8))
        .collect();

    // mutate extendable instances by re-orienting undirected edges at
    // random until the oracle certifies non-extendability
    let mut rng = Xoshiro256StarStar::seed_from_u64(0x0bad);
    let mut rejected = 0usize;
    let mut attempts = 0usize;
    while rejected < 100 {
        attempts += 1;
        assert!(attempts < 200_000, "could not assemble non-extendable variants");
        let base = small_instance(rng.random::<u64>(), 8);
        let und = base.undirected_edges();
        if und.is_empty() {
            continue;
        }
        let mut mutated = base.clone();
        let flips = rng.random_range(1..=und.len().min(3));
        for _ in 0..flips {
            let und_now = mutated.undirected_edges();
            if und_now.is_empty() {
                break;
            }
            let (a, b) = und_now[rng.random_range(0..und_now.len())];
            let (from, to) = if rng.random_bool(0.5) { (a, b) } else { (b, a) };
            mutated.orient(from, to).unwrap();
        }
        if mutated.validate().is_err() {
            continue;
        }
        if brute_force_extend(&mutated).unwrap() == ExtensionOutcome::NotExtendable {
            instances.push(mutated);
            rejected += 1;
        }
    }

    let mut disagreements = 0usize;
    for g in &instances {
        let oracle = brute_force_extend(g).unwrap().is_extended();
        for algo in ExtensionAlgo::ALL {
            match algo.run(g) {
                ExtensionOutcome::Extended { dag, .. } => {
                    if !oracle || !is_consistent_extension(g, &dag) {
                        disagreements += 1;
                    }
                }
                ExtensionOutcome::NotExtendable => {
                    if oracle {
                        disagreements += 1;
                    }
                }
            }
        }
    }
    assert_eq!(disagreements, 0, "extension algorithms disagree with the oracle");
    report(
        1,
        "extension oracle equivalence",
        &format!("{} instances, 0 disagreements", instances.len()),
        started,
        Duration::from_secs(60),
    );
}

/// Criterion 2: direct Meek closure equals the brute-force MPDAG on 500
/// seeded extendable PDAGs with n <= 7.
#[test]
fn criterion_02_orientation_oracle_equivalence() {
    let _gate = serialized();
    let started = Instant::now();
    let mut checked = 0usize;
    for seed in instance_seeds(0x02, 500) {
        let g = small_instance(seed, 7);
        let (closed, _) = direct_meek(&g).unwrap();
        let oracle = brute_force_mpdag(&g)
            .unwrap()
            .expect("generator output is extendable");
        assert_eq!(closed, oracle, "MPDAG mismatch for seed {seed}");
        checked += 1;
    }
    report(
        2,
        "maximal orientation oracle equivalence",
        &format!("{checked} instances, exact equality"),
        started,
        Duration::from_secs(120),
    );
}

/// Criterion 3: the extension pipeline equals direct Meek closure exactly,
/// for every extender, on 300 random PDAGs with n in {50, 100, 200} across
/// all four densities.
#[test]
fn criterion_03_pipeline_equivalence() {
    let _gate = serialized();
    let started = Instant::now();
    let rules = [
        EdgeRule::ThreeN,
        EdgeRule::FiveN,
        EdgeRule::NLogN,
        EdgeRule::NSqrtN,
    ];
    let mut checked = 0usize;
    for (ci, &n) in [50usize, 100, 200].iter().enumerate() {
        for (ri, &rule) in rules.iter().enumerate() {
            for (si, seed) in instance_seeds(0x0300 + (ci * 4 + ri) as u64, 25)
                .into_iter()
                .enumerate()
            {
                let cfg = GeneratorConfig::new(n, rule, GraphStyle::Uniform, seed);
                let g = random_pdag(&cfg).unwrap();
                let (direct, _) = direct_meek(&g).unwrap();
                for algo in ExtensionAlgo::ALL {
                    let (ce, _) = maximal_orientation_ce(&g, algo).unwrap();
                    assert_eq!(
                        ce, direct,
                        "pipeline with {algo} diverged (n={n}, rule {ri}, seed index {si})"
                    );
                }
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 300);
    report(
        3,
        "pipeline equivalence",
        "300 instances x 3 extenders, exact equality",
        started,
        Duration::from_secs(120),
    );
}

/// Criterion 4: the worked example regression. The extension of G passes the
/// checker, orientation of G equals M exactly, and DAG-to-CPDAG of D equals
/// M exactly (also against the enumeration oracle).
#[test]
fn criterion_04_fig1_regression() {
    let _gate = serialized();
    let started = Instant::now();
    let g = fig1_g();
    let m = fig1_m();
    let d = fig1_d();

    for algo in ExtensionAlgo::ALL {
        let ExtensionOutcome::Extended { dag, .. } = algo.run(&g) else {
            panic!("G is extendable");
        };
        assert!(is_consistent_extension(&g, &dag));
    }
    let (direct, _) = direct_meek(&g).unwrap();
    assert_eq!(direct, m);
    let (naive, _) = direct_meek_naive(&g).unwrap();
    assert_eq!(naive, m);
    assert_eq!(dag_to_cpdag(&d), m);
    assert_eq!(brute_force_cpdag(&d).unwrap(), m);
    assert!(is_consistent_extension(&g, &d));
    report(
        4,
        "worked-example regression",
        "extension, orientation and CPDAG all exact",
        started,
        Duration::from_secs(60),
    );
}

/// Criterion 5: each Meek rule pattern, embedded in isolation, produces
/// exactly its conclusion; with a required non-adjacency filled in, the
/// closure orients nothing.
#[test]
fn criterion_05_meek_rule_patterns() {
    let _gate = serialized();
    let started = Instant::now();

    let closure = |g: &Pdag| direct_meek(g).unwrap().0;

    // R1: a->b, b--c, a !~ c  =>  b->c and nothing else
    let mut r1 = Pdag::new(3);
    r1.add_arc(v(0), v(1)).unwrap();
    r1.add_undirected(v(1), v(2)).unwrap();
    let mut want = Pdag::new(3);
    want.add_arc(v(0), v(1)).unwrap();
    want.add_arc(v(1), v(2)).unwrap();
    assert_eq!(closure(&r1), want);

    // R2: a->b->c, a--c  =>  a->c
    let mut r2 = Pdag::new(3);
    r2.add_arc(v(0), v(1)).unwrap();
    r2.add_arc(v(1), v(2)).unwrap();
    r2.add_undirected(v(0), v(2)).unwrap();
    let mut want = Pdag::new(3);
    want.add_arc(v(0), v(1)).unwrap();
    want.add_arc(v(1), v(2)).unwrap();
    want.add_arc(v(0), v(2)).unwrap();
    assert_eq!(closure(&r2), want);

    // R3: a--b, a--c, a--d, b->c, d->c, b !~ d  =>  a->c
    let mut r3 = Pdag::new(4);
    r3.add_undirected(v(0), v(1)).unwrap();
    r3.add_undirected(v(0), v(2)).unwrap();
    r3.add_undirected(v(0), v(3)).unwrap();
    r3.add_arc(v(1), v(2)).unwrap();
    r3.add_arc(v(3), v(2)).unwrap();
    let mut want = Pdag::new(4);
    want.add_undirected(v(0), v(1)).unwrap();
    want.add_arc(v(0), v(2)).unwrap();
    want.add_undirected(v(0), v(3)).unwrap();
    want.add_arc(v(1), v(2)).unwrap();
    want.add_arc(v(3), v(2)).unwrap();
    assert_eq!(closure(&r3), want);

    // R4: a--b, a--c, a--d, d->c, c->b, b !~ d  =>  a->b
    let mut r4 = Pdag::new(4);
    r4.add_undirected(v(0), v(1)).unwrap();
    r4.add_undirected(v(0), v(2)).unwrap();
    r4.add_undirected(v(0), v(3)).unwrap();
    r4.add_arc(v(3), v(2)).unwrap();
    r4.add_arc(v(2), v(1)).unwrap();
    let mut want = Pdag::new(4);
    want.add_arc(v(0), v(1)).unwrap();
    want.add_undirected(v(0), v(2)).unwrap();
    want.add_undirected(v(0), v(3)).unwrap();
    want.add_arc(v(3), v(2)).unwrap();
    want.add_arc(v(2), v(1)).unwrap();
    assert_eq!(closure(&r4), want);

    // R1 with a ~ c: nothing orients
    let mut r1_blocked = r1.clone();
    r1_blocked.add_undirected(v(0), v(2)).unwrap();
    assert_eq!(closure(&r1_blocked), r1_blocked);

    // R3 with b ~ d: nothing orients
    let mut r3_blocked = r3.clone();
    r3_blocked.add_undirected(v(1), v(3)).unwrap();
    assert_eq!(closure(&r3_blocked), r3_blocked);

    // R4 with b ~ d: the filled-in edge is an arc d->b, since an undirected
    // d--b would itself be compelled through d->c->b; nothing orients
    let mut r4_blocked = r4.clone();
    r4_blocked.add_arc(v(3), v(1)).unwrap();
    assert_eq!(closure(&r4_blocked), r4_blocked);

    report(
        5,
        "Meek rule unit patterns",
        "4 conclusions exact, 3 blocked variants inert",
        started,
        Duration::from_secs(60),
    );
}

/// Criterion 6: compelled-edge labeling equals the enumeration oracle on
/// 500 random DAGs with at most 10 edges.
#[test]
fn criterion_06_cpdag_oracle_equivalence() {
    let _gate = serialized();
    let started = Instant::now();
    let mut checked = 0usize;
    for seed in instance_seeds(0x06, 500) {
        let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
        let n = rng.random_range(2..=8);
        let cap = (n * (n - 1) / 2).min(10);
        let m = rng.random_range(0..=cap);
        let mut perm: Vec<u32> = (0..n as u32).collect();
        perm.shuffle(&mut rng);
        let mut rank = vec![0usize; n];
        for (i, &x) in perm.iter().enumerate() {
            rank[x as usize] = i;
        }
        let mut chosen = std::collections::BTreeSet::new();
        while chosen.len() < m {
            let a = rng.random_range(0..n as u32);
            let b = rng.random_range(0..n as u32);
            if a != b {
                chosen.insert((a.min(b), a.max(b)));
            }
        }
        let mut g = Pdag::new(n);
        for (a, b) in chosen {
            let (from, to) = if rank[a as usize] < rank[b as usize] {
                (a, b)
            } else {
                (b, a)
            };
            g.add_arc(v(from), v(to)).unwrap();
        }
        let d = Dag::try_from_pdag(g).unwrap();
        assert_eq!(
            dag_to_cpdag(&d),
            brute_force_cpdag(&d).unwrap(),
            "CPDAG mismatch for seed {seed}"
        );
        checked += 1;
    }
    report(
        6,
        "DAG-to-CPDAG oracle equivalence",
        &format!("{checked} DAGs, exact equality"),
        started,
        Duration::from_secs(60),
    );
}

fn fitted_exponent(points: &[(f64, f64)]) -> f64 {
    let k = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (lx, ly) = (x.ln(), y.ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (k * sxy - sx * sy) / (k * sxx - sx * sx)
}

/// Criterion 7: on the adversarial family, instrumented adjacency-test
/// counts grow with fitted exponent >= 3.5 in n for dth and <= 3.2 for dtic
/// (log-log regression over k in {8, 16, 32, 64}).
#[test]
fn criterion_07_adversarial_scaling() {
    let _gate = serialized();
    let started = Instant::now();
    let mut dth_points = Vec::new();
    let mut dtic_points = Vec::new();
    for k in [8usize, 16, 32, 64] {
        let g = dth_worst_case(k);
        let n = g.n() as f64;

        g.reset_counters();
        assert!(pdag_core::extend_dth(&g).is_extended());
        dth_points.push((n, g.counters().adj_tests as f64));

        g.reset_counters();
        assert!(pdag_core::extend_dtic(&g).is_extended());
        dtic_points.push((n, g.counters().adj_tests as f64));
    }
    let dth_exp = fitted_exponent(&dth_points);
    let dtic_exp = fitted_exponent(&dtic_points);
    assert!(
        dth_exp >= 3.5,
        "dth exponent {dth_exp:.3} below 3.5; counts {dth_points:?}"
    );
    assert!(
        dtic_exp <= 3.2,
        "dtic exponent {dtic_exp:.3} above 3.2; counts {dtic_points:?}"
    );
    report(
        7,
        "adversarial family scaling",
        &format!("dth exponent {dth_exp:.2} >= 3.5, dtic exponent {dtic_exp:.2} <= 3.2"),
        started,
        Duration::from_secs(120),
    );
}

/// Criterion 8: on five dense instances (n = 1024, m = n * ceil(sqrt n)),
/// the extension pipeline runs in at most half the time of the naive
/// rule-rescan baseline.
#[test]
fn criterion_08_pipeline_vs_naive_baseline() {
    let _gate = serialized();
    let started = Instant::now();
    let mut ce_total = Duration::ZERO;
    let mut naive_total = Duration::ZERO;
    for seed in instance_seeds(0x08, 5) {
        let cfg = GeneratorConfig::new(1024, EdgeRule::NSqrtN, GraphStyle::Uniform, seed);
        let g = random_pdag(&cfg).unwrap();

        let t = Instant::now();
        let (ce, _) = maximal_orientation_ce(&g, ExtensionAlgo::Dtic).unwrap();
        ce_total += t.elapsed();

        let t = Instant::now();
        let (naive, _) = direct_meek_naive(&g).unwrap();
        naive_total += t.elapsed();

        assert_eq!(ce, naive);
    }
    let ce_mean = ce_total / 5;
    let naive_mean = naive_total / 5;
    assert!(
        ce_mean.as_secs_f64() <= 0.5 * naive_mean.as_secs_f64(),
        "ce mean {ce_mean:?} not at most half of naive mean {naive_mean:?}"
    );
    report(
        8,
        "pipeline vs naive baseline",
        &format!("ce mean {ce_mean:?} vs naive mean {naive_mean:?}"),
        started,
        Duration::from_secs(600),
    );
}

/// Criterion 9: on five sparse instances (n = 4096, m = 3n), the extension
/// phase takes at least half of the pipeline's total time.
#[test]
fn criterion_09_phase_dominance_on_sparse_graphs() {
    let _gate = serialized();
    let started = Instant::now();
    let mut shares = Vec::new();
    for seed in instance_seeds(0x09, 5) {
        let cfg = GeneratorConfig::new(4096, EdgeRule::ThreeN, GraphStyle::Uniform, seed);
        let g = random_pdag(&cfg).unwrap();
        let (_, phases) = maximal_orientation_ce(&g, ExtensionAlgo::Dtic).unwrap();
        let total = phases.total().as_secs_f64();
        let share = phases.extension.as_secs_f64() / total;
        shares.push(share);
        assert!(
            share >= 0.5,
            "extension phase only {:.1}% of total (seed {seed}); phases {:?}",
            share * 100.0,
            phases
        );
    }
    let detail = shares
        .iter()
        .map(|s| format!("{:.0}%", s * 100.0))
        .collect::<Vec<_>>()
        .join(" ");
    report(
        9,
        "extension-phase dominance",
        &format!("extension shares: {detail}"),
        started,
        Duration::from_secs(300),
    );
}

/// Criterion 10: generator validity. Random PDAGs are always extendable,
/// chordal outputs pass the MCS check and extend under all three
/// algorithms, and the adversarial family matches its closed-form edge
/// count.
#[test]
fn criterion_10_generator_validity() {
    let _gate = serialized();
    let started = Instant::now();

    let mut extendable = 0usize;
    for seed in instance_seeds(0x0a, 1000) {
        let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
        let n = rng.random_range(2..=40);
        let cap = n * (n - 1) / 2;
        let m = rng.random_range(0..=cap.min(120));
        let style = if seed % 2 == 0 {
            GraphStyle::Uniform
        } else {
            GraphStyle::ScaleFree
        };
        let cfg = GeneratorConfig::new(n, EdgeRule::Explicit(m), style, seed);
        let g = random_pdag(&cfg).unwrap();
        assert!(
            pdag_core::extend_dtic(&g).is_extended(),
            "random_pdag produced a non-extendable instance (seed {seed})"
        );
        extendable += 1;
    }

    let mut chordal_ok = 0usize;
    for (i, seed) in instance_seeds(0x0b, 200).into_iter().enumerate() {
        let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
        let n = rng.random_range(8..=64);
        let k = [2usize, 3, 5, 8][i % 4];
        let cfg = GeneratorConfig::new(n, EdgeRule::ThreeN, GraphStyle::Chordal, seed).with_k(k);
        let g = chordal_graph(&cfg).unwrap();
        assert!(is_chordal(&g), "chordal generator output failed MCS (seed {seed})");
        assert_eq!(g.arc_count(), 0);
        for algo in ExtensionAlgo::ALL {
            assert!(algo.run(&g).is_extended());
        }
        chordal_ok += 1;
    }

    for k in 1..=10 {
        let g = dth_worst_case(k);
        assert_eq!(g.n(), 5 * k + 2);
        assert_eq!(g.edge_count(), dth_worst_case_edge_count(k));
        for x in 4 * k..5 * k {
            assert_eq!(g.degree(VertexId(x as u32)), k + 1);
        }
        assert_eq!(
            g.adjacency(VertexId((5 * k) as u32), VertexId((5 * k + 1) as u32)),
            EdgeKind::None
        );
    }

    report(
        10,
        "generator validity",
        &format!("{extendable} random PDAGs extendable, {chordal_ok} chordal verified, 10 closed-form counts"),
        started,
        Duration::from_secs(120),
    );
}
