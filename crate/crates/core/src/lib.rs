//! Consistent DAG extension and maximal orientation of partially directed
//! acyclic graphs (PDAGs).
//!
//! The crate provides the PDAG/DAG data structures, three consistent-extension
//! algorithms (`dt`, `dth`, `dtic`) with brute-force oracles, Meek-rule
//! maximal orientation both directly and via the extension pipeline, and
//! reproducible instance generators for benchmarking.

pub mod extension;
pub mod generators;
pub mod graph;
pub mod io;
pub mod orientation;

pub use extension::{
    brute_force_extend, enumerate_extensions, extend_dt, extend_dth, extend_dtic,
    extend_dtic_audited, is_consistent_extension, ExtensionAlgo, ExtensionOutcome, GuardError,
    ENUMERATION_GUARD,
};
pub use generators::{
    chordal_graph, dth_worst_case, random_pdag, random_pdag_with_witness, EdgeRule, GenError,
    GeneratorConfig, GraphStyle,
};
pub use graph::{
    is_chordal, CounterSnapshot, Dag, EdgeKind, GraphError, Pdag, ValidationError, VertexId,
};
pub use orientation::{
    brute_force_cpdag, brute_force_mpdag, dag_to_cpdag, direct_meek, direct_meek_naive,
    maximal_orientation_ce, MeekRule, OrientError, OrientationTrace, PhaseTimings,
    RuleApplication,
};
