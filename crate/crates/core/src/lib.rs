//! Temporal betweenness centrality on shortest-walk variants.
//!
//! The pipeline per source is: temporal BFS building a predecessor DAG
//! over temporal nodes ([`walks`]), exact walk counting on that DAG
//! ([`counting`]), and a Brandes-style dependency accumulation
//! ([`dependency`]). [`engine`] drives it over all sources and applies the
//! endpoint correction. [`oracle`] recomputes everything by explicit walk
//! enumeration and is used as ground truth in tests.

pub mod analysis;
pub mod config;
pub mod counting;
pub mod dependency;
pub mod engine;
pub mod error;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod output;
pub mod static_bc;
pub mod walks;

pub use analysis::{kendall_tau, prefix_scan, time_histogram, top_k_intersection, Ranking};
pub use config::{Cost, VariantConfig, WalkType};
pub use counting::{count_exact, count_total, pair_counts_and_base, OverallCost, WalkCounts};
pub use dependency::{accumulate, before_time, DependencyTable};
pub use engine::{
    compute_betweenness, compute_betweenness_with, source_dependencies, BetweennessResult,
    EngineOptions, Provenance,
};
pub use error::{Error, Result};
pub use graph::{aggregate_static, parse_edge_list, prefix_graph, StaticGraph, TemporalGraph};
pub use oracle::{enumerate_optimal_walks, oracle_betweenness, EnumeratedWalk, OracleLimits};
pub use static_bc::brandes_static;
pub use walks::{successors, temporal_bfs, Pred, PredecessorData, Successors};

/// Integer time stamp.
pub type Time = u32;
/// Dense node identifier in `0..n`.
pub type NodeId = usize;
/// A temporal node `(v, t)`.
pub type TNode = (NodeId, Time);
