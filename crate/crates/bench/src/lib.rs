//! Shared workloads for the benchmarks.

use tempbc_core::generate::uniform_graph;
use tempbc_core::TemporalGraph;

#[derive(Clone, Copy, Debug)]
pub struct Workload {
    pub name: &'static str,
    pub nodes: usize,
    pub arcs: usize,
    pub horizon: u32,
}

impl Workload {
    pub fn build(&self) -> TemporalGraph {
        uniform_graph(self.nodes, self.arcs, self.horizon, 42)
    }
}

/// Fixed `n` and `m` with growing horizon, for the time dependence.
pub const HORIZON_SWEEP: [Workload; 3] = [
    Workload {
        name: "n50-m2000-T50",
        nodes: 50,
        arcs: 2000,
        horizon: 50,
    },
    Workload {
        name: "n50-m2000-T100",
        nodes: 50,
        arcs: 2000,
        horizon: 100,
    },
    Workload {
        name: "n50-m2000-T200",
        nodes: 50,
        arcs: 2000,
        horizon: 200,
    },
];

/// Fixed horizon with growing size.
pub const SIZE_SWEEP: [Workload; 3] = [
    Workload {
        name: "n25-m500-T100",
        nodes: 25,
        arcs: 500,
        horizon: 100,
    },
    Workload {
        name: "n50-m2000-T100",
        nodes: 50,
        arcs: 2000,
        horizon: 100,
    },
    Workload {
        name: "n100-m8000-T100",
        nodes: 100,
        arcs: 8000,
        horizon: 100,
    },
];
