//! Driver over all sources: per-source pipeline, endpoint correction,
//! deterministic parallel reduction and marginals.

use rayon::prelude::*;

use crate::config::VariantConfig;
use crate::counting::WalkCounts;
use crate::dependency::{accumulate, DependencyTable};
use crate::error::{Error, Result};
use crate::graph::TemporalGraph;
use crate::walks::{temporal_bfs, PredecessorData};
use crate::{NodeId, Time};

/// Sources per reduction block. Block sums are formed sequentially and then
/// added in block order, so output does not depend on the worker count.
const BLOCK: usize = 8;

/// Relative slack below zero tolerated before clamping.
const NEG_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Default)]
pub struct EngineOptions {
    /// Worker threads; 0 uses the rayon default.
    pub threads: usize,
    /// Divide every value by `(n - 1)(n - 2)`.
    pub normalize: bool,
    /// Keep only `B(v)` and `B(t)`.
    pub marginals_only: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub n: usize,
    pub m: usize,
    pub horizon: Time,
    pub hash: String,
}

impl Provenance {
    pub fn of(g: &TemporalGraph) -> Self {
        Provenance {
            n: g.node_count(),
            m: g.arc_count(),
            horizon: g.horizon(),
            hash: g.fingerprint(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BetweennessResult {
    width: usize,
    b_vt: Option<Vec<f64>>,
    b_v: Vec<f64>,
    b_t: Vec<f64>,
    config: VariantConfig,
    provenance: Provenance,
}

impl BetweennessResult {
    pub fn node_count(&self) -> usize {
        self.b_v.len()
    }

    pub fn horizon(&self) -> Time {
        (self.width - 1) as Time
    }

    /// `B(v, t)`; `None` in marginals-only mode.
    pub fn get(&self, v: NodeId, t: Time) -> Option<f64> {
        self.b_vt.as_ref().map(|b| b[v * self.width + t as usize])
    }

    /// Node-major table over times `0..=T`.
    pub fn table(&self) -> Option<&[f64]> {
        self.b_vt.as_deref()
    }

    pub fn row(&self, v: NodeId) -> Option<&[f64]> {
        self.b_vt
            .as_ref()
            .map(|b| &b[v * self.width..(v + 1) * self.width])
    }

    pub fn b_v(&self) -> &[f64] {
        &self.b_v
    }

    pub fn b_t(&self) -> &[f64] {
        &self.b_t
    }

    /// The configuration actually run (restless bounds at or above the
    /// horizon become shortest).
    pub fn config(&self) -> VariantConfig {
        self.config
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }
}

/// Runs the per-source pipeline and returns its intermediate data.
///
/// Active walks use waiting stamps only when unbounded and non-strict.
/// With a waiting bound the arrival time is part of the walk state, and
/// with strict times a walk that waited can leave at an instant where a
/// fresh arrival cannot; both are accumulated on the exact-arrival DAG.
pub fn source_dependencies(
    g: &TemporalGraph,
    s: NodeId,
    cfg: VariantConfig,
) -> Result<(PredecessorData, WalkCounts, DependencyTable)> {
    let cfg = cfg.effective(g.horizon());
    let stamped = cfg.is_active() && cfg.k_bound().is_none() && !cfg.strict();
    let bfs_cfg = if cfg.is_active() && !stamped {
        cfg.as_passive()
    } else {
        cfg
    };
    let pd = temporal_bfs(g, s, bfs_cfg);
    let counts = WalkCounts::compute(&pd, cfg)?;
    let dep = accumulate(&pd, &counts, cfg)?;
    Ok((pd, counts, dep))
}

pub fn compute_betweenness(g: &TemporalGraph, cfg: VariantConfig) -> Result<BetweennessResult> {
    compute_betweenness_with(g, cfg, &EngineOptions::default())
}

pub fn compute_betweenness_with(
    g: &TemporalGraph,
    cfg: VariantConfig,
    opts: &EngineOptions,
) -> Result<BetweennessResult> {
    let cfg = cfg.effective(g.horizon());
    let run = || reduce(g, cfg, opts.marginals_only);
    let acc = if opts.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::Argument(format!("thread pool: {e}")))?
            .install(run)?
    } else {
        run()?
    };
    finish(g, cfg, opts, acc)
}

enum Acc {
    Table(Vec<f64>),
    Marginals { b_v: Vec<f64>, b_t: Vec<f64> },
}

impl Acc {
    fn zeros(n: usize, width: usize, marginals_only: bool) -> Self {
        if marginals_only {
            Acc::Marginals {
                b_v: vec![0.0; n],
                b_t: vec![0.0; width],
            }
        } else {
            Acc::Table(vec![0.0; n * width])
        }
    }

    fn add(&mut self, other: &Acc) {
        match (self, other) {
            (Acc::Table(a), Acc::Table(b)) => a.iter_mut().zip(b).for_each(|(x, y)| *x += y),
            (Acc::Marginals { b_v, b_t }, Acc::Marginals { b_v: ov, b_t: ot }) => {
                b_v.iter_mut().zip(ov).for_each(|(x, y)| *x += y);
                b_t.iter_mut().zip(ot).for_each(|(x, y)| *x += y);
            }
            _ => unreachable!("mixed accumulators"),
        }
    }
}

fn block_sum(
    g: &TemporalGraph,
    cfg: VariantConfig,
    sources: std::ops::Range<NodeId>,
    marginals_only: bool,
) -> Result<Acc> {
    let n = g.node_count();
    let width = g.horizon() as usize + 1;
    let mut acc = Acc::zeros(n, width, marginals_only);
    for s in sources {
        if g.out_arcs(s).is_empty() {
            continue;
        }
        let (_, counts, dep) = source_dependencies(g, s, cfg)?;
        for v in (0..n).filter(|&v| v != s) {
            let row = dep.row(v);
            match &mut acc {
                Acc::Table(b) => {
                    for (t, slot) in b[v * width..(v + 1) * width].iter_mut().enumerate() {
                        *slot += row[t] - counts.delta_base(v, t as Time);
                    }
                }
                Acc::Marginals { b_v, b_t } => {
                    for (t, &c) in row.iter().enumerate() {
                        let x = c - counts.delta_base(v, t as Time);
                        b_v[v] += x;
                        b_t[t] += x;
                    }
                }
            }
        }
    }
    Ok(acc)
}

fn reduce(g: &TemporalGraph, cfg: VariantConfig, marginals_only: bool) -> Result<Acc> {
    let n = g.node_count();
    let blocks: Vec<_> = (0..n)
        .step_by(BLOCK)
        .map(|lo| lo..(lo + BLOCK).min(n))
        .collect();
    // waves bound memory to one partial per worker; block order fixes the sum order
    let wave = rayon::current_num_threads().max(1);
    let mut total = Acc::zeros(n, g.horizon() as usize + 1, marginals_only);
    for chunk in blocks.chunks(wave) {
        let parts: Vec<Result<Acc>> = chunk
            .par_iter()
            .map(|r| block_sum(g, cfg, r.clone(), marginals_only))
            .collect();
        for p in parts {
            total.add(&p?);
        }
    }
    Ok(total)
}

fn clamp(values: &mut [f64], what: &str) -> Result<()> {
    let scale = values.iter().fold(1f64, |m, x| m.max(x.abs()));
    for (i, x) in values.iter_mut().enumerate() {
        if *x < 0.0 {
            if *x < -NEG_TOL * scale {
                return Err(Error::invariant(format!(
                    "negative {what} value {x} at index {i}"
                )));
            }
            *x = 0.0;
        }
    }
    Ok(())
}

fn finish(
    g: &TemporalGraph,
    cfg: VariantConfig,
    opts: &EngineOptions,
    acc: Acc,
) -> Result<BetweennessResult> {
    let n = g.node_count();
    let width = g.horizon() as usize + 1;
    let scale = if opts.normalize && n > 2 {
        1.0 / ((n - 1) as f64 * (n - 2) as f64)
    } else {
        1.0
    };
    let (b_vt, b_v, b_t) = match acc {
        Acc::Table(mut b) => {
            clamp(&mut b, "betweenness")?;
            b.iter_mut().for_each(|x| *x *= scale);
            let (b_v, b_t) = marginals(&b, n, width);
            (Some(b), b_v, b_t)
        }
        Acc::Marginals { mut b_v, mut b_t } => {
            clamp(&mut b_v, "node betweenness")?;
            clamp(&mut b_t, "time betweenness")?;
            b_v.iter_mut()
                .chain(b_t.iter_mut())
                .for_each(|x| *x *= scale);
            (None, b_v, b_t)
        }
    };
    Ok(BetweennessResult {
        width,
        b_vt,
        b_v,
        b_t,
        config: cfg,
        provenance: Provenance::of(g),
    })
}

impl BetweennessResult {
    /// Wraps a finished node-major table, deriving the marginals.
    pub fn from_table(g: &TemporalGraph, config: VariantConfig, table: Vec<f64>) -> Self {
        let n = g.node_count();
        let width = g.horizon() as usize + 1;
        assert_eq!(table.len(), n * width, "table shape");
        let (b_v, b_t) = marginals(&table, n, width);
        BetweennessResult {
            width,
            b_vt: Some(table),
            b_v,
            b_t,
            config,
            provenance: Provenance::of(g),
        }
    }
}

fn marginals(table: &[f64], n: usize, width: usize) -> (Vec<f64>, Vec<f64>) {
    let mut b_v = vec![0.0; n];
    let mut b_t = vec![0.0; width];
    for v in 0..n {
        for t in 0..width {
            let x = table[v * width + t];
            b_v[v] += x;
            b_t[t] += x;
        }
    }
    (b_v, b_t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{example_graph, uniform_graph};

    const B: usize = 1;

    #[test]
    fn example_rows_for_b() {
        let g = example_graph();
        let p = compute_betweenness(&g, VariantConfig::passive_shortest()).unwrap();
        assert_eq!(p.row(B).unwrap(), &[0.0, 2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let a = compute_betweenness(&g, VariantConfig::active_shortest()).unwrap();
        assert_eq!(&a.row(B).unwrap()[1..5], &[2.0, 2.0, 1.0, 1.0]);
    }

    #[test]
    fn marginals_sum_the_table() {
        let g = uniform_graph(12, 80, 10, 4);
        let r = compute_betweenness(&g, VariantConfig::active_shortest()).unwrap();
        let total: f64 = r.table().unwrap().iter().sum();
        assert!((r.b_v().iter().sum::<f64>() - total).abs() < 1e-9 * total.max(1.0));
        assert!((r.b_t().iter().sum::<f64>() - total).abs() < 1e-9 * total.max(1.0));
    }

    #[test]
    fn thread_count_does_not_change_bits() {
        let g = uniform_graph(40, 400, 20, 9);
        let cfg = VariantConfig::passive_shortest();
        let one = compute_betweenness_with(
            &g,
            cfg,
            &EngineOptions {
                threads: 1,
                ..Default::default()
            },
        )
        .unwrap();
        let four = compute_betweenness_with(
            &g,
            cfg,
            &EngineOptions {
                threads: 4,
                ..Default::default()
            },
        )
        .unwrap();
        let bits = |r: &BetweennessResult| {
            r.table()
                .unwrap()
                .iter()
                .map(|x| x.to_bits())
                .collect::<Vec<_>>()
        };
        assert_eq!(bits(&one), bits(&four));
    }

    #[test]
    fn marginals_only_mode() {
        let g = uniform_graph(15, 120, 12, 2);
        let cfg = VariantConfig::active_shortest();
        let full = compute_betweenness(&g, cfg).unwrap();
        let lean = compute_betweenness_with(
            &g,
            cfg,
            &EngineOptions {
                marginals_only: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(lean.table().is_none() && lean.get(0, 0).is_none());
        for (a, b) in full.b_v().iter().zip(lean.b_v()) {
            assert!((a - b).abs() < 1e-9 * a.max(1.0));
        }
    }

    #[test]
    fn normalization_divides_by_ordered_pairs() {
        let g = example_graph();
        let cfg = VariantConfig::passive_shortest();
        let r = compute_betweenness_with(
            &g,
            cfg,
            &EngineOptions {
                normalize: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(r.get(B, 1), Some(2.0 / 12.0));
    }

    #[test]
    fn clamp_rejects_real_negatives() {
        let mut ok = vec![1.0, -1e-15, 0.5];
        clamp(&mut ok, "x").unwrap();
        assert_eq!(ok, vec![1.0, 0.0, 0.5]);
        assert!(clamp(&mut [1.0, -1e-3], "x").is_err());
    }
}
