//! Exact walk counts on the predecessor DAG and per-pair base dependencies.

use crate::config::{Cost, VariantConfig, WalkType};
use crate::error::{Error, Result};
use crate::walks::{Pred, PredecessorData};
use crate::{NodeId, Time};

/// Optimal overall cost from the source to a node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum OverallCost {
    Length(u32),
    /// Earliest arrival, then length; compared lexicographically.
    Foremost {
        arrival: Time,
        length: u32,
    },
}

#[derive(Clone, Debug)]
pub struct WalkCounts {
    width: usize,
    sigma_bar: Vec<u128>,
    sigma: Vec<u128>,
    sigma_pair: Vec<u128>,
    delta_base: Vec<f64>,
    c_overall: Vec<Option<OverallCost>>,
    attains: Vec<bool>,
}

impl WalkCounts {
    /// Runs the three counting steps for one source.
    pub fn compute(pd: &PredecessorData, cfg: VariantConfig) -> Result<Self> {
        let sigma_bar = count_exact(pd)?;
        let sigma = count_total(pd, &sigma_bar, cfg)?;
        pair_counts_and_base(pd, sigma, sigma_bar, cfg)
    }

    #[inline]
    fn cell(&self, v: NodeId, t: Time) -> usize {
        v * self.width + t as usize
    }

    /// Number of exact optimal walks to `(v, t)`.
    pub fn sigma_bar(&self, v: NodeId, t: Time) -> u128 {
        self.sigma_bar[self.cell(v, t)]
    }

    /// Number of optimal walks to `(v, t)` for the walk type.
    pub fn sigma(&self, v: NodeId, t: Time) -> u128 {
        self.sigma[self.cell(v, t)]
    }

    /// Number of optimal walks from the source to `v` (0 for the source itself).
    pub fn sigma_pair(&self, v: NodeId) -> u128 {
        self.sigma_pair[v]
    }

    /// Fraction of optimal source-to-`v` walks that visit `(v, t)`.
    pub fn delta_base(&self, v: NodeId, t: Time) -> f64 {
        self.delta_base[self.cell(v, t)]
    }

    pub fn c_overall(&self, v: NodeId) -> Option<OverallCost> {
        self.c_overall[v]
    }

    /// Whether the cost at `(v, t)` equals the overall optimum for `v`.
    pub fn attains_overall(&self, v: NodeId, t: Time) -> bool {
        self.attains[self.cell(v, t)]
    }

    pub(crate) fn delta_base_row(&self, v: NodeId) -> &[f64] {
        &self.delta_base[v * self.width..(v + 1) * self.width]
    }
}

/// Counts exact optimal walks by summing over predecessors in topological
/// order; source initializations count 1.
pub fn count_exact(pd: &PredecessorData) -> Result<Vec<u128>> {
    let width = pd.horizon() as usize + 1;
    let mut sb = vec![0u128; pd.node_count() * width];
    for (v, t) in pd.topological_order()? {
        let mut acc: u128 = 0;
        for p in pd.preds(v, t) {
            let add = match *p {
                Pred::Nil => 1,
                Pred::Node((w, tw)) => sb[w * width + tw as usize],
            };
            acc = acc
                .checked_add(add)
                .ok_or(Error::Overflow { node: v, time: t })?;
        }
        sb[v * width + t as usize] = acc;
    }
    Ok(sb)
}

/// Per-time cost of `(v, t)`: the stored exact cost for passive walks,
/// the running minimum over earlier times for active ones.
fn semantic_costs(pd: &PredecessorData, v: NodeId, active: bool) -> Vec<Option<u32>> {
    let mut out = Vec::with_capacity(pd.horizon() as usize + 1);
    let mut best: Option<u32> = None;
    for t in 0..=pd.horizon() {
        let d = pd.dist(v, t);
        if active {
            best = match (best, d) {
                (Some(b), Some(d)) => Some(b.min(d)),
                (b, d) => b.or(d),
            };
            out.push(best);
        } else {
            out.push(d);
        }
    }
    out
}

/// Optimal walk counts per temporal node. Passive walks only count exact
/// arrivals; active walks also count earlier arrivals whose length still
/// equals the running minimum at `t` (waiting adds no transitions).
pub fn count_total(
    pd: &PredecessorData,
    sigma_bar: &[u128],
    cfg: VariantConfig,
) -> Result<Vec<u128>> {
    let width = pd.horizon() as usize + 1;
    let mut sigma = vec![0u128; sigma_bar.len()];
    for v in 0..pd.node_count() {
        match cfg.walk_type() {
            WalkType::Passive => {
                for t in 0..=pd.horizon() {
                    if pd.in_dag(v, t) {
                        let c = v * width + t as usize;
                        sigma[c] = sigma_bar[c];
                    }
                }
            }
            WalkType::Active => {
                let mut best: Option<u32> = None;
                let mut acc: u128 = 0;
                for t in 0..=pd.horizon() {
                    let c = v * width + t as usize;
                    if let Some(d) = pd.dist(v, t) {
                        match best {
                            Some(b) if d > b => {}
                            Some(b) if d == b => {
                                acc = acc
                                    .checked_add(sigma_bar[c])
                                    .ok_or(Error::Overflow { node: v, time: t })?;
                            }
                            _ => {
                                best = Some(d);
                                acc = sigma_bar[c];
                            }
                        }
                    }
                    sigma[c] = acc;
                }
            }
        }
    }
    Ok(sigma)
}

/// Overall costs, pair counts and base dependencies.
pub fn pair_counts_and_base(
    pd: &PredecessorData,
    sigma: Vec<u128>,
    sigma_bar: Vec<u128>,
    cfg: VariantConfig,
) -> Result<WalkCounts> {
    let n = pd.node_count();
    let width = pd.horizon() as usize + 1;
    let active = cfg.is_active();
    let foremost = cfg.cost() == Cost::Foremost;

    let mut sigma_pair = vec![0u128; n];
    let mut delta_base = vec![0f64; n * width];
    let mut c_overall = vec![None; n];
    let mut attains = vec![false; n * width];

    for v in 0..n {
        let costs = semantic_costs(pd, v, active);
        let per_time = |t: Time| -> Option<OverallCost> {
            costs[t as usize].map(|d| {
                if foremost {
                    OverallCost::Foremost {
                        arrival: t,
                        length: d,
                    }
                } else {
                    OverallCost::Length(d)
                }
            })
        };
        let best = (0..=pd.horizon()).filter_map(per_time).min();
        c_overall[v] = best;
        let Some(best) = best else { continue };

        let mut pair: u128 = 0;
        for t in 0..=pd.horizon() {
            if per_time(t) == Some(best) {
                attains[v * width + t as usize] = true;
            }
            // only arrivals at exactly this time whose own length is optimal end a walk here
            let exact = pd.dist(v, t).map(|d| match best {
                OverallCost::Length(_) => OverallCost::Length(d),
                OverallCost::Foremost { .. } => OverallCost::Foremost {
                    arrival: t,
                    length: d,
                },
            });
            if exact == Some(best) {
                pair = pair
                    .checked_add(sigma_bar[v * width + t as usize])
                    .ok_or(Error::Overflow { node: v, time: t })?;
            }
        }
        if v == pd.source() {
            // walks from a node to itself are not counted
            continue;
        }
        sigma_pair[v] = pair;
        if pair == 0 {
            continue;
        }
        for t in 0..=pd.horizon() {
            let c = v * width + t as usize;
            if attains[c] {
                delta_base[c] = sigma[c] as f64 / pair as f64;
            }
        }
    }

    Ok(WalkCounts {
        width,
        sigma_bar,
        sigma,
        sigma_pair,
        delta_base,
        c_overall,
        attains,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::example_graph;
    use crate::graph::parse_edge_list;
    use crate::walks::temporal_bfs;

    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;
    const D: usize = 3;
    const E: usize = 4;

    fn counts(cfg: VariantConfig) -> WalkCounts {
        let g = example_graph();
        WalkCounts::compute(&temporal_bfs(&g, A, cfg), cfg).unwrap()
    }

    #[test]
    fn exact_counts_on_example() {
        let w = counts(VariantConfig::passive_shortest());
        assert_eq!(w.sigma_bar(C, 2), 1);
        assert_eq!(w.sigma_bar(C, 5), 1);
        assert_eq!(w.sigma_bar(B, 5), 2);
        assert_eq!(w.sigma_bar(D, 6), 2);
        assert_eq!(w.sigma_bar(A, 1), 1);
    }

    #[test]
    fn diamond_has_two_walks() {
        let g = parse_edge_list("a b 1\na c 1\nb d 2\nc d 2", true).unwrap();
        let cfg = VariantConfig::passive_shortest();
        let w = WalkCounts::compute(&temporal_bfs(&g, 0, cfg), cfg).unwrap();
        assert_eq!(w.sigma_bar(3, 2), 2);
        assert_eq!(w.sigma_pair(3), 2);
    }

    #[test]
    fn active_totals_accumulate_ties() {
        let w = counts(VariantConfig::active_shortest());
        assert_eq!(w.sigma(C, 5), 2);
        assert_eq!(w.sigma(C, 3), 1);
        assert_eq!(w.sigma(B, 4), 1);
        let p = counts(VariantConfig::passive_shortest());
        assert_eq!(p.sigma(C, 5), 1);
        assert_eq!(p.sigma(C, 3), 0);
        assert_eq!(p.sigma(E, 7), 0);
        assert_eq!(p.sigma(C, 0), 0);
    }

    #[test]
    fn pair_counts_and_costs() {
        let p = counts(VariantConfig::passive_shortest());
        assert_eq!(p.sigma_pair(C), 2);
        assert_eq!(
            (0..5).map(|v| p.c_overall(v)).collect::<Vec<_>>(),
            vec![
                Some(OverallCost::Length(0)),
                Some(OverallCost::Length(1)),
                Some(OverallCost::Length(2)),
                Some(OverallCost::Length(3)),
                None
            ]
        );
        assert_eq!(p.delta_base(C, 2), 0.5);
        assert_eq!(p.delta_base(B, 5), 0.0);
        assert_eq!(p.sigma_pair(A), 0);

        let f = counts(VariantConfig::new(Cost::Foremost, WalkType::Passive, false).unwrap());
        assert_eq!(
            f.c_overall(C),
            Some(OverallCost::Foremost {
                arrival: 2,
                length: 2
            })
        );
        assert_eq!(f.sigma_pair(C), 1);
        assert_eq!(f.delta_base(C, 2), 1.0);
        assert_eq!(f.delta_base(C, 5), 0.0);

        assert_eq!(p.sigma_pair(E), 0);
        assert!((0..=7).all(|t| p.delta_base(E, t) == 0.0));
    }

    #[test]
    fn active_base_covers_waiting_times() {
        let w = counts(VariantConfig::active_shortest());
        assert_eq!(w.delta_base(B, 3), 1.0);
        assert_eq!(w.delta_base(C, 3), 0.5);
        assert_eq!(w.delta_base(C, 7), 1.0);
        assert_eq!(w.delta_base(B, 0), 0.0);
    }
}
