//! Per-source cumulative dependencies by a Brandes-style recurrence over
//! the predecessor DAG.
//!
//! Three routes share the output type:
//! - passive walks: the recurrence at predecessor-graph vertices only;
//! - active walks on an extension-stamped DAG (unbounded waiting): the
//!   recurrence anchored at the latest DAG time of each node, emitting the
//!   waiting times between successor times while walking successors in
//!   decreasing time order;
//! - interval coverage on the exact-arrival DAG, which stays valid when a
//!   restless bound makes the arrival time part of the walk state.

use crate::config::VariantConfig;
use crate::counting::{OverallCost, WalkCounts};
use crate::error::{Error, Result};
use crate::walks::{successors, Pred, PredecessorData};
use crate::{NodeId, TNode, Time};

/// `cum(v, t)`: summed dependency of one source on each temporal node.
#[derive(Clone, Debug)]
pub struct DependencyTable {
    width: usize,
    cum: Vec<f64>,
    visits: usize,
}

impl DependencyTable {
    pub fn get(&self, v: NodeId, t: Time) -> f64 {
        self.cum[v * self.width + t as usize]
    }

    pub fn row(&self, v: NodeId) -> &[f64] {
        &self.cum[v * self.width..(v + 1) * self.width]
    }

    /// Predecessor-graph vertices processed by the recurrence.
    pub fn vertex_visits(&self) -> usize {
        self.visits
    }
}

/// Largest `t' <= t` such that `(v, t')` is a predecessor-graph vertex.
pub fn before_time(pd: &PredecessorData, v: NodeId, t: Time) -> Option<Time> {
    let t = t.min(pd.horizon());
    (0..=t).rev().find(|&x| pd.in_dag(v, x))
}

/// Computes `cum` for one source, choosing the route from the walk type of
/// `cfg` and whether `pd` was built with active extension stamps.
pub fn accumulate(
    pd: &PredecessorData,
    counts: &WalkCounts,
    cfg: VariantConfig,
) -> Result<DependencyTable> {
    if !cfg.is_active() {
        brandes_passive(pd, counts)
    } else if pd.config().is_active() {
        brandes_active(pd, counts)
    } else {
        accumulate_coverage(pd, counts, cfg)
    }
}

fn ratio(num: u128, den: u128, at: TNode) -> Result<f64> {
    if den == 0 {
        return Err(Error::invariant(format!(
            "successor ({}, {}) has zero walk count",
            at.0, at.1
        )));
    }
    Ok(num as f64 / den as f64)
}

fn reverse_topological(pd: &PredecessorData) -> Result<Vec<TNode>> {
    let mut order = pd.topological_order()?;
    order.reverse();
    Ok(order)
}

fn brandes_passive(pd: &PredecessorData, counts: &WalkCounts) -> Result<DependencyTable> {
    let width = pd.horizon() as usize + 1;
    let succ = successors(pd);
    let mut cum = vec![0f64; pd.node_count() * width];
    let order = reverse_topological(pd)?;
    for &(v, t) in &order {
        let sig = counts.sigma(v, t);
        let mut su = 0.0;
        for &(w, tw) in succ.get(v, t) {
            su += ratio(sig, counts.sigma(w, tw), (w, tw))? * cum[w * width + tw as usize];
        }
        cum[v * width + t as usize] = counts.delta_base(v, t) + su;
    }
    Ok(DependencyTable {
        width,
        cum,
        visits: order.len(),
    })
}

/// Next predecessor-graph time of each node after each DAG vertex, `T + 1` if none.
fn next_dag_times(pd: &PredecessorData) -> Vec<Time> {
    let width = pd.horizon() as usize + 1;
    let mut next = vec![pd.horizon() + 1; pd.node_count() * width];
    for v in 0..pd.node_count() {
        let mut upcoming = pd.horizon() + 1;
        for t in (0..=pd.horizon()).rev() {
            next[v * width + t as usize] = upcoming;
            if pd.in_dag(v, t) {
                upcoming = t;
            }
        }
    }
    next
}

fn brandes_active(pd: &PredecessorData, counts: &WalkCounts) -> Result<DependencyTable> {
    let width = pd.horizon() as usize + 1;
    let succ = successors(pd);
    let next = next_dag_times(pd);
    let mut cum = vec![0f64; pd.node_count() * width];
    let order = reverse_topological(pd)?;

    for &(v, t) in &order {
        let row = v * width;
        let sig = counts.sigma(v, t);
        let base = counts.delta_base_row(v);
        let list = succ.get(v, t);

        // waiting times t < tau < next anchor take the suffix sum over
        // successors at times >= tau; walking successors by decreasing time
        // emits each tau as soon as its sum is complete
        let mut su = 0.0;
        let mut top = next[row + t as usize] as i64 - 1;
        let mut i = 0;
        while i < list.len() {
            let tg = list[i].1;
            for tau in ((tg as i64 + 1).max(t as i64 + 1)..=top).rev() {
                cum[row + tau as usize] = base[tau as usize] + su;
            }
            while i < list.len() && list[i].1 == tg {
                let (w, tw) = list[i];
                su += ratio(sig, counts.sigma(w, tw), (w, tw))? * cum[w * width + tw as usize];
                i += 1;
            }
            top = top.min(tg as i64);
        }
        for tau in (t as i64 + 1..=top).rev() {
            cum[row + tau as usize] = base[tau as usize] + su;
        }
        cum[row + t as usize] = base[t as usize] + su;
    }
    Ok(DependencyTable {
        width,
        cum,
        visits: order.len(),
    })
}

/// Whether `(v, t)` ends an optimal walk from the source to `v`.
fn is_optimal_end(pd: &PredecessorData, counts: &WalkCounts, v: NodeId, t: Time) -> bool {
    match (counts.c_overall(v), pd.dist(v, t)) {
        (Some(OverallCost::Length(c)), Some(d)) => c == d,
        (Some(OverallCost::Foremost { arrival, length }), Some(d)) => arrival == t && length == d,
        _ => false,
    }
}

/// Dependencies by counting, for every walk through an exact-arrival
/// vertex `(v, t)`, the times it occupies `v`: only `t` for passive walks,
/// `t..=t_next` (or `t..=T` at the end) for active ones.
///
/// `pd` must be an exact-arrival DAG (built without active extension).
pub fn accumulate_coverage(
    pd: &PredecessorData,
    counts: &WalkCounts,
    cfg: VariantConfig,
) -> Result<DependencyTable> {
    if pd.config().is_active() {
        return Err(Error::invariant(
            "coverage route needs an exact-arrival predecessor graph",
        ));
    }
    let n = pd.node_count();
    let width = pd.horizon() as usize + 1;
    let s = pd.source();
    let succ = successors(pd);
    let order = reverse_topological(pd)?;

    // suffix weight: sum over targets z of (#optimal continuations to z) / sigma_sz
    let mut suffix = vec![0f64; n * width];
    for &(v, t) in &order {
        let mut d = 0.0;
        if v != s && counts.sigma_pair(v) > 0 && is_optimal_end(pd, counts, v, t) {
            d = 1.0 / counts.sigma_pair(v) as f64;
        }
        for &(w, tw) in succ.get(v, t) {
            d += suffix[w * width + tw as usize];
        }
        suffix[v * width + t as usize] = d;
    }

    let mut cum = vec![0f64; n * width];
    if !cfg.is_active() {
        for &(v, t) in &order {
            let c = v * width + t as usize;
            cum[c] = counts.sigma_bar(v, t) as f64 * suffix[c];
        }
        return Ok(DependencyTable {
            width,
            cum,
            visits: order.len(),
        });
    }

    for v in 0..n {
        if v == s {
            continue;
        }
        let row = v * width;
        let base = counts.delta_base_row(v);
        // interval adds as a difference array over t..=tw; the open-interval
        // count resets the running sum so uncovered times stay exactly zero
        let mut diff = vec![0f64; width + 1];
        let mut open = vec![0i64; width + 1];
        for t in 0..=pd.horizon() {
            if !pd.in_dag(v, t) {
                continue;
            }
            let sb = counts.sigma_bar(v, t) as f64;
            for &(w, tw) in succ.get(v, t).iter().rev() {
                let add = sb * suffix[w * width + tw as usize];
                diff[t as usize] += add;
                diff[tw as usize + 1] -= add;
                open[t as usize] += 1;
                open[tw as usize + 1] -= 1;
            }
        }
        let (mut running, mut depth) = (0.0, 0);
        for (t, slot) in cum[row..row + width].iter_mut().enumerate() {
            depth += open[t];
            running = if depth == 0 { 0.0 } else { running + diff[t] };
            *slot = base[t] + running;
        }
        if !cfg.strict() {
            for t in 0..=pd.horizon() {
                let c = row + t as usize;
                if pd.in_dag(v, t) && suffix[c] > 0.0 {
                    let twice = revisit_count(pd, counts, v, t);
                    if twice > 0.0 {
                        cum[c] -= twice * suffix[c];
                    }
                }
            }
        }
    }
    Ok(DependencyTable {
        width,
        cum,
        visits: order.len(),
    })
}

/// Number of exact walks into `(v, tau)` that already sat at `v` before
/// `tau`, left it at `tau` and came back at the same instant. Such walks
/// cover `(v, tau)` twice in the interval sum.
fn revisit_count(pd: &PredecessorData, counts: &WalkCounts, v: NodeId, tau: Time) -> f64 {
    // path counts towards (v, tau) inside the layer of time tau, processed
    // by decreasing cost (costs grow by one along predecessor arcs)
    let mut layer: Vec<(u32, NodeId)> = Vec::new();
    let mut stack = vec![v];
    let mut seen = vec![false; pd.node_count()];
    seen[v] = true;
    while let Some(x) = stack.pop() {
        layer.push((pd.dist(x, tau).unwrap_or(0), x));
        for p in pd.preds(x, tau) {
            if let Pred::Node((w, tw)) = *p {
                if tw == tau && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    layer.sort_unstable_by(|a, b| b.cmp(a));
    let mut paths = vec![0f64; pd.node_count()];
    paths[v] = 1.0;
    let mut total = 0.0;
    for &(_, x) in &layer {
        let here = paths[x];
        if here == 0.0 {
            continue;
        }
        for p in pd.preds(x, tau) {
            if let Pred::Node((w, tw)) = *p {
                if tw == tau {
                    paths[w] += here;
                } else if w == v {
                    total += counts.sigma_bar(w, tw) as f64 * here;
                }
            }
        }
    }
    total
}
