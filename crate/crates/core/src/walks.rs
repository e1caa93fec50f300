//! Per-source temporal BFS building optimal costs and the predecessor DAG.
//!
//! Costs are unit lengths, so a level-synchronous BFS over temporal nodes
//! suffices. For active walks a newly reached `(b, t')` also stamps its
//! cost onto the later in-arc times of `b` (within the restless bound),
//! which rejects longer exact arrivals there.

use std::cmp::Reverse;
use std::collections::VecDeque;

use crate::config::{Cost, VariantConfig};
use crate::error::{Error, Result};
use crate::graph::TemporalGraph;
use crate::{NodeId, TNode, Time};

/// Predecessor entry: either the source-initialization marker or a temporal node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pred {
    Nil,
    Node(TNode),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BfsStats {
    /// Total queue insertions.
    pub enqueued: usize,
    /// Largest number of insertions of any single temporal node.
    pub max_enqueues_per_node: u32,
    /// Arc relaxations performed, including extension stamps.
    pub relaxations: u64,
}

/// Output of [`temporal_bfs`]: optimal costs and predecessor sets for one source.
#[derive(Clone, Debug)]
pub struct PredecessorData {
    source: NodeId,
    n: usize,
    horizon: Time,
    cfg: VariantConfig,
    dist: Vec<Option<u32>>,
    pre: Vec<Vec<Pred>>,
    order: Vec<TNode>,
    stats: BfsStats,
}

impl PredecessorData {
    #[inline]
    fn cell(&self, v: NodeId, t: Time) -> usize {
        v * (self.horizon as usize + 1) + t as usize
    }

    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn horizon(&self) -> Time {
        self.horizon
    }

    /// Config the search ran with.
    pub fn config(&self) -> VariantConfig {
        self.cfg
    }

    /// Cost stored for `(v, t)`; `None` is unreachable.
    pub fn dist(&self, v: NodeId, t: Time) -> Option<u32> {
        self.dist[self.cell(v, t)]
    }

    pub fn preds(&self, v: NodeId, t: Time) -> &[Pred] {
        &self.pre[self.cell(v, t)]
    }

    /// Whether `(v, t)` is a vertex of the predecessor graph (non-empty predecessor set).
    pub fn in_dag(&self, v: NodeId, t: Time) -> bool {
        !self.pre[self.cell(v, t)].is_empty()
    }

    /// Vertices in the order they were enqueued (non-decreasing cost).
    pub fn bfs_order(&self) -> &[TNode] {
        &self.order
    }

    pub fn stats(&self) -> &BfsStats {
        &self.stats
    }

    /// Predecessor-graph vertices of `v`, increasing in time.
    pub fn dag_times(&self, v: NodeId) -> Vec<Time> {
        (0..=self.horizon).filter(|&t| self.in_dag(v, t)).collect()
    }

    /// All arcs `((w, t'), (v, t))` of the predecessor graph, sorted.
    pub fn edges(&self) -> Vec<(TNode, TNode)> {
        let mut out = Vec::new();
        for v in 0..self.n {
            for t in 0..=self.horizon {
                for p in self.preds(v, t) {
                    if let Pred::Node(x) = *p {
                        out.push((x, (v, t)));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Vertices of the predecessor graph in a topological order (Kahn).
    /// Fails if the predecessor relation has a cycle.
    pub fn topological_order(&self) -> Result<Vec<TNode>> {
        let width = self.horizon as usize + 1;
        let succ = successors(self);
        let mut indeg = vec![0u32; self.n * width];
        let mut total = 0usize;
        for v in 0..self.n {
            for t in 0..=self.horizon {
                let c = self.cell(v, t);
                if !self.pre[c].is_empty() {
                    total += 1;
                    indeg[c] = self.pre[c]
                        .iter()
                        .filter(|p| matches!(p, Pred::Node(_)))
                        .count() as u32;
                }
            }
        }
        let mut queue: VecDeque<TNode> = VecDeque::new();
        for v in 0..self.n {
            for t in 0..=self.horizon {
                let c = self.cell(v, t);
                if !self.pre[c].is_empty() && indeg[c] == 0 {
                    queue.push_back((v, t));
                }
            }
        }
        let mut order = Vec::with_capacity(total);
        while let Some((v, t)) = queue.pop_front() {
            order.push((v, t));
            for &(w, tw) in succ.get(v, t) {
                let c = self.cell(w, tw);
                indeg[c] -= 1;
                if indeg[c] == 0 {
                    queue.push_back((w, tw));
                }
            }
        }
        if order.len() != total {
            return Err(Error::invariant(format!(
                "predecessor graph from source {} has a cycle",
                self.source
            )));
        }
        Ok(order)
    }
}

/// Builds optimal costs and predecessor sets from `s`.
///
/// Foremost configurations run the unbounded shortest passive search; the
/// foremost order is derived from `(time, length)` afterwards.
pub fn temporal_bfs(g: &TemporalGraph, s: NodeId, cfg: VariantConfig) -> PredecessorData {
    assert!(s < g.node_count(), "source {s} out of range");
    let n = g.node_count();
    let horizon = g.horizon();
    let width = horizon as usize + 1;
    let cell = |v: NodeId, t: Time| v * width + t as usize;

    let strict = cfg.strict();
    let k = cfg.k_bound();
    let extend = cfg.is_active() && cfg.cost() != Cost::Foremost;

    let mut dist: Vec<Option<u32>> = vec![None; n * width];
    let mut pre: Vec<Vec<Pred>> = vec![Vec::new(); n * width];
    let mut enq = vec![0u32; n * width];
    let mut order = Vec::new();
    let mut stats = BfsStats::default();

    // initialization: the empty walk reaches (s, t) at every out-arc time of s
    let mut queue: Vec<TNode> = Vec::new();
    let mut last = None;
    for &(t, _) in g.out_arcs(s) {
        if last == Some(t) {
            continue;
        }
        last = Some(t);
        let c = cell(s, t);
        dist[c] = Some(0);
        pre[c].push(Pred::Nil);
        enq[c] += 1;
        queue.push((s, t));
    }
    order.extend_from_slice(&queue);

    let mut level: u32 = 1;
    let mut next: Vec<TNode> = Vec::new();
    while !queue.is_empty() {
        for &(a, t) in &queue {
            let window = if a == s {
                g.out_arcs_between(a, t, t)
            } else {
                let lo = if strict { t.saturating_add(1) } else { t };
                let hi = match k {
                    Some(k) => t.saturating_add(k).min(horizon),
                    None => horizon,
                };
                if strict && t == Time::MAX {
                    &[]
                } else {
                    g.out_arcs_between(a, lo, hi)
                }
            };
            for &(tp, b) in window {
                stats.relaxations += 1;
                let cb = cell(b, tp);
                let fresh = match dist[cb] {
                    None => true,
                    Some(d) => d >= level && pre[cb].is_empty(),
                };
                if fresh {
                    dist[cb] = Some(level);
                    pre[cb].clear();
                    enq[cb] += 1;
                    next.push((b, tp));
                    if extend {
                        let hi = match k {
                            Some(k) => tp.saturating_add(k),
                            None => Time::MAX,
                        };
                        let times = g.in_times(b);
                        let start = times.partition_point(|&r| r <= tp);
                        for &r in &times[start..] {
                            if r > hi {
                                break;
                            }
                            stats.relaxations += 1;
                            let cr = cell(b, r);
                            if dist[cr].is_none_or(|d| d > level) {
                                dist[cr] = Some(level);
                                pre[cr].clear();
                            }
                        }
                    }
                }
                if dist[cb] == Some(level) {
                    pre[cb].push(Pred::Node((a, t)));
                }
            }
        }
        order.extend_from_slice(&next);
        level += 1;
        std::mem::swap(&mut queue, &mut next);
        next.clear();
    }

    stats.enqueued = order.len();
    stats.max_enqueues_per_node = enq.iter().copied().max().unwrap_or(0);
    for p in &mut pre {
        p.sort_unstable();
    }
    PredecessorData {
        source: s,
        n,
        horizon,
        cfg,
        dist,
        pre,
        order,
        stats,
    }
}

/// Successor sets of the predecessor graph.
#[derive(Clone, Debug)]
pub struct Successors {
    width: usize,
    lists: Vec<Vec<TNode>>,
}

impl Successors {
    /// Successors of `(v, t)`, by decreasing time then increasing node id.
    pub fn get(&self, v: NodeId, t: Time) -> &[TNode] {
        &self.lists[v * self.width + t as usize]
    }
}

/// Inverts the predecessor sets; the initialization marker is dropped.
pub fn successors(pd: &PredecessorData) -> Successors {
    let width = pd.horizon as usize + 1;
    let mut lists = vec![Vec::new(); pd.n * width];
    for v in 0..pd.n {
        for t in 0..=pd.horizon {
            for p in pd.preds(v, t) {
                if let Pred::Node((w, tw)) = *p {
                    lists[w * width + tw as usize].push((v, t));
                }
            }
        }
    }
    for l in &mut lists {
        l.sort_unstable_by_key(|&(v, t)| (Reverse(t), v));
    }
    Successors { width, lists }
}
