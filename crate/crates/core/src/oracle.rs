//! Brute-force ground truth by explicit walk enumeration.
//!
//! Costs come from a plain BFS over walk states `(node, time of the last
//! transition)`; walks are then listed by depth-first search, pruned with
//! reverse state distances so that only optimal walks are produced. The
//! betweenness sums use exact rationals. Nothing here touches the
//! predecessor-graph pipeline.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::config::{Cost, VariantConfig};
use crate::engine::BetweennessResult;
use crate::error::{Error, Result};
use crate::graph::TemporalGraph;
use crate::{NodeId, TNode, Time};

/// Size guard for exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_nodes: usize,
    pub max_horizon: Time,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_nodes: 8,
            max_horizon: 8,
        }
    }
}

impl OracleLimits {
    pub fn check(&self, g: &TemporalGraph) -> Result<()> {
        if g.node_count() > self.max_nodes || g.horizon() > self.max_horizon {
            return Err(Error::TooLarge(format!(
                "oracle limited to n <= {} and T <= {} (got n = {}, T = {})",
                self.max_nodes,
                self.max_horizon,
                g.node_count(),
                g.horizon()
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratedWalk {
    /// Transitions `(u, v, t)` in order.
    pub transitions: Vec<(NodeId, NodeId, Time)>,
    /// Visited temporal nodes for the walk type; active walks are extended
    /// on their last node up to the horizon.
    pub visited: Vec<TNode>,
}

impl EnumeratedWalk {
    fn new(transitions: Vec<(NodeId, NodeId, Time)>, active: bool, horizon: Time) -> Self {
        let (u1, _, t1) = transitions[0];
        let mut visited = vec![(u1, t1)];
        if active {
            for pair in transitions.windows(2) {
                let (_, v, ti) = pair[0];
                let tn = pair[1].2;
                visited.extend((ti..=tn).map(|t| (v, t)));
            }
            let &(_, vk, tk) = transitions.last().unwrap();
            visited.extend((tk..=horizon).map(|t| (vk, t)));
        } else {
            visited.extend(transitions.iter().map(|&(_, v, t)| (v, t)));
        }
        EnumeratedWalk {
            transitions,
            visited,
        }
    }

    pub fn len(&self) -> usize {
        self.transitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transitions.is_empty()
    }

    pub fn arrival(&self) -> TNode {
        let &(_, v, t) = self.transitions.last().unwrap();
        (v, t)
    }
}

/// State graph of walks from one source. State `0` is the start (no
/// transition yet); state `1 + v * width + t` is "last transition arrived
/// at `v` at time `t`".
struct States<'g> {
    g: &'g TemporalGraph,
    s: NodeId,
    width: usize,
    cfg: VariantConfig,
    fwd: Vec<Vec<usize>>,
}

impl<'g> States<'g> {
    fn new(g: &'g TemporalGraph, s: NodeId, cfg: VariantConfig) -> Self {
        let width = g.horizon() as usize + 1;
        let total = 1 + g.node_count() * width;
        let mut st = States {
            g,
            s,
            width,
            cfg,
            fwd: vec![Vec::new(); total],
        };
        for x in 0..total {
            let next: Vec<usize> = st.moves(x).into_iter().map(|(w, t)| st.id(w, t)).collect();
            st.fwd[x] = next;
        }
        st
    }

    fn id(&self, v: NodeId, t: Time) -> usize {
        1 + v * self.width + t as usize
    }

    fn node_time(&self, x: usize) -> TNode {
        ((x - 1) / self.width, ((x - 1) % self.width) as Time)
    }

    fn moves(&self, x: usize) -> Vec<TNode> {
        let arcs: &[(Time, NodeId)] = if x == 0 {
            self.g.out_arcs(self.s)
        } else {
            let (v, t) = self.node_time(x);
            let lo = if self.cfg.strict() {
                t as u64 + 1
            } else {
                t as u64
            };
            let hi = match self.cfg.k_bound() {
                Some(k) => (t as u64 + k as u64).min(self.g.horizon() as u64),
                None => self.g.horizon() as u64,
            };
            if lo > hi {
                &[]
            } else {
                self.g.out_arcs_between(v, lo as Time, hi as Time)
            }
        };
        arcs.iter().map(|&(t, w)| (w, t)).collect()
    }

    /// Minimum number of transitions to reach each state.
    fn forward_lengths(&self) -> Vec<Option<u32>> {
        let mut d = vec![None; self.fwd.len()];
        d[0] = Some(0);
        let mut q = VecDeque::from([0usize]);
        while let Some(x) = q.pop_front() {
            let dx = d[x].unwrap();
            for &y in &self.fwd[x] {
                if d[y].is_none() {
                    d[y] = Some(dx + 1);
                    q.push_back(y);
                }
            }
        }
        d
    }

    /// Minimum number of further transitions from each state to any state
    /// in `terminal`.
    fn reverse_lengths(&self, rev: &[Vec<usize>], terminal: &[usize]) -> Vec<Option<u32>> {
        let mut r = vec![None; self.fwd.len()];
        let mut q = VecDeque::new();
        for &x in terminal {
            r[x] = Some(0);
            q.push_back(x);
        }
        while let Some(y) = q.pop_front() {
            let ry = r[y].unwrap();
            for &x in &rev[y] {
                if r[x].is_none() {
                    r[x] = Some(ry + 1);
                    q.push_back(x);
                }
            }
        }
        r
    }

    fn reversed(&self) -> Vec<Vec<usize>> {
        let mut rev = vec![Vec::new(); self.fwd.len()];
        for (x, ys) in self.fwd.iter().enumerate() {
            for &y in ys {
                rev[y].push(x);
            }
        }
        rev
    }
}

/// A set of terminal states and the exact number of transitions a walk
/// must have when it stops there.
struct Target {
    terminal: Vec<usize>,
    length: u32,
    remaining: Vec<Option<u32>>,
}

/// Depth-first walk listing; every prefix it extends can still finish
/// on some target with exactly the target length.
struct Search<'a> {
    st: &'a States<'a>,
    targets: &'a [Target],
    active: bool,
    cutoff: usize,
    path: Vec<(NodeId, NodeId, Time)>,
    on_path: Vec<bool>,
    out: Vec<Vec<EnumeratedWalk>>,
}

impl Search<'_> {
    fn go(&mut self, x: usize) {
        let len = self.path.len() as u32;
        for (j, tg) in self.targets.iter().enumerate() {
            if len == tg.length && tg.terminal.contains(&x) {
                let walk = EnumeratedWalk::new(self.path.clone(), self.active, self.st.g.horizon());
                self.out[j].push(walk);
            }
        }
        let from = if x == 0 {
            self.st.s
        } else {
            self.st.node_time(x).0
        };
        for &y in &self.st.fwd[x] {
            let useful = self
                .targets
                .iter()
                .any(|tg| tg.remaining[y].is_some_and(|r| len + 1 + r <= tg.length));
            if !useful {
                continue;
            }
            // an optimal walk never repeats a state: the loop could be cut
            assert!(!self.on_path[y], "optimal walk revisits a state");
            assert!(
                self.path.len() < self.cutoff,
                "walk length exceeds n * |distinct times|"
            );
            let (w, t) = self.st.node_time(y);
            self.path.push((from, w, t));
            self.on_path[y] = true;
            self.go(y);
            self.on_path[y] = false;
            self.path.pop();
        }
    }
}

fn enumerate(st: &States, targets: &[Target], active: bool) -> Vec<Vec<EnumeratedWalk>> {
    let distinct = st.g.distinct_times().len().max(1);
    let mut search = Search {
        st,
        targets,
        active,
        cutoff: st.g.node_count() * distinct,
        path: Vec::new(),
        on_path: vec![false; st.fwd.len()],
        out: vec![Vec::new(); targets.len()],
    };
    search.on_path[0] = true;
    search.go(0);
    search.out
}

/// Optimal overall cost of walks from `s` to `z`, as the terminal states
/// and length a walk must end with.
fn pair_target(st: &States, d: &[Option<u32>], z: NodeId) -> Option<(Vec<usize>, u32)> {
    let reach: Vec<(Time, u32)> = (0..st.width as Time)
        .filter_map(|t| d[st.id(z, t)].map(|l| (t, l)))
        .collect();
    if st.cfg.cost() == Cost::Foremost {
        let &(t, l) = reach.iter().min()?;
        Some((vec![st.id(z, t)], l))
    } else {
        let best = reach.iter().map(|&(_, l)| l).min()?;
        let terminal = reach
            .iter()
            .filter(|&&(_, l)| l == best)
            .map(|&(t, _)| st.id(z, t))
            .collect();
        Some((terminal, best))
    }
}

/// All optimal `s`-`z` walks; empty when `s == z` or `z` is unreachable.
pub fn enumerate_optimal_walks(
    g: &TemporalGraph,
    s: NodeId,
    z: NodeId,
    cfg: VariantConfig,
) -> Result<Vec<EnumeratedWalk>> {
    OracleLimits::default().check(g)?;
    if s == z {
        return Ok(Vec::new());
    }
    let st = States::new(g, s, cfg);
    let d = st.forward_lengths();
    let Some((terminal, length)) = pair_target(&st, &d, z) else {
        return Ok(Vec::new());
    };
    let remaining = st.reverse_lengths(&st.reversed(), &terminal);
    let mut found = enumerate(
        &st,
        &[Target {
            terminal,
            length,
            remaining,
        }],
        cfg.is_active(),
    );
    Ok(found.pop().unwrap())
}

/// Number of walks from `s` arriving exactly at each `(v, t)` whose length
/// is optimal for `(v, t)`: the exact-arrival minimum for passive walks,
/// the minimum over arrivals at `v` up to `t` for active ones. Node-major
/// over times `0..=T`.
pub fn exact_walk_counts(g: &TemporalGraph, s: NodeId, cfg: VariantConfig) -> Result<Vec<u128>> {
    OracleLimits::default().check(g)?;
    let st = States::new(g, s, cfg);
    let d = st.forward_lengths();
    let rev = st.reversed();
    let mut targets = Vec::new();
    let mut cells = Vec::new();
    for v in 0..g.node_count() {
        let mut best: Option<u32> = None;
        for t in 0..st.width as Time {
            let x = st.id(v, t);
            let Some(l) = d[x] else { continue };
            best = Some(best.map_or(l, |b| b.min(l)));
            let want = if cfg.is_active() && cfg.cost() != Cost::Foremost {
                best.unwrap()
            } else {
                l
            };
            if l == want {
                targets.push(Target {
                    terminal: vec![x],
                    length: l,
                    remaining: st.reverse_lengths(&rev, &[x]),
                });
                cells.push(v * st.width + t as usize);
            }
        }
    }
    let found = enumerate(&st, &targets, cfg.is_active());
    let mut counts = vec![0u128; g.node_count() * st.width];
    for (c, walks) in cells.into_iter().zip(found) {
        counts[c] = walks.len() as u128;
    }
    Ok(counts)
}

/// Exact `B(v, t)` as rationals, node-major over times `0..=T`.
pub fn oracle_table(
    g: &TemporalGraph,
    cfg: VariantConfig,
    limits: OracleLimits,
) -> Result<Vec<BigRational>> {
    limits.check(g)?;
    let n = g.node_count();
    let width = g.horizon() as usize + 1;
    let mut b = vec![BigRational::zero(); n * width];
    for s in 0..n {
        let st = States::new(g, s, cfg);
        let d = st.forward_lengths();
        let rev = st.reversed();
        let mut targets = Vec::new();
        let mut ends = Vec::new();
        for z in (0..n).filter(|&z| z != s) {
            if let Some((terminal, length)) = pair_target(&st, &d, z) {
                let remaining = st.reverse_lengths(&rev, &terminal);
                targets.push(Target {
                    terminal,
                    length,
                    remaining,
                });
                ends.push(z);
            }
        }
        let found = enumerate(&st, &targets, cfg.is_active());
        for (z, walks) in ends.into_iter().zip(found) {
            let sigma = walks.len();
            if sigma == 0 {
                continue;
            }
            let mut through = vec![0usize; n * width];
            for w in &walks {
                let set: BTreeSet<TNode> = w
                    .visited
                    .iter()
                    .copied()
                    .filter(|&(v, _)| v != s && v != z)
                    .collect();
                for (v, t) in set {
                    through[v * width + t as usize] += 1;
                }
            }
            for (c, &k) in through.iter().enumerate() {
                if k > 0 {
                    b[c] += BigRational::new(BigInt::from(k), BigInt::from(sigma));
                }
            }
        }
    }
    Ok(b)
}

/// Betweenness by enumeration under the default size guard.
pub fn oracle_betweenness(g: &TemporalGraph, cfg: VariantConfig) -> Result<BetweennessResult> {
    let cfg = cfg.effective(g.horizon());
    let table = oracle_table(g, cfg, OracleLimits::default())?;
    let values = table
        .iter()
        .map(|r| r.to_f64().unwrap_or(f64::NAN))
        .collect();
    Ok(BetweennessResult::from_table(g, cfg, values))
}
