//! Temporal graph model, edge-list ingestion and derived graphs.

use std::collections::HashMap;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::{NodeId, Time};

/// A temporal graph `(V, E, T)` with dense node ids.
///
/// Arcs are kept sorted by `(tail, time, head)` and deduplicated. The
/// horizon is at least the largest arc time; ingestion sets it to exactly
/// that, derived graphs (prefixes, fixtures) may carry a larger one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemporalGraph {
    labels: Vec<String>,
    arcs: Vec<(NodeId, NodeId, Time)>,
    horizon: Time,
    directed: bool,
    time_labels: Option<Vec<u64>>,
    out: Vec<Vec<(Time, NodeId)>>,
    in_times: Vec<Vec<Time>>,
}

impl TemporalGraph {
    /// Builds a graph from labels and id-based arcs. Self-loops and
    /// out-of-range ids are rejected, duplicates collapsed.
    pub fn from_arcs(
        labels: Vec<String>,
        arcs: impl IntoIterator<Item = (NodeId, NodeId, Time)>,
        directed: bool,
        horizon: Option<Time>,
    ) -> Result<Self> {
        let n = labels.len();
        {
            let mut seen = HashMap::with_capacity(n);
            for (i, l) in labels.iter().enumerate() {
                if seen.insert(l.as_str(), i).is_some() {
                    return Err(Error::Argument(format!("duplicate node label {l:?}")));
                }
            }
        }
        let mut arcs: Vec<_> = arcs.into_iter().collect();
        for &(u, v, _) in &arcs {
            if u >= n || v >= n {
                return Err(Error::Argument(format!(
                    "arc ({u},{v}) references unknown node"
                )));
            }
            if u == v {
                return Err(Error::Argument(format!(
                    "self-loop on node {:?}",
                    labels[u]
                )));
            }
        }
        arcs.sort_unstable_by_key(|&(u, v, t)| (u, t, v));
        arcs.dedup();
        let max_t = arcs.iter().map(|a| a.2).max().unwrap_or(0);
        let horizon = match horizon {
            Some(h) if h < max_t => {
                return Err(Error::Argument(format!(
                    "horizon {h} below largest arc time {max_t}"
                )))
            }
            Some(h) => h,
            None => max_t,
        };

        let mut out = vec![Vec::new(); n];
        let mut in_times = vec![Vec::new(); n];
        for &(u, v, t) in &arcs {
            out[u].push((t, v));
            in_times[v].push(t);
        }
        for times in &mut in_times {
            times.sort_unstable();
            times.dedup();
        }
        Ok(TemporalGraph {
            labels,
            arcs,
            horizon,
            directed,
            time_labels: None,
            out,
            in_times,
        })
    }

    /// Builds a graph from string labels; convenient for fixtures.
    pub fn from_labeled(
        nodes: &[&str],
        arcs: &[(&str, &str, Time)],
        directed: bool,
        horizon: Option<Time>,
    ) -> Result<Self> {
        let labels: Vec<String> = nodes.iter().map(|s| s.to_string()).collect();
        let index: HashMap<&str, NodeId> = nodes.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut ids = Vec::with_capacity(arcs.len() * 2);
        for &(u, v, t) in arcs {
            let (Some(&a), Some(&b)) = (index.get(u), index.get(v)) else {
                return Err(Error::Argument(format!(
                    "arc ({u},{v},{t}) references unknown node"
                )));
            };
            ids.push((a, b, t));
            if !directed {
                ids.push((b, a, t));
            }
        }
        Self::from_arcs(labels, ids, directed, horizon)
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Maximum time `T`; tables span times `0..=T`.
    pub fn horizon(&self) -> Time {
        self.horizon
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn arcs(&self) -> &[(NodeId, NodeId, Time)] {
        &self.arcs
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v]
    }

    pub fn node_id(&self, label: &str) -> Option<NodeId> {
        self.labels.iter().position(|l| l == label)
    }

    /// Out-arcs of `v` as `(time, head)`, sorted by time then head.
    pub fn out_arcs(&self, v: NodeId) -> &[(Time, NodeId)] {
        &self.out[v]
    }

    /// Out-arcs of `v` with time in `lo..=hi`.
    pub fn out_arcs_between(&self, v: NodeId, lo: Time, hi: Time) -> &[(Time, NodeId)] {
        let arcs = &self.out[v];
        let start = arcs.partition_point(|&(t, _)| t < lo);
        let end = arcs.partition_point(|&(t, _)| t <= hi);
        if start >= end {
            &[]
        } else {
            &arcs[start..end]
        }
    }

    /// Sorted distinct times of arcs entering `v`.
    pub fn in_times(&self, v: NodeId) -> &[Time] {
        &self.in_times[v]
    }

    /// Sorted distinct arc times.
    pub fn distinct_times(&self) -> Vec<Time> {
        let mut ts: Vec<Time> = self.arcs.iter().map(|a| a.2).collect();
        ts.sort_unstable();
        ts.dedup();
        ts
    }

    /// Original timestamp for a (possibly compressed) time index.
    pub fn time_label(&self, t: Time) -> u64 {
        match &self.time_labels {
            Some(map) => map.get(t as usize).copied().unwrap_or(t as u64),
            None => t as u64,
        }
    }

    pub fn is_time_compressed(&self) -> bool {
        self.time_labels.is_some()
    }

    /// Hex SHA-256 over the canonical arc list.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.labels.len() as u64).to_le_bytes());
        h.update((self.horizon as u64).to_le_bytes());
        for l in &self.labels {
            h.update(l.as_bytes());
            h.update([0u8]);
        }
        for &(u, v, t) in &self.arcs {
            h.update((u as u64).to_le_bytes());
            h.update((v as u64).to_le_bytes());
            h.update(t.to_le_bytes());
        }
        h.finalize().iter().fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }

    /// Canonical edge list, one directed arc per line.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for &(u, v, t) in &self.arcs {
            let _ = writeln!(
                s,
                "{} {} {}",
                self.labels[u],
                self.labels[v],
                self.time_label(t)
            );
        }
        s
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    pub directed: bool,
    /// Remap distinct timestamps to `0, 1, 2, ...` in increasing order.
    pub compress_times: bool,
}

/// Parses a whitespace-separated `u v t` edge list. Blank lines and lines
/// starting with `#` are skipped. Undirected input yields both orientations.
pub fn parse_edge_list(text: &str, directed: bool) -> Result<TemporalGraph> {
    parse_edge_list_with(
        text,
        ParseOptions {
            directed,
            compress_times: false,
        },
    )
}

pub fn parse_edge_list_with(text: &str, opts: ParseOptions) -> Result<TemporalGraph> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, NodeId> = HashMap::new();
    let mut raw: Vec<(NodeId, NodeId, u64, usize)> = Vec::new();

    let mut intern = |tok: &str, labels: &mut Vec<String>| -> NodeId {
        if let Some(&id) = index.get(tok) {
            return id;
        }
        let id = labels.len();
        labels.push(tok.to_string());
        index.insert(tok.to_string(), id);
        id
    };

    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("expected 3 fields \"u v t\", found {}", fields.len()),
            });
        }
        let t_str = fields[2];
        if t_str.starts_with('-')
            && t_str[1..].chars().all(|c| c.is_ascii_digit())
            && t_str.len() > 1
        {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("negative time {t_str}"),
            });
        }
        let t: u64 = t_str.parse().map_err(|_| Error::Parse {
            line: lineno,
            msg: format!("time {t_str:?} is not a non-negative integer"),
        })?;
        if fields[0] == fields[1] {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("self-loop on {}", fields[0]),
            });
        }
        let u = intern(fields[0], &mut labels);
        let v = intern(fields[1], &mut labels);
        raw.push((u, v, t, lineno));
        if !opts.directed {
            raw.push((v, u, t, lineno));
        }
    }
    if raw.is_empty() {
        return Err(Error::EmptyGraph);
    }

    let (arcs, time_labels) = if opts.compress_times {
        let mut ts: Vec<u64> = raw.iter().map(|a| a.2).collect();
        ts.sort_unstable();
        ts.dedup();
        let arcs: Vec<_> = raw
            .iter()
            .map(|&(u, v, t, _)| (u, v, ts.binary_search(&t).expect("present") as Time))
            .collect();
        (arcs, Some(ts))
    } else {
        let mut arcs = Vec::with_capacity(raw.len());
        for (u, v, t, line) in raw {
            let t = Time::try_from(t).map_err(|_| Error::Parse {
                line,
                msg: format!("time {t} exceeds {}; use time compression", Time::MAX),
            })?;
            arcs.push((u, v, t));
        }
        (arcs, None)
    };

    let mut g = TemporalGraph::from_arcs(labels, arcs, opts.directed, None)?;
    g.time_labels = time_labels;
    Ok(g)
}

/// Time-projection of a temporal graph onto plain directed edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaticGraph {
    n: usize,
    edges: Vec<(NodeId, NodeId)>,
    out: Vec<Vec<NodeId>>,
}

impl StaticGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> Self {
        let mut edges: Vec<_> = edges.into_iter().filter(|&(u, v)| u != v).collect();
        edges.sort_unstable();
        edges.dedup();
        let mut out = vec![Vec::new(); n];
        for &(u, v) in &edges {
            out[u].push(v);
        }
        StaticGraph { n, edges, out }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.out[v]
    }
}

pub fn aggregate_static(g: &TemporalGraph) -> StaticGraph {
    StaticGraph::new(g.node_count(), g.arcs().iter().map(|&(u, v, _)| (u, v)))
}

/// The graph of the first `mu` fraction of times: arcs with
/// `t <= floor(mu * T)`, horizon `floor(mu * T)`, same nodes.
pub fn prefix_graph(g: &TemporalGraph, mu: f64) -> Result<TemporalGraph> {
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::Argument(format!("mu must lie in [0, 1], got {mu}")));
    }
    // small slack so that e.g. 0.29 * 100 lands on 29
    let threshold = ((mu * g.horizon() as f64) + 1e-9).floor() as Time;
    let threshold = threshold.min(g.horizon());
    let arcs = g.arcs().iter().copied().filter(|a| a.2 <= threshold);
    let mut p = TemporalGraph::from_arcs(g.labels.clone(), arcs, g.directed, Some(threshold))?;
    p.time_labels = g.time_labels.clone();
    Ok(p)
}
