//! Reference fixture and seeded synthetic graphs for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::TemporalGraph;
use crate::Time;

/// Five-node reference graph: arcs `a->b@1, b->c@2, d->c@3, b->c@5,
/// c->b@5, c->d@6`, horizon 7, `e` isolated.
pub fn example_graph() -> TemporalGraph {
    TemporalGraph::from_labeled(
        &["a", "b", "c", "d", "e"],
        &[
            ("a", "b", 1),
            ("b", "c", 2),
            ("d", "c", 3),
            ("b", "c", 5),
            ("c", "b", 5),
            ("c", "d", 6),
        ],
        true,
        Some(7),
    )
    .expect("valid fixture")
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("n{i}")).collect()
}

/// Each possible arc `(u, v, t)` with `u != v`, `t in 1..=horizon` is kept
/// independently with probability `p`.
pub fn bernoulli_graph<R: Rng>(
    rng: &mut R,
    n: usize,
    horizon: Time,
    p: f64,
    directed: bool,
) -> TemporalGraph {
    let mut arcs = Vec::new();
    for t in 1..=horizon {
        for u in 0..n {
            for v in 0..n {
                if u == v || (!directed && v < u) {
                    continue;
                }
                if rng.gen_bool(p) {
                    arcs.push((u, v, t));
                    if !directed {
                        arcs.push((v, u, t));
                    }
                }
            }
        }
    }
    TemporalGraph::from_arcs(labels(n), arcs, directed, Some(horizon)).expect("valid arcs")
}

/// Small random graph for oracle comparisons: `n` in `2..=max_n`,
/// horizon in `1..=max_t`, arc probability in `[0.1, max_p]`.
pub fn small_random_graph(seed: u64, max_n: usize, max_t: Time, max_p: f64) -> TemporalGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_n);
    let horizon = rng.gen_range(1..=max_t);
    let p = rng.gen_range(0.1..=max_p);
    bernoulli_graph(&mut rng, n, horizon, p, true)
}

/// `m` arcs drawn uniformly (duplicates dropped) over `n` nodes and times `1..=horizon`.
pub fn uniform_graph(n: usize, m: usize, horizon: Time, seed: u64) -> TemporalGraph {
    assert!(n >= 2 && horizon >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let arcs: Vec<_> = (0..m)
        .map(|_| {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            (u, v, rng.gen_range(1..=horizon))
        })
        .collect();
    TemporalGraph::from_arcs(labels(n), arcs, true, Some(horizon)).expect("valid arcs")
}

/// Directed graph whose arcs all sit at time 1.
pub fn static_like_graph(n: usize, p: f64, seed: u64) -> TemporalGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    bernoulli_graph(&mut rng, n, 1, p, true)
}

/// Graph where activity drifts across a few communities over time, so
/// early and late periods favor different brokers.
pub fn drifting_graph(n: usize, horizon: Time, arcs_per_step: usize, seed: u64) -> TemporalGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hubs = (n / 6).max(2);
    let mut arcs = Vec::new();
    for t in 1..=horizon {
        for _ in 0..arcs_per_step {
            let u = rng.gen_range(0..n);
            let v = if rng.gen_bool(0.5) {
                rng.gen_range(0..hubs)
            } else {
                rng.gen_range(0..n)
            };
            if u != v {
                arcs.push((u, v, t));
                arcs.push((v, u, t));
            }
        }
    }
    TemporalGraph::from_arcs(labels(n), arcs, false, Some(horizon)).expect("valid arcs")
}
