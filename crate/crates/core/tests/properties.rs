use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempbc_core::generate::{small_random_graph, static_like_graph, uniform_graph};
use tempbc_core::oracle::exact_walk_counts;
use tempbc_core::{
    aggregate_static, brandes_static, compute_betweenness, compute_betweenness_with, count_exact,
    enumerate_optimal_walks, source_dependencies, temporal_bfs, Cost, EngineOptions, TemporalGraph,
    VariantConfig, WalkType,
};

fn graphs(count: u64) -> impl Iterator<Item = (u64, TemporalGraph)> {
    (0..count).map(|seed| (seed, small_random_graph(seed, 6, 6, 0.5)))
}

fn configs() -> Vec<VariantConfig> {
    let mut out = VariantConfig::all(1);
    out.extend(
        VariantConfig::all(2)
            .into_iter()
            .filter(|c| c.k_bound() == Some(2)),
    );
    out
}

/// Zeroes the source row: the search seeds it with the empty walk.
fn without_row(mut cells: Vec<u128>, s: usize, width: usize) -> Vec<u128> {
    cells[s * width..(s + 1) * width].fill(0);
    cells
}

#[test]
fn exact_counts_match_enumeration() {
    for cfg in configs() {
        for (seed, g) in graphs(200) {
            let eff = cfg.effective(g.horizon());
            let exact_dag = eff.is_active() && (eff.k_bound().is_some() || eff.strict());
            let width = g.horizon() as usize + 1;
            for s in 0..g.node_count() {
                let (pd, _, _) = source_dependencies(&g, s, cfg).unwrap();
                let got = without_row(count_exact(&pd).unwrap(), s, width);
                // on the exact-arrival DAG, counts follow the passive costs
                let reference = if exact_dag { eff.as_passive() } else { eff };
                let want = without_row(exact_walk_counts(&g, s, reference).unwrap(), s, width);
                assert_eq!(got, want, "seed {seed} s {s} {cfg}");
            }
        }
    }
}

#[test]
fn stamped_search_miscounts_bounded_active_walks() {
    // With a waiting bound the extension stamps stop at t + k, while an
    // optimal walk may wait at its last node up to the horizon; later exact
    // arrivals then look optimal to the stamped search.
    let cfg = VariantConfig::new(Cost::Restless(2), WalkType::Active, false).unwrap();
    let diverging = graphs(100)
        .filter(|(_, g)| {
            let width = g.horizon() as usize + 1;
            (0..g.node_count()).any(|s| {
                let got = without_row(count_exact(&temporal_bfs(g, s, cfg)).unwrap(), s, width);
                got != without_row(exact_walk_counts(g, s, cfg).unwrap(), s, width)
            })
        })
        .count();
    assert!(diverging > 0);
}

#[test]
fn pair_counts_match_enumeration() {
    for cfg in configs() {
        for (seed, g) in graphs(150) {
            for s in 0..g.node_count() {
                let (_, counts, _) = source_dependencies(&g, s, cfg).unwrap();
                for z in 0..g.node_count() {
                    let walks =
                        enumerate_optimal_walks(&g, s, z, cfg.effective(g.horizon())).unwrap();
                    assert_eq!(
                        counts.sigma_pair(z),
                        walks.len() as u128,
                        "seed {seed} {s}->{z} {cfg}"
                    );
                }
            }
        }
    }
}

#[test]
fn predecessor_graphs_are_acyclic_and_enqueue_once() {
    for cfg in configs() {
        for (seed, g) in graphs(200) {
            for s in 0..g.node_count() {
                let pd = temporal_bfs(&g, s, cfg);
                assert!(pd.topological_order().is_ok(), "seed {seed} {cfg}");
                assert!(pd.stats().max_enqueues_per_node <= 1, "seed {seed} {cfg}");
            }
        }
    }
}

#[test]
fn active_predecessor_edges_within_passive() {
    for (seed, g) in graphs(100) {
        for cfg in configs().into_iter().filter(|c| c.is_active()) {
            for s in 0..g.node_count() {
                let active: BTreeSet<_> = temporal_bfs(&g, s, cfg).edges().into_iter().collect();
                let passive: BTreeSet<_> = temporal_bfs(&g, s, cfg.as_passive())
                    .edges()
                    .into_iter()
                    .collect();
                assert!(active.is_subset(&passive), "seed {seed} {cfg}");
            }
        }
    }
}

#[test]
fn foremost_reuses_shortest_predecessor_graph() {
    for (seed, g) in graphs(100) {
        for strict in [false, true] {
            let fm = VariantConfig::new(Cost::Foremost, WalkType::Passive, strict).unwrap();
            let sh = VariantConfig::new(Cost::Shortest, WalkType::Passive, strict).unwrap();
            for s in 0..g.node_count() {
                assert_eq!(
                    temporal_bfs(&g, s, fm).edges(),
                    temporal_bfs(&g, s, sh).edges(),
                    "seed {seed}"
                );
            }
        }
    }
}

#[test]
fn single_time_graphs_reduce_to_static_brandes() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for seed in 0..100 {
        let n = rng.gen_range(2..=30);
        let p = rng.gen_range(0.02..0.3);
        let g = static_like_graph(n, p, seed);
        let temporal = compute_betweenness(&g, VariantConfig::passive_shortest()).unwrap();
        let stat = brandes_static(&aggregate_static(&g));
        for (a, b) in temporal.b_v().iter().zip(&stat) {
            assert!((a - b).abs() < 1e-9, "seed {seed}: {a} vs {b}");
        }
    }
}

#[test]
fn marginals_are_consistent() {
    for cfg in configs() {
        for (_, g) in graphs(50) {
            let r = compute_betweenness(&g, cfg).unwrap();
            let width = g.horizon() as usize + 1;
            let table = r.table().unwrap();
            for v in 0..g.node_count() {
                let s: f64 = table[v * width..(v + 1) * width].iter().sum();
                assert!((s - r.b_v()[v]).abs() <= 1e-9 * s.abs().max(1.0));
            }
            for t in 0..width {
                let s: f64 = (0..g.node_count()).map(|v| table[v * width + t]).sum();
                assert!((s - r.b_t()[t]).abs() <= 1e-9 * s.abs().max(1.0));
            }
        }
    }
}

#[test]
fn results_are_bit_identical_across_worker_counts() {
    let g = uniform_graph(60, 900, 30, 5);
    for cfg in VariantConfig::all(3) {
        let bits = |threads| {
            let r = compute_betweenness_with(
                &g,
                cfg,
                &EngineOptions {
                    threads,
                    ..Default::default()
                },
            )
            .unwrap();
            r.table()
                .unwrap()
                .iter()
                .map(|x| x.to_bits())
                .collect::<Vec<_>>()
        };
        let one = bits(1);
        assert_eq!(one, bits(3), "{cfg}");
        assert_eq!(one, bits(8), "{cfg}");
    }
}
