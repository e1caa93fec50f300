use std::collections::BTreeSet;

use proptest::prelude::*;
use tempbc_core::{
    compute_betweenness, kendall_tau, oracle_betweenness, parse_edge_list, Ranking, TemporalGraph,
    VariantConfig,
};

fn arc_lists() -> impl Strategy<Value = (usize, Vec<(usize, usize, u32)>)> {
    (2usize..=6).prop_flat_map(|n| {
        let arc = (0..n, 0..n, 0u32..=6).prop_filter("no self-loops", |a| a.0 != a.1);
        (Just(n), prop::collection::vec(arc, 1..25))
    })
}

fn graph(n: usize, arcs: &[(usize, usize, u32)]) -> TemporalGraph {
    let labels = (0..n).map(|i| format!("v{i}")).collect();
    TemporalGraph::from_arcs(labels, arcs.iter().copied(), true, None).unwrap()
}

fn labeled_arcs(g: &TemporalGraph) -> BTreeSet<(String, String, u64)> {
    g.arcs()
        .iter()
        .map(|&(u, v, t)| {
            (
                g.label(u).to_string(),
                g.label(v).to_string(),
                g.time_label(t),
            )
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_lists_round_trip((n, arcs) in arc_lists()) {
        let g = graph(n, &arcs);
        let back = parse_edge_list(&g.to_edge_list(), true).unwrap();
        prop_assert_eq!(labeled_arcs(&g), labeled_arcs(&back));
    }

    #[test]
    fn engine_agrees_with_enumeration((n, arcs) in arc_lists(), pick in 0usize..14) {
        let g = graph(n, &arcs);
        let mut configs = VariantConfig::all(1);
        configs.extend(VariantConfig::all(2).into_iter().filter(|c| c.k_bound() == Some(2)));
        let cfg = configs[pick];
        let fast = compute_betweenness(&g, cfg).unwrap();
        let slow = oracle_betweenness(&g, cfg).unwrap();
        for (a, b) in fast.table().unwrap().iter().zip(slow.table().unwrap()) {
            prop_assert!((a - b).abs() < 1e-9, "{} vs {} under {}", a, b, cfg);
        }
    }

    #[test]
    fn tau_is_symmetric_and_bounded(pairs in prop::collection::vec((0u8..4, 0u8..4), 2..30)) {
        let x: Vec<f64> = pairs.iter().map(|p| f64::from(p.0)).collect();
        let y: Vec<f64> = pairs.iter().map(|p| f64::from(p.1)).collect();
        let (rx, ry) = (Ranking::from_values(&x), Ranking::from_values(&y));
        let a = kendall_tau(&rx, &ry).unwrap();
        prop_assert!((a - kendall_tau(&ry, &rx).unwrap()).abs() < 1e-12);
        prop_assert!((-1.0..=1.0).contains(&a));
    }
}
