use tempbc_core::analysis::time_histogram;
use tempbc_core::generate::{drifting_graph, example_graph};
use tempbc_core::{
    compute_betweenness, kendall_tau, prefix_scan, top_k_intersection, BetweennessResult, Cost,
    Ranking, TemporalGraph, VariantConfig, WalkType,
};

fn foremost() -> VariantConfig {
    VariantConfig::new(Cost::Foremost, WalkType::Passive, false).unwrap()
}

#[test]
fn example_passive_and_active_agree_on_top_two() {
    let g = example_graph();
    let a = Ranking::from_values(
        compute_betweenness(&g, VariantConfig::active_shortest())
            .unwrap()
            .b_v(),
    );
    let p = Ranking::from_values(
        compute_betweenness(&g, VariantConfig::passive_shortest())
            .unwrap()
            .b_v(),
    );
    assert_eq!(top_k_intersection(&p, &a, 2).unwrap(), 2);
    assert_eq!(a.top(2).collect::<Vec<_>>(), vec![2, 1]);
}

#[test]
fn comparing_a_result_with_itself() {
    let g = drifting_graph(25, 40, 6, 3);
    let r = Ranking::from_values(
        compute_betweenness(&g, VariantConfig::passive_shortest())
            .unwrap()
            .b_v(),
    );
    assert_eq!(kendall_tau(&r, &r).unwrap(), 1.0);
    for k in 1..=r.len() {
        assert_eq!(top_k_intersection(&r, &r, k).unwrap(), k);
    }
}

#[test]
fn histogram_bins() {
    let g = example_graph();
    let r = compute_betweenness(&g, VariantConfig::active_shortest()).unwrap();
    let total: f64 = r.b_t().iter().sum();
    assert_eq!(time_histogram(&r, 1).unwrap(), vec![(0, total)]);
    let per_time: Vec<f64> = time_histogram(&r, 7)
        .unwrap()
        .into_iter()
        .map(|b| b.1)
        .collect();
    assert_eq!(r.b_t()[7], 0.0);
    assert_eq!(per_time, r.b_t()[..7].to_vec());
    assert_eq!(per_time, vec![0.0, 2.0, 3.0, 3.0, 3.0, 4.0, 2.0]);
    assert!(time_histogram(&r, 0).is_err());
}

#[test]
fn histogram_of_silent_graph_is_zero() {
    let g = TemporalGraph::from_labeled(&["a", "b"], &[("a", "b", 3)], true, None).unwrap();
    let r: BetweennessResult = compute_betweenness(&g, VariantConfig::passive_shortest()).unwrap();
    assert!(time_histogram(&r, 4).unwrap().iter().all(|b| b.1 == 0.0));
}

#[test]
fn prefix_scan_endpoints() {
    let g = drifting_graph(20, 50, 6, 20);
    for cfg in VariantConfig::all(5) {
        let scan = prefix_scan(&g, cfg, &[0.0, 1.0], 10).unwrap();
        // the empty prefix ranks by node id
        let full = Ranking::from_values(compute_betweenness(&g, cfg).unwrap().b_v());
        let by_id = full.top(10).filter(|&v| v < 10).count();
        assert_eq!(scan, vec![(0.0, by_id), (1.0, 10)], "{cfg}");
    }
}

#[test]
fn foremost_prefix_regression() {
    let g = drifting_graph(20, 50, 6, 20);
    let scan = prefix_scan(&g, foremost(), &[0.1, 0.5, 1.0], 10).unwrap();
    assert_eq!(scan, vec![(0.1, 9), (0.5, 10), (1.0, 10)]);
}

#[test]
fn prefix_scan_rejects_bad_mu() {
    let g = example_graph();
    assert!(prefix_scan(&g, foremost(), &[1.5], 2).is_err());
}
