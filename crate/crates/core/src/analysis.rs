//! Ranking comparisons, the prefix experiment and time histograms.

use crate::config::VariantConfig;
use crate::engine::{compute_betweenness, BetweennessResult};
use crate::error::{Error, Result};
use crate::graph::{prefix_graph, TemporalGraph};

/// Keys (node ids or times) ordered by decreasing value, ties by
/// increasing key.
#[derive(Clone, Debug, PartialEq)]
pub struct Ranking {
    entries: Vec<(usize, f64)>,
}

impl Ranking {
    /// Ranking over keys `0..values.len()`.
    pub fn from_values(values: &[f64]) -> Self {
        Self::from_pairs(values.iter().copied().enumerate())
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, f64)>) -> Self {
        let mut entries: Vec<_> = pairs.into_iter().collect();
        entries.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        Ranking { entries }
    }

    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn top(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().take(k).map(|e| e.0)
    }

    /// Values indexed by key, `None` if keys are not exactly `0..len`.
    fn by_key(&self) -> Option<Vec<f64>> {
        let mut out = vec![None; self.entries.len()];
        for &(k, v) in &self.entries {
            let slot = out.get_mut(k)?;
            if slot.is_some() {
                return None;
            }
            *slot = Some(v);
        }
        out.into_iter().collect()
    }
}

fn paired(r1: &Ranking, r2: &Ranking) -> Result<Vec<(f64, f64)>> {
    match (r1.by_key(), r2.by_key()) {
        (Some(a), Some(b)) if a.len() == b.len() => Ok(a.into_iter().zip(b).collect()),
        _ => Err(Error::Argument("rankings cover different key sets".into())),
    }
}

fn tie_pairs(sorted: impl Iterator<Item = bool>) -> u64 {
    // `sorted` yields, for each consecutive position, whether it ties with the previous
    let mut total = 0u64;
    let mut run = 1u64;
    for same in sorted {
        if same {
            run += 1;
        } else {
            total += run * (run - 1) / 2;
            run = 1;
        }
    }
    total + run * (run - 1) / 2
}

/// Merge sort on `ys`, returning the number of inversions.
fn count_inversions(ys: &mut [f64], buf: &mut Vec<f64>) -> u64 {
    let n = ys.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut inv = count_inversions(&mut ys[..mid], buf) + count_inversions(&mut ys[mid..], buf);
    buf.clear();
    let (mut i, mut j) = (0, mid);
    while i < mid && j < n {
        if ys[j] < ys[i] {
            inv += (mid - i) as u64;
            buf.push(ys[j]);
            j += 1;
        } else {
            buf.push(ys[i]);
            i += 1;
        }
    }
    buf.extend_from_slice(&ys[i..mid]);
    buf.extend_from_slice(&ys[j..n]);
    ys.copy_from_slice(buf);
    inv
}

/// Kendall tau-b between two rankings over the same keys.
///
/// When either side is constant the coefficient is undefined; this returns
/// 1 if both are constant and 0 otherwise.
pub fn kendall_tau(r1: &Ranking, r2: &Ranking) -> Result<f64> {
    let mut xy = paired(r1, r2)?;
    let n = xy.len() as u64;
    if n < 2 {
        return Ok(1.0);
    }
    xy.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let n0 = n * (n - 1) / 2;
    let n1 = tie_pairs(xy.windows(2).map(|w| w[0].0 == w[1].0));
    let n3 = tie_pairs(xy.windows(2).map(|w| w[0] == w[1]));
    let mut ys: Vec<f64> = xy.iter().map(|p| p.1).collect();
    let swaps = count_inversions(&mut ys, &mut Vec::with_capacity(xy.len()));
    let n2 = tie_pairs(ys.windows(2).map(|w| w[0] == w[1]));

    if n1 == n0 || n2 == n0 {
        return Ok(if n1 == n0 && n2 == n0 { 1.0 } else { 0.0 });
    }
    let num = n0 as f64 - n1 as f64 - n2 as f64 + n3 as f64 - 2.0 * swaps as f64;
    let den = ((n0 - n1) as f64 * (n0 - n2) as f64).sqrt();
    Ok((num / den).clamp(-1.0, 1.0))
}

/// Size of the intersection of the two top-`k` key sets.
pub fn top_k_intersection(r1: &Ranking, r2: &Ranking, k: usize) -> Result<usize> {
    paired(r1, r2)?;
    if k == 0 || k > r1.len() {
        return Err(Error::Argument(format!(
            "k must lie in 1..={}, got {k}",
            r1.len()
        )));
    }
    let mut a: Vec<usize> = r1.top(k).collect();
    a.sort_unstable();
    Ok(r2.top(k).filter(|x| a.binary_search(x).is_ok()).count())
}

/// For each `mu`, the top-`k` overlap between node rankings of the prefix
/// graph (arcs up to `floor(mu * T)`) and of the full graph.
pub fn prefix_scan(
    g: &TemporalGraph,
    cfg: VariantConfig,
    mus: &[f64],
    k: usize,
) -> Result<Vec<(f64, usize)>> {
    let full = Ranking::from_values(compute_betweenness(g, cfg)?.b_v());
    mus.iter()
        .map(|&mu| {
            let p = prefix_graph(g, mu)?;
            let r = Ranking::from_values(compute_betweenness(&p, cfg)?.b_v());
            Ok((mu, top_k_intersection(&r, &full, k)?))
        })
        .collect()
}

/// `B(t)` mass in `bins` equal-width bins over `[0, T]`; time `t` falls in
/// bin `floor(t * bins / T)`, the last bin being closed.
pub fn time_histogram(result: &BetweennessResult, bins: usize) -> Result<Vec<(usize, f64)>> {
    if bins == 0 {
        return Err(Error::Argument("bins must be positive".into()));
    }
    let horizon = result.horizon() as u64;
    let mut mass = vec![0.0; bins];
    for (t, &b) in result.b_t().iter().enumerate() {
        let bin = (t as u64 * bins as u64).checked_div(horizon).unwrap_or(0) as usize;
        mass[bin.min(bins - 1)] += b;
    }
    Ok(mass.into_iter().enumerate().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute_tau_b(x: &[f64], y: &[f64]) -> f64 {
        let (mut c, mut d, mut tx, mut ty) = (0f64, 0f64, 0f64, 0f64);
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                let a = (x[i] - x[j]).signum() * (x[i] != x[j]) as i32 as f64;
                let b = (y[i] - y[j]).signum() * (y[i] != y[j]) as i32 as f64;
                match (a == 0.0, b == 0.0) {
                    (true, true) => {}
                    (true, false) => tx += 1.0,
                    (false, true) => ty += 1.0,
                    (false, false) if a == b => c += 1.0,
                    _ => d += 1.0,
                }
            }
        }
        (c - d) / ((c + d + tx) * (c + d + ty)).sqrt()
    }

    #[test]
    fn tau_examples() {
        let a = Ranking::from_values(&[1.0, 2.0, 3.0, 4.0]);
        let b = Ranking::from_values(&[2.0, 1.0, 4.0, 3.0]);
        let r = Ranking::from_values(&[4.0, 3.0, 2.0, 1.0]);
        assert_eq!(kendall_tau(&a, &a).unwrap(), 1.0);
        assert_eq!(kendall_tau(&a, &r).unwrap(), -1.0);
        assert!((kendall_tau(&a, &b).unwrap() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn tau_matches_pairwise_definition() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let n = rng.gen_range(2..40);
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(0..5) as f64).collect();
            let y: Vec<f64> = (0..n).map(|_| rng.gen_range(0..5) as f64).collect();
            let want = brute_tau_b(&x, &y);
            let got = kendall_tau(&Ranking::from_values(&x), &Ranking::from_values(&y)).unwrap();
            if want.is_finite() {
                assert!((got - want).abs() < 1e-12, "{x:?} {y:?}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn tau_constant_sides() {
        let z = Ranking::from_values(&[0.0; 5]);
        let a = Ranking::from_values(&[1.0, 2.0, 3.0, 4.0, 5.0]);
        assert_eq!(kendall_tau(&z, &z).unwrap(), 1.0);
        assert_eq!(kendall_tau(&z, &a).unwrap(), 0.0);
    }

    #[test]
    fn tau_rejects_mismatched_domains() {
        let a = Ranking::from_values(&[1.0, 2.0]);
        let b = Ranking::from_values(&[1.0, 2.0, 3.0]);
        assert!(kendall_tau(&a, &b).is_err());
    }

    #[test]
    fn ranking_ties_by_key() {
        let r = Ranking::from_values(&[1.0, 3.0, 1.0, 3.0]);
        assert_eq!(r.top(4).collect::<Vec<_>>(), vec![1, 3, 0, 2]);
    }

    #[test]
    fn top_k_cases() {
        let a = Ranking::from_values(&[4.0, 3.0, 2.0, 1.0]);
        let r = Ranking::from_values(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(top_k_intersection(&a, &a, 3).unwrap(), 3);
        assert_eq!(top_k_intersection(&a, &r, 2).unwrap(), 0);
        assert!(top_k_intersection(&a, &r, 0).is_err());
        assert!(top_k_intersection(&a, &r, 5).is_err());
    }
}
