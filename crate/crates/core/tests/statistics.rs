//! Monte Carlo against exact laws and limit theorems.

use greedy_ldp::chain::exact_stop_time_distribution;
use greedy_ldp::checks::tv_distance;
use greedy_ldp::fluid::t_star;
use greedy_ldp::replicas;
use greedy_ldp::ModelParams;

/// Two-sample Kolmogorov–Smirnov statistic for integer samples.
fn ks_statistic(a: &[usize], b: &[usize]) -> f64 {
    let max = a.iter().chain(b).copied().max().unwrap_or(0);
    let cdf = |s: &[usize]| {
        let mut counts = vec![0usize; max + 1];
        for &v in s {
            counts[v] += 1;
        }
        let mut acc = 0usize;
        counts
            .iter()
            .map(|&c| {
                acc += c;
                acc as f64 / s.len() as f64
            })
            .collect::<Vec<_>>()
    };
    let (fa, fb) = (cdf(a), cdf(b));
    fa.iter().zip(&fb).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[test]
fn graph_exploration_and_chain_share_a_law() {
    let params = ModelParams::finite(100, 2.0).unwrap();
    let reps = 100_000;
    let graph = replicas::graph_stop_times(&params, 1, reps).unwrap();
    let chain = replicas::chain_stop_times(&params, 2, reps).unwrap();
    let d = ks_statistic(&graph, &chain);
    // critical value at level 0.001
    let crit = 1.949 * (2.0 / reps as f64).sqrt();
    assert!(d < crit, "KS statistic {d} >= {crit}");
}

#[test]
fn graph_exploration_matches_exact_law() {
    let params = ModelParams::finite(12, 1.5).unwrap();
    let dist = exact_stop_time_distribution(&params).unwrap();
    let samples = replicas::graph_stop_times(&params, 3, 200_000).unwrap();
    let tv = tv_distance(&samples, &dist);
    assert!(tv < 0.006, "TV {tv}");
}

#[test]
fn chain_matches_exact_law() {
    let params = ModelParams::finite(50, 1.0).unwrap();
    let dist = exact_stop_time_distribution(&params).unwrap();
    let samples = replicas::chain_stop_times(&params, 4, 1_000_000).unwrap();
    let tv = tv_distance(&samples, &dist);
    assert!(tv < 0.005, "TV {tv}");
}

#[test]
fn stop_fraction_concentrates() {
    let n = 100_000;
    let params = ModelParams::finite(n, 1.0).unwrap();
    let ts = replicas::chain_stop_times(&params, 5, 100).unwrap();
    let mean = ts.iter().map(|&t| t as f64 / n as f64).sum::<f64>() / ts.len() as f64;
    assert!((mean - t_star(1.0)).abs() < 0.005, "mean {mean}");
}
