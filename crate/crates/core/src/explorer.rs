//! Explicit `G(n, c/n)` graphs and the vertex-level greedy exploration.
//!
//! This is the ground-truth reference for the chain abstraction in
//! [`crate::chain`]: both produce the same law for the stopping time.

use std::fmt::Write as _;
use std::io::BufRead;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::ModelParams;

/// Simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Build from an edge list. Rejects self-loops, duplicates and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::param(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::param(format!("self-loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in adjacency.iter_mut() {
            list.sort_unstable();
            let before = list.len();
            list.dedup();
            if list.len() != before {
                return Err(Error::param("duplicate edge"));
            }
        }
        Ok(Self {
            adjacency,
            edge_count: edges.len(),
        })
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::from_edges(n, &edges).expect("complete graph edges are valid")
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().copied().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Edge-list text: `"n m"` then one sorted `"u v"` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.n(), self.edge_count).unwrap();
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    pub fn from_edge_list<R: BufRead>(reader: R) -> Result<Self> {
        let mut lines = reader
            .lines()
            .map(|l| l.map_err(Error::from))
            .filter(|l| l.as_ref().map(|s| !s.trim().is_empty()).unwrap_or(true));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty edge list".into()))??;
        let (n, m) = parse_pair(&header)?;
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            let line = line?;
            edges.push(parse_pair(&line)?);
        }
        if edges.len() != m {
            return Err(Error::Parse(format!(
                "header declares {m} edges but {} were listed",
                edges.len()
            )));
        }
        Self::from_edges(n, &edges)
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::Parse(format!("expected two integers in {line:?}")))?
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("{line:?}: {e}")))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::Parse(format!("trailing tokens in {line:?}")));
    }
    Ok((a, b))
}

/// Sample `G(n, c/n)` by geometric skipping over the lexicographic pair order.
///
/// Pairs are visited as `(v, w)` with `w < v`; the gap to the next edge is
/// geometric, so the expected cost is `O(n + #edges)`.
pub fn sample_er_graph(params: &ModelParams, seed: u64) -> Result<Graph> {
    let n = params.require_n()?;
    let p = params.edge_probability()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adjacency = vec![Vec::new(); n];
    let mut edge_count = 0usize;
    let mut push = |v: usize, w: usize, adjacency: &mut Vec<Vec<usize>>| {
        adjacency[v].push(w);
        adjacency[w].push(v);
        edge_count += 1;
    };

    if p >= 1.0 {
        for v in 1..n {
            for w in 0..v {
                push(v, w, &mut adjacency);
            }
        }
    } else {
        let log_q = (-p).ln_1p();
        let mut v: usize = 1;
        let mut w: i64 = -1;
        while v < n {
            let r: f64 = rng.random();
            // 1 - r lies in (0, 1]
            let skip = ((1.0 - r).ln() / log_q).floor();
            w += 1 + if skip.is_finite() { skip.min(1e15) as i64 } else { i64::MAX / 4 };
            while w >= v as i64 && v < n {
                w -= v as i64;
                v += 1;
            }
            if v < n {
                push(v, w as usize, &mut adjacency);
            }
        }
    }
    // w < v arrives in increasing v, so each list is already sorted
    debug_assert!(adjacency.iter().all(|l| l.windows(2).all(|w| w[0] < w[1])));
    Ok(Graph {
        adjacency,
        edge_count,
    })
}

/// Outcome of one greedy exploration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplorationRecord {
    /// Selected vertices, in selection order.
    pub active: Vec<usize>,
    /// Blocked vertices, in blocking order.
    pub blocked: Vec<usize>,
    /// Explored counts `Z_0 = 0, ..., Z_T = n`.
    pub z_steps: Vec<usize>,
    pub stop_time: usize,
}

const NOT_UNEXPLORED: usize = usize::MAX;

/// Run the greedy exploration with uniformly random selection.
pub fn greedy_explore(graph: &Graph, seed: u64) -> ExplorationRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    greedy_explore_with(graph, |unexplored| rng.random_range(0..unexplored.len()))
}

/// Run the greedy exploration with a caller-supplied selection rule.
///
/// `choose` receives the current unexplored vertices (in internal order) and
/// returns the position of the vertex to activate.
pub fn greedy_explore_with<F>(graph: &Graph, mut choose: F) -> ExplorationRecord
where
    F: FnMut(&[usize]) -> usize,
{
    let n = graph.n();
    let mut unexplored: Vec<usize> = (0..n).collect();
    let mut position: Vec<usize> = (0..n).collect();
    let mut active = Vec::new();
    let mut blocked = Vec::new();
    let mut z_steps = Vec::with_capacity(n + 1);
    z_steps.push(0);

    fn remove(v: usize, unexplored: &mut Vec<usize>, position: &mut [usize]) {
        let i = position[v];
        let last = *unexplored.last().expect("remove from non-empty set");
        unexplored.swap_remove(i);
        if last != v {
            position[last] = i;
        }
        position[v] = NOT_UNEXPLORED;
    }

    while !unexplored.is_empty() {
        let idx = choose(&unexplored);
        assert!(idx < unexplored.len(), "selection index out of range");
        let v = unexplored[idx];
        remove(v, &mut unexplored, &mut position);
        active.push(v);
        let mut explored = 1;
        for &w in graph.neighbors(v) {
            if position[w] != NOT_UNEXPLORED {
                remove(w, &mut unexplored, &mut position);
                blocked.push(w);
                explored += 1;
            }
        }
        z_steps.push(z_steps.last().unwrap() + explored);
    }

    ExplorationRecord {
        stop_time: active.len(),
        active,
        blocked,
        z_steps,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndependenceCheck {
    pub independent: bool,
    pub maximal: bool,
}

/// Check whether `vertices` is an independent set of `graph`, and whether it is maximal.
pub fn verify_independent_maximal(graph: &Graph, vertices: &[usize]) -> Result<IndependenceCheck> {
    let n = graph.n();
    let mut member = vec![false; n];
    for &v in vertices {
        if v >= n {
            return Err(Error::param(format!("vertex {v} out of range for n = {n}")));
        }
        member[v] = true;
    }
    let independent = vertices
        .iter()
        .all(|&v| graph.neighbors(v).iter().all(|&w| !member[w]));
    let maximal = independent
        && (0..n).all(|u| member[u] || graph.neighbors(u).iter().any(|&w| member[w]));
    Ok(IndependenceCheck {
        independent,
        maximal,
    })
}

/// Exact law of the stopping time by enumerating every graph on `n` vertices
/// and every uniform selection sequence. Feasible only for tiny `n` (at most 6).
///
/// Returns `law[k-1] = P(T = k)` for `k = 1..=n`.
pub fn enumerate_stop_time_law(n: usize, c: f64) -> Result<Vec<f64>> {
    let params = ModelParams::finite(n, c)?;
    if n > 6 {
        return Err(Error::Resource(format!("enumeration limited to n <= 6, got {n}")));
    }
    let p = params.edge_probability()?;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut law = vec![0.0; n];
    for mask in 0u64..(1u64 << pairs.len()) {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let m = edges.len() as i32;
        let weight = p.powi(m) * (1.0 - p).powi(pairs.len() as i32 - m);
        if weight == 0.0 {
            continue;
        }
        let graph = Graph::from_edges(n, &edges)?;
        let mut unexplored = vec![true; n];
        selection_tree(&graph, &mut unexplored, 0, weight, &mut law);
    }
    Ok(law)
}

fn selection_tree(graph: &Graph, unexplored: &mut [bool], steps: usize, weight: f64, law: &mut [f64]) {
    let remaining: Vec<usize> = (0..unexplored.len()).filter(|&v| unexplored[v]).collect();
    if remaining.is_empty() {
        law[steps - 1] += weight;
        return;
    }
    let share = weight / remaining.len() as f64;
    for &v in &remaining {
        let mut cleared = vec![v];
        cleared.extend(graph.neighbors(v).iter().copied().filter(|&w| unexplored[w]));
        for &u in &cleared {
            unexplored[u] = false;
        }
        selection_tree(graph, unexplored, steps + 1, share, law);
        for &u in &cleared {
            unexplored[u] = true;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn full_probability_gives_single_edge() {
        let params = ModelParams::finite(2, 2.0).unwrap();
        for seed in 0..20 {
            let g = sample_er_graph(&params, seed).unwrap();
            assert_eq!(g.edge_count(), 1);
            assert!(g.has_edge(0, 1));
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let params = ModelParams::finite(500, 3.0).unwrap();
        assert_eq!(
            sample_er_graph(&params, 9).unwrap(),
            sample_er_graph(&params, 9).unwrap()
        );
    }

    #[test]
    fn edge_count_matches_binomial_mean() {
        let n = 1000usize;
        let c = 5.0;
        let params = ModelParams::finite(n, c).unwrap();
        let runs = 200;
        let total: usize = (0..runs)
            .map(|s| sample_er_graph(&params, s).unwrap().edge_count())
            .sum();
        let mean = total as f64 / runs as f64;
        let pairs = (n * (n - 1) / 2) as f64;
        let p = c / n as f64;
        let expected = pairs * p;
        assert!((expected - 2497.5).abs() < 1e-9);
        let se = (pairs * p * (1.0 - p) / runs as f64).sqrt();
        assert!((mean - expected).abs() < 3.0 * se, "mean {mean} vs {expected} (se {se})");
    }

    #[test]
    fn sampled_graph_is_simple_and_symmetric() {
        let params = ModelParams::finite(300, 4.0).unwrap();
        let g = sample_er_graph(&params, 1).unwrap();
        for v in 0..g.n() {
            for &w in g.neighbors(v) {
                assert_ne!(v, w);
                assert!(g.has_edge(w, v));
            }
            assert!(g.neighbors(v).windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn complete_graph_stops_after_one_step() {
        let rec = greedy_explore(&Graph::complete(3), 5);
        assert_eq!(rec.stop_time, 1);
        assert_eq!(rec.z_steps, vec![0, 3]);
    }

    #[test]
    fn edgeless_graph_activates_everything() {
        let rec = greedy_explore(&Graph::empty(3), 5);
        assert_eq!(rec.stop_time, 3);
        assert_eq!(rec.z_steps, vec![0, 1, 2, 3]);
        assert!(rec.blocked.is_empty());
    }

    #[test]
    fn forced_middle_selection_on_path() {
        let g = path3();
        let rec = greedy_explore_with(&g, |u| u.iter().position(|&v| v == 1).unwrap());
        assert_eq!(rec.active, vec![1]);
        let mut blocked = rec.blocked.clone();
        blocked.sort_unstable();
        assert_eq!(blocked, vec![0, 2]);
        assert_eq!(rec.stop_time, 1);
    }

    #[test]
    fn independence_checks() {
        let tri = Graph::complete(3);
        let r = verify_independent_maximal(&tri, &[0]).unwrap();
        assert!(r.independent && r.maximal);
        assert!(!verify_independent_maximal(&tri, &[0, 1]).unwrap().independent);
        let r = verify_independent_maximal(&path3(), &[0]).unwrap();
        assert!(r.independent && !r.maximal);
        assert!(verify_independent_maximal(&tri, &[3]).is_err());
    }

    #[test]
    fn record_invariants_on_random_graphs() {
        let params = ModelParams::finite(200, 3.0).unwrap();
        for seed in 0..50 {
            let g = sample_er_graph(&params, seed).unwrap();
            let rec = greedy_explore(&g, seed + 1000);
            let check = verify_independent_maximal(&g, &rec.active).unwrap();
            assert!(check.independent && check.maximal);
            assert_eq!(rec.active.len() + rec.blocked.len(), g.n());
            assert_eq!(rec.stop_time, rec.active.len());
            assert_eq!(*rec.z_steps.last().unwrap(), g.n());
            assert!(rec.z_steps.windows(2).all(|w| w[1] > w[0]));
        }
    }

    #[test]
    fn edge_list_round_trip() {
        let params = ModelParams::finite(50, 3.0).unwrap();
        let g = sample_er_graph(&params, 3).unwrap();
        let text = g.to_edge_list();
        let back = Graph::from_edge_list(text.as_bytes()).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.to_edge_list(), text);
    }

    #[test]
    fn edge_list_rejects_bad_input() {
        assert!(Graph::from_edge_list("3 1\n0 0\n".as_bytes()).is_err());
        assert!(Graph::from_edge_list("3 2\n0 1\n".as_bytes()).is_err());
        assert!(Graph::from_edge_list("3 1\n0 5\n".as_bytes()).is_err());
    }

    #[test]
    fn enumeration_n3() {
        let law = enumerate_stop_time_law(3, 1.0).unwrap();
        let expected = [1.0 / 9.0, 16.0 / 27.0, 8.0 / 27.0];
        for (a, b) in law.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15, "{law:?}");
        }
    }
}
