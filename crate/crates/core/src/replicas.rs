//! Independent Monte Carlo replicas with per-replica derived seeds.

use crate::chain::{simulate_chain, ChainTrajectory};
use crate::error::Result;
use crate::explorer::{greedy_explore, sample_er_graph, verify_independent_maximal, ExplorationRecord};
use crate::model::{derive_seed, ModelParams};
use crate::par;

/// Seed of replica `index` under `master_seed`.
pub fn replica_seed(master_seed: u64, index: usize) -> u64 {
    derive_seed(master_seed, index as u64)
}

pub fn chain_replica(params: &ModelParams, master_seed: u64, index: usize) -> Result<ChainTrajectory> {
    simulate_chain(params, replica_seed(master_seed, index))
}

pub fn chain_trajectories(params: &ModelParams, master_seed: u64, reps: usize) -> Result<Vec<ChainTrajectory>> {
    par::collect_results(par::map_indices(reps, |i| chain_replica(params, master_seed, i)))
}

pub fn chain_stop_times(params: &ModelParams, master_seed: u64, reps: usize) -> Result<Vec<usize>> {
    par::collect_results(par::map_indices(reps, |i| {
        chain_replica(params, master_seed, i).map(|t| t.stop_time)
    }))
}

pub fn chain_stop_times_sequential(params: &ModelParams, master_seed: u64, reps: usize) -> Result<Vec<usize>> {
    par::collect_results(par::map_indices_sequential(reps, |i| {
        chain_replica(params, master_seed, i).map(|t| t.stop_time)
    }))
}

#[derive(Debug, Clone)]
pub struct GraphReplica {
    pub record: ExplorationRecord,
    pub independent: bool,
    pub maximal: bool,
}

/// Sample a graph and explore it; graph and selection use separate seed streams.
pub fn graph_replica(params: &ModelParams, master_seed: u64, index: usize) -> Result<GraphReplica> {
    let seed = replica_seed(master_seed, index);
    let graph = sample_er_graph(params, derive_seed(seed, 0))?;
    let record = greedy_explore(&graph, derive_seed(seed, 1));
    let check = verify_independent_maximal(&graph, &record.active)?;
    Ok(GraphReplica {
        record,
        independent: check.independent,
        maximal: check.maximal,
    })
}

pub fn graph_replicas(params: &ModelParams, master_seed: u64, reps: usize) -> Result<Vec<GraphReplica>> {
    par::collect_results(par::map_indices(reps, |i| graph_replica(params, master_seed, i)))
}

pub fn graph_stop_times(params: &ModelParams, master_seed: u64, reps: usize) -> Result<Vec<usize>> {
    par::collect_results(par::map_indices(reps, |i| {
        graph_replica(params, master_seed, i).map(|r| r.record.stop_time)
    }))
}

pub fn graph_stop_times_sequential(params: &ModelParams, master_seed: u64, reps: usize) -> Result<Vec<usize>> {
    par::collect_results(par::map_indices_sequential(reps, |i| {
        graph_replica(params, master_seed, i).map(|r| r.record.stop_time)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree() {
        let params = ModelParams::finite(200, 2.0).unwrap();
        assert_eq!(
            chain_stop_times(&params, 11, 64).unwrap(),
            chain_stop_times_sequential(&params, 11, 64).unwrap()
        );
        assert_eq!(
            graph_stop_times(&params, 11, 16).unwrap(),
            graph_stop_times_sequential(&params, 11, 16).unwrap()
        );
    }
}
