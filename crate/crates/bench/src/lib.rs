//! Shared fixtures for the benchmark suite: deterministic reference
//! instances at a few densities.

use hypersat_core::generators::{gnp, partial_steiner, random_r_partite, subsample_edges};
use hypersat_core::{LinearHypergraph, Seed};

pub fn sparse_two_graph() -> LinearHypergraph {
    gnp(60, 0.15, Seed::new(1)).expect("valid parameters")
}

pub fn dense_two_graph() -> LinearHypergraph {
    gnp(40, 0.4, Seed::new(2)).expect("valid parameters")
}

pub fn triple_system(n: usize) -> LinearHypergraph {
    partial_steiner(n, 3, Seed::new(3)).expect("valid parameters")
}

pub fn thinned_triple_system(n: usize, p: f64) -> LinearHypergraph {
    subsample_edges(&triple_system(n), p, Seed::new(4)).expect("valid probability")
}

pub fn three_partite() -> LinearHypergraph {
    random_r_partite(&[14, 14, 14], 150, Seed::new(5)).expect("feasible budget")
}
