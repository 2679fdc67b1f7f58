//! Bipartite peeling to quarter-of-average degree floors.
//!
//! Iteratively deletes any a-side vertex whose degree falls below a quarter
//! of the original a-side average, and symmetrically on the b-side. At most
//! e/4 + e/4 edges are removed, so the survivor keeps at least half the
//! edges and is nonempty, with both min-degree floors enforced.

use std::collections::HashMap;

use crate::cycles::BipartiteGraph;
use crate::error::{Error, Result};
use crate::hypergraph::VertexId;

pub fn peel_bipartite(h: &BipartiteGraph) -> Result<BipartiteGraph> {
    if h.edge_count() == 0 {
        return Err(Error::PreconditionViolated(
            "peeling needs at least one edge".into(),
        ));
    }
    let floor_a = h.avg_degree_a() / 4.0;
    let floor_b = h.avg_degree_b() / 4.0;

    let mut degree: HashMap<VertexId, usize> = HashMap::new();
    for &(u, v) in h.edges() {
        *degree.entry(u).or_insert(0) += 1;
        *degree.entry(v).or_insert(0) += 1;
    }
    let mut alive: HashMap<VertexId, bool> = degree.keys().map(|&v| (v, true)).collect();
    let floor_of = |v: VertexId| {
        if h.side_a().binary_search(&v).is_ok() {
            floor_a
        } else {
            floor_b
        }
    };
    let mut queue: Vec<VertexId> = degree
        .iter()
        .filter(|(&v, &d)| (d as f64) < floor_of(v))
        .map(|(&v, _)| v)
        .collect();
    queue.sort_unstable();
    while let Some(v) = queue.pop() {
        if !alive[&v] {
            continue;
        }
        alive.insert(v, false);
        for &w in h.neighbors(v) {
            if alive[&w] {
                let d = degree.get_mut(&w).unwrap();
                *d -= 1;
                if (*d as f64) < floor_of(w) {
                    queue.push(w);
                }
            }
        }
    }
    let survivors_a: Vec<VertexId> = h
        .side_a()
        .iter()
        .copied()
        .filter(|v| alive.get(v).copied().unwrap_or(false))
        .collect();
    let survivors_b: Vec<VertexId> = h
        .side_b()
        .iter()
        .copied()
        .filter(|v| alive.get(v).copied().unwrap_or(false))
        .collect();
    let kept: Vec<(VertexId, VertexId)> = h
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| alive[&u] && alive[&v])
        .collect();
    let out = BipartiteGraph::new(survivors_a, survivors_b, &kept)?;
    debug_assert!(out.edge_count() * 2 >= h.edge_count());
    debug_assert!(out.min_degree_a() as f64 >= floor_a);
    debug_assert!(out.min_degree_b() as f64 >= floor_b);
    Ok(out)
}

/// The postconditions, re-checked from scratch; used by audits.
pub fn recheck_peel(original: &BipartiteGraph, peeled: &BipartiteGraph) -> bool {
    peeled.edge_count() > 0
        && peeled.edge_count() * 2 >= original.edge_count()
        && peeled.min_degree_a() as f64 >= original.avg_degree_a() / 4.0
        && peeled.min_degree_b() as f64 >= original.avg_degree_b() / 4.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete_bipartite(a: u32, b: u32) -> BipartiteGraph {
        let left: Vec<u32> = (0..a).collect();
        let right: Vec<u32> = (a..a + b).collect();
        let edges: Vec<(u32, u32)> = left
            .iter()
            .flat_map(|&u| right.iter().map(move |&v| (u, v)))
            .collect();
        BipartiteGraph::new(left, right, &edges).unwrap()
    }

    #[test]
    fn k33_survives_unchanged() {
        let g = complete_bipartite(3, 3);
        let peeled = peel_bipartite(&g).unwrap();
        assert_eq!(peeled.edge_count(), 9);
        assert!(recheck_peel(&g, &peeled));
    }

    #[test]
    fn pendant_vertex_is_peeled() {
        // a1 ~ b1..b8, a2 ~ b1: d_A = 4.5, so a2 (degree 1 < 1.125) goes
        let mut edges: Vec<(u32, u32)> = (2..10).map(|b| (0, b)).collect();
        edges.push((1, 2));
        let g = BipartiteGraph::new(vec![0, 1], (2..10).collect(), &edges).unwrap();
        let peeled = peel_bipartite(&g).unwrap();
        assert_eq!(peeled.edge_count(), 8);
        assert!(!peeled.side_a().contains(&1));
        assert!(recheck_peel(&g, &peeled));
    }

    #[test]
    fn single_edge_is_stable() {
        let g = BipartiteGraph::new(vec![0], vec![1], &[(0, 1)]).unwrap();
        let peeled = peel_bipartite(&g).unwrap();
        assert_eq!(peeled.edge_count(), 1);
        assert!(recheck_peel(&g, &peeled));
    }

    #[test]
    fn empty_graph_rejected() {
        let g = BipartiteGraph::new(vec![0], vec![1], &[]).unwrap();
        assert!(matches!(
            peel_bipartite(&g),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
