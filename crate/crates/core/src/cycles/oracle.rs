//! Exhaustive cycle-counting oracles.
//!
//! Two deliberately naive routes, independent of the pruned enumerator:
//! a permutation scan over vertex subsets for 2-graphs, and a 2k-edge-subset
//! brute force for any uniformity. Both are meant for small inputs and used
//! to cross-validate the enumerator.

use itertools::Itertools;

use crate::cycles::{canonical_cycle, is_linear_cycle, CycleSet, LinearCycleCopy};
use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, LinearHypergraph, VertexId};

/// Default vertex-count cap for the permutation-scan oracle.
pub const DEFAULT_ORACLE_CAP: usize = 12;

/// Exhaustive C_{2k} count for a 2-graph: enumerate every 2k-vertex subset
/// and every spanning cyclic order (first vertex fixed, reflection killed),
/// deduplicating through canonical forms.
pub fn count_cycles_oracle(g: &LinearHypergraph, k: usize) -> Result<CycleSet> {
    count_cycles_oracle_capped(g, k, DEFAULT_ORACLE_CAP)
}

pub fn count_cycles_oracle_capped(
    g: &LinearHypergraph,
    k: usize,
    cap: usize,
) -> Result<CycleSet> {
    if g.r() != 2 {
        return Err(Error::BadParameter(format!(
            "permutation-scan oracle works on 2-graphs, got r = {}",
            g.r()
        )));
    }
    if k < 2 {
        return Err(Error::BadParameter(format!("need k >= 2, got {k}")));
    }
    if g.vertex_count() > cap {
        return Err(Error::SizeGuard {
            vertices: g.vertex_count(),
            cap,
        });
    }
    let len = 2 * k;
    let mut out = CycleSet::new();
    if g.vertex_count() < len {
        return Ok(out);
    }
    let members: Vec<VertexId> = g.members().to_vec();
    for subset in members.iter().copied().combinations(len) {
        let first = subset[0];
        for perm in subset[1..].iter().copied().permutations(len - 1) {
            if perm[0] > perm[len - 2] {
                continue; // reflection
            }
            let mut cyc = Vec::with_capacity(len);
            cyc.push(first);
            cyc.extend_from_slice(&perm);
            let mut edge_ids: Vec<EdgeId> = Vec::with_capacity(len);
            let ok = (0..len).all(|i| {
                match g.edge_containing_pair(cyc[i], cyc[(i + 1) % len]) {
                    Some(e) => {
                        edge_ids.push(e);
                        true
                    }
                    None => false,
                }
            });
            if !ok {
                continue;
            }
            let mut sorted = edge_ids.clone();
            sorted.sort_unstable();
            out.insert(LinearCycleCopy {
                edge_ids: sorted,
                skeleton: canonical_cycle(&cyc),
            });
        }
    }
    Ok(out)
}

/// Brute force over all 2k-subsets of the edge set, testing the linear-cycle
/// predicate directly. Works for any uniformity; cost is C(e, 2k).
pub fn cycles_by_edge_subsets(g: &LinearHypergraph, k: usize) -> Result<CycleSet> {
    if k < 2 {
        return Err(Error::BadParameter(format!("need k >= 2, got {k}")));
    }
    let len = 2 * k;
    let mut out = CycleSet::new();
    if g.edge_count() < len {
        return Ok(out);
    }
    let ids: Vec<EdgeId> = g.edge_ids().collect();
    for subset in ids.iter().copied().combinations(len) {
        if is_linear_cycle(g, &subset) {
            let ordered = order_cyclically(g, &subset);
            let copy = LinearCycleCopy::from_edge_cycle(g, &ordered)
                .expect("predicate-approved subset must order into a cycle");
            out.insert(copy);
        }
    }
    Ok(out)
}

/// Arranges a predicate-approved edge set into cyclic order by following the
/// share-exactly-one relation.
fn order_cyclically(g: &LinearHypergraph, edge_ids: &[EdgeId]) -> Vec<EdgeId> {
    let m = edge_ids.len();
    let mut ordered = Vec::with_capacity(m);
    let mut used = vec![false; m];
    ordered.push(edge_ids[0]);
    used[0] = true;
    while ordered.len() < m {
        let last = *ordered.last().unwrap();
        let next = (0..m)
            .find(|&i| {
                if used[i] {
                    return false;
                }
                let a = g.edge(last);
                let b = g.edge(edge_ids[i]);
                a.iter().filter(|v| b.contains(v)).count() == 1
            })
            .expect("cycle predicate guarantees a successor");
        ordered.push(edge_ids[next]);
        used[next] = true;
    }
    ordered
}
