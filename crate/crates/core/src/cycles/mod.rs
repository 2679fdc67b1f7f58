//! Exact enumeration and counting of even linear cycles.
//!
//! A linear cycle of length 2k is a cyclic sequence of 2k edges in which
//! consecutive edges share exactly one vertex and non-consecutive edges are
//! disjoint; the shared vertices form the skeleton. Copies are identified by
//! their edge-id set (unlabelled subgraph counting), with the skeleton kept
//! in a canonical cyclic form.
//!
//! Three independent routes compute the same counts and cross-validate each
//! other: a permutation-scan oracle for 2-graphs ([`oracle`]), an edge-subset
//! brute force driven by the [`is_linear_cycle`] predicate, and the pruned
//! DFS enumerator ([`enumerate`]).

mod enumerate;
mod oracle;
mod paths;

pub use enumerate::{
    enumerate_linear_cycles, enumerate_linear_cycles_limited, for_each_linear_cycle,
    EnumerationLimits, EnumerationStats,
};
pub use oracle::{count_cycles_oracle, count_cycles_oracle_capped, cycles_by_edge_subsets,
    DEFAULT_ORACLE_CAP};
pub use paths::{BipartiteGraph, ColouredBipartiteGraph, ColouredEdge, RainbowPath};


use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, LinearHypergraph, VertexId};

/// One copy of a linear 2k-cycle inside a host graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinearCycleCopy {
    edge_ids: Vec<EdgeId>,    // sorted; the identity of the copy
    skeleton: Vec<VertexId>,  // canonical cyclic sequence
}

impl LinearCycleCopy {
    /// Builds a copy from edges listed in cyclic order, deriving the skeleton
    /// from consecutive intersections and validating the full predicate.
    pub fn from_edge_cycle(g: &LinearHypergraph, ordered: &[EdgeId]) -> Result<Self> {
        let m = ordered.len();
        if m < 4 || !m.is_multiple_of(2) {
            return Err(Error::BadParameter(format!(
                "cycle length {m} is not an even number >= 4"
            )));
        }
        let mut skeleton = Vec::with_capacity(m);
        for i in 0..m {
            let a = g.edge(ordered[i]);
            let b = g.edge(ordered[(i + 1) % m]);
            let shared: Vec<VertexId> = a.iter().copied().filter(|v| b.contains(v)).collect();
            if shared.len() != 1 {
                return Err(Error::NoExtension(format!(
                    "edges {} and {} share {} vertices, expected 1",
                    ordered[i],
                    ordered[(i + 1) % m],
                    shared.len()
                )));
            }
            skeleton.push(shared[0]);
        }
        let mut edge_ids = ordered.to_vec();
        edge_ids.sort_unstable();
        edge_ids.dedup();
        if edge_ids.len() != m {
            return Err(Error::NoExtension("repeated edge in cycle".into()));
        }
        let copy = LinearCycleCopy {
            edge_ids,
            skeleton: canonical_cycle(&skeleton),
        };
        copy.validate(g)?;
        Ok(copy)
    }

    pub fn edge_ids(&self) -> &[EdgeId] {
        &self.edge_ids
    }

    pub fn skeleton(&self) -> &[VertexId] {
        &self.skeleton
    }

    pub fn len(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_ids.is_empty()
    }

    /// True when the copy's skeleton contains `v`.
    pub fn skeleton_contains(&self, v: VertexId) -> bool {
        self.skeleton.contains(&v)
    }

    /// Re-validates the copy edge-by-edge against the host graph.
    pub fn validate(&self, g: &LinearHypergraph) -> Result<()> {
        if !is_linear_cycle(g, &self.edge_ids) {
            return Err(Error::NoExtension(format!(
                "edge set {:?} fails the linear-cycle predicate",
                self.edge_ids
            )));
        }
        Ok(())
    }
}

/// Decides whether an edge-id set forms one linear cycle: pairs share at most
/// one vertex and the share-exactly-one relation is a single Hamiltonian
/// cycle on the edges (2-regular and connected), which forces non-consecutive
/// disjointness. This subset test is an oracle route independent of the DFS
/// enumerator.
pub fn is_linear_cycle(g: &LinearHypergraph, edge_ids: &[EdgeId]) -> bool {
    let m = edge_ids.len();
    if m < 4 || !m.is_multiple_of(2) {
        return false;
    }
    let mut distinct = edge_ids.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != m {
        return false;
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m];
    for i in 0..m {
        let a = g.edge(distinct[i]);
        for j in (i + 1)..m {
            let b = g.edge(distinct[j]);
            let shared = a.iter().filter(|v| b.contains(v)).count();
            match shared {
                0 => {}
                1 => {
                    adj[i].push(j);
                    adj[j].push(i);
                }
                _ => return false,
            }
        }
    }
    if adj.iter().any(|nb| nb.len() != 2) {
        return false;
    }
    // 2-regular and connected on m vertices means a single m-cycle
    let mut seen = vec![false; m];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut reached = 1;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                reached += 1;
                stack.push(v);
            }
        }
    }
    reached == m
}

/// Lexicographically least rotation/reflection of a cyclic vertex sequence.
pub fn canonical_cycle(seq: &[VertexId]) -> Vec<VertexId> {
    let m = seq.len();
    if m == 0 {
        return Vec::new();
    }
    let mut best: Option<Vec<VertexId>> = None;
    for rev in [false, true] {
        let base: Vec<VertexId> = if rev {
            seq.iter().rev().copied().collect()
        } else {
            seq.to_vec()
        };
        for start in 0..m {
            let mut rot = Vec::with_capacity(m);
            rot.extend_from_slice(&base[start..]);
            rot.extend_from_slice(&base[..start]);
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap()
}

/// A deduplicated collection of linear-cycle copies, keyed by edge-id set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleSet {
    copies: std::collections::BTreeMap<Vec<EdgeId>, LinearCycleCopy>,
}

impl CycleSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a copy; returns false when a copy with the same edge set was
    /// already present.
    pub fn insert(&mut self, copy: LinearCycleCopy) -> bool {
        use std::collections::btree_map::Entry;
        match self.copies.entry(copy.edge_ids.clone()) {
            Entry::Occupied(_) => false,
            Entry::Vacant(slot) => {
                slot.insert(copy);
                true
            }
        }
    }

    pub fn count(&self) -> usize {
        self.copies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.copies.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &LinearCycleCopy> {
        self.copies.values()
    }

    pub fn contains_edge_set(&self, edge_ids: &[EdgeId]) -> bool {
        let mut sorted = edge_ids.to_vec();
        sorted.sort_unstable();
        self.copies.contains_key(&sorted)
    }

    pub fn is_subset_of(&self, other: &CycleSet) -> bool {
        self.copies
            .keys()
            .all(|ids| other.copies.contains_key(ids))
    }
}

impl FromIterator<LinearCycleCopy> for CycleSet {
    fn from_iter<I: IntoIterator<Item = LinearCycleCopy>>(iter: I) -> Self {
        let mut set = CycleSet::new();
        for copy in iter {
            set.insert(copy);
        }
        set
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c34() -> LinearHypergraph {
        LinearHypergraph::build(
            3,
            12,
            &[vec![0, 1, 8], vec![1, 2, 9], vec![2, 3, 10], vec![0, 3, 11]],
        )
        .unwrap()
    }

    #[test]
    fn predicate_accepts_the_single_copy() {
        let g = c34();
        assert!(is_linear_cycle(&g, &[0, 1, 2, 3]));
    }

    #[test]
    fn predicate_rejects_path_and_short_sets() {
        let path = LinearHypergraph::build(
            3,
            13,
            &[vec![0, 1, 8], vec![1, 2, 9], vec![2, 3, 10], vec![3, 4, 11]],
        )
        .unwrap();
        assert!(!is_linear_cycle(&path, &[0, 1, 2, 3]));
        let g = c34();
        assert!(!is_linear_cycle(&g, &[0, 1, 2]));
    }

    #[test]
    fn canonical_form_is_rotation_reflection_invariant() {
        let seq = vec![3, 7, 2, 9];
        let canon = canonical_cycle(&seq);
        assert_eq!(canon, canonical_cycle(&[7, 2, 9, 3]));
        assert_eq!(canon, canonical_cycle(&[9, 2, 7, 3]));
        assert_eq!(canon[0], 2);
    }

    #[test]
    fn from_edge_cycle_builds_and_validates() {
        // lex storage order: 0={0,1,8}, 1={0,3,11}, 2={1,2,9}, 3={2,3,10};
        // the cyclic edge order is therefore 0, 2, 3, 1
        let g = c34();
        let copy = LinearCycleCopy::from_edge_cycle(&g, &[0, 2, 3, 1]).unwrap();
        assert_eq!(copy.len(), 4);
        assert_eq!(copy.skeleton(), &[0, 1, 2, 3]);
        copy.validate(&g).unwrap();
        assert!(copy.skeleton_contains(2));
        assert!(!copy.skeleton_contains(8));
        // a non-cyclic order is rejected
        assert!(LinearCycleCopy::from_edge_cycle(&g, &[0, 1, 2, 3]).is_err());
    }

    #[test]
    fn cycle_set_dedups_by_edge_set() {
        let g = c34();
        let a = LinearCycleCopy::from_edge_cycle(&g, &[0, 2, 3, 1]).unwrap();
        let b = LinearCycleCopy::from_edge_cycle(&g, &[3, 1, 0, 2]).unwrap();
        let mut set = CycleSet::new();
        assert!(set.insert(a));
        assert!(!set.insert(b));
        assert_eq!(set.count(), 1);
    }
}
