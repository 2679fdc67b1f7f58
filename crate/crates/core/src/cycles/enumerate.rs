//! Pruned DFS enumeration of linear 2k-cycles.
//!
//! The search grows edge sequences e_1, ..., e_2k. Rotations are killed by
//! requiring e_1 to be the minimum edge id of the copy, reflections by
//! requiring e_2 < e_2k, so every copy is emitted exactly once and disjoint
//! start-edge ranges partition the copy space.

use crate::cycles::{canonical_cycle, CycleSet, LinearCycleCopy};
use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, LinearHypergraph, VertexId};

/// Caps for long-running enumerations. `node_cap` bounds candidate-edge
/// examinations; exceeding it aborts with [`Error::WorkCapExceeded`].
#[derive(Clone, Copy, Debug, Default)]
pub struct EnumerationLimits {
    pub node_cap: Option<u64>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EnumerationStats {
    /// Candidate edges examined.
    pub expansions: u64,
    /// Copies emitted.
    pub emitted: u64,
}

struct Dfs<'a, F> {
    g: &'a LinearHypergraph,
    len: usize,
    limits: EnumerationLimits,
    stats: EnumerationStats,
    path: Vec<EdgeId>,
    connectors: Vec<VertexId>, // connectors[i] joins path[i] and path[i+1]
    used: Vec<bool>,
    visit: F,
}

impl<'a, F: FnMut(&LinearCycleCopy)> Dfs<'a, F> {
    fn bump(&mut self) -> Result<()> {
        self.stats.expansions += 1;
        if let Some(cap) = self.limits.node_cap {
            if self.stats.expansions > cap {
                return Err(Error::WorkCapExceeded {
                    expanded: self.stats.expansions,
                    cap,
                });
            }
        }
        Ok(())
    }

    fn mark(&mut self, e: EdgeId, on: bool) {
        for &v in self.g.edge(e) {
            self.used[v as usize] = on;
        }
    }

    fn run(&mut self) -> Result<()> {
        for start in self.g.edge_ids() {
            self.path.push(start);
            self.mark(start, true);
            self.extend()?;
            self.mark(start, false);
            self.path.pop();
        }
        Ok(())
    }

    /// Grows the open path by one edge, or closes it at full length.
    fn extend(&mut self) -> Result<()> {
        if self.path.len() == self.len - 1 {
            return self.close();
        }
        let start = self.path[0];
        let last = *self.path.last().unwrap();
        let banned = self.connectors.last().copied();
        let last_edge: Vec<VertexId> = self.g.edge(last).to_vec();
        for u in last_edge {
            if Some(u) == banned {
                continue;
            }
            let incident = self.g.incident_edges(u).to_vec();
            for f in incident {
                self.bump()?;
                if f <= start || self.path.contains(&f) {
                    continue;
                }
                // exactly one vertex of f may be used, necessarily u itself
                let used_count = self
                    .g
                    .edge(f)
                    .iter()
                    .filter(|&&v| self.used[v as usize])
                    .count();
                if used_count != 1 {
                    continue;
                }
                self.path.push(f);
                self.connectors.push(u);
                // u stays marked; mark the fresh vertices of f
                for &v in self.g.edge(f) {
                    self.used[v as usize] = true;
                }
                self.extend()?;
                // u is the only vertex of f shared with earlier edges
                for &v in self.g.edge(f) {
                    if v != u {
                        self.used[v as usize] = false;
                    }
                }
                self.connectors.pop();
                self.path.pop();
            }
        }
        Ok(())
    }

    /// Chooses the closing edge: it must meet the last edge in one fresh
    /// connector, meet the start edge in one vertex distinct from the first
    /// connector, and nothing else.
    fn close(&mut self) -> Result<()> {
        let start = self.path[0];
        let second = self.path[1];
        let last = *self.path.last().unwrap();
        let banned = *self.connectors.last().unwrap();
        let first_connector = self.connectors[0];
        let last_edge: Vec<VertexId> = self.g.edge(last).to_vec();
        for u in last_edge {
            if u == banned {
                continue;
            }
            let incident = self.g.incident_edges(u).to_vec();
            for f in incident {
                self.bump()?;
                if f <= start || f <= second || self.path.contains(&f) {
                    continue;
                }
                let fe = self.g.edge(f);
                let used_verts: Vec<VertexId> = fe
                    .iter()
                    .copied()
                    .filter(|&v| self.used[v as usize])
                    .collect();
                if used_verts.len() != 2 {
                    continue;
                }
                let other = if used_verts[0] == u {
                    used_verts[1]
                } else if used_verts[1] == u {
                    used_verts[0]
                } else {
                    continue;
                };
                if other == first_connector || !self.g.edge(start).contains(&other) {
                    continue;
                }
                self.emit(f, other, u);
            }
        }
        Ok(())
    }

    fn emit(&mut self, closing: EdgeId, start_connector: VertexId, last_connector: VertexId) {
        let len = self.len;
        let mut skeleton = Vec::with_capacity(len);
        skeleton.push(start_connector);
        skeleton.extend_from_slice(&self.connectors);
        skeleton.push(last_connector);
        debug_assert_eq!(skeleton.len(), len);
        let mut edge_ids: Vec<EdgeId> = self.path.clone();
        edge_ids.push(closing);
        edge_ids.sort_unstable();
        let copy = LinearCycleCopy {
            edge_ids,
            skeleton: canonical_cycle(&skeleton),
        };
        self.stats.emitted += 1;
        (self.visit)(&copy);
    }
}

/// Streams every linear 2k-cycle of `g` to `visit`, exactly once each.
pub fn for_each_linear_cycle<F>(
    g: &LinearHypergraph,
    k: usize,
    limits: EnumerationLimits,
    visit: F,
) -> Result<EnumerationStats>
where
    F: FnMut(&LinearCycleCopy),
{
    if k < 2 {
        return Err(Error::BadParameter(format!("need k >= 2, got {k}")));
    }
    let mut dfs = Dfs {
        g,
        len: 2 * k,
        limits,
        stats: EnumerationStats::default(),
        path: Vec::with_capacity(2 * k),
        connectors: Vec::with_capacity(2 * k),
        used: vec![false; g.id_bound()],
        visit,
    };
    dfs.run()?;
    Ok(dfs.stats)
}

/// Collects the exact set of linear 2k-cycle copies. Panics on k < 2; use
/// [`enumerate_linear_cycles_limited`] for a fallible variant.
pub fn enumerate_linear_cycles(g: &LinearHypergraph, k: usize) -> CycleSet {
    assert!(k >= 2, "need k >= 2, got {k}");
    enumerate_linear_cycles_limited(g, k, EnumerationLimits::default())
        .expect("uncapped enumeration cannot hit the work cap")
        .0
}

pub fn enumerate_linear_cycles_limited(
    g: &LinearHypergraph,
    k: usize,
    limits: EnumerationLimits,
) -> Result<(CycleSet, EnumerationStats)> {
    let mut set = CycleSet::new();
    let stats = for_each_linear_cycle(g, k, limits, |copy| {
        let fresh = set.insert(copy.clone());
        debug_assert!(fresh, "canonical DFS must not emit duplicates");
    })?;
    Ok((set, stats))
}
