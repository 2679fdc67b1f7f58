//! Linear r-uniform hypergraphs.
//!
//! The central invariant, enforced at construction, is linearity: any two
//! distinct edges share at most one vertex. A global pair-to-edge map makes
//! the check O(r^2) per edge and lets violations name the offending pair.
//!
//! Graphs are immutable after construction; every derived view (induced
//! subgraph, edge subset, projection) is a fresh value. Vertex ids of a built
//! graph are the contiguous range `0..n`; subgraph operations re-use parent
//! ids for traceability, so the live vertex set of a subgraph may have holes
//! inside the id space.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

pub type VertexId = u32;
pub type EdgeId = u32;

/// Convenience alias used for vertex-set parameters.
pub type VertexSet = BTreeSet<VertexId>;

#[derive(Clone, Debug, PartialEq)]
struct Partition {
    classes: Vec<Vec<VertexId>>,
    class_of: Vec<usize>, // indexed by vertex id, usize::MAX = not live
}

/// An r-uniform hypergraph in which any two edges share at most one vertex.
#[derive(Clone, Debug)]
pub struct LinearHypergraph {
    r: usize,
    id_bound: usize,
    members: Vec<VertexId>,
    edge_verts: Vec<VertexId>, // flat, stride r, each edge sorted; edges in lex order
    incidence: Vec<Vec<EdgeId>>,
    pair_map: HashMap<(VertexId, VertexId), EdgeId>,
    partition: Option<Partition>,
}

impl PartialEq for LinearHypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r
            && self.id_bound == other.id_bound
            && self.members == other.members
            && self.edge_verts == other.edge_verts
            && self.partition_classes() == other.partition_classes()
    }
}

impl LinearHypergraph {
    /// Builds a graph on vertex ids `0..n`, validating arity, duplicates and
    /// linearity. Edges are stored sorted, with the edge list in lexicographic
    /// order, so identical edge sets produce identical graphs.
    pub fn build(r: usize, n: usize, edges: &[Vec<VertexId>]) -> Result<Self> {
        if r < 2 {
            return Err(Error::BadParameter(format!("uniformity r = {r}, need r >= 2")));
        }
        let mut sorted_edges: Vec<Vec<VertexId>> = Vec::with_capacity(edges.len());
        for (index, edge) in edges.iter().enumerate() {
            let mut e = edge.clone();
            e.sort_unstable();
            e.dedup();
            if e.len() != r || edge.len() != r {
                return Err(Error::BadArity {
                    index,
                    expected: r,
                    found: e.len().min(edge.len()),
                });
            }
            for &v in &e {
                if (v as usize) >= n {
                    return Err(Error::VertexOutOfRange(v, n));
                }
            }
            sorted_edges.push(e);
        }
        // Blame duplicate/linearity errors on input positions before canonicalizing.
        let mut pair_seen: HashMap<(VertexId, VertexId), usize> = HashMap::new();
        for (index, e) in sorted_edges.iter().enumerate() {
            for a in 0..r {
                for b in (a + 1)..r {
                    let key = (e[a], e[b]);
                    if let Some(&first) = pair_seen.get(&key) {
                        if sorted_edges[first] == *e {
                            return Err(Error::DuplicateEdge {
                                first,
                                second: index,
                            });
                        }
                        return Err(Error::LinearityViolation {
                            u: key.0,
                            v: key.1,
                            first,
                            second: index,
                        });
                    }
                    pair_seen.insert(key, index);
                }
            }
        }
        sorted_edges.sort_unstable();
        let members = (0..n as VertexId).collect();
        Ok(Self::from_valid_parts(r, n, members, sorted_edges, None))
    }

    /// Assembles a graph from edges already known to be valid (each sorted,
    /// pairwise linear). Used internally by subgraph operations.
    fn from_valid_parts(
        r: usize,
        id_bound: usize,
        members: Vec<VertexId>,
        mut edges: Vec<Vec<VertexId>>,
        partition: Option<Partition>,
    ) -> Self {
        edges.sort_unstable();
        let mut edge_verts = Vec::with_capacity(edges.len() * r);
        let mut incidence = vec![Vec::new(); id_bound];
        let mut pair_map = HashMap::new();
        for (id, e) in edges.iter().enumerate() {
            debug_assert_eq!(e.len(), r);
            let id = id as EdgeId;
            for (i, &v) in e.iter().enumerate() {
                incidence[v as usize].push(id);
                for &w in &e[i + 1..] {
                    let prev = pair_map.insert((v, w), id);
                    debug_assert!(prev.is_none(), "linearity broken in trusted parts");
                }
            }
            edge_verts.extend_from_slice(e);
        }
        LinearHypergraph {
            r,
            id_bound,
            members,
            edge_verts,
            incidence,
            pair_map,
            partition,
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of live vertices, v(G).
    pub fn vertex_count(&self) -> usize {
        self.members.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_verts.len() / self.r
    }

    /// Exclusive upper bound of the vertex id space. Equals v(G) for built
    /// graphs; may exceed it for subgraphs that re-use parent ids.
    pub fn id_bound(&self) -> usize {
        self.id_bound
    }

    pub fn members(&self) -> &[VertexId] {
        &self.members
    }

    pub fn member_set(&self) -> VertexSet {
        self.members.iter().copied().collect()
    }

    pub fn is_member(&self, v: VertexId) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn edge(&self, e: EdgeId) -> &[VertexId] {
        let i = e as usize * self.r;
        &self.edge_verts[i..i + self.r]
    }

    pub fn edges(&self) -> impl Iterator<Item = &[VertexId]> {
        self.edge_verts.chunks_exact(self.r)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        0..self.edge_count() as EdgeId
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence
            .get(v as usize)
            .map_or(0, |edges| edges.len())
    }

    /// Edge ids incident to `v`, in increasing order.
    pub fn incident_edges(&self, v: VertexId) -> &[EdgeId] {
        self.incidence
            .get(v as usize)
            .map_or(&[], |edges| edges.as_slice())
    }

    /// The edge containing both `u` and `v`, if any (unique by linearity).
    pub fn edge_containing_pair(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let key = if u <= v { (u, v) } else { (v, u) };
        self.pair_map.get(&key).copied()
    }

    pub fn has_edge(&self, verts: &[VertexId]) -> bool {
        if verts.len() != self.r {
            return false;
        }
        let mut sorted = verts.to_vec();
        sorted.sort_unstable();
        match self.edge_containing_pair(sorted[0], sorted[1]) {
            Some(e) => self.edge(e) == sorted.as_slice(),
            None => false,
        }
    }

    /// Attaches an r-partition. Classes must be disjoint, cover the live
    /// vertex set, and every edge must meet each class exactly once.
    pub fn with_partition(mut self, classes: Vec<Vec<VertexId>>) -> Result<Self> {
        if classes.len() != self.r {
            return Err(Error::BadPartition(format!(
                "{} classes for uniformity {}",
                classes.len(),
                self.r
            )));
        }
        let mut class_of = vec![usize::MAX; self.id_bound];
        let mut covered = 0usize;
        let mut sorted_classes = Vec::with_capacity(classes.len());
        for (ci, class) in classes.into_iter().enumerate() {
            let mut class = class;
            class.sort_unstable();
            class.dedup();
            for &v in &class {
                if (v as usize) >= self.id_bound {
                    return Err(Error::VertexOutOfRange(v, self.id_bound));
                }
                if class_of[v as usize] != usize::MAX {
                    return Err(Error::BadPartition(format!("vertex {v} in two classes")));
                }
                class_of[v as usize] = ci;
                covered += 1;
            }
            sorted_classes.push(class);
        }
        if covered != self.members.len()
            || self.members.iter().any(|&v| class_of[v as usize] == usize::MAX)
        {
            return Err(Error::BadPartition(
                "classes do not cover the vertex set".into(),
            ));
        }
        for (id, e) in self.edges().enumerate() {
            let mut seen = vec![false; self.r];
            for &v in e {
                let c = class_of[v as usize];
                if seen[c] {
                    return Err(Error::BadPartition(format!(
                        "edge {id} meets class {c} twice"
                    )));
                }
                seen[c] = true;
            }
        }
        self.partition = Some(Partition {
            classes: sorted_classes,
            class_of,
        });
        Ok(self)
    }

    pub fn partition_classes(&self) -> Option<&[Vec<VertexId>]> {
        self.partition.as_ref().map(|p| p.classes.as_slice())
    }

    /// Index of the partition class containing `v`, when a partition is attached.
    pub fn class_of(&self, v: VertexId) -> Option<usize> {
        let p = self.partition.as_ref()?;
        let c = *p.class_of.get(v as usize)?;
        (c != usize::MAX).then_some(c)
    }

    /// The link of `v`: all (r-1)-sets completing `v` to an edge, optionally
    /// restricted to sets fully inside `restrict_to`. Sets are pairwise
    /// disjoint because the graph is linear.
    pub fn link(&self, v: VertexId, restrict_to: Option<&VertexSet>) -> Result<Link> {
        if !self.is_member(v) {
            return Err(Error::UnknownVertex(v));
        }
        let mut sets = Vec::new();
        for &e in self.incident_edges(v) {
            let set: Vec<VertexId> = self.edge(e).iter().copied().filter(|&w| w != v).collect();
            if let Some(allowed) = restrict_to {
                if !set.iter().all(|w| allowed.contains(w)) {
                    continue;
                }
            }
            sets.push(set);
        }
        sets.sort_unstable();
        Ok(Link { center: v, sets })
    }

    /// Links together with the edge realizing each, for callers that need to
    /// lift link sets back to host edges.
    pub fn link_with_edges(&self, v: VertexId) -> Vec<(EdgeId, Vec<VertexId>)> {
        self.incident_edges(v)
            .iter()
            .map(|&e| {
                let set = self.edge(e).iter().copied().filter(|&w| w != v).collect();
                (e, set)
            })
            .collect()
    }

    /// The 2-graph of edge traces on partition classes `i` and `j`. The trace
    /// map is a bijection for linear graphs, recorded in `back_map`.
    pub fn project(&self, i: usize, j: usize) -> Result<Projection> {
        let partition = self.partition.as_ref().ok_or(Error::NoPartition)?;
        if i >= j || j >= self.r {
            return Err(Error::BadParameter(format!(
                "projection classes ({i},{j}) need i < j < r = {}",
                self.r
            )));
        }
        let mut traces: Vec<(Vec<VertexId>, EdgeId)> = Vec::with_capacity(self.edge_count());
        for (id, e) in self.edges().enumerate() {
            let mut pair: Vec<VertexId> = e
                .iter()
                .copied()
                .filter(|&v| {
                    let c = partition.class_of[v as usize];
                    c == i || c == j
                })
                .collect();
            pair.sort_unstable();
            debug_assert_eq!(pair.len(), 2);
            traces.push((pair, id as EdgeId));
        }
        traces.sort_unstable();
        let mut members: Vec<VertexId> = partition.classes[i]
            .iter()
            .chain(partition.classes[j].iter())
            .copied()
            .collect();
        members.sort_unstable();
        let edges: Vec<Vec<VertexId>> = traces.iter().map(|(p, _)| p.clone()).collect();
        let back_map: Vec<EdgeId> = traces.iter().map(|(_, id)| *id).collect();
        let graph = Self::from_valid_parts(2, self.id_bound, members, edges, None);
        Ok(Projection {
            classes: (i, j),
            graph,
            back_map,
        })
    }

    /// Induced subgraph on `s`. Vertex ids are re-used from the parent.
    pub fn induced(&self, s: &VertexSet) -> Result<Self> {
        for &v in s {
            if !self.is_member(v) {
                return Err(Error::UnknownVertex(v));
            }
        }
        let edges: Vec<Vec<VertexId>> = self
            .edges()
            .filter(|e| e.iter().all(|v| s.contains(v)))
            .map(|e| e.to_vec())
            .collect();
        let members: Vec<VertexId> = s.iter().copied().collect();
        let partition = self.restrict_partition(&members);
        Ok(Self::from_valid_parts(
            self.r,
            self.id_bound,
            members,
            edges,
            partition,
        ))
    }

    /// Subgraph keeping the full vertex set and the given edges.
    pub fn subgraph_by_edges(&self, edge_ids: &[EdgeId]) -> Result<Self> {
        let mut ids: Vec<EdgeId> = edge_ids.to_vec();
        ids.sort_unstable();
        ids.dedup();
        let count = self.edge_count() as EdgeId;
        if let Some(&bad) = ids.iter().find(|&&e| e >= count) {
            return Err(Error::BadParameter(format!(
                "edge id {bad} out of range ({count} edges)"
            )));
        }
        let edges: Vec<Vec<VertexId>> = ids.iter().map(|&e| self.edge(e).to_vec()).collect();
        Ok(Self::from_valid_parts(
            self.r,
            self.id_bound,
            self.members.clone(),
            edges,
            self.partition.clone(),
        ))
    }

    fn restrict_partition(&self, members: &[VertexId]) -> Option<Partition> {
        let p = self.partition.as_ref()?;
        let member_set: BTreeSet<VertexId> = members.iter().copied().collect();
        let classes: Vec<Vec<VertexId>> = p
            .classes
            .iter()
            .map(|c| {
                c.iter()
                    .copied()
                    .filter(|v| member_set.contains(v))
                    .collect()
            })
            .collect();
        let mut class_of = vec![usize::MAX; self.id_bound];
        for (ci, class) in classes.iter().enumerate() {
            for &v in class {
                class_of[v as usize] = ci;
            }
        }
        Some(Partition { classes, class_of })
    }

    /// Min, max and average degree over the live vertex set.
    pub fn degree_profile(&self) -> DegreeProfile {
        if self.members.is_empty() {
            return DegreeProfile {
                min_degree: 0,
                max_degree: 0,
                avg_degree: 0.0,
            };
        }
        let mut min = usize::MAX;
        let mut max = 0usize;
        for &v in &self.members {
            let d = self.degree(v);
            min = min.min(d);
            max = max.max(d);
        }
        let avg = self.r as f64 * self.edge_count() as f64 / self.members.len() as f64;
        DegreeProfile {
            min_degree: min,
            max_degree: max,
            avg_degree: avg,
        }
    }

    /// f(G, s, t) = e(G)^s / v(G)^t, with the numerator computed exactly in
    /// 128-bit integers whenever it fits.
    pub fn f_value(&self, s: u32, t: u32) -> Result<f64> {
        if s < 1 || t < 1 {
            return Err(Error::BadParameter(format!(
                "f-value needs s >= 1 and t >= 1, got s = {s}, t = {t}"
            )));
        }
        let v = self.vertex_count();
        if v == 0 {
            return Err(Error::EmptyGraph);
        }
        let e = self.edge_count() as u128;
        let numerator = e
            .checked_pow(s)
            .map(|x| x as f64)
            .unwrap_or_else(|| (e as f64).powi(s as i32));
        Ok(numerator / (v as f64).powi(t as i32))
    }

    /// Re-checks the linearity invariant from scratch in O(e * r^2).
    pub fn audit_linearity(&self) -> Result<()> {
        let mut pair_seen: HashMap<(VertexId, VertexId), usize> = HashMap::new();
        for (index, e) in self.edges().enumerate() {
            for a in 0..self.r {
                for b in (a + 1)..self.r {
                    let key = (e[a], e[b]);
                    if let Some(&first) = pair_seen.get(&key) {
                        return Err(Error::LinearityViolation {
                            u: key.0,
                            v: key.1,
                            first,
                            second: index,
                        });
                    }
                    pair_seen.insert(key, index);
                }
            }
        }
        Ok(())
    }
}

/// The link of a vertex: the (r-1)-sets completing it to an edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Link {
    pub center: VertexId,
    pub sets: Vec<Vec<VertexId>>,
}

impl Link {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// True when the sets are pairwise disjoint (always holds for links of a
    /// linear graph).
    pub fn sets_pairwise_disjoint(&self) -> bool {
        let mut seen = BTreeSet::new();
        for set in &self.sets {
            for &v in set {
                if !seen.insert(v) {
                    return false;
                }
            }
        }
        true
    }
}

/// A 2-projection of an r-partite linear graph onto two classes.
#[derive(Clone, Debug)]
pub struct Projection {
    pub classes: (usize, usize),
    pub graph: LinearHypergraph,
    /// `back_map[i]` is the source edge that projects to edge `i`.
    pub back_map: Vec<EdgeId>,
}

impl Projection {
    /// Recomposes the source edge set through the back map.
    pub fn recompose(&self, source: &LinearHypergraph) -> Vec<Vec<VertexId>> {
        let mut edges: Vec<Vec<VertexId>> = self
            .back_map
            .iter()
            .map(|&id| source.edge(id).to_vec())
            .collect();
        edges.sort_unstable();
        edges
    }
}

/// Degree summary with the almost-regularity predicate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DegreeProfile {
    pub min_degree: usize,
    pub max_degree: usize,
    pub avg_degree: f64,
}

impl DegreeProfile {
    /// True when the maximum degree is at most `q` times the minimum degree.
    pub fn is_q_almost_regular(&self, q: f64) -> bool {
        self.max_degree as f64 <= q * self.min_degree as f64
    }
}
