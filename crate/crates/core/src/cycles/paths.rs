//! Bipartite path counting, plain and rainbow.
//!
//! Paths of odd length 2p+1 have one endpoint in each side, so orienting them
//! from the first-side endpoint counts every undirected path exactly once.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::hypergraph::{VertexId, VertexSet};

/// A bipartite 2-graph with designated sides.
#[derive(Clone, Debug)]
pub struct BipartiteGraph {
    a: Vec<VertexId>,
    b: Vec<VertexId>,
    edges: Vec<(VertexId, VertexId)>, // (a-side, b-side), lex sorted
    adj_a: Vec<Vec<VertexId>>,        // indexed by position in `a`
    adj_b: Vec<Vec<VertexId>>,
    pos_a: std::collections::HashMap<VertexId, usize>,
    pos_b: std::collections::HashMap<VertexId, usize>,
}

impl BipartiteGraph {
    /// Builds from sides and cross edges. Sides must be disjoint and every
    /// edge endpoint must belong to its side; duplicate edges collapse.
    pub fn new(
        a: Vec<VertexId>,
        b: Vec<VertexId>,
        edges: &[(VertexId, VertexId)],
    ) -> Result<Self> {
        let mut a = a;
        let mut b = b;
        a.sort_unstable();
        a.dedup();
        b.sort_unstable();
        b.dedup();
        let aset: BTreeSet<_> = a.iter().copied().collect();
        let bset: BTreeSet<_> = b.iter().copied().collect();
        if let Some(&v) = aset.intersection(&bset).next() {
            return Err(Error::BadParameter(format!("vertex {v} lies on both sides")));
        }
        let pos_a: std::collections::HashMap<VertexId, usize> =
            a.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let pos_b: std::collections::HashMap<VertexId, usize> =
            b.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut sorted_edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if !pos_a.contains_key(&u) || !pos_b.contains_key(&v) {
                return Err(Error::BadParameter(format!(
                    "edge ({u}, {v}) does not run between the sides"
                )));
            }
            sorted_edges.push((u, v));
        }
        sorted_edges.sort_unstable();
        sorted_edges.dedup();
        let mut adj_a = vec![Vec::new(); a.len()];
        let mut adj_b = vec![Vec::new(); b.len()];
        for &(u, v) in &sorted_edges {
            adj_a[pos_a[&u]].push(v);
            adj_b[pos_b[&v]].push(u);
        }
        Ok(BipartiteGraph {
            a,
            b,
            edges: sorted_edges,
            adj_a,
            adj_b,
            pos_a,
            pos_b,
        })
    }

    pub fn side_a(&self) -> &[VertexId] {
        &self.a
    }

    pub fn side_b(&self) -> &[VertexId] {
        &self.b
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        if let Some(&i) = self.pos_a.get(&v) {
            &self.adj_a[i]
        } else if let Some(&i) = self.pos_b.get(&v) {
            &self.adj_b[i]
        } else {
            &[]
        }
    }

    /// Average degree of the a-side, e(H) / |A|.
    pub fn avg_degree_a(&self) -> f64 {
        if self.a.is_empty() {
            0.0
        } else {
            self.edges.len() as f64 / self.a.len() as f64
        }
    }

    pub fn avg_degree_b(&self) -> f64 {
        if self.b.is_empty() {
            0.0
        } else {
            self.edges.len() as f64 / self.b.len() as f64
        }
    }

    pub fn min_degree_a(&self) -> usize {
        self.adj_a.iter().map(|nb| nb.len()).min().unwrap_or(0)
    }

    pub fn min_degree_b(&self) -> usize {
        self.adj_b.iter().map(|nb| nb.len()).min().unwrap_or(0)
    }

    /// Exact number of (2p+1)-edge simple paths with one endpoint in each
    /// side, each undirected path counted once.
    pub fn count_paths(&self, p: usize) -> u64 {
        let mut total = 0u64;
        let target = 2 * p + 2;
        let mut path: Vec<VertexId> = Vec::with_capacity(target);
        for &start in &self.a {
            path.push(start);
            self.grow_count(&mut path, target, &mut total);
            path.pop();
        }
        total
    }

    fn grow_count(&self, path: &mut Vec<VertexId>, target: usize, total: &mut u64) {
        if path.len() == target {
            *total += 1;
            return;
        }
        let last = *path.last().unwrap();
        for &w in self.neighbors(last) {
            if !path.contains(&w) {
                path.push(w);
                self.grow_count(path, target, total);
                path.pop();
            }
        }
    }

    /// Streams every (2p+1)-edge path as its vertex sequence (a-side first).
    pub fn for_each_path<F>(&self, p: usize, mut visit: F)
    where
        F: FnMut(&[VertexId]) -> ControlFlow<()>,
    {
        let target = 2 * p + 2;
        let mut path: Vec<VertexId> = Vec::with_capacity(target);
        for &start in &self.a {
            path.push(start);
            if self.grow_visit(&mut path, target, &mut visit).is_break() {
                return;
            }
            path.pop();
        }
    }

    fn grow_visit<F>(
        &self,
        path: &mut Vec<VertexId>,
        target: usize,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[VertexId]) -> ControlFlow<()>,
    {
        if path.len() == target {
            return visit(path);
        }
        let last = *path.last().unwrap();
        for &w in self.neighbors(last) {
            if !path.contains(&w) {
                path.push(w);
                let flow = self.grow_visit(path, target, visit);
                path.pop();
                flow?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// An edge of a coloured bipartite graph; the colour is a sorted vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouredEdge {
    pub a: VertexId,
    pub b: VertexId,
    pub colour: Vec<VertexId>,
}

/// A bipartite 2-graph whose edges carry vertex-set colours. A colouring is
/// strongly proper when edges sharing a vertex have disjoint colour sets.
#[derive(Clone, Debug)]
pub struct ColouredBipartiteGraph {
    edges: Vec<ColouredEdge>,
    a: Vec<VertexId>,
    b: Vec<VertexId>,
    // adjacency as edge indices, keyed by vertex
    incident: std::collections::HashMap<VertexId, Vec<usize>>,
}

impl ColouredBipartiteGraph {
    pub fn new(a: Vec<VertexId>, b: Vec<VertexId>, edges: Vec<ColouredEdge>) -> Result<Self> {
        let mut a = a;
        let mut b = b;
        a.sort_unstable();
        a.dedup();
        b.sort_unstable();
        b.dedup();
        let aset: BTreeSet<_> = a.iter().copied().collect();
        let bset: BTreeSet<_> = b.iter().copied().collect();
        if let Some(&v) = aset.intersection(&bset).next() {
            return Err(Error::BadParameter(format!("vertex {v} lies on both sides")));
        }
        let mut edges = edges;
        for e in &mut edges {
            e.colour.sort_unstable();
            e.colour.dedup();
            if !aset.contains(&e.a) || !bset.contains(&e.b) {
                return Err(Error::BadParameter(format!(
                    "edge ({}, {}) does not run between the sides",
                    e.a, e.b
                )));
            }
        }
        edges.sort_unstable_by_key(|x| (x.a, x.b));
        let mut incident: std::collections::HashMap<VertexId, Vec<usize>> =
            std::collections::HashMap::new();
        for (i, e) in edges.iter().enumerate() {
            incident.entry(e.a).or_default().push(i);
            incident.entry(e.b).or_default().push(i);
        }
        Ok(ColouredBipartiteGraph {
            edges,
            a,
            b,
            incident,
        })
    }

    pub fn side_a(&self) -> &[VertexId] {
        &self.a
    }

    pub fn side_b(&self) -> &[VertexId] {
        &self.b
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[ColouredEdge] {
        &self.edges
    }

    pub fn incident_edges(&self, v: VertexId) -> &[usize] {
        self.incident.get(&v).map_or(&[], |ids| ids.as_slice())
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident_edges(v).len()
    }

    pub fn min_degree_a(&self) -> usize {
        self.a.iter().map(|&v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn min_degree_b(&self) -> usize {
        self.b.iter().map(|&v| self.degree(v)).min().unwrap_or(0)
    }

    /// The plain bipartite graph underneath, dropping colours.
    pub fn uncoloured(&self) -> BipartiteGraph {
        let pairs: Vec<(VertexId, VertexId)> = self.edges.iter().map(|e| (e.a, e.b)).collect();
        BipartiteGraph::new(self.a.clone(), self.b.clone(), &pairs)
            .expect("sides validated at construction")
    }

    /// Checks the strongly-proper property, returning the first witness pair
    /// of incident edges with intersecting colours.
    pub fn verify_strongly_proper(&self) -> Result<()> {
        for ids in self.incident.values() {
            for (i, &x) in ids.iter().enumerate() {
                for &y in &ids[i + 1..] {
                    let cx = &self.edges[x].colour;
                    let cy = &self.edges[y].colour;
                    if cx.iter().any(|c| cy.binary_search(c).is_ok()) {
                        return Err(Error::NotStronglyProper {
                            first: x.min(y),
                            second: x.max(y),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Streams every rainbow path of length 2p+1 (a-side endpoint first) that
    /// avoids the forbidden vertex and colour sets. Requires a strongly
    /// proper colouring; the stream is exhaustive and duplicate-free.
    pub fn for_each_rainbow_path<F>(
        &self,
        p: usize,
        forbidden_vertices: &VertexSet,
        forbidden_colours: &VertexSet,
        mut visit: F,
    ) -> Result<()>
    where
        F: FnMut(&RainbowPath) -> ControlFlow<()>,
    {
        self.verify_strongly_proper()?;
        let target = 2 * p + 2;
        let mut state = RainbowState {
            vertices: Vec::with_capacity(target),
            edge_indices: Vec::with_capacity(target - 1),
            colour_union: BTreeSet::new(),
        };
        for &start in &self.a {
            if forbidden_vertices.contains(&start) || state.colour_union.contains(&start) {
                continue;
            }
            state.vertices.push(start);
            let flow = self.grow_rainbow(
                &mut state,
                target,
                forbidden_vertices,
                forbidden_colours,
                &mut visit,
            );
            state.vertices.pop();
            if flow.is_break() {
                break;
            }
        }
        Ok(())
    }

    fn grow_rainbow<F>(
        &self,
        state: &mut RainbowState,
        target: usize,
        forbidden_vertices: &VertexSet,
        forbidden_colours: &VertexSet,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&RainbowPath) -> ControlFlow<()>,
    {
        if state.vertices.len() == target {
            let path = RainbowPath {
                vertices: state.vertices.clone(),
                colours: state
                    .edge_indices
                    .iter()
                    .map(|&i| self.edges[i].colour.clone())
                    .collect(),
            };
            debug_assert!(path.is_rainbow());
            return visit(&path);
        }
        let last = *state.vertices.last().unwrap();
        let want_b_side = state.vertices.len() % 2 == 1;
        for &ei in self.incident_edges(last) {
            let edge = &self.edges[ei];
            let next = if want_b_side {
                if edge.a != last {
                    continue;
                }
                edge.b
            } else {
                if edge.b != last {
                    continue;
                }
                edge.a
            };
            if state.vertices.contains(&next)
                || forbidden_vertices.contains(&next)
                || state.colour_union.contains(&next)
            {
                continue;
            }
            // rainbow: the new colour must avoid path vertices (incl. next),
            // forbidden colours, and must differ from every used colour set
            if edge
                .colour
                .iter()
                .any(|c| state.vertices.contains(c) || *c == next || forbidden_colours.contains(c))
            {
                continue;
            }
            if state
                .edge_indices
                .iter()
                .any(|&j| self.edges[j].colour == edge.colour)
            {
                continue;
            }
            let added: Vec<VertexId> = edge
                .colour
                .iter()
                .copied()
                .filter(|c| state.colour_union.insert(*c))
                .collect();
            state.vertices.push(next);
            state.edge_indices.push(ei);
            let flow = self.grow_rainbow(
                state,
                target,
                forbidden_vertices,
                forbidden_colours,
                visit,
            );
            state.edge_indices.pop();
            state.vertices.pop();
            for c in added {
                state.colour_union.remove(&c);
            }
            flow?;
        }
        ControlFlow::Continue(())
    }

    pub fn count_rainbow_paths(
        &self,
        p: usize,
        forbidden_vertices: &VertexSet,
        forbidden_colours: &VertexSet,
    ) -> Result<u64> {
        let mut n = 0u64;
        self.for_each_rainbow_path(p, forbidden_vertices, forbidden_colours, |_| {
            n += 1;
            ControlFlow::Continue(())
        })?;
        Ok(n)
    }

    pub fn collect_rainbow_paths(
        &self,
        p: usize,
        forbidden_vertices: &VertexSet,
        forbidden_colours: &VertexSet,
    ) -> Result<Vec<RainbowPath>> {
        let mut out = Vec::new();
        self.for_each_rainbow_path(p, forbidden_vertices, forbidden_colours, |path| {
            out.push(path.clone());
            ControlFlow::Continue(())
        })?;
        Ok(out)
    }
}

struct RainbowState {
    vertices: Vec<VertexId>,
    edge_indices: Vec<usize>,
    colour_union: BTreeSet<VertexId>,
}

/// A path whose edges carry pairwise-distinct colour sets, with the colour
/// union disjoint from the path's vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RainbowPath {
    pub vertices: Vec<VertexId>,
    pub colours: Vec<Vec<VertexId>>,
}

impl RainbowPath {
    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn colour_union(&self) -> VertexSet {
        self.colours.iter().flatten().copied().collect()
    }

    pub fn is_rainbow(&self) -> bool {
        for (i, c) in self.colours.iter().enumerate() {
            for d in &self.colours[i + 1..] {
                if c == d {
                    return false;
                }
            }
        }
        let union = self.colour_union();
        self.vertices.iter().all(|v| !union.contains(v))
    }

    pub fn first(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn last(&self) -> VertexId {
        *self.vertices.last().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k22() -> BipartiteGraph {
        BipartiteGraph::new(vec![0, 1], vec![2, 3], &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn k22_path_counts() {
        let g = k22();
        assert_eq!(g.count_paths(0), 4);
        assert_eq!(g.count_paths(1), 4);
    }

    #[test]
    fn single_edge_has_no_long_paths() {
        let g = BipartiteGraph::new(vec![0], vec![1], &[(0, 1)]).unwrap();
        assert_eq!(g.count_paths(0), 1);
        assert_eq!(g.count_paths(1), 0);
    }

    #[test]
    fn disjoint_colours_do_not_block() {
        // all colour sets pairwise disjoint: rainbow count equals plain count
        let edges = vec![
            ColouredEdge { a: 0, b: 2, colour: vec![10] },
            ColouredEdge { a: 0, b: 3, colour: vec![11] },
            ColouredEdge { a: 1, b: 2, colour: vec![12] },
            ColouredEdge { a: 1, b: 3, colour: vec![13] },
        ];
        let g = ColouredBipartiteGraph::new(vec![0, 1], vec![2, 3], edges).unwrap();
        g.verify_strongly_proper().unwrap();
        let none = VertexSet::new();
        assert_eq!(g.count_rainbow_paths(1, &none, &none).unwrap(), 4);
    }

    #[test]
    fn incident_shared_colour_is_rejected() {
        let edges = vec![
            ColouredEdge { a: 0, b: 2, colour: vec![10] },
            ColouredEdge { a: 0, b: 3, colour: vec![10] },
        ];
        let g = ColouredBipartiteGraph::new(vec![0, 1], vec![2, 3], edges).unwrap();
        assert_eq!(
            g.verify_strongly_proper().unwrap_err(),
            Error::NotStronglyProper { first: 0, second: 1 }
        );
        let none = VertexSet::new();
        assert!(g.count_rainbow_paths(1, &none, &none).is_err());
    }

    #[test]
    fn forbidden_sets_prune_paths() {
        let edges = vec![
            ColouredEdge { a: 0, b: 2, colour: vec![10] },
            ColouredEdge { a: 0, b: 3, colour: vec![11] },
            ColouredEdge { a: 1, b: 2, colour: vec![12] },
            ColouredEdge { a: 1, b: 3, colour: vec![13] },
        ];
        let g = ColouredBipartiteGraph::new(vec![0, 1], vec![2, 3], edges).unwrap();
        let banned_v: VertexSet = [1u32].into_iter().collect();
        let none = VertexSet::new();
        assert_eq!(g.count_rainbow_paths(1, &banned_v, &none).unwrap(), 0);
        let banned_c: VertexSet = [12u32].into_iter().collect();
        // every 3-edge path uses 3 of the 4 edges, so exactly one avoids (1,2)
        assert_eq!(g.count_rainbow_paths(1, &none, &banned_c).unwrap(), 1);
    }

    #[test]
    fn colour_touching_path_vertices_blocks_rainbow() {
        // colour of the (1,3) edge contains vertex 0: any 3-edge path visits 0
        let edges = vec![
            ColouredEdge { a: 0, b: 2, colour: vec![10] },
            ColouredEdge { a: 0, b: 3, colour: vec![11] },
            ColouredEdge { a: 1, b: 2, colour: vec![12] },
            ColouredEdge { a: 1, b: 3, colour: vec![0] },
        ];
        let g = ColouredBipartiteGraph::new(vec![0, 1], vec![2, 3], edges).unwrap();
        let none = VertexSet::new();
        // 3-edge paths visit all four vertices; only the path avoiding the
        // (1,3) edge survives
        assert_eq!(g.count_rainbow_paths(1, &none, &none).unwrap(), 1);
    }
}
