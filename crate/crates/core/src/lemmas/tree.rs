//! Levelled rooted trees living inside a host graph.
//!
//! One structure serves both the plain BFS tree (empty colours) and the
//! matching-built rainbow tree: nodes carry the colour set and the host edge
//! realizing the link to their parent.

use std::collections::BTreeMap;

use crate::hypergraph::{EdgeId, VertexId};

#[derive(Clone, Debug)]
pub struct TreeNode {
    pub vertex: VertexId,
    pub parent: Option<usize>,
    pub depth: usize,
    pub children: Vec<usize>,
    /// Colour of the edge to the parent; empty for BFS trees and at the root.
    pub colour: Vec<VertexId>,
    /// Host edge realizing the edge to the parent, when one exists.
    pub host_edge: Option<EdgeId>,
}

/// A rooted tree with explicit levels; vertices are host-graph ids.
#[derive(Clone, Debug)]
pub struct RootedTree {
    nodes: Vec<TreeNode>,
    levels: Vec<Vec<usize>>,
    index_of: BTreeMap<VertexId, usize>,
}

impl RootedTree {
    pub fn new(root: VertexId) -> Self {
        let node = TreeNode {
            vertex: root,
            parent: None,
            depth: 0,
            children: Vec::new(),
            colour: Vec::new(),
            host_edge: None,
        };
        RootedTree {
            nodes: vec![node],
            levels: vec![vec![0]],
            index_of: [(root, 0)].into_iter().collect(),
        }
    }

    /// Adds a child; panics if the vertex is already in the tree.
    pub fn add_child(
        &mut self,
        parent: usize,
        vertex: VertexId,
        colour: Vec<VertexId>,
        host_edge: Option<EdgeId>,
    ) -> usize {
        assert!(
            !self.index_of.contains_key(&vertex),
            "vertex {vertex} already in tree"
        );
        let depth = self.nodes[parent].depth + 1;
        let idx = self.nodes.len();
        self.nodes.push(TreeNode {
            vertex,
            parent: Some(parent),
            depth,
            children: Vec::new(),
            colour,
            host_edge,
        });
        self.nodes[parent].children.push(idx);
        if self.levels.len() <= depth {
            self.levels.push(Vec::new());
        }
        self.levels[depth].push(idx);
        self.index_of.insert(vertex, idx);
        idx
    }

    pub fn root(&self) -> VertexId {
        self.nodes[0].vertex
    }

    pub fn node(&self, idx: usize) -> &TreeNode {
        &self.nodes[idx]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a tree always has its root
    }

    pub fn height(&self) -> usize {
        self.levels.len() - 1
    }

    /// Node indices at the given depth.
    pub fn level(&self, depth: usize) -> &[usize] {
        self.levels.get(depth).map_or(&[], |l| l.as_slice())
    }

    pub fn level_vertices(&self, depth: usize) -> Vec<VertexId> {
        self.level(depth)
            .iter()
            .map(|&i| self.nodes[i].vertex)
            .collect()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.index_of.contains_key(&v)
    }

    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        self.index_of.get(&v).copied()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.nodes.iter().map(|n| n.vertex)
    }

    /// The ancestor of `idx` at the given depth (which must not exceed the
    /// node's own depth).
    pub fn ancestor_at_depth(&self, idx: usize, depth: usize) -> usize {
        let mut cur = idx;
        while self.nodes[cur].depth > depth {
            cur = self.nodes[cur].parent.expect("depth > 0 implies a parent");
        }
        assert_eq!(self.nodes[cur].depth, depth, "node shallower than target");
        cur
    }

    /// True when `idx` lies in the subtree rooted at `anc`.
    pub fn in_subtree(&self, anc: usize, idx: usize) -> bool {
        self.nodes[idx].depth >= self.nodes[anc].depth
            && self.ancestor_at_depth(idx, self.nodes[anc].depth) == anc
    }

    /// Node indices from `idx` up to (and including) `anc`.
    pub fn path_up(&self, idx: usize, anc: usize) -> Vec<usize> {
        let mut path = vec![idx];
        let mut cur = idx;
        while cur != anc {
            cur = self.nodes[cur]
                .parent
                .expect("anc must be an ancestor of idx");
            path.push(cur);
        }
        path
    }

    /// Host edges along the path from `idx` up to `anc` (one per step).
    pub fn host_edges_up(&self, idx: usize, anc: usize) -> Vec<EdgeId> {
        let path = self.path_up(idx, anc);
        path[..path.len() - 1]
            .iter()
            .map(|&i| {
                self.nodes[i]
                    .host_edge
                    .expect("tree edges built from the host carry their edge id")
            })
            .collect()
    }

    /// Number of marked vertices in each subtree, indexed by node.
    pub fn subtree_counts(&self, marked: &std::collections::BTreeSet<VertexId>) -> Vec<usize> {
        let mut counts = vec![0usize; self.nodes.len()];
        // nodes are appended after their parents, so a reverse sweep is a
        // valid post-order accumulation
        for idx in (0..self.nodes.len()).rev() {
            if marked.contains(&self.nodes[idx].vertex) {
                counts[idx] += 1;
            }
            if let Some(p) = self.nodes[idx].parent {
                counts[p] += counts[idx];
            }
        }
        counts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn structure_queries() {
        let mut t = RootedTree::new(0);
        let u = t.add_child(0, 1, vec![], None);
        let v = t.add_child(0, 2, vec![], None);
        let w = t.add_child(u, 3, vec![], None);
        assert_eq!(t.height(), 2);
        assert_eq!(t.level_vertices(1), vec![1, 2]);
        assert!(t.in_subtree(u, w));
        assert!(!t.in_subtree(v, w));
        assert_eq!(t.ancestor_at_depth(w, 0), 0);
        assert_eq!(t.path_up(w, 0), vec![w, u, 0]);

        let marked: BTreeSet<u32> = [2, 3].into_iter().collect();
        let counts = t.subtree_counts(&marked);
        assert_eq!(counts[0], 2);
        assert_eq!(counts[u], 1);
        assert_eq!(counts[v], 1);
        assert_eq!(counts[w], 1);
    }
}
