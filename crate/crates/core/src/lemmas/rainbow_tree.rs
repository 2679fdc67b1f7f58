//! Rainbow rooted trees over a split partition.
//!
//! Levels alternate between two designated host classes. Level i+1 is grown
//! from the union of the level-i links restricted to part S_{i+1}: a greedy
//! maximal matching is taken in that (r-1)-uniform family, each matched set
//! contributes its opposite-class vertex as a child, and the rest of the set
//! becomes the colour of the new tree edge. Candidate sets containing the
//! root are skipped so the root cannot reappear as a descendant.
//!
//! Matching note: a maximum matching is NP-hard for uniformity >= 3, so the
//! construction uses a deterministic greedy maximal matching; every
//! postcondition checked downstream only needs maximality.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, LinearHypergraph, VertexId};
use crate::lemmas::split::SplitPartition;
use crate::lemmas::tree::RootedTree;

/// Builds the tree of height at most `t` rooted at `x`, relative to `split`.
/// Fails with [`Error::EmptyLevel`] when a level produces an empty matching
/// before reaching height `t`.
pub fn build_rainbow_tree(
    g: &LinearHypergraph,
    x: VertexId,
    split: &SplitPartition,
    t: usize,
) -> Result<RootedTree> {
    let classes = g.partition_classes().ok_or(Error::NoPartition)?;
    let root_class = g
        .class_of(x)
        .ok_or(Error::UnknownVertex(x))?;
    if root_class != split.class_a && root_class != split.class_b {
        return Err(Error::PreconditionViolated(format!(
            "root {x} lies in class {root_class}, not in a designated class"
        )));
    }
    if t > split.part_count() {
        return Err(Error::BadParameter(format!(
            "height {t} exceeds the {} split parts",
            split.part_count()
        )));
    }
    let _ = classes;
    let mut tree = RootedTree::new(x);
    for level in 0..t {
        let grown = grow_level(g, split, &mut tree, level)?;
        if grown == 0 {
            return Err(Error::EmptyLevel { level: level + 1 });
        }
    }
    Ok(tree)
}

/// Grows one level; returns the number of children added.
fn grow_level(
    g: &LinearHypergraph,
    split: &SplitPartition,
    tree: &mut RootedTree,
    level: usize,
) -> Result<usize> {
    let root = tree.root();
    let part: BTreeSet<VertexId> = split.parts[level].iter().copied().collect();
    // candidate link sets fully inside S_{level+1}, tagged with provenance
    let mut candidates: Vec<(Vec<VertexId>, usize, EdgeId)> = Vec::new();
    for &node_idx in tree.level(level) {
        let v = tree.node(node_idx).vertex;
        for (edge_id, set) in g.link_with_edges(v) {
            if set.iter().all(|w| part.contains(w)) && !set.contains(&root) {
                candidates.push((set, node_idx, edge_id));
            }
        }
    }
    candidates.sort();
    // greedy maximal matching over the candidate sets
    let mut matched_vertices: BTreeSet<VertexId> = BTreeSet::new();
    let mut added = 0usize;
    for (set, parent_idx, edge_id) in candidates {
        if set.iter().any(|w| matched_vertices.contains(w)) {
            continue;
        }
        matched_vertices.extend(set.iter().copied());
        // the child is the unique vertex of the set in the opposite
        // designated class; for r = 2 the set is that single vertex
        let parent_class = g
            .class_of(tree.node(parent_idx).vertex)
            .expect("tree vertices live in designated classes");
        let child_class = if parent_class == split.class_a {
            split.class_b
        } else {
            split.class_a
        };
        let child = set
            .iter()
            .copied()
            .find(|&w| g.class_of(w) == Some(child_class))
            .ok_or_else(|| {
                Error::PreconditionViolated(format!(
                    "matched set {set:?} has no vertex in class {child_class}"
                ))
            })?;
        let colour: Vec<VertexId> = set.iter().copied().filter(|&w| w != child).collect();
        tree.add_child(parent_idx, child, colour, Some(edge_id));
        added += 1;
    }
    Ok(added)
}

/// Audit of a built tree; every flag must hold for the construction to be
/// usable by the cycle search.
#[derive(Clone, Debug, Serialize)]
pub struct RainbowTreeAudit {
    /// Colour sets pairwise distinct and the colour union avoids V(T).
    pub rainbow: bool,
    /// Edges sharing a tree vertex have disjoint colour sets.
    pub strongly_proper: bool,
    /// The matched sets of each level are pairwise disjoint.
    pub matchings_disjoint: bool,
    /// Level-i edge colours lie inside split part S_i.
    pub colours_in_parts: bool,
    /// Every root-to-node path lifts through the host edges to a linear path.
    pub lifts_to_linear_paths: bool,
}

impl RainbowTreeAudit {
    pub fn all_ok(&self) -> bool {
        self.rainbow
            && self.strongly_proper
            && self.matchings_disjoint
            && self.colours_in_parts
            && self.lifts_to_linear_paths
    }
}

pub fn audit_rainbow_tree(
    g: &LinearHypergraph,
    tree: &RootedTree,
    split: &SplitPartition,
) -> RainbowTreeAudit {
    let tree_vertices: BTreeSet<VertexId> = tree.vertices().collect();
    let mut edges: Vec<(usize, &crate::lemmas::tree::TreeNode)> = Vec::new();
    for depth in 1..=tree.height() {
        for &idx in tree.level(depth) {
            edges.push((idx, tree.node(idx)));
        }
    }

    let mut rainbow = true;
    let mut strongly_proper = true;
    for (i, (_, a)) in edges.iter().enumerate() {
        if a.colour.iter().any(|c| tree_vertices.contains(c)) {
            rainbow = false;
        }
        for (_, b) in edges.iter().skip(i + 1) {
            if !a.colour.is_empty() && a.colour == b.colour {
                rainbow = false;
            }
        }
    }
    // adjacency in the tree: parent-child edges sharing a vertex
    for (i, (ai, a)) in edges.iter().enumerate() {
        for (bi, b) in edges.iter().skip(i + 1) {
            let shares = a.parent == Some(*bi)
                || b.parent == Some(*ai)
                || a.parent == b.parent;
            if shares && a.colour.iter().any(|c| b.colour.contains(c)) {
                strongly_proper = false;
            }
        }
    }

    let mut matchings_disjoint = true;
    for depth in 1..=tree.height() {
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        for &idx in tree.level(depth) {
            let node = tree.node(idx);
            let mut matched_set = node.colour.clone();
            matched_set.push(node.vertex);
            for w in matched_set {
                if !seen.insert(w) {
                    matchings_disjoint = false;
                }
            }
        }
    }

    let mut colours_in_parts = true;
    for depth in 1..=tree.height() {
        let part: BTreeSet<VertexId> = split
            .parts
            .get(depth - 1)
            .map(|p| p.iter().copied().collect())
            .unwrap_or_default();
        for &idx in tree.level(depth) {
            if !tree.node(idx).colour.iter().all(|c| part.contains(c)) {
                colours_in_parts = false;
            }
        }
    }

    let mut lifts = true;
    for depth in (1..=tree.height()).rev() {
        for &idx in tree.level(depth) {
            let host_edges = tree.host_edges_up(idx, 0);
            if !is_linear_path(g, &host_edges) {
                lifts = false;
            }
        }
    }

    RainbowTreeAudit {
        rainbow,
        strongly_proper,
        matchings_disjoint,
        colours_in_parts,
        lifts_to_linear_paths: lifts,
    }
}

/// Consecutive edges share exactly one vertex; non-consecutive edges are
/// disjoint.
pub fn is_linear_path(g: &LinearHypergraph, edge_ids: &[EdgeId]) -> bool {
    for (i, &a) in edge_ids.iter().enumerate() {
        for (j, &b) in edge_ids.iter().enumerate().skip(i + 1) {
            let ea = g.edge(a);
            let eb = g.edge(b);
            let shared = ea.iter().filter(|v| eb.contains(v)).count();
            let want = usize::from(j == i + 1);
            if shared != want {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::random_r_partite;
    use crate::lemmas::split::split_vertices;
    use crate::seed::Seed;

    #[test]
    fn single_triple_gives_one_branch() {
        // one edge {x, b, s} with classes ({x}, {b}, {s}); S_1 must hold {b, s}
        let g = LinearHypergraph::build(3, 3, &[vec![0, 1, 2]])
            .unwrap()
            .with_partition(vec![vec![0], vec![1], vec![2]])
            .unwrap();
        let split = split_vertices(&g, 0, 1, 1, 0, Seed::new(1), 0).unwrap();
        let tree = build_rainbow_tree(&g, 0, &split, 1).unwrap();
        assert_eq!(tree.height(), 1);
        assert_eq!(tree.level_vertices(1), vec![1]);
        assert_eq!(tree.node(1).colour, vec![2]);
        let audit = audit_rainbow_tree(&g, &tree, &split);
        assert!(audit.all_ok(), "{audit:?}");
    }

    #[test]
    fn two_graph_reduces_to_plain_levelled_tree() {
        // bipartite 2-graph: colours are empty sets and matchings are plain
        // matchings; the split is pinned by hand so the build is forced
        let g = LinearHypergraph::build(
            2,
            6,
            &[vec![0, 3], vec![0, 4], vec![1, 3], vec![2, 5]],
        )
        .unwrap()
        .with_partition(vec![vec![0, 1, 2], vec![3, 4, 5]])
        .unwrap();
        let parts: Vec<Vec<u32>> = vec![vec![3, 4, 5], vec![0, 1, 2]];
        let part_of = parts
            .iter()
            .enumerate()
            .flat_map(|(i, p)| p.iter().map(move |&v| (v, i)))
            .collect();
        let split = SplitPartition {
            parts,
            part_of,
            class_a: 0,
            class_b: 1,
            floor: 0,
            link_sizes: Default::default(),
            retries_used: 0,
        };
        let tree = build_rainbow_tree(&g, 0, &split, 2).unwrap();
        assert_eq!(tree.level_vertices(1), vec![3, 4]);
        assert_eq!(tree.level_vertices(2), vec![1]);
        for depth in 1..=tree.height() {
            for &idx in tree.level(depth) {
                assert!(tree.node(idx).colour.is_empty());
            }
        }
        let audit = audit_rainbow_tree(&g, &tree, &split);
        assert!(audit.all_ok(), "{audit:?}");
    }

    #[test]
    fn random_instances_pass_full_audit() {
        let seed = Seed::new(11);
        let mut built = 0;
        for i in 0..30 {
            let g = random_r_partite(&[12, 12, 12], 120, seed.stream(i)).unwrap();
            let split = match split_vertices(&g, 0, 1, 2, 1, seed.stream(100 + i), 100) {
                Ok(s) => s,
                Err(_) => continue,
            };
            let root = g.partition_classes().unwrap()[0][0];
            match build_rainbow_tree(&g, root, &split, 2) {
                Ok(tree) => {
                    built += 1;
                    let audit = audit_rainbow_tree(&g, &tree, &split);
                    assert!(audit.all_ok(), "stream {i}: {audit:?}");
                }
                Err(Error::EmptyLevel { .. }) => continue,
                Err(other) => panic!("unexpected {other:?}"),
            }
        }
        assert!(built >= 20, "only {built} trees built");
    }

    #[test]
    fn missing_partition_is_rejected() {
        let g = LinearHypergraph::build(3, 3, &[vec![0, 1, 2]]).unwrap();
        let gp = g
            .clone()
            .with_partition(vec![vec![0], vec![1], vec![2]])
            .unwrap();
        let split = split_vertices(&gp, 0, 1, 1, 0, Seed::new(1), 0).unwrap();
        assert_eq!(
            build_rainbow_tree(&g, 0, &split, 1).unwrap_err(),
            Error::NoPartition
        );
    }
}
