//! Balanced-root descent.
//!
//! Given a rooted tree, a marked set S with |S| >= b*height + 1, and a drop
//! budget b, descend from the root always into the child subtree holding the
//! most marked vertices. The first node whose best child drops by at least b
//! satisfies both guarantees: its subtree still holds at least |S| - depth*b
//! marked vertices, and every child subtree holds at least b fewer.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::hypergraph::VertexId;
use crate::lemmas::tree::RootedTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BalancedRoot {
    pub vertex: VertexId,
    pub node: usize,
    pub depth: usize,
}

pub fn balanced_root(
    tree: &RootedTree,
    marked: &BTreeSet<VertexId>,
    b: usize,
) -> Result<BalancedRoot> {
    if b == 0 {
        return Err(Error::PreconditionViolated("drop budget b must be >= 1".into()));
    }
    if let Some(&v) = marked.iter().find(|v| !tree.contains_vertex(**v)) {
        return Err(Error::PreconditionViolated(format!(
            "marked vertex {v} is not in the tree"
        )));
    }
    let needed = b * tree.height() + 1;
    if marked.len() < needed {
        return Err(Error::PreconditionViolated(format!(
            "|S| = {} < b*height + 1 = {}",
            marked.len(),
            needed
        )));
    }
    let counts = tree.subtree_counts(marked);
    let mut cur = 0usize;
    loop {
        let best = tree
            .node(cur)
            .children
            .iter()
            .copied()
            .max_by_key(|&c| (counts[c], std::cmp::Reverse(tree.node(c).vertex)));
        match best {
            Some(child) if counts[cur] - counts[child] < b => cur = child,
            _ => {
                return Ok(BalancedRoot {
                    vertex: tree.node(cur).vertex,
                    node: cur,
                    depth: tree.node(cur).depth,
                })
            }
        }
    }
}

/// Re-checks the two descent guarantees; used by audits.
pub fn recheck_balanced_root(
    tree: &RootedTree,
    marked: &BTreeSet<VertexId>,
    b: usize,
    found: &BalancedRoot,
) -> bool {
    let counts = tree.subtree_counts(marked);
    let own = counts[found.node];
    if own + found.depth * b < marked.len() {
        return false;
    }
    tree.node(found.node)
        .children
        .iter()
        .all(|&c| counts[c] + b <= own)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_root_wins() {
        let mut t = RootedTree::new(0);
        for v in 1..=3 {
            t.add_child(0, v, vec![], None);
        }
        let s: BTreeSet<u32> = [1, 2, 3].into_iter().collect();
        let found = balanced_root(&t, &s, 1).unwrap();
        assert_eq!((found.vertex, found.depth), (0, 0));
        assert!(recheck_balanced_root(&t, &s, 1, &found));
    }

    #[test]
    fn descent_passes_through_heavy_child() {
        // root 0 -- child 1 -- four leaves; S = the leaves, b = 1
        let mut t = RootedTree::new(0);
        let u = t.add_child(0, 1, vec![], None);
        for v in 2..=5 {
            t.add_child(u, v, vec![], None);
        }
        let s: BTreeSet<u32> = [2, 3, 4, 5].into_iter().collect();
        let found = balanced_root(&t, &s, 1).unwrap();
        assert_eq!((found.vertex, found.depth), (1, 1));
        assert!(recheck_balanced_root(&t, &s, 1, &found));
    }

    #[test]
    fn wide_drop_stops_at_root() {
        // root with two children, five marked leaves under each, b = 3
        let mut t = RootedTree::new(0);
        let u = t.add_child(0, 1, vec![], None);
        let v = t.add_child(0, 2, vec![], None);
        for i in 0..5 {
            t.add_child(u, 10 + i, vec![], None);
            t.add_child(v, 20 + i, vec![], None);
        }
        let s: BTreeSet<u32> = (10..15).chain(20..25).collect();
        let found = balanced_root(&t, &s, 3).unwrap();
        assert_eq!((found.vertex, found.depth), (0, 0));
        assert!(recheck_balanced_root(&t, &s, 3, &found));
    }

    #[test]
    fn preconditions_enforced() {
        let mut t = RootedTree::new(0);
        t.add_child(0, 1, vec![], None);
        let tiny: BTreeSet<u32> = [1].into_iter().collect();
        assert!(matches!(
            balanced_root(&t, &tiny, 2),
            Err(Error::PreconditionViolated(_))
        ));
        let outside: BTreeSet<u32> = [9].into_iter().collect();
        assert!(matches!(
            balanced_root(&t, &outside, 1),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
