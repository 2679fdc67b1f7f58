//! Cycle finding through levelled trees.
//!
//! Two procedures behind one entry point. For 2-graphs: BFS from the root to
//! the first level whose expansion ratio drops below n^(1/k), then clean the
//! bipartite layer to the next level through balanced-root descent and extend
//! every short path back through the tree. For r-partite linear r-graphs with
//! r >= 3: split the vertices, grow a rainbow tree, cross-cut a cover of the
//! next-level link family into a coloured bipartite graph, and run the
//! dominant-sector recursion. Either way, every emitted copy is re-validated
//! against the linear-cycle predicate and tagged with the tree level it
//! meets; degenerate inputs produce empty outcomes with diagnostics rather
//! than errors.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use serde::Serialize;

use crate::cycles::{
    BipartiteGraph, ColouredBipartiteGraph, ColouredEdge, CycleSet, LinearCycleCopy, RainbowPath,
};
use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, LinearHypergraph, VertexId, VertexSet};
use crate::lemmas::balanced_root::balanced_root;
use crate::lemmas::cross_cut::{cross_cut, UniformSetFamily, DEFAULT_CROSS_CUT_ROUNDS};
use crate::lemmas::peel::peel_bipartite;
use crate::lemmas::rainbow_tree::build_rainbow_tree;
use crate::lemmas::split::split_vertices;
use crate::lemmas::tree::RootedTree;
use crate::seed::Seed;

#[derive(Clone, Debug, Serialize)]
pub struct ThresholdCheck {
    pub name: String,
    pub required: f64,
    pub actual: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SearchDiagnostics {
    pub stopping_level: Option<usize>,
    pub checks: Vec<ThresholdCheck>,
    pub notes: Vec<String>,
}

impl SearchDiagnostics {
    fn check(&mut self, name: &str, required: f64, actual: f64) {
        self.checks.push(ThresholdCheck {
            name: name.to_string(),
            required,
            actual,
            passed: actual >= required,
        });
    }

    fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }
}

#[derive(Clone, Debug)]
pub struct FoundCycle {
    pub copy: LinearCycleCopy,
    /// Tree level met by the copy's skeleton.
    pub level: usize,
}

#[derive(Clone, Debug)]
pub struct CycleSearchOutcome {
    pub found: Vec<FoundCycle>,
    pub diagnostics: SearchDiagnostics,
}

impl CycleSearchOutcome {
    fn empty(diagnostics: SearchDiagnostics) -> Self {
        CycleSearchOutcome {
            found: Vec::new(),
            diagnostics,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.found.is_empty()
    }

    pub fn cycle_set(&self) -> CycleSet {
        self.found.iter().map(|f| f.copy.clone()).collect()
    }
}

/// Finds verified 2k-cycle copies whose skeleton meets a reported level of a
/// tree rooted at `x`. Dispatches on uniformity; r >= 3 requires an attached
/// r-partition.
pub fn bfs_find_cycles(
    g: &LinearHypergraph,
    x: VertexId,
    k: usize,
    seed: Seed,
) -> Result<CycleSearchOutcome> {
    if k < 2 {
        return Err(Error::BadParameter(format!("need k >= 2, got {k}")));
    }
    if !g.is_member(x) {
        return Err(Error::UnknownVertex(x));
    }
    if g.r() == 2 {
        find_cycles_via_bfs(g, x, k)
    } else {
        find_cycles_via_rainbow_tree(g, x, k, seed)
    }
}

// ---------------------------------------------------------------------------
// 2-graphs: BFS levels, balanced-root cleaning, path extension
// ---------------------------------------------------------------------------

fn find_cycles_via_bfs(
    g: &LinearHypergraph,
    x: VertexId,
    k: usize,
) -> Result<CycleSearchOutcome> {
    let mut diag = SearchDiagnostics::default();
    let n = g.vertex_count() as f64;
    let ratio_bound = n.powf(1.0 / k as f64);

    // BFS levels 0..=k
    let mut levels: Vec<Vec<VertexId>> = vec![vec![x]];
    let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut seen: BTreeSet<VertexId> = [x].into_iter().collect();
    for _ in 0..k {
        let mut next: Vec<VertexId> = Vec::new();
        for &v in levels.last().unwrap() {
            for &e in g.incident_edges(v) {
                let w = other_endpoint(g, e, v);
                if seen.insert(w) {
                    parent.insert(w, v);
                    next.push(w);
                }
            }
        }
        next.sort_unstable();
        levels.push(next);
    }

    let h = (0..k).find(|&i| {
        let cur = levels[i].len() as f64;
        let nxt = levels[i + 1].len() as f64;
        cur == 0.0 || nxt < ratio_bound * cur
    });
    let Some(h) = h else {
        diag.note("no stopping level produced dense F");
        return Ok(CycleSearchOutcome::empty(diag));
    };
    diag.stopping_level = Some(h);
    if levels[h].is_empty() || levels[h + 1].is_empty() {
        diag.note("no stopping level produced dense F");
        return Ok(CycleSearchOutcome::empty(diag));
    }

    // BFS tree for levels 0..=h
    let mut tree = RootedTree::new(x);
    for level in levels.iter().take(h + 1).skip(1) {
        for &v in level {
            let p = parent[&v];
            let p_idx = tree.index_of(p).expect("parent discovered earlier");
            let host = g
                .edge_containing_pair(p, v)
                .expect("BFS edges exist in the host");
            tree.add_child(p_idx, v, Vec::new(), Some(host));
        }
    }

    // F: the bipartite layer between the stopping level and the next
    let top: BTreeSet<VertexId> = levels[h].iter().copied().collect();
    let mut layer_edges: Vec<(VertexId, VertexId)> = Vec::new();
    for &w in &levels[h + 1] {
        for &e in g.incident_edges(w) {
            let u = other_endpoint(g, e, w);
            if top.contains(&u) {
                layer_edges.push((u, w));
            }
        }
    }
    if layer_edges.is_empty() {
        diag.note("no stopping level produced dense F");
        return Ok(CycleSearchOutcome::empty(diag));
    }
    let layer = BipartiteGraph::new(levels[h].clone(), levels[h + 1].clone(), &layer_edges)?;
    let degree_floor = (16 * k * k) as f64;
    diag.check("layer_avg_degree_top", degree_floor, layer.avg_degree_a());
    diag.check("layer_avg_degree_next", degree_floor, layer.avg_degree_b());

    // clean: drop low-degree outer vertices, anchor the rest by descent
    let mut anchors: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut cleaned: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &w in layer.side_b() {
        let neighbors: BTreeSet<VertexId> = layer.neighbors(w).iter().copied().collect();
        if neighbors.len() < k * h + 1 {
            continue;
        }
        let Ok(found) = balanced_root(&tree, &neighbors, k) else {
            continue;
        };
        let kept: Vec<VertexId> = neighbors
            .iter()
            .copied()
            .filter(|&u| {
                let idx = tree.index_of(u).expect("layer top side is in the tree");
                tree.in_subtree(found.node, idx)
            })
            .collect();
        if !kept.is_empty() {
            anchors.insert(w, found.node);
            cleaned.insert(w, kept);
        }
    }
    if cleaned.is_empty() {
        diag.note("cleaning removed every outer vertex");
        return Ok(CycleSearchOutcome::empty(diag));
    }

    // heaviest anchor depth wins
    let mut weight_by_depth: BTreeMap<usize, usize> = BTreeMap::new();
    for (w, kept) in &cleaned {
        let depth = tree.node(anchors[w]).depth;
        *weight_by_depth.entry(depth).or_insert(0) += kept.len();
    }
    let (&best_depth, _) = weight_by_depth
        .iter()
        .max_by_key(|&(depth, weight)| (*weight, std::cmp::Reverse(*depth)))
        .expect("cleaned is nonempty");
    diag.note(format!("anchor depth {best_depth} carries the most cleaned edges"));

    let block_edges: Vec<(VertexId, VertexId)> = cleaned
        .iter()
        .filter(|(w, _)| tree.node(anchors[w]).depth == best_depth)
        .flat_map(|(&w, kept)| kept.iter().map(move |&u| (u, w)))
        .collect();
    let side_a: Vec<VertexId> = block_edges.iter().map(|&(u, _)| u).collect();
    let side_b: Vec<VertexId> = block_edges.iter().map(|&(_, w)| w).collect();
    let block = BipartiteGraph::new(side_a, side_b, &block_edges)?;

    let m = k - h + best_depth;
    let mut found: BTreeMap<Vec<EdgeId>, FoundCycle> = BTreeMap::new();
    let mut paths_seen = 0u64;
    block.for_each_path(m - 1, |path| {
        paths_seen += 1;
        let v1 = path[0];
        let w_end = *path.last().unwrap();
        let anchor = anchors[&w_end];
        let v1_idx = tree.index_of(v1).expect("path starts in the tree");
        let branch = tree.ancestor_at_depth(v1_idx, best_depth + 1);
        for &u in &cleaned[&w_end] {
            if path.contains(&u) {
                continue;
            }
            let u_idx = tree.index_of(u).expect("cleaned vertices are in the tree");
            if tree.ancestor_at_depth(u_idx, best_depth + 1) == branch {
                continue;
            }
            let mut path_edges: Vec<EdgeId> = Vec::with_capacity(path.len() - 1);
            for pair in path.windows(2) {
                path_edges.push(
                    g.edge_containing_pair(pair[0], pair[1])
                        .expect("path edges exist"),
                );
            }
            let closing = g
                .edge_containing_pair(w_end, u)
                .expect("cleaned adjacency is host adjacency");
            if let Ok(copy) = assemble_cycle(g, &tree, &path_edges, closing, v1_idx, u_idx, anchor)
            {
                found.entry(copy.edge_ids().to_vec()).or_insert(FoundCycle {
                    copy,
                    level: best_depth,
                });
            }
        }
        ControlFlow::Continue(())
    });
    diag.note(format!(
        "{} short paths considered, {} distinct cycles",
        paths_seen,
        found.len()
    ));
    if found.is_empty() {
        diag.note("no stopping level produced dense F");
    }
    Ok(CycleSearchOutcome {
        found: found.into_values().collect(),
        diagnostics: diag,
    })
}

fn other_endpoint(g: &LinearHypergraph, e: EdgeId, v: VertexId) -> VertexId {
    let ends = g.edge(e);
    if ends[0] == v {
        ends[1]
    } else {
        ends[0]
    }
}

/// Builds the ordered edge cycle: along the path, across the closing edge,
/// up from the closing vertex to the anchor and back down to the path start.
fn assemble_cycle(
    g: &LinearHypergraph,
    tree: &RootedTree,
    path_edges: &[EdgeId],
    closing: EdgeId,
    v1_idx: usize,
    u_idx: usize,
    anchor: usize,
) -> Result<LinearCycleCopy> {
    let mut ordered: Vec<EdgeId> = path_edges.to_vec();
    ordered.push(closing);
    ordered.extend(tree.host_edges_up(u_idx, anchor));
    let mut down = tree.host_edges_up(v1_idx, anchor);
    down.reverse();
    ordered.extend(down);
    LinearCycleCopy::from_edge_cycle(g, &ordered)
}

// ---------------------------------------------------------------------------
// r >= 3: rainbow tree, cross-cut, dominant-sector recursion
// ---------------------------------------------------------------------------

fn find_cycles_via_rainbow_tree(
    g: &LinearHypergraph,
    x: VertexId,
    k: usize,
    seed: Seed,
) -> Result<CycleSearchOutcome> {
    let mut diag = SearchDiagnostics::default();
    let classes = g.partition_classes().ok_or(Error::NoPartition)?;
    let class_a = g.class_of(x).ok_or(Error::UnknownVertex(x))?;
    let class_b = if class_a == 0 { 1 } else { 0 };
    let n = (classes[class_a].len() + classes[class_b].len()) as f64;

    // split with nontriviality floor 1, falling back to an unaudited sample
    let split = match split_vertices(g, class_a, class_b, k, 1, seed.stream(0), 20) {
        Ok(s) => s,
        Err(Error::RetriesExhausted { .. }) => {
            diag.note("split floor 1 unreachable; using unaudited sample");
            split_vertices(g, class_a, class_b, k, 0, seed.stream(1), 0)?
        }
        Err(other) => return Err(other),
    };

    // grow the tree as far as the splitting allows, up to height k
    let mut height = k;
    let tree = loop {
        match build_rainbow_tree(g, x, &split, height) {
            Ok(t) => break t,
            Err(Error::EmptyLevel { level }) if level > 1 => {
                diag.note(format!("tree truncated at level {}", level - 1));
                height = level - 1;
            }
            Err(Error::EmptyLevel { .. }) => {
                diag.note("root has no link inside the first part");
                return Ok(CycleSearchOutcome::empty(diag));
            }
            Err(other) => return Err(other),
        }
    };

    // stopping level: first i with |L_{i+1}| <= n^{(i+1)/k}
    let stop = (1..k).find(|&i| {
        let next = tree.level(i + 1).len() as f64;
        next <= n.powf((i + 1) as f64 / k as f64)
    });
    let Some(stop) = stop else {
        diag.note("no stopping level produced dense F");
        return Ok(CycleSearchOutcome::empty(diag));
    };
    if tree.level(stop).is_empty() {
        diag.note("stopping level is empty");
        return Ok(CycleSearchOutcome::empty(diag));
    }
    diag.stopping_level = Some(stop);
    let tree = build_rainbow_tree(g, x, &split, stop)
        .expect("prefix of a built tree rebuilds deterministically");

    // F: link sets of the leaf level inside the next part, with provenance
    let next_part: BTreeSet<VertexId> = split.parts[stop].iter().copied().collect();
    let mut family_sets: Vec<Vec<VertexId>> = Vec::new();
    let mut provenance: BTreeMap<Vec<VertexId>, (VertexId, EdgeId)> = BTreeMap::new();
    for &leaf_idx in tree.level(stop) {
        let v = tree.node(leaf_idx).vertex;
        for (edge_id, mut set) in g.link_with_edges(v) {
            set.sort_unstable();
            if set.iter().all(|w| next_part.contains(w)) && !set.contains(&x) {
                provenance.insert(set.clone(), (v, edge_id));
                family_sets.push(set);
            }
        }
    }
    if family_sets.is_empty() {
        diag.note("leaf links have no sets inside the next part");
        return Ok(CycleSearchOutcome::empty(diag));
    }
    let family = UniformSetFamily::new(g.r() - 1, family_sets)?;

    // greedy maximal matching; its vertex union covers the family
    let mut matched_vertices: VertexSet = VertexSet::new();
    for set in family.sets() {
        if set.iter().all(|w| !matched_vertices.contains(w)) {
            matched_vertices.extend(set.iter().copied());
        }
    }
    let cut = match cross_cut(&family, &matched_vertices, seed.stream(2), DEFAULT_CROSS_CUT_ROUNDS)
    {
        Ok(c) => c,
        Err(Error::CrossCutStalled { rounds, best, threshold }) => {
            diag.note(format!(
                "cross-cut stalled after {rounds} rounds (best {best}, threshold {threshold:.2})"
            ));
            return Ok(CycleSearchOutcome::empty(diag));
        }
        Err(other) => return Err(other),
    };
    let kept: BTreeSet<VertexId> = cut.kept_vertices.iter().copied().collect();

    // the coloured bipartite graph between the leaf level and the cut
    let mut coloured_edges: Vec<ColouredEdge> = Vec::new();
    let mut host_of: BTreeMap<(VertexId, VertexId), EdgeId> = BTreeMap::new();
    for &set_idx in &cut.kept_sets {
        let set = &family.sets()[set_idx];
        let (v, host) = provenance[set];
        let w = set
            .iter()
            .copied()
            .find(|c| kept.contains(c))
            .expect("kept sets meet the cut exactly once");
        let colour: Vec<VertexId> = set.iter().copied().filter(|&c| c != w).collect();
        host_of.insert((v, w), host);
        coloured_edges.push(ColouredEdge { a: v, b: w, colour });
    }
    let side_a: Vec<VertexId> = tree.level_vertices(stop);
    let side_b: Vec<VertexId> = coloured_edges.iter().map(|e| e.b).collect();
    let hx = ColouredBipartiteGraph::new(side_a, side_b, coloured_edges)?;
    if hx.edge_count() == 0 {
        diag.note("cross-cut kept no sets");
        return Ok(CycleSearchOutcome::empty(diag));
    }
    let leaf_count = tree.level(stop).len() as f64;
    let cut_count = hx.side_b().len().max(1) as f64;
    let d0 = hx.edge_count() as f64 / leaf_count;
    let b0 = hx.edge_count() as f64 / cut_count;
    let m = g.r() - 2;
    let degree_floor = 16f64.powi(stop as i32) * ((2 * m + 2) * k) as f64;
    diag.check("sector_degree_d", degree_floor, d0);
    diag.check("sector_degree_b", degree_floor, b0);

    let search = SectorSearch {
        g,
        tree: &tree,
        hx: &hx,
        host_of: &host_of,
        k,
        m,
        leaf_depth: stop,
    };
    let all_edges: Vec<usize> = (0..hx.edge_count()).collect();
    let mut found: BTreeMap<Vec<EdgeId>, FoundCycle> = BTreeMap::new();
    search.recurse(0, &all_edges, d0, b0, &mut found, &mut diag);
    diag.note(format!("{} distinct cycles", found.len()));
    if found.is_empty() {
        diag.note("no stopping level produced dense F");
    }
    Ok(CycleSearchOutcome {
        found: found.into_values().collect(),
        diagnostics: diag,
    })
}

struct SectorSearch<'a> {
    g: &'a LinearHypergraph,
    tree: &'a RootedTree,
    hx: &'a ColouredBipartiteGraph,
    host_of: &'a BTreeMap<(VertexId, VertexId), EdgeId>,
    k: usize,
    m: usize,
    leaf_depth: usize,
}

impl SectorSearch<'_> {
    /// Sector of a leaf vertex relative to `node`: the child of `node` whose
    /// subtree holds it.
    fn sector(&self, node: usize, leaf: VertexId) -> usize {
        let idx = self.tree.index_of(leaf).expect("leaf is in the tree");
        self.tree
            .ancestor_at_depth(idx, self.tree.node(node).depth + 1)
    }

    fn recurse(
        &self,
        node: usize,
        live_edges: &[usize],
        d: f64,
        b: f64,
        found: &mut BTreeMap<Vec<EdgeId>, FoundCycle>,
        diag: &mut SearchDiagnostics,
    ) {
        let sub_height = self.leaf_depth - self.tree.node(node).depth;
        if sub_height == 0 || live_edges.is_empty() {
            return;
        }
        // neighbour lists of the outer side, within the live edge set
        let mut by_w: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
        for &ei in live_edges {
            by_w.entry(self.hx.edges()[ei].b).or_default().push(ei);
        }
        // dominant sector per outer vertex: strictly more neighbours than
        // both max(total - 2km, total/2)
        let mut dominant: BTreeMap<VertexId, usize> = BTreeMap::new();
        for (&w, edges) in &by_w {
            let mut per_sector: BTreeMap<usize, usize> = BTreeMap::new();
            for &ei in edges {
                let u = self.hx.edges()[ei].a;
                *per_sector.entry(self.sector(node, u)).or_insert(0) += 1;
            }
            let total = edges.len() as f64;
            let bar = (total - (2 * self.k * self.m) as f64).max(total / 2.0);
            if let Some((&sec, _)) = per_sector.iter().find(|&(_, &c)| c as f64 > bar) {
                dominant.insert(w, sec);
            }
        }
        let strong_edges: Vec<usize> = live_edges
            .iter()
            .copied()
            .filter(|&ei| !dominant.contains_key(&self.hx.edges()[ei].b))
            .collect();

        // the counting argument picks the majority side; the harvest explores
        // both, since each copy is verified on its own
        if self.tree.node(node).depth == 0 {
            let majority = if 2 * strong_edges.len() >= live_edges.len() {
                "strong"
            } else {
                "weak"
            };
            diag.note(format!(
                "{majority} side carries the edge majority at the root"
            ));
        }
        if !strong_edges.is_empty() {
            self.case_strong(node, live_edges, &strong_edges, found, diag);
        }
        if strong_edges.len() < live_edges.len() {
            self.case_weak(node, live_edges, &dominant, (d, b), found, diag);
        }
    }

    /// Majority of edges at vertices with no dominant sector: peel, grow
    /// rainbow paths, close every one through this subtree's root.
    fn case_strong(
        &self,
        node: usize,
        live_edges: &[usize],
        strong_edges: &[usize],
        found: &mut BTreeMap<Vec<EdgeId>, FoundCycle>,
        diag: &mut SearchDiagnostics,
    ) {
        let sub_height = self.leaf_depth - self.tree.node(node).depth;
        if self.k < sub_height + 1 {
            return;
        }
        let p = self.k - sub_height - 1;
        let Some(strong) = self.subgraph(strong_edges) else {
            return;
        };
        let Ok(peeled_plain) = peel_bipartite(&strong.uncoloured()) else {
            return;
        };
        let surviving: Vec<usize> = strong_edges
            .iter()
            .copied()
            .filter(|&ei| {
                let e = &self.hx.edges()[ei];
                peeled_plain.side_a().binary_search(&e.a).is_ok()
                    && peeled_plain.side_b().binary_search(&e.b).is_ok()
            })
            .collect();
        let Some(peeled) = self.subgraph(&surviving) else {
            return;
        };
        // adjacency for the closing step uses the full live edge set
        let mut live_at: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
        for &ei in live_edges {
            live_at
                .entry(self.hx.edges()[ei].b)
                .or_default()
                .push(ei);
        }
        let none = VertexSet::new();
        let result = peeled.for_each_rainbow_path(p, &none, &none, |path| {
            self.close_rainbow_path(node, path, &live_at, found);
            ControlFlow::Continue(())
        });
        if result.is_err() {
            diag.note("strong-side colouring lost the strongly-proper property");
        }
    }

    /// Closes one rainbow path through this subtree's root; returns how many
    /// closings were recorded.
    fn close_rainbow_path(
        &self,
        node: usize,
        path: &RainbowPath,
        live_at: &BTreeMap<VertexId, Vec<usize>>,
        found: &mut BTreeMap<Vec<EdgeId>, FoundCycle>,
    ) -> usize {
        let v1 = path.first();
        let w_end = path.last();
        let v1_sector = self.sector(node, v1);
        let path_vertices: BTreeSet<VertexId> = path.vertices.iter().copied().collect();
        let colour_union = path.colour_union();
        let mut recorded = 0usize;
        let Some(candidates) = live_at.get(&w_end) else {
            return 0;
        };
        for &ei in candidates {
            let edge = &self.hx.edges()[ei];
            let u = edge.a;
            if self.sector(node, u) == v1_sector
                || path_vertices.contains(&u)
                || colour_union.contains(&u)
            {
                continue;
            }
            if edge
                .colour
                .iter()
                .any(|c| path_vertices.contains(c) || colour_union.contains(c) || *c == u)
            {
                continue;
            }
            let mut path_edges: Vec<EdgeId> = Vec::with_capacity(path.vertices.len() - 1);
            let mut ok = true;
            for (i, pair) in path.vertices.windows(2).enumerate() {
                let (a, bb) = if i % 2 == 0 {
                    (pair[0], pair[1])
                } else {
                    (pair[1], pair[0])
                };
                match self.host_of.get(&(a, bb)) {
                    Some(&host) => path_edges.push(host),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            let closing = self.host_of[&(u, w_end)];
            let v1_idx = self.tree.index_of(v1).expect("leaf in tree");
            let u_idx = self.tree.index_of(u).expect("leaf in tree");
            if let Ok(copy) = assemble_cycle(
                self.g,
                self.tree,
                &path_edges,
                closing,
                v1_idx,
                u_idx,
                node,
            ) {
                let level = self.tree.node(node).depth;
                found
                    .entry(copy.edge_ids().to_vec())
                    .or_insert(FoundCycle { copy, level });
                recorded += 1;
            }
        }
        recorded
    }

    /// Majority of edges at vertices with a dominant sector: keep only the
    /// dominant-sector edges, split by sector, recurse where both density
    /// floors hold.
    fn case_weak(
        &self,
        node: usize,
        live_edges: &[usize],
        dominant: &BTreeMap<VertexId, usize>,
        (d, b): (f64, f64),
        found: &mut BTreeMap<Vec<EdgeId>, FoundCycle>,
        diag: &mut SearchDiagnostics,
    ) {
        let mut per_sector: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &ei in live_edges {
            let e = &self.hx.edges()[ei];
            let Some(&dom) = dominant.get(&e.b) else {
                continue;
            };
            if self.sector(node, e.a) == dom {
                per_sector.entry(dom).or_default().push(ei);
            }
        }
        for (&child, edges) in &per_sector {
            let leaf_count = self
                .tree
                .level(self.leaf_depth)
                .iter()
                .filter(|&&idx| self.tree.in_subtree(child, idx))
                .count() as f64;
            let outer_count = dominant.values().filter(|&&dvs| dvs == child).count() as f64;
            if (edges.len() as f64) > (d / 16.0) * leaf_count
                && (edges.len() as f64) > (b / 16.0) * outer_count
            {
                self.recurse(child, edges, d / 16.0, b / 16.0, found, diag);
            }
        }
    }

    /// Coloured bipartite subgraph induced by an edge subset.
    fn subgraph(&self, edge_indices: &[usize]) -> Option<ColouredBipartiteGraph> {
        if edge_indices.is_empty() {
            return None;
        }
        let edges: Vec<ColouredEdge> = edge_indices
            .iter()
            .map(|&i| self.hx.edges()[i].clone())
            .collect();
        let a: Vec<VertexId> = edges.iter().map(|e| e.a).collect();
        let b: Vec<VertexId> = edges.iter().map(|e| e.b).collect();
        ColouredBipartiteGraph::new(a, b, edges).ok()
    }
}

// ---------------------------------------------------------------------------
// the path-to-cycle extension as a standalone operation
// ---------------------------------------------------------------------------

/// Inputs the extension closes over: the cleaned coloured layer, the host
/// edges realizing it, and the subtree root the cycle must pass through.
pub struct ExtensionContext<'a> {
    pub host: &'a LinearHypergraph,
    pub layer: &'a ColouredBipartiteGraph,
    pub host_edges: &'a BTreeMap<(VertexId, VertexId), EdgeId>,
    pub anchor: usize,
    pub k: usize,
}

/// Extends a rainbow path lying between a tree level and an outer vertex set
/// to a verified 2k-cycle copy through the anchor. The closing vertex is the
/// smallest candidate in a different child subtree than the path's start,
/// avoiding the path's vertices and colours.
pub fn extend_path_to_cycle(
    path: &RainbowPath,
    tree: &RootedTree,
    ctx: &ExtensionContext,
) -> Result<LinearCycleCopy> {
    if path.vertices.len() < 2 {
        return Err(Error::NoExtension("path has no edges".into()));
    }
    let anchor_depth = tree.node(ctx.anchor).depth;
    // inner side on the leaf level under the anchor, outer side off the tree
    for (pos, &v) in path.vertices.iter().enumerate() {
        if pos % 2 == 0 {
            let Some(idx) = tree.index_of(v) else {
                return Err(Error::NoExtension(format!(
                    "path vertex {v} is not a tree leaf"
                )));
            };
            if !tree.in_subtree(ctx.anchor, idx) {
                return Err(Error::NoExtension(format!(
                    "path vertex {v} is outside the anchor subtree"
                )));
            }
        } else if tree.contains_vertex(v) {
            return Err(Error::NoExtension(format!("path reuses tree vertex {v}")));
        }
    }
    let leaf_depth = tree
        .index_of(path.first())
        .map(|idx| tree.node(idx).depth)
        .expect("checked above");
    let expected_len = 2 * (ctx.k as i64 + anchor_depth as i64 - leaf_depth as i64) - 1;
    if path.len() as i64 != expected_len {
        return Err(Error::NoExtension(format!(
            "path length {} does not close to a {}-cycle through depth {anchor_depth}",
            path.len(),
            2 * ctx.k
        )));
    }
    let v1 = path.first();
    let w_end = path.last();
    let v1_idx = tree.index_of(v1).expect("checked above");
    let branch = tree.ancestor_at_depth(v1_idx, anchor_depth + 1);
    let path_vertices: BTreeSet<VertexId> = path.vertices.iter().copied().collect();
    let colour_union = path.colour_union();

    let mut candidates: Vec<VertexId> = Vec::new();
    for &ei in ctx.layer.incident_edges(w_end) {
        let edge = &ctx.layer.edges()[ei];
        if edge.b != w_end {
            continue;
        }
        let u = edge.a;
        let Some(u_idx) = tree.index_of(u) else {
            continue;
        };
        if !tree.in_subtree(ctx.anchor, u_idx)
            || tree.ancestor_at_depth(u_idx, anchor_depth + 1) == branch
            || path_vertices.contains(&u)
            || colour_union.contains(&u)
        {
            continue;
        }
        if edge
            .colour
            .iter()
            .any(|c| path_vertices.contains(c) || colour_union.contains(c) || *c == u)
        {
            continue;
        }
        candidates.push(u);
    }
    candidates.sort_unstable();
    let Some(&u) = candidates.first() else {
        return Err(Error::NoExtension(
            "no closing vertex in a different branch avoids the path".into(),
        ));
    };
    let mut path_edges: Vec<EdgeId> = Vec::with_capacity(path.len());
    for (i, pair) in path.vertices.windows(2).enumerate() {
        let key = if i % 2 == 0 {
            (pair[0], pair[1])
        } else {
            (pair[1], pair[0])
        };
        let host = ctx.host_edges.get(&key).ok_or_else(|| {
            Error::NoExtension(format!("no host edge for layer pair {key:?}"))
        })?;
        path_edges.push(*host);
    }
    let closing = *ctx
        .host_edges
        .get(&(u, w_end))
        .ok_or_else(|| Error::NoExtension(format!("no host edge for closing pair ({u}, {w_end})")))?;
    let u_idx = tree.index_of(u).expect("candidate is a tree leaf");
    assemble_cycle(ctx.host, tree, &path_edges, closing, v1_idx, u_idx, ctx.anchor)
}
