//! Batch postcondition audits over seeded random instances.
//!
//! Each suite draws its instances from derived seed streams, re-checks the
//! procedure's postconditions from scratch, and reports pass counts with the
//! first failing witness serialized for replay.

use rand::Rng;

use crate::cycles::{
    count_cycles_oracle, enumerate_linear_cycles, BipartiteGraph, ColouredBipartiteGraph,
    ColouredEdge,
};
use crate::error::{Error, Result};
use crate::generators::{gnp, gnp_bipartite, random_r_partite};
use crate::harness::report::{AuditSummary, ExperimentReport, FailureWitness};
use crate::hypergraph::{LinearHypergraph, VertexId, VertexSet};
use crate::lemmas::{
    audit_rainbow_tree, balanced_root, build_rainbow_tree, cross_cut, decompose_almost_regular,
    peel_bipartite, recheck_balanced_root, recheck_cross_cut, recheck_peel, split_vertices,
    DecomposeCase, RootedTree, UniformSetFamily,
};
use crate::lhg::write_lhg;
use crate::seed::Seed;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuditSuite {
    BalancedRoot,
    Peel,
    Decompose,
    CrossCut,
    Split,
    RainbowTree,
    PathBounds,
    OracleEquiv,
}

impl AuditSuite {
    pub const ALL: [AuditSuite; 8] = [
        AuditSuite::BalancedRoot,
        AuditSuite::Peel,
        AuditSuite::Decompose,
        AuditSuite::CrossCut,
        AuditSuite::Split,
        AuditSuite::RainbowTree,
        AuditSuite::PathBounds,
        AuditSuite::OracleEquiv,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            AuditSuite::BalancedRoot => "balanced_root",
            AuditSuite::Peel => "peel",
            AuditSuite::Decompose => "decompose",
            AuditSuite::CrossCut => "cross_cut",
            AuditSuite::Split => "split",
            AuditSuite::RainbowTree => "rainbow_tree",
            AuditSuite::PathBounds => "path_bounds",
            AuditSuite::OracleEquiv => "oracle_equiv",
        }
    }

    pub fn from_name(name: &str) -> Option<AuditSuite> {
        AuditSuite::ALL.iter().copied().find(|s| s.name() == name)
    }
}

/// Runs one suite over seeded instances. Pass count equals the instance
/// count on success; otherwise the first failure is serialized for replay.
pub fn lemma_audit(suite: AuditSuite, instances: usize, seed: Seed) -> Result<ExperimentReport> {
    let mut passes = 0usize;
    let mut witness: Option<FailureWitness> = None;
    let mut notes: Vec<String> = Vec::new();
    for i in 0..instances {
        let stream = seed.stream(i as u64);
        match run_instance(suite, stream, &mut notes) {
            Ok(()) => passes += 1,
            Err((description, payload)) => {
                if witness.is_none() {
                    witness = Some(FailureWitness {
                        instance: i,
                        description,
                        payload,
                    });
                }
            }
        }
    }
    let mut report = ExperimentReport::new("lemma_audit", seed.master(), instances);
    report.audit = Some(AuditSummary {
        suite: suite.name().to_string(),
        instances,
        passes,
        witness,
        notes,
    });
    Ok(report)
}

type InstanceResult = std::result::Result<(), (String, String)>;

fn run_instance(suite: AuditSuite, seed: Seed, notes: &mut Vec<String>) -> InstanceResult {
    match suite {
        AuditSuite::BalancedRoot => audit_balanced_root(seed),
        AuditSuite::Peel => audit_peel(seed),
        AuditSuite::Decompose => audit_decompose(seed),
        AuditSuite::CrossCut => audit_cross_cut(seed),
        AuditSuite::Split => audit_split(seed, notes),
        AuditSuite::RainbowTree => audit_rainbow_tree_suite(seed),
        AuditSuite::PathBounds => audit_path_bounds(seed),
        AuditSuite::OracleEquiv => audit_oracle_equiv(seed),
    }
}

fn fail(description: impl Into<String>, payload: impl Into<String>) -> InstanceResult {
    Err((description.into(), payload.into()))
}

// random tree on n vertices with height at least 2
fn random_tree(seed: Seed) -> RootedTree {
    let mut rng = seed.rng();
    let n = rng.random_range(10..=24u32);
    let mut tree = RootedTree::new(0);
    let spine = tree.add_child(0, 1, vec![], None);
    tree.add_child(spine, 2, vec![], None);
    for v in 3..n {
        let parent = rng.random_range(0..tree.len());
        tree.add_child(parent, v, vec![], None);
    }
    tree
}

fn audit_balanced_root(seed: Seed) -> InstanceResult {
    let tree = random_tree(seed);
    let mut rng = seed.stream(1).rng();
    let b = rng.random_range(1..=3usize);
    let needed = b * tree.height() + 1;
    if needed > tree.len() {
        return Ok(()); // vacuous: the precondition cannot be met
    }
    let mut pool: Vec<VertexId> = tree.vertices().collect();
    let extra = rng.random_range(0..=(pool.len() - needed));
    // seed-shuffled prefix of the vertex pool
    for i in (1..pool.len()).rev() {
        let j = rng.random_range(0..=i);
        pool.swap(i, j);
    }
    let marked: std::collections::BTreeSet<VertexId> =
        pool.into_iter().take(needed + extra).collect();
    match balanced_root(&tree, &marked, b) {
        Ok(found) => {
            if recheck_balanced_root(&tree, &marked, b, &found) {
                Ok(())
            } else {
                fail(
                    "descent result violates an inequality",
                    format!("b={b} marked={marked:?}"),
                )
            }
        }
        Err(e) => fail(format!("descent errored: {e}"), format!("b={b}")),
    }
}

fn bipartite_from(seed: Seed, a: usize, b: usize, p: f64) -> BipartiteGraph {
    let g = gnp_bipartite(a, b, p, seed).expect("parameters are valid");
    let left: Vec<VertexId> = (0..a as u32).collect();
    let right: Vec<VertexId> = (a as u32..(a + b) as u32).collect();
    let edges: Vec<(VertexId, VertexId)> = g
        .edges()
        .map(|e| {
            if (e[0] as usize) < a {
                (e[0], e[1])
            } else {
                (e[1], e[0])
            }
        })
        .collect();
    BipartiteGraph::new(left, right, &edges).expect("sides are disjoint by construction")
}

fn audit_peel(seed: Seed) -> InstanceResult {
    let mut rng = seed.rng();
    let a = rng.random_range(5..=12usize);
    let b = rng.random_range(5..=12usize);
    let p = rng.random_range(0.2..0.8);
    let mut h = bipartite_from(seed.stream(1), a, b, p);
    let mut bump = 0u64;
    while h.edge_count() == 0 {
        bump += 1;
        h = bipartite_from(seed.stream(1).stream(bump), a, b, p);
    }
    let peeled = match peel_bipartite(&h) {
        Ok(p) => p,
        Err(e) => return fail(format!("peel errored: {e}"), format!("{:?}", h.edges())),
    };
    if recheck_peel(&h, &peeled) {
        Ok(())
    } else {
        fail(
            "peel postconditions violated",
            format!("edges={:?}", h.edges()),
        )
    }
}

fn audit_decompose(seed: Seed) -> InstanceResult {
    let mut rng = seed.rng();
    let n = rng.random_range(30..=60usize);
    let p = rng.random_range(0.3..0.6);
    let g = gnp(n, p, seed.stream(1)).expect("parameters are valid");
    let override_p = rng.random_range(3..=4u64);
    let result = match decompose_almost_regular(&g, 0.5, 2, 2, 0.2, Some(override_p)) {
        Ok(r) => r,
        Err(Error::DensityPrecondition { .. }) => return Ok(()), // sparse draw: vacuous
        Err(e) => return fail(format!("decompose errored: {e}"), write_lhg(&g)),
    };
    if !result.edge_disjoint {
        return fail("subgraphs are not edge-disjoint", write_lhg(&g));
    }
    for audit in &result.audits {
        if audit.case == DecomposeCase::Peel
            && (audit.max_degree_bound_ok != Some(true) || audit.min_degree_floor_ok != Some(true))
        {
            return fail(
                "peel-branch degree bounds violated",
                format!("{audit:?} {}", write_lhg(&g)),
            );
        }
        if audit.edges == 0 {
            return fail("empty subgraph returned", write_lhg(&g));
        }
    }
    Ok(())
}

fn audit_cross_cut(seed: Seed) -> InstanceResult {
    let mut rng = seed.rng();
    // every tenth instance is edgeless: a vacuous pass
    if rng.random_range(0..10u32) == 0 {
        let family = UniformSetFamily::new(2, vec![]).expect("valid");
        let cut = cross_cut(&family, &VertexSet::new(), seed.stream(1), 8)
            .expect("edgeless family always meets threshold 0");
        return if recheck_cross_cut(&family, &cut) {
            Ok(())
        } else {
            fail("vacuous cut failed recheck", "edgeless")
        };
    }
    let u = rng.random_range(2..=3usize);
    let m = rng.random_range(6..=14u32);
    // clamp below the number of distinct u-subsets of [m]
    let available: usize = {
        let m = m as usize;
        if u == 2 { m * (m - 1) / 2 } else { m * (m - 1) * (m - 2) / 6 }
    };
    let set_count = rng.random_range(5..=20usize).min(available);
    let mut sets: Vec<Vec<VertexId>> = Vec::new();
    while sets.len() < set_count {
        let mut s: Vec<VertexId> = Vec::new();
        while s.len() < u {
            let v = rng.random_range(0..m);
            if !s.contains(&v) {
                s.push(v);
            }
        }
        s.sort_unstable();
        if !sets.contains(&s) {
            sets.push(s);
        }
    }
    let family = UniformSetFamily::new(u, sets).expect("built uniform");
    let mut cover: VertexSet = family
        .sets()
        .iter()
        .map(|s| s[rng.random_range(0..u)])
        .collect();
    for _ in 0..rng.random_range(0..3u32) {
        cover.insert(rng.random_range(0..m));
    }
    match cross_cut(&family, &cover, seed.stream(1), 4096) {
        Ok(cut) => {
            if recheck_cross_cut(&family, &cut) {
                Ok(())
            } else {
                fail("cut failed recheck", format!("{:?}", family.sets()))
            }
        }
        Err(e) => fail(format!("cross-cut errored: {e}"), format!("{:?}", family.sets())),
    }
}

fn dense_three_partite(seed: Seed) -> LinearHypergraph {
    random_r_partite(&[14, 14, 14], 170, seed).expect("the budget is feasible at this density")
}

fn audit_split(seed: Seed, notes: &mut Vec<String>) -> InstanceResult {
    let g = dense_three_partite(seed);
    match split_vertices(&g, 0, 1, 2, 1, seed.stream(1), 200) {
        Ok(split) => {
            notes.push(format!("retries={}", split.retries_used));
            if split.recheck(&g) {
                Ok(())
            } else {
                fail("split audit recheck failed", write_lhg(&g))
            }
        }
        Err(e) => fail(format!("split errored: {e}"), write_lhg(&g)),
    }
}

fn audit_rainbow_tree_suite(seed: Seed) -> InstanceResult {
    let g = dense_three_partite(seed);
    let split = match split_vertices(&g, 0, 1, 2, 1, seed.stream(1), 200) {
        Ok(s) => s,
        Err(e) => return fail(format!("split errored: {e}"), write_lhg(&g)),
    };
    let root = g.partition_classes().expect("generator attaches classes")[0][0];
    let tree = match build_rainbow_tree(&g, root, &split, 2) {
        Ok(t) => t,
        Err(e) => return fail(format!("tree build errored: {e}"), write_lhg(&g)),
    };
    let audit = audit_rainbow_tree(&g, &tree, &split);
    if audit.all_ok() {
        Ok(())
    } else {
        fail(format!("tree audit failed: {audit:?}"), write_lhg(&g))
    }
}

fn audit_path_bounds(seed: Seed) -> InstanceResult {
    // plain bound: average degrees at least 8 on both sides, one growth step
    let mut attempt = 0u64;
    let h = loop {
        let h = bipartite_from(seed.stream(attempt), 12, 12, 0.75);
        if h.avg_degree_a() >= 8.0 && h.avg_degree_b() >= 8.0 {
            break h;
        }
        attempt += 1;
        if attempt > 50 {
            return fail("no instance reached the degree floor", "plain");
        }
    };
    let e = h.edge_count() as f64;
    // orientation slack: the stated bound divided by 2
    let bound = e * h.avg_degree_a() * h.avg_degree_b() / 2f64.powi(7) / 2.0;
    let paths = h.count_paths(1) as f64;
    if paths < bound {
        return fail(
            format!("path count {paths} below bound {bound}"),
            format!("{:?}", h.edges()),
        );
    }

    // rainbow analogue: min degrees at least 8, fresh singleton colours
    let mut attempt = 0u64;
    let hb = loop {
        let h = bipartite_from(seed.stream(1000 + attempt), 10, 10, 0.9);
        if h.min_degree_a() >= 8 && h.min_degree_b() >= 8 {
            break h;
        }
        attempt += 1;
        if attempt > 50 {
            return fail("no instance reached the min-degree floor", "rainbow");
        }
    };
    let palette_base = 100u32;
    let coloured: Vec<ColouredEdge> = hb
        .edges()
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| ColouredEdge {
            a,
            b,
            colour: vec![palette_base + i as u32],
        })
        .collect();
    let ch = ColouredBipartiteGraph::new(
        hb.side_a().to_vec(),
        hb.side_b().to_vec(),
        coloured,
    )
    .expect("sides are valid");
    let e = ch.edge_count() as f64;
    let bound = e * (ch.min_degree_a() * ch.min_degree_b()) as f64 / 4.0 / 2.0;
    let none = VertexSet::new();
    let rainbow = ch
        .count_rainbow_paths(1, &none, &none)
        .expect("fresh singleton colours are strongly proper") as f64;
    if rainbow < bound {
        return fail(
            format!("rainbow path count {rainbow} below bound {bound}"),
            format!("{:?}", hb.edges()),
        );
    }
    Ok(())
}

fn audit_oracle_equiv(seed: Seed) -> InstanceResult {
    let mut rng = seed.rng();
    let n = rng.random_range(4..=9usize);
    let p = rng.random_range(0.3..0.8);
    let g = gnp(n, p, seed.stream(1)).expect("parameters are valid");
    for k in [2usize, 3] {
        let fast = enumerate_linear_cycles(&g, k);
        let oracle = match count_cycles_oracle(&g, k) {
            Ok(o) => o,
            Err(e) => return fail(format!("oracle errored: {e}"), write_lhg(&g)),
        };
        if fast != oracle {
            return fail(
                format!(
                    "k={k}: enumerator found {} copies, oracle {}",
                    fast.count(),
                    oracle.count()
                ),
                write_lhg(&g),
            );
        }
    }
    Ok(())
}
