//! Almost-regular decomposition of dense 2-graphs.
//!
//! A dense graph is split into edge-disjoint subgraphs by recursion: partition
//! the vertices into p near-equal parts with the top degrees in the first
//! part. If at most half the edges touch the first part, drop it and peel to
//! degree floor d/8 (the survivor is 8p-almost-regular by construction);
//! otherwise recurse on the dense two-part subgraphs. The default p is
//! ceil(2^max(4/alpha, (2s+t)/(t-s+1))), which puts any desk-scale input in
//! the base case, so an override is exposed to make both branches testable.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{LinearHypergraph, VertexId, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DecomposeCase {
    /// v(G) < q: the graph is returned as-is.
    Base,
    /// At most half the edges touch the top-degree part: drop it and peel.
    Peel,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgraphAudit {
    pub vertices: usize,
    pub edges: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub case: DecomposeCase,
    /// Delta <= q * delta, with q = 8p.
    pub q_almost_regular: bool,
    /// e >= (C/4) * v^(1+alpha).
    pub dense: bool,
    /// Peel outputs only: Delta <= p * d(parent) and delta >= d(parent)/8.
    pub max_degree_bound_ok: Option<bool>,
    pub min_degree_floor_ok: Option<bool>,
    pub f_value: f64,
}

#[derive(Debug)]
pub struct DecompositionResult {
    pub subgraphs: Vec<LinearHypergraph>,
    pub audits: Vec<SubgraphAudit>,
    pub p: u64,
    pub q: u64,
    pub f_input: f64,
    pub f_sum: f64,
    /// f_sum >= f_input / 4^s.
    pub f_ratio_ok: bool,
    /// Verified, not assumed: no vertex pair is covered by two subgraphs.
    pub edge_disjoint: bool,
}

/// The default part count: ceil(2^max(4/alpha, (2s+t)/(t-s+1))), capped to
/// stay representable; q is 8p.
pub fn default_p(alpha: f64, s: u32, t: u32) -> u64 {
    let exponent = (4.0 / alpha).max((2 * s + t) as f64 / (t - s + 1) as f64);
    let p = 2f64.powf(exponent).ceil();
    if p >= 2f64.powi(60) {
        1u64 << 60
    } else {
        p as u64
    }
}

pub fn decompose_almost_regular(
    g: &LinearHypergraph,
    alpha: f64,
    s: u32,
    t: u32,
    c: f64,
    override_p: Option<u64>,
) -> Result<DecompositionResult> {
    if g.r() != 2 {
        return Err(Error::BadParameter(format!(
            "decomposition works on 2-graphs, got r = {}",
            g.r()
        )));
    }
    if !(0.0 < alpha && alpha < 1.0) {
        return Err(Error::BadParameter(format!("alpha = {alpha} outside (0, 1)")));
    }
    if s < 1 || t < s {
        return Err(Error::BadParameter(format!(
            "need t >= s >= 1, got s = {s}, t = {t}"
        )));
    }
    if c <= 0.0 {
        return Err(Error::BadParameter(format!("need C > 0, got {c}")));
    }
    let p = match override_p {
        Some(p) if p < 3 => {
            return Err(Error::BadParameter(format!(
                "override p = {p} < 3 would not shrink the recursion"
            )))
        }
        Some(p) => p,
        None => default_p(alpha, s, t),
    };
    let q = p.saturating_mul(8);

    let n = g.vertex_count();
    if (n as u64) >= q {
        let required = c * (n as f64).powf(1.0 + alpha);
        if (g.edge_count() as f64) < required {
            return Err(Error::DensityPrecondition {
                edges: g.edge_count(),
                required,
            });
        }
    }

    let mut subgraphs = Vec::new();
    let mut audits = Vec::new();
    recurse(g, alpha, c, p, q, &mut subgraphs, &mut audits)?;

    let f_input = g.f_value(s, t)?;
    let mut f_sum = 0.0;
    for (sub, audit) in subgraphs.iter().zip(audits.iter_mut()) {
        let f = if sub.vertex_count() == 0 {
            0.0
        } else {
            sub.f_value(s, t)?
        };
        audit.f_value = f;
        f_sum += f;
    }
    let f_ratio_ok = f_sum >= f_input / 4f64.powi(s as i32);
    let edge_disjoint = check_edge_disjoint(&subgraphs);
    Ok(DecompositionResult {
        subgraphs,
        audits,
        p,
        q,
        f_input,
        f_sum,
        f_ratio_ok,
        edge_disjoint,
    })
}

fn recurse(
    g: &LinearHypergraph,
    alpha: f64,
    c: f64,
    p: u64,
    q: u64,
    subgraphs: &mut Vec<LinearHypergraph>,
    audits: &mut Vec<SubgraphAudit>,
) -> Result<()> {
    let n = g.vertex_count();
    if (n as u64) < q {
        push_with_audit(g.clone(), DecomposeCase::Base, None, alpha, c, q, subgraphs, audits);
        return Ok(());
    }
    // near-equal parts, the first part taking the highest degrees
    let mut by_degree: Vec<VertexId> = g.members().to_vec();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let p_usize = (p as usize).min(n.max(1));
    let base_size = n / p_usize;
    let remainder = n % p_usize;
    let mut parts: Vec<Vec<VertexId>> = Vec::with_capacity(p_usize);
    let mut cursor = 0usize;
    for i in 0..p_usize {
        let size = base_size + usize::from(i < remainder);
        parts.push(by_degree[cursor..cursor + size].to_vec());
        cursor += size;
    }
    let first: BTreeSet<VertexId> = parts[0].iter().copied().collect();
    let touching = g
        .edges()
        .filter(|e| e.iter().any(|v| first.contains(v)))
        .count();

    if 2 * touching <= g.edge_count() {
        // drop the top part, then peel to degree floor d/8
        let avg = 2.0 * g.edge_count() as f64 / n as f64;
        let keep: VertexSet = g
            .members()
            .iter()
            .copied()
            .filter(|v| !first.contains(v))
            .collect();
        let without_top = g.induced(&keep)?;
        let peeled = peel_to_floor(&without_top, avg / 8.0)?;
        push_with_audit(
            peeled,
            DecomposeCase::Peel,
            Some((p as f64 * avg, avg / 8.0)),
            alpha,
            c,
            q,
            subgraphs,
            audits,
        );
        return Ok(());
    }

    // Edges internal to the top part would be shared by every two-part
    // subgraph; they go to the first branch only so the collected subgraphs
    // stay edge-disjoint across branches.
    for (idx, part) in parts.iter().enumerate().skip(1) {
        let union: VertexSet = parts[0].iter().chain(part.iter()).copied().collect();
        let keep: Vec<u32> = g
            .edge_ids()
            .filter(|&e| {
                let ends = g.edge(e);
                if !ends.iter().all(|v| union.contains(v)) {
                    return false;
                }
                idx == 1 || !ends.iter().all(|v| first.contains(v))
            })
            .collect();
        let sub = g.subgraph_by_edges(&keep)?.induced(&union)?;
        let n_i = sub.vertex_count() as f64;
        if sub.edge_count() as f64 >= c * n_i.powf(1.0 + alpha) {
            recurse(&sub, alpha, c, p, q, subgraphs, audits)?;
        }
    }
    Ok(())
}

/// Iteratively removes vertices whose degree falls strictly below the floor.
fn peel_to_floor(g: &LinearHypergraph, floor: f64) -> Result<LinearHypergraph> {
    let mut degree: Vec<usize> = vec![0; g.id_bound()];
    for &v in g.members() {
        degree[v as usize] = g.degree(v);
    }
    let mut alive: Vec<bool> = vec![false; g.id_bound()];
    for &v in g.members() {
        alive[v as usize] = true;
    }
    let mut queue: Vec<VertexId> = g
        .members()
        .iter()
        .copied()
        .filter(|&v| (degree[v as usize] as f64) < floor)
        .collect();
    while let Some(v) = queue.pop() {
        if !alive[v as usize] {
            continue;
        }
        alive[v as usize] = false;
        for &e in g.incident_edges(v) {
            for &w in g.edge(e) {
                if w != v && alive[w as usize] {
                    degree[w as usize] -= 1;
                    if (degree[w as usize] as f64) < floor {
                        queue.push(w);
                    }
                }
            }
        }
    }
    let keep: VertexSet = g
        .members()
        .iter()
        .copied()
        .filter(|&v| alive[v as usize])
        .collect();
    g.induced(&keep)
}

#[allow(clippy::too_many_arguments)]
fn push_with_audit(
    sub: LinearHypergraph,
    case: DecomposeCase,
    peel_bounds: Option<(f64, f64)>, // (p*d, d/8) of the parent
    alpha: f64,
    c: f64,
    q: u64,
    subgraphs: &mut Vec<LinearHypergraph>,
    audits: &mut Vec<SubgraphAudit>,
) {
    let profile = sub.degree_profile();
    let v = sub.vertex_count();
    let dense =
        sub.edge_count() as f64 >= (c / 4.0) * (v as f64).powf(1.0 + alpha);
    let (max_ok, min_ok) = match peel_bounds {
        Some((max_bound, min_floor)) => (
            Some(profile.max_degree as f64 <= max_bound),
            Some(profile.min_degree as f64 >= min_floor),
        ),
        None => (None, None),
    };
    audits.push(SubgraphAudit {
        vertices: v,
        edges: sub.edge_count(),
        min_degree: profile.min_degree,
        max_degree: profile.max_degree,
        case,
        q_almost_regular: profile.is_q_almost_regular(q as f64),
        dense,
        max_degree_bound_ok: max_ok,
        min_degree_floor_ok: min_ok,
        f_value: 0.0,
    });
    subgraphs.push(sub);
}

/// Checks that no vertex pair is covered by two different subgraphs, which
/// for 2-graphs is exactly edge-disjointness.
pub fn check_edge_disjoint(subgraphs: &[LinearHypergraph]) -> bool {
    let mut seen: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    for sub in subgraphs {
        for e in sub.edges() {
            for (i, &u) in e.iter().enumerate() {
                for &w in &e[i + 1..] {
                    if !seen.insert((u, w)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gnp;
    use crate::seed::Seed;

    fn circulant(n: u32, offsets: &[u32]) -> LinearHypergraph {
        let mut edges = Vec::new();
        for i in 0..n {
            for &off in offsets {
                let j = (i + off) % n;
                if i < j {
                    edges.push(vec![i, j]);
                } else {
                    edges.push(vec![j, i]);
                }
            }
        }
        edges.sort();
        edges.dedup();
        LinearHypergraph::build(2, n as usize, &edges).unwrap()
    }

    #[test]
    fn default_p_matches_formula() {
        // alpha = 1/2, s = t = 4: exponent max(8, 12) = 12
        assert_eq!(default_p(0.5, 4, 4), 4096);
        assert_eq!(default_p(0.5, 2, 2), 2_u64.pow(8));
    }

    #[test]
    fn desk_scale_input_hits_base_case() {
        let g = gnp(40, 0.5, Seed::new(1)).unwrap();
        let result = decompose_almost_regular(&g, 0.5, 4, 4, 0.1, None).unwrap();
        assert_eq!(result.subgraphs.len(), 1);
        assert_eq!(result.audits[0].case, DecomposeCase::Base);
        assert!(result.edge_disjoint);
    }

    #[test]
    fn regular_graph_takes_peel_branch() {
        // 8-regular circulant: the top quarter carries under half the edges
        let g = circulant(64, &[1, 2, 3, 4]);
        let result = decompose_almost_regular(&g, 0.5, 2, 2, 0.2, Some(4)).unwrap();
        assert_eq!(result.subgraphs.len(), 1);
        let audit = &result.audits[0];
        assert_eq!(audit.case, DecomposeCase::Peel);
        assert_eq!(audit.max_degree_bound_ok, Some(true));
        assert_eq!(audit.min_degree_floor_ok, Some(true));
        assert!(audit.q_almost_regular);
        assert!(result.edge_disjoint);
        assert!(result.f_ratio_ok);
    }

    #[test]
    fn skewed_graph_recurses_and_stays_edge_disjoint() {
        let g = gnp(60, 0.5, Seed::new(3)).unwrap();
        let result = decompose_almost_regular(&g, 0.5, 2, 2, 0.3, Some(3)).unwrap();
        assert!(result.edge_disjoint);
        for sub in &result.subgraphs {
            assert!(sub.edge_count() > 0);
        }
    }

    #[test]
    fn density_precondition_enforced() {
        let sparse = gnp(60, 0.02, Seed::new(4)).unwrap();
        let err = decompose_almost_regular(&sparse, 0.5, 2, 2, 5.0, Some(3)).unwrap_err();
        assert!(matches!(err, Error::DensityPrecondition { .. }));
    }

    #[test]
    fn small_p_rejected() {
        let g = gnp(10, 0.5, Seed::new(5)).unwrap();
        assert!(decompose_almost_regular(&g, 0.5, 2, 2, 0.1, Some(2)).is_err());
    }
}
