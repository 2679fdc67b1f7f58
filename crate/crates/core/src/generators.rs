//! Random and structured instance generation.
//!
//! All generators are pure functions of their parameters and a [`Seed`], so
//! identical inputs reproduce identical graphs byte-for-byte.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{LinearHypergraph, VertexId};
use crate::seed::Seed;

/// Consecutive rejections tolerated within one [`random_r_partite`] pass.
pub const REJECTION_CAP: usize = 10_000;

/// Fresh greedy passes [`random_r_partite`] makes before declaring the
/// budget infeasible. A single pass can strand itself near a tight budget
/// (on balanced (10,10,10) classes the greedy tops out at roughly 84..92 of
/// the 100 possible edges), so stalls restart on a derived stream.
pub const RESTART_CAP: u64 = 64;

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::BadParameter(format!("probability {p} outside [0, 1]")));
    }
    Ok(())
}

/// Erdős–Rényi G(n, p): each pair included independently with probability p.
pub fn gnp(n: usize, p: f64, seed: Seed) -> Result<LinearHypergraph> {
    check_probability(p)?;
    let mut rng = seed.rng();
    let mut edges = Vec::new();
    for i in 0..n as VertexId {
        for j in (i + 1)..n as VertexId {
            if rng.random_bool(p) {
                edges.push(vec![i, j]);
            }
        }
    }
    LinearHypergraph::build(2, n, &edges)
}

/// A bipartite random graph on `a + b` vertices: ids `0..a` on one side,
/// `a..a+b` on the other, each cross pair kept with probability p.
pub fn gnp_bipartite(a: usize, b: usize, p: f64, seed: Seed) -> Result<LinearHypergraph> {
    check_probability(p)?;
    let mut rng = seed.rng();
    let mut edges = Vec::new();
    for i in 0..a as VertexId {
        for j in 0..b as VertexId {
            if rng.random_bool(p) {
                edges.push(vec![i, a as VertexId + j]);
            }
        }
    }
    LinearHypergraph::build(2, a + b, &edges)
}

/// Random-greedy maximal partial Steiner system: visit all r-sets of `[n]` in
/// a seed-shuffled order and accept a set iff it shares at most one vertex
/// with everything accepted so far. The output is a maximal linear r-graph:
/// no further r-set can be added without re-using a vertex pair.
pub fn partial_steiner(n: usize, r: usize, seed: Seed) -> Result<LinearHypergraph> {
    if r < 2 || n < r {
        return Err(Error::BadParameter(format!(
            "partial Steiner needs n >= r >= 2, got n = {n}, r = {r}"
        )));
    }
    let candidate_count = (0..r).fold(1u128, |acc, i| acc * (n - i) as u128)
        / (1..=r).fold(1u128, |acc, i| acc * i as u128);
    if candidate_count > 20_000_000 {
        return Err(Error::BadParameter(format!(
            "C({n},{r}) = {candidate_count} candidate sets is beyond the generator cap"
        )));
    }
    let mut candidates: Vec<Vec<VertexId>> = (0..n as VertexId).combinations(r).collect();
    let mut rng = seed.rng();
    candidates.shuffle(&mut rng);

    let mut pair_used = vec![false; n * n];
    let pair_index = |u: VertexId, v: VertexId| u as usize * n + v as usize;
    let mut accepted: Vec<Vec<VertexId>> = Vec::new();
    'next: for cand in candidates {
        for i in 0..r {
            for j in (i + 1)..r {
                if pair_used[pair_index(cand[i], cand[j])] {
                    continue 'next;
                }
            }
        }
        for i in 0..r {
            for j in (i + 1)..r {
                pair_used[pair_index(cand[i], cand[j])] = true;
            }
        }
        accepted.push(cand);
    }
    LinearHypergraph::build(r, n, &accepted)
}

/// Keeps each edge of `g` independently with probability p. The vertex set is
/// unchanged and linearity is inherited.
pub fn subsample_edges(g: &LinearHypergraph, p: f64, seed: Seed) -> Result<LinearHypergraph> {
    check_probability(p)?;
    let mut rng = seed.rng();
    let keep: Vec<u32> = g
        .edge_ids()
        .filter(|_| rng.random_bool(p))
        .collect();
    g.subgraph_by_edges(&keep)
}

/// Keeps exactly `m` edges of `g`, chosen uniformly at random.
pub fn subsample_exact(g: &LinearHypergraph, m: usize, seed: Seed) -> Result<LinearHypergraph> {
    let e = g.edge_count();
    if m > e {
        return Err(Error::BadParameter(format!(
            "cannot keep {m} of {e} edges"
        )));
    }
    let mut ids: Vec<u32> = g.edge_ids().collect();
    let mut rng = seed.rng();
    ids.shuffle(&mut rng);
    g.subgraph_by_edges(&ids[..m])
}

/// Random linear r-partite graph with the given class sizes. Classes occupy
/// contiguous id ranges in order. Each pass draws a uniformly random unused
/// pair from the first two classes and completes it class by class from a
/// random offset, rejecting draws whose completion would re-use a vertex
/// pair; a pass ends at the budget, after [`REJECTION_CAP`] consecutive
/// rejections, or when the first-class pairs run out, and stalled passes
/// restart on a derived stream up to [`RESTART_CAP`] times.
pub fn random_r_partite(
    class_sizes: &[usize],
    budget: usize,
    seed: Seed,
) -> Result<LinearHypergraph> {
    let r = class_sizes.len();
    if r < 2 {
        return Err(Error::BadParameter(
            "need at least 2 partition classes".into(),
        ));
    }
    if class_sizes.contains(&0) {
        return Err(Error::BadParameter("empty partition class".into()));
    }
    let n: usize = class_sizes.iter().sum();
    let mut class_start = Vec::with_capacity(r);
    let mut acc = 0usize;
    for &s in class_sizes {
        class_start.push(acc);
        acc += s;
    }
    let mut best: Option<(usize, usize)> = None; // (accepted, rejections)
    for pass in 0..RESTART_CAP {
        match r_partite_pass(class_sizes, &class_start, n, budget, seed.stream(pass)) {
            Ok(edges) => {
                let classes: Vec<Vec<VertexId>> = (0..r)
                    .map(|c| {
                        (class_start[c]..class_start[c] + class_sizes[c])
                            .map(|v| v as VertexId)
                            .collect()
                    })
                    .collect();
                return LinearHypergraph::build(r, n, &edges)?.with_partition(classes);
            }
            Err((accepted, rejections)) => {
                if best.is_none_or(|(a, _)| accepted > a) {
                    best = Some((accepted, rejections));
                }
            }
        }
    }
    let (accepted, rejections) = best.expect("at least one pass ran");
    Err(Error::BudgetInfeasible {
        budget,
        accepted,
        rejections,
    })
}

/// One greedy pass; on failure returns the best (accepted, rejections) seen.
fn r_partite_pass(
    class_sizes: &[usize],
    class_start: &[usize],
    n: usize,
    budget: usize,
    seed: Seed,
) -> std::result::Result<Vec<Vec<VertexId>>, (usize, usize)> {
    let r = class_sizes.len();
    let mut rng = seed.rng();
    let mut pair_used = vec![false; n * n];
    let pair_index = |u: VertexId, v: VertexId| u.min(v) as usize * n + u.max(v) as usize;
    let mut free_pairs: Vec<(VertexId, VertexId)> = (0..class_sizes[0])
        .flat_map(|i| {
            (0..class_sizes[1]).map(move |j| {
                (
                    (class_start[0] + i) as VertexId,
                    (class_start[1] + j) as VertexId,
                )
            })
        })
        .collect();
    let mut edges: Vec<Vec<VertexId>> = Vec::with_capacity(budget);
    let mut rejections = 0usize;
    while edges.len() < budget {
        if free_pairs.is_empty() || rejections >= REJECTION_CAP {
            return Err((edges.len(), rejections));
        }
        let idx = rng.random_range(0..free_pairs.len());
        let (a, b) = free_pairs[idx];
        let mut cand: Vec<VertexId> = vec![a, b];
        let mut completed = true;
        for c in 2..r {
            let size = class_sizes[c];
            let offset = rng.random_range(0..size);
            let mut chosen = None;
            for t in 0..size {
                let v = (class_start[c] + (offset + t) % size) as VertexId;
                if cand.iter().all(|&u| !pair_used[pair_index(u, v)]) {
                    chosen = Some(v);
                    break;
                }
            }
            match chosen {
                Some(v) => cand.push(v),
                None => {
                    completed = false;
                    break;
                }
            }
        }
        free_pairs.swap_remove(idx);
        if !completed {
            rejections += 1;
            continue;
        }
        rejections = 0;
        for i in 0..r {
            for j in (i + 1)..r {
                pair_used[pair_index(cand[i], cand[j])] = true;
            }
        }
        edges.push(cand);
    }
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lhg::write_lhg;

    #[test]
    fn gnp_extremes() {
        let empty = gnp(10, 0.0, Seed::new(1)).unwrap();
        assert_eq!(empty.edge_count(), 0);
        let complete = gnp(10, 1.0, Seed::new(1)).unwrap();
        assert_eq!(complete.edge_count(), 45);
        assert!(gnp(4, 1.5, Seed::new(0)).is_err());
    }

    #[test]
    fn gnp_mean_edge_count_near_expectation() {
        let seed = Seed::new(99);
        let total: usize = (0..100)
            .map(|i| gnp(60, 0.15, seed.stream(i)).unwrap().edge_count())
            .sum();
        let mean = total as f64 / 100.0;
        let expected = 0.15 * (60.0 * 59.0 / 2.0);
        assert!(
            (mean - expected).abs() / expected < 0.05,
            "mean {mean} vs {expected}"
        );
    }

    #[test]
    fn generators_are_deterministic() {
        let a = write_lhg(&gnp(24, 0.3, Seed::new(5)).unwrap());
        let b = write_lhg(&gnp(24, 0.3, Seed::new(5)).unwrap());
        assert_eq!(a, b);
        let s1 = write_lhg(&partial_steiner(15, 3, Seed::new(5)).unwrap());
        let s2 = write_lhg(&partial_steiner(15, 3, Seed::new(5)).unwrap());
        assert_eq!(s1, s2);
    }

    #[test]
    fn steiner_small_cases() {
        let single = partial_steiner(3, 3, Seed::new(0)).unwrap();
        assert_eq!(single.edge_count(), 1);
        for s in 0..10 {
            let g = partial_steiner(7, 3, Seed::new(s)).unwrap();
            // any maximal partial triple system on 7 points has 5..=7 triples
            assert!((5..=7).contains(&g.edge_count()), "{}", g.edge_count());
            g.audit_linearity().unwrap();
        }
    }

    #[test]
    fn steiner_meets_greedy_bound() {
        let g = partial_steiner(100, 3, Seed::new(3)).unwrap();
        assert!(g.edge_count() >= 825, "{}", g.edge_count());
        g.audit_linearity().unwrap();
    }

    #[test]
    fn steiner_output_is_maximal() {
        let g = partial_steiner(12, 3, Seed::new(8)).unwrap();
        // no triple on the vertex set can be added without breaking linearity
        for cand in (0..12u32).combinations(3) {
            if g.has_edge(&cand) {
                continue;
            }
            let addable = (0..3).all(|i| {
                ((i + 1)..3).all(|j| g.edge_containing_pair(cand[i], cand[j]).is_none())
            });
            assert!(!addable, "greedy output not maximal: {cand:?} addable");
        }
    }

    #[test]
    fn subsample_extremes_and_mean() {
        let fano = LinearHypergraph::build(
            3,
            7,
            &[
                vec![0, 1, 2],
                vec![0, 3, 4],
                vec![0, 5, 6],
                vec![1, 3, 5],
                vec![1, 4, 6],
                vec![2, 3, 6],
                vec![2, 4, 5],
            ],
        )
        .unwrap();
        assert_eq!(subsample_edges(&fano, 1.0, Seed::new(0)).unwrap(), fano);
        assert_eq!(subsample_edges(&fano, 0.0, Seed::new(0)).unwrap().edge_count(), 0);
        let seed = Seed::new(17);
        let total: usize = (0..400)
            .map(|i| subsample_edges(&fano, 0.5, seed.stream(i)).unwrap().edge_count())
            .sum();
        let mean = total as f64 / 400.0;
        assert!((mean - 3.5).abs() < 0.25, "mean {mean}");
    }

    #[test]
    fn subsample_exact_count() {
        let g = partial_steiner(20, 3, Seed::new(2)).unwrap();
        let sub = subsample_exact(&g, 10, Seed::new(3)).unwrap();
        assert_eq!(sub.edge_count(), 10);
        assert!(subsample_exact(&g, g.edge_count() + 1, Seed::new(3)).is_err());
    }

    #[test]
    fn r_partite_trivial_and_complete() {
        let single = random_r_partite(&[1, 1, 1], 1, Seed::new(0)).unwrap();
        assert_eq!(single.edge_count(), 1);
        assert_eq!(single.edge(0), &[0, 1, 2]);

        let k22 = random_r_partite(&[2, 2], 4, Seed::new(1)).unwrap();
        assert_eq!(k22.edge_count(), 4);
        k22.audit_linearity().unwrap();
    }

    #[test]
    fn r_partite_meets_budget_with_audit() {
        let g = random_r_partite(&[10, 10, 10], 90, Seed::new(7)).unwrap();
        assert_eq!(g.edge_count(), 90);
        g.audit_linearity().unwrap();
        let classes = g.partition_classes().unwrap();
        assert_eq!(classes.len(), 3);
        for e in g.edges() {
            let mut met = [false; 3];
            for &v in e {
                met[g.class_of(v).unwrap()] = true;
            }
            assert!(met.iter().all(|&m| m));
        }
    }

    #[test]
    fn r_partite_infeasible_budget_errors() {
        let err = random_r_partite(&[2, 2], 5, Seed::new(0)).unwrap_err();
        assert!(matches!(err, Error::BudgetInfeasible { accepted: 4, .. }));
    }
}
