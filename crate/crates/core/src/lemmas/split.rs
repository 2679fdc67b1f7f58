//! Vertex splitting by resampled random colouring.
//!
//! Every vertex is assigned one of k parts uniformly at random; the sample is
//! accepted once every audited vertex has, in every part, at least `floor`
//! link sets fully contained in that part. Resampling keeps the procedure
//! honest at desk scale, where the asymptotic guarantee does not yet bite:
//! failure is explicit, with the worst deficit reported.

use std::collections::BTreeMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{LinearHypergraph, VertexId};
use crate::seed::Seed;

#[derive(Clone, Debug)]
pub struct SplitPartition {
    pub parts: Vec<Vec<VertexId>>,
    pub part_of: BTreeMap<VertexId, usize>,
    /// The two designated host partition classes whose vertices were audited.
    pub class_a: usize,
    pub class_b: usize,
    pub floor: usize,
    /// Restricted link sizes per audited vertex, one entry per part.
    pub link_sizes: BTreeMap<VertexId, Vec<usize>>,
    pub retries_used: usize,
}

impl SplitPartition {
    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    /// Recomputes the audit from scratch; true when every audited vertex
    /// meets the floor in every part.
    pub fn recheck(&self, g: &LinearHypergraph) -> bool {
        self.link_sizes.keys().all(|&v| {
            let sizes = restricted_link_sizes(g, v, &self.part_of, self.parts.len());
            sizes.iter().all(|&s| s >= self.floor)
                && sizes == self.link_sizes[&v]
        })
    }
}

fn restricted_link_sizes(
    g: &LinearHypergraph,
    v: VertexId,
    part_of: &BTreeMap<VertexId, usize>,
    k: usize,
) -> Vec<usize> {
    let mut sizes = vec![0usize; k];
    for &e in g.incident_edges(v) {
        let mut part: Option<usize> = None;
        let mut uniform = true;
        for &w in g.edge(e) {
            if w == v {
                continue;
            }
            let pw = part_of[&w];
            match part {
                None => part = Some(pw),
                Some(p) if p != pw => {
                    uniform = false;
                    break;
                }
                _ => {}
            }
        }
        if uniform {
            if let Some(p) = part {
                sizes[p] += 1;
            }
        }
    }
    sizes
}

/// Splits V(G) into k parts so that every vertex of the two designated
/// classes keeps at least `floor` link sets inside each part, resampling up
/// to `max_retries` times.
pub fn split_vertices(
    g: &LinearHypergraph,
    class_a: usize,
    class_b: usize,
    k: usize,
    floor: usize,
    seed: Seed,
    max_retries: usize,
) -> Result<SplitPartition> {
    if k == 0 {
        return Err(Error::BadParameter("need at least one part".into()));
    }
    let classes = g.partition_classes().ok_or(Error::NoPartition)?;
    if class_a >= classes.len() || class_b >= classes.len() || class_a == class_b {
        return Err(Error::BadParameter(format!(
            "designated classes ({class_a}, {class_b}) invalid for {} classes",
            classes.len()
        )));
    }
    let audited: Vec<VertexId> = {
        let mut v: Vec<VertexId> = classes[class_a]
            .iter()
            .chain(classes[class_b].iter())
            .copied()
            .collect();
        v.sort_unstable();
        v
    };

    let mut worst: Option<(VertexId, usize, usize)> = None;
    for attempt in 0..=max_retries {
        let mut rng = seed.stream(attempt as u64).rng();
        let mut part_of: BTreeMap<VertexId, usize> = BTreeMap::new();
        for &v in g.members() {
            part_of.insert(v, rng.random_range(0..k));
        }
        let mut link_sizes: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
        let mut attempt_worst: Option<(VertexId, usize, usize)> = None;
        for &v in &audited {
            let sizes = restricted_link_sizes(g, v, &part_of, k);
            for (i, &s) in sizes.iter().enumerate() {
                if s < floor && attempt_worst.is_none_or(|(_, _, w)| s < w) {
                    attempt_worst = Some((v, i, s));
                }
            }
            link_sizes.insert(v, sizes);
        }
        match attempt_worst {
            None => {
                let mut parts = vec![Vec::new(); k];
                for (&v, &p) in &part_of {
                    parts[p].push(v);
                }
                return Ok(SplitPartition {
                    parts,
                    part_of,
                    class_a,
                    class_b,
                    floor,
                    link_sizes,
                    retries_used: attempt,
                });
            }
            Some(w) => {
                if worst.is_none_or(|(_, _, deficit)| w.2 < deficit) {
                    worst = Some(w);
                }
            }
        }
    }
    let (vertex, part, actual) = worst.expect("failed attempts record a deficit");
    Err(Error::RetriesExhausted {
        retries: max_retries + 1,
        vertex,
        part,
        actual,
        floor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::random_r_partite;

    #[test]
    fn single_part_is_whole_vertex_set() {
        let g = random_r_partite(&[4, 4, 4], 12, Seed::new(1)).unwrap();
        let min_degree = g
            .members()
            .iter()
            .filter(|&&v| g.class_of(v) != Some(2))
            .map(|&v| g.degree(v))
            .min()
            .unwrap();
        let split = split_vertices(&g, 0, 1, 1, min_degree, Seed::new(2), 0).unwrap();
        assert_eq!(split.parts[0].len(), g.vertex_count());
        assert!(split.recheck(&g));
    }

    #[test]
    fn floor_zero_always_passes() {
        let g = random_r_partite(&[5, 5, 5], 20, Seed::new(3)).unwrap();
        let split = split_vertices(&g, 0, 1, 3, 0, Seed::new(4), 0).unwrap();
        assert_eq!(split.retries_used, 0);
        assert!(split.recheck(&g));
    }

    #[test]
    fn dense_instance_passes_floor_one_within_few_retries() {
        let g = random_r_partite(&[14, 14, 14], 160, Seed::new(5)).unwrap();
        let split = split_vertices(&g, 0, 1, 2, 1, Seed::new(6), 50).unwrap();
        assert!(split.retries_used <= 50);
        assert!(split.recheck(&g));
        for sizes in split.link_sizes.values() {
            assert!(sizes.iter().all(|&s| s >= 1));
        }
    }

    #[test]
    fn impossible_floor_reports_worst_deficit() {
        let g = random_r_partite(&[3, 3, 3], 6, Seed::new(7)).unwrap();
        let err = split_vertices(&g, 0, 1, 4, 5, Seed::new(8), 3).unwrap_err();
        match err {
            Error::RetriesExhausted { retries, floor, .. } => {
                assert_eq!(retries, 4);
                assert_eq!(floor, 5);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
