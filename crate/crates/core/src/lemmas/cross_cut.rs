//! Cross-cut extraction from a vertex cover.
//!
//! Keep each cover vertex independently with probability 1/2 and retain the
//! sets meeting the kept subset exactly once. A set meeting the cover in m
//! vertices survives with probability m/2^m >= u/2^u, so resampling reaches
//! the expectation-guaranteed threshold (u/2^u) * |family| with probability
//! one; a round cap turns a stall into a loud report instead of a silent
//! failure.

use std::collections::BTreeSet;

use rand::Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{VertexId, VertexSet};
use crate::seed::Seed;

pub const DEFAULT_CROSS_CUT_ROUNDS: usize = 8192;

/// A u-uniform family of vertex sets (not necessarily linear).
#[derive(Clone, Debug)]
pub struct UniformSetFamily {
    uniformity: usize,
    sets: Vec<Vec<VertexId>>,
}

impl UniformSetFamily {
    pub fn new(uniformity: usize, sets: Vec<Vec<VertexId>>) -> Result<Self> {
        if uniformity == 0 {
            return Err(Error::BadParameter("uniformity must be positive".into()));
        }
        let mut sets = sets;
        for (i, s) in sets.iter_mut().enumerate() {
            s.sort_unstable();
            s.dedup();
            if s.len() != uniformity {
                return Err(Error::BadArity {
                    index: i,
                    expected: uniformity,
                    found: s.len(),
                });
            }
        }
        sets.sort_unstable();
        Ok(UniformSetFamily { uniformity, sets })
    }

    pub fn uniformity(&self) -> usize {
        self.uniformity
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[Vec<VertexId>] {
        &self.sets
    }

    pub fn vertices(&self) -> VertexSet {
        self.sets.iter().flatten().copied().collect()
    }
}

#[derive(Clone, Debug)]
pub struct CrossCut {
    /// The kept subset S' of the cover.
    pub kept_vertices: Vec<VertexId>,
    /// Indices of the surviving sets (each meets S' exactly once).
    pub kept_sets: Vec<usize>,
    /// The guaranteed count, (u/2^u) * |family|.
    pub threshold: f64,
    pub rounds_used: usize,
}

pub fn cross_cut(
    family: &UniformSetFamily,
    cover: &VertexSet,
    seed: Seed,
    max_rounds: usize,
) -> Result<CrossCut> {
    if let Some(bad) = family
        .sets()
        .iter()
        .position(|s| !s.iter().any(|v| cover.contains(v)))
    {
        return Err(Error::NotAVertexCover(format!("{cover:?}"), bad));
    }
    let u = family.uniformity();
    let threshold = u as f64 / 2f64.powi(u as i32) * family.len() as f64;
    let cover_vec: Vec<VertexId> = cover.iter().copied().collect();
    let mut best: Option<CrossCut> = None;
    for round in 0..max_rounds.max(1) {
        let mut rng = seed.stream(round as u64).rng();
        let kept: BTreeSet<VertexId> = cover_vec
            .iter()
            .copied()
            .filter(|_| rng.random_bool(0.5))
            .collect();
        let survivors: Vec<usize> = family
            .sets()
            .iter()
            .enumerate()
            .filter(|(_, s)| s.iter().filter(|v| kept.contains(v)).count() == 1)
            .map(|(i, _)| i)
            .collect();
        let cut = CrossCut {
            kept_vertices: kept.into_iter().collect(),
            kept_sets: survivors,
            threshold,
            rounds_used: round + 1,
        };
        if cut.kept_sets.len() as f64 >= threshold {
            return Ok(cut);
        }
        if best
            .as_ref()
            .is_none_or(|b| cut.kept_sets.len() > b.kept_sets.len())
        {
            best = Some(cut);
        }
    }
    let best = best.expect("at least one round ran");
    Err(Error::CrossCutStalled {
        rounds: max_rounds,
        best: best.kept_sets.len(),
        threshold,
    })
}

/// Exactness recheck: every kept set meets S' in exactly one vertex and the
/// threshold is met.
pub fn recheck_cross_cut(family: &UniformSetFamily, cut: &CrossCut) -> bool {
    let kept: BTreeSet<VertexId> = cut.kept_vertices.iter().copied().collect();
    cut.kept_sets.iter().all(|&i| {
        family.sets()[i]
            .iter()
            .filter(|v| kept.contains(v))
            .count()
            == 1
    }) && cut.kept_sets.len() as f64 >= cut.threshold
}
