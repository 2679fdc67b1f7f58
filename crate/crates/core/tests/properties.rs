//! Property tests for the structural invariants: linearity enforcement,
//! projection bijectivity, link disjointness, subgraph closure, format
//! round-trips, and generator determinism.

use proptest::prelude::*;

use hypersat_core::cycles::{count_cycles_oracle, enumerate_linear_cycles};
use hypersat_core::generators::{gnp, partial_steiner, random_r_partite, subsample_edges};
use hypersat_core::hypergraph::{LinearHypergraph, VertexSet};
use hypersat_core::lhg::{read_lhg, write_lhg};
use hypersat_core::{Error, Seed};

fn arbitrary_triple_list(n: u32) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0..n, 3), 0..12)
}

proptest! {
    /// Accepted graphs pass the from-scratch pair audit; rejected edge lists
    /// name a genuinely offending pair or a genuine duplicate.
    #[test]
    fn build_verdicts_are_accurate(edges in arbitrary_triple_list(8)) {
        match LinearHypergraph::build(3, 8, &edges) {
            Ok(g) => {
                g.audit_linearity().unwrap();
                prop_assert_eq!(g.edge_count(), edges.len());
            }
            Err(Error::LinearityViolation { u, v, first, second }) => {
                let mut a = edges[first].clone();
                let mut b = edges[second].clone();
                a.sort_unstable();
                b.sort_unstable();
                prop_assert!(a.contains(&u) && a.contains(&v));
                prop_assert!(b.contains(&u) && b.contains(&v));
                prop_assert_ne!(a, b);
            }
            Err(Error::DuplicateEdge { first, second }) => {
                let mut a = edges[first].clone();
                let mut b = edges[second].clone();
                a.sort_unstable();
                b.sort_unstable();
                prop_assert_eq!(a, b);
            }
            Err(Error::BadArity { index, .. }) => {
                let mut e = edges[index].clone();
                e.sort_unstable();
                e.dedup();
                prop_assert!(e.len() < 3);
            }
            Err(other) => prop_assert!(false, "unexpected error {other:?}"),
        }
    }

    /// Projections are edge-bijective and recompose the source edge set.
    #[test]
    fn projection_bijective(seed in 0u64..500, budget in 5usize..28) {
        let g = random_r_partite(&[6, 6, 6], budget, Seed::new(seed)).unwrap();
        for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let proj = g.project(i, j).unwrap();
            prop_assert_eq!(proj.graph.edge_count(), g.edge_count());
            let mut expected: Vec<Vec<u32>> = g.edges().map(|e| e.to_vec()).collect();
            expected.sort_unstable();
            prop_assert_eq!(proj.recompose(&g), expected);
        }
    }

    /// Link sets are pairwise disjoint and count the degree.
    #[test]
    fn links_disjoint_and_sized(seed in 0u64..500) {
        let g = partial_steiner(12, 3, Seed::new(seed)).unwrap();
        for &v in g.members() {
            let link = g.link(v, None).unwrap();
            prop_assert!(link.sets_pairwise_disjoint());
            prop_assert_eq!(link.len(), g.degree(v));
        }
    }

    /// Induced subgraphs and edge subsets never violate linearity.
    #[test]
    fn subgraphs_stay_linear(seed in 0u64..500, keep in 0usize..12) {
        let g = partial_steiner(12, 3, Seed::new(seed)).unwrap();
        let s: VertexSet = (0..keep as u32).collect();
        let induced = g.induced(&s).unwrap();
        induced.audit_linearity().unwrap();
        let sub = subsample_edges(&g, 0.5, Seed::new(seed ^ 0xabcd)).unwrap();
        sub.audit_linearity().unwrap();
        // every subsampled edge is a parent edge
        for e in sub.edges() {
            prop_assert!(g.has_edge(e));
        }
    }

    /// Write-read-write is bit-exact.
    #[test]
    fn lhg_round_trip(seed in 0u64..500, p in 0.0f64..1.0) {
        let g = gnp(14, p, Seed::new(seed)).unwrap();
        let text = write_lhg(&g);
        let back = read_lhg(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(write_lhg(&back), text);
    }

    /// Identical seeds reproduce byte-identical generator output.
    #[test]
    fn generator_determinism(seed in 0u64..500) {
        let a = write_lhg(&gnp(20, 0.3, Seed::new(seed)).unwrap());
        let b = write_lhg(&gnp(20, 0.3, Seed::new(seed)).unwrap());
        prop_assert_eq!(a, b);
        let s1 = write_lhg(&partial_steiner(10, 3, Seed::new(seed)).unwrap());
        let s2 = write_lhg(&partial_steiner(10, 3, Seed::new(seed)).unwrap());
        prop_assert_eq!(s1, s2);
    }

    /// The pruned enumerator agrees with the exhaustive oracle on small
    /// 2-graphs.
    #[test]
    fn enumerator_matches_oracle(seed in 0u64..300, n in 4usize..9, k in 2usize..4) {
        let g = gnp(n, 0.6, Seed::new(seed)).unwrap();
        let fast = enumerate_linear_cycles(&g, k);
        let oracle = count_cycles_oracle(&g, k).unwrap();
        prop_assert_eq!(fast, oracle);
    }

    /// Every emitted copy satisfies the cyclic intersection pattern.
    #[test]
    fn emitted_copies_validate(seed in 0u64..200) {
        let g = partial_steiner(13, 3, Seed::new(seed)).unwrap();
        for copy in enumerate_linear_cycles(&g, 2).iter() {
            copy.validate(&g).unwrap();
            prop_assert_eq!(copy.len(), 4);
        }
    }
}

#[test]
fn steiner_maximality_is_checkable_at_small_n() {
    use itertools::Itertools;
    for seed in 0..5u64 {
        let g = partial_steiner(14, 3, Seed::new(seed)).unwrap();
        for cand in (0..14u32).combinations(3) {
            if g.has_edge(&cand) {
                continue;
            }
            let addable = (0..3).all(|i| {
                ((i + 1)..3).all(|j| g.edge_containing_pair(cand[i], cand[j]).is_none())
            });
            assert!(!addable, "seed {seed}: {cand:?} could extend the packing");
        }
    }
}
