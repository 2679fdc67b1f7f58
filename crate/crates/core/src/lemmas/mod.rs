//! Executable forms of the constructive procedures: balanced-root descent,
//! bipartite peeling, almost-regular decomposition, vertex splitting,
//! cross-cut extraction, rainbow rooted trees, and the tree-driven cycle
//! searches.

mod balanced_root;
mod cross_cut;
mod decompose;
mod find_cycles;
mod peel;
mod rainbow_tree;
mod split;
mod tree;

pub use balanced_root::{balanced_root, recheck_balanced_root, BalancedRoot};
pub use cross_cut::{
    cross_cut, recheck_cross_cut, CrossCut, UniformSetFamily, DEFAULT_CROSS_CUT_ROUNDS,
};
pub use decompose::{
    check_edge_disjoint, decompose_almost_regular, default_p, DecomposeCase, DecompositionResult,
    SubgraphAudit,
};
pub use find_cycles::{
    bfs_find_cycles, extend_path_to_cycle, CycleSearchOutcome, ExtensionContext, FoundCycle,
    SearchDiagnostics, ThresholdCheck,
};
pub use peel::{peel_bipartite, recheck_peel};
pub use rainbow_tree::{audit_rainbow_tree, build_rainbow_tree, is_linear_path, RainbowTreeAudit};
pub use split::{split_vertices, SplitPartition};
pub use tree::{RootedTree, TreeNode};
