//! Linear hypergraph toolkit: data structures with the linearity invariant
//! enforced at construction, random and structured instance generators,
//! exact enumeration of even linear cycles with independent counting oracles,
//! executable forms of the constructive decomposition and tree procedures,
//! and a desk-scale experiment harness.

pub mod cycles;
pub mod error;
pub mod generators;
pub mod harness;
pub mod hypergraph;
pub mod lemmas;
pub mod lhg;
pub mod seed;

pub use error::{Error, Result};
pub use hypergraph::{
    DegreeProfile, EdgeId, LinearHypergraph, Link, Projection, VertexId, VertexSet,
};
pub use seed::Seed;
