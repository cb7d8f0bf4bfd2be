//! Degree/diameter toolkit for bipartite mixed graphs.
//!
//! * [`graph`]: the mixed graph model and its metrics.
//! * [`bounds`]: exact Moore-type bounds and the bound tables.
//! * [`constructions`]: complete bipartite graphs, cycles, line digraphs,
//!   bipartite Moore graphs and the mixed families built from them.
//! * [`spectral`]: exact characteristic polynomials and matrix identities.
//! * [`canon`] and [`search`]: canonical forms and isomorph-free enumeration.
//! * [`io`]: the plain-text graph format, DOT export and certificates.

pub mod bounds;
pub mod canon;
pub mod constructions;
pub mod graph;
pub mod io;
pub mod search;
pub mod spectral;

pub use graph::{DistanceMatrix, GraphError, MixedGraph, Vertex};
