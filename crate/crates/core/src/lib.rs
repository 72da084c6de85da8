//! Zero forcing on graphs and on hierarchical products of graphs.
//!
//! The crate builds products of paths, cycles and complete graphs, runs the
//! color-change rule, computes exact zero forcing numbers for small graphs,
//! checks the explicit forcing-set constructions for each product family,
//! and evaluates minimum-rank witness matrices over the rationals.

pub mod error;
pub mod expr;
pub mod family;
pub mod forcing;
pub mod graph;
pub mod iso;
pub mod minrank;
pub mod products;
pub mod solver;
pub mod theorems;
pub mod vertex_set;

pub use error::{AbortReason, Error, Result};
pub use expr::{Instance, ProductExpression};
pub use family::{Factor, FactorKind};
pub use forcing::{
    closure, forcing_closure, forcing_round, is_zero_forcing_set, propagation_time, Force,
    ForcingChronicle,
};
pub use graph::{Graph, VertexId, VertexLabel};
pub use iso::{are_isomorphic, IsoOutcome, IsoWitness, Refutation};
pub use minrank::{
    matches_pattern, p2_ph_graph, p2_ph_witness_matrix, pattern_of, rank_exact, zf_lower_bound,
    PatternMatrix, RationalMatrix,
};
pub use products::{
    cartesian_product, hierarchical_product, ProductGraph, ProductVertex, Root, RootSet,
};
pub use solver::{all_minimum_sets, zero_forcing_number, SearchBudget, ZfCertificate};
pub use theorems::{
    claimed_bound, construct_set, verify_construction, BoundReport, CaseId, ConstructionSpec,
};
pub use vertex_set::VertexSet;
