//! Discrete-time quantum walks on graphs: Grover, Szegedy, staggered and
//! marked-vertex search walks, their spectra through discriminant matrices,
//! and search dynamics.

pub mod corpus;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod operators;
pub mod parse;
pub mod sample;
pub mod search;
pub mod spectra;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{
    build_search_instance, mirrored_search_weighting, uniform_search_weighting, Arc, ArcSet,
    BipartiteGraph, EdgeClass, EdgeWeighting, Multigraph, SearchEdge, SearchInstance, Side,
};
pub use linalg::{multiset_equal, ComplexMatrix, EigenMultiset, MatchReport, C64};
pub use operators::{
    AmplitudeAssignment, Basis, Discriminant, DiscriminantKind, WalkKind, WalkOperator,
};
