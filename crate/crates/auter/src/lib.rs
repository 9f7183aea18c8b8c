//! Exact workbench for moduli spaces of pointed graphs.
//!
//! The crate enumerates admissible pointed multigraphs, assembles quotient
//! cell complexes of spines of auter space (single- and double-pointed,
//! with an optional degree cap), computes their homology over `Z`, `Q` and
//! `F_p` by exact linear algebra, and runs Nielsen/Whitehead-move machinery
//! on graphs with finite cyclic or bicyclic symmetry groups.  A closed-form
//! layer evaluates the graded Farrell-cohomology tables that the geometric
//! computations feed into.
//!
//! Entry points by capability:
//!
//! * [`enumerate::enumerate_graphs`] — isomorphism classes of admissible
//!   pointed graphs by rank, pointing and degree cap.
//! * [`complex::build_quotient_complex`] — quotient cell complexes from
//!   forest-collapse flags.
//! * [`homology::homology`] — Betti numbers and torsion via Smith normal
//!   form and independent mod-p elimination.
//! * [`symmetry`] — graphs with a group action, invariant forests,
//!   inessential-edge reduction, equivariant isomorphism.
//! * [`nielsen`] — Nielsen transformations, Nielsen equivalence closures,
//!   subgroup-class bookkeeping.
//! * [`fixed`] — quotient complexes of fixed-point subcomplexes.
//! * [`whitehead`] — marked graphs, aut/out/tot norms, ideal edges and
//!   Whitehead moves.
//! * [`farrell`] — graded-module arithmetic for the cohomology tables.
//! * [`verify`] — the named verification suites run by `auter verify`.

pub mod cache;
pub mod canon;
pub mod cli;
pub mod complex;
pub mod config;
pub mod enumerate;
pub mod farrell;
pub mod fixed;
pub mod graph;
pub mod homology;
pub mod io;
pub mod nielsen;
pub mod singular;
pub mod snf;
pub mod symmetry;
pub mod verify;
pub mod whitehead;
pub mod zoo;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed graph: {0}")]
    Malformed(String),
    #[error("edge set is not a forest")]
    NotAForest,
    #[error("graph is not admissible: {0}")]
    NotAdmissible(String),
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("graph is not reduced")]
    NotReduced,
    #[error("dimension {0} out of range")]
    DimOutOfRange(usize),
    #[error("chain complex integrity failure: {0}")]
    Integrity(String),
    #[error("inadmissible Nielsen transformation: {0}")]
    NielsenPrecondition(&'static str),
    #[error("invalid ideal edge: {0}")]
    IdealEdge(String),
    #[error("invalid Whitehead move: {0}")]
    WhiteheadPrecondition(&'static str),
    #[error("invalid marking: {0}")]
    Marking(String),
    #[error("missing quotient-cohomology input: {0}")]
    MissingInput(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
