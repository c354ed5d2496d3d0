//! Flows on oriented pure simplicial complexes.
//!
//! A `d`-dimensional network assigns capacities to the facets of a complex
//! and singles out a source facet `T`. A flow is a non-negative weighted
//! cycle of facets within capacity, and its value is the weight it puts on
//! `T`. For `d = 1` this is ordinary maxflow with the extra arc `(t, s)`.

mod complex;
pub mod fixtures;
mod hcut;
mod hflow;
mod hnetwork;
mod probe;
mod tree;

pub use complex::OrientedComplex;
pub use hcut::{check_hdual_point, hcut_capacity, min_hcut_exhaustive, HCut, HCutValue};
pub use hflow::{
    find_augmenting_cycle, hmaxflow_augment, hmaxflow_augment_with, hmaxflow_lp,
    hmaxflow_program, Augmentation, CycleTerm, HAugmentResult, HMaxflowLp, DEFAULT_AUGMENT_LIMIT,
};
pub use hnetwork::{
    boundary_residuals, build_hnetwork, check_hflow, check_source_condition, graph_complex,
    is_weighted_cycle, GraphComplex, HFlow, HNetwork,
};
pub use probe::{
    conjecture_probe, random_hnetwork, replay, run_instance, trial_seed, ProbeOutcome,
    ProbeReport, ProbeTrial, MAX_PROBE_FACETS,
};
pub use tree::{
    is_leaf, is_leaf_among, is_simplicial_tree, tu_certificate_via_tree, DEFAULT_TREE_FACET_LIMIT,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimplicialError {
    #[error("not a pure complex: {0}")]
    NotPure(String),
    #[error("facet {0:?} appears twice")]
    DuplicateFacet(Vec<usize>),
    #[error("bad face enumeration: {0}")]
    BadFaces(String),
    #[error("source index {0} is not a facet")]
    InvalidSource(usize),
    #[error("source condition fails at facets {0:?}")]
    SourceConditionViolated(Vec<usize>),
    #[error("facet {0} has negative capacity")]
    NegativeCapacity(usize),
    #[error("{0}")]
    DimensionMismatch(String),
    #[error("{0}")]
    BudgetExceeded(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Network(#[from] crate::network::NetError),
}
