//! Exact-rational network flow toolkit.
//!
//! The crate covers classical maximum flow (augmenting paths, FIFO
//! push-relabel and Hochbaum's pseudoflow), the linear-programming view of
//! maxflow with its dual, three combinatorial reductions (bipartite
//! matching, cover-disjoint chains, binary image segmentation) and a
//! generalization of maxflow to oriented pure simplicial complexes.
//!
//! All capacities and flow values are [`Rational`]s; nothing in the crate
//! uses floating point.

// Dense matrix code reads better with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod apps;
pub mod decompose;
pub mod lp;
pub mod matrix;
pub mod network;
pub mod numeric;
pub mod simplicial;
pub mod solvers;

pub use matrix::IntMatrix;
pub use network::{
    Capacity, Cut, FlowAssignment, FlowRole, NetError, Network, ResidualGraph, Violation,
};
pub use numeric::Rational;
