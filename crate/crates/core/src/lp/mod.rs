//! Exact linear programming.
//!
//! [`LinearProgram`] holds a program in canonical form and
//! [`simplex_solve`] solves it exactly with a dense two-phase tableau. The
//! [`maxflow`](self::build_primal) helpers build the flow LP and its dual,
//! and [`is_totally_unimodular`] checks integrality of constraint matrices.

mod maxflow;
mod program;
mod simplex;
mod tu;

pub use maxflow::{
    build_primal, build_reduced_dual, cut_from_dual, dual_from_cut, dual_point_from_solution,
    lp_maxflow, DualPoint,
};
pub use program::{build_dual, LinearProgram, Sense};
pub use simplex::{simplex_solve, LPResult, LPStatus};
pub use tu::{is_totally_unimodular, square_submatrix_count, TuVerdict, DEFAULT_TU_BUDGET};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpError {
    #[error("malformed program: {0}")]
    Malformed(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("point is not dual feasible: {0}")]
    Infeasible(String),
    #[error("{needed} square submatrices exceed the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error(transparent)]
    Network(#[from] crate::network::NetError),
}
