//! Maximum-flow solvers.
//!
//! * [`edmonds_karp`]: Ford-Fulkerson with breadth-first (shortest) augmenting
//!   paths.
//! * [`push_relabel`]: Goldberg-Tarjan preflow push with a FIFO active queue.
//! * [`hochbaum_maxflow`]: pseudoflow with normalized trees, solving a maximum
//!   blocking cut first and recovering a flow afterwards.
//!
//! Every solver works in exact rationals and returns a [`FlowAssignment`]
//! on the input network.

mod edmonds_karp;
mod pseudoflow;
mod push_relabel;

pub use edmonds_karp::{edmonds_karp, AugmentStats};
pub use pseudoflow::{
    build_gst, hochbaum_maxflow, hochbaum_maxflow_with, max_blocking_cut, max_blocking_cut_with,
    run_pseudoflow, surplus, BlockingCut, NormalizedTree, PseudoflowRun, PseudoflowStats,
    TreeLink, WeightedGraph,
};
pub use push_relabel::{push_relabel, push_relabel_with, LabelFunction, PushRelabelStats};

use crate::network::{FlowAssignment, NetError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error(transparent)]
    Network(#[from] NetError),
    #[error("flow recovery failed: {0}")]
    Recovery(String),
}

/// Run-time switches shared by the solvers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolverOptions {
    /// Re-check the algorithm's invariants after every elementary step and
    /// panic on the first violation.
    pub instrumented: bool,
}

impl SolverOptions {
    pub fn instrumented() -> Self {
        SolverOptions { instrumented: true }
    }
}

/// Which algorithm to run, for callers that dispatch dynamically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    EdmondsKarp,
    PushRelabel,
    Pseudoflow,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [
        Algorithm::EdmondsKarp,
        Algorithm::PushRelabel,
        Algorithm::Pseudoflow,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::EdmondsKarp => "ek",
            Algorithm::PushRelabel => "pr",
            Algorithm::Pseudoflow => "hoch",
        }
    }
}

/// Flow plus `key=value` statistics from one solver run.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub flow: FlowAssignment,
    pub stats: Vec<(&'static str, String)>,
}

pub fn solve(
    net: &crate::network::Network,
    algorithm: Algorithm,
    options: SolverOptions,
) -> Result<SolveReport, SolverError> {
    Ok(match algorithm {
        Algorithm::EdmondsKarp => {
            let (flow, s) = edmonds_karp(net)?;
            SolveReport {
                flow,
                stats: vec![
                    ("augmentations", s.augmentations.to_string()),
                    ("value", s.value.to_string()),
                ],
            }
        }
        Algorithm::PushRelabel => {
            let (flow, s) = push_relabel_with(net, options)?;
            SolveReport {
                flow,
                stats: vec![
                    ("pushes", s.pushes.to_string()),
                    ("relabels", s.relabels.to_string()),
                    ("value", s.value.to_string()),
                ],
            }
        }
        Algorithm::Pseudoflow => {
            let (flow, s) = hochbaum_maxflow_with(net, options)?;
            SolveReport {
                flow,
                stats: vec![
                    ("iterations", s.iterations.to_string()),
                    ("reversed", s.reversed.to_string()),
                    ("value", s.value.to_string()),
                ],
            }
        }
    })
}
