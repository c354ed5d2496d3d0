//! Combinatorial problems solved through a single maxflow or min cut.

mod chains;
mod matching;
mod segmentation;

pub use chains::{max_disjoint_chains, Poset};
pub use matching::{neighborhood, perfect_matching, BipartiteGraph, MatchingOutcome};
pub use segmentation::{
    read_pgm, segment_image, segmentation_network, write_pbm, PixelImage, Segmentation,
};

use thiserror::Error;

use crate::decompose::DecomposeError;
use crate::network::NetError;
use crate::solvers::SolverError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AppError {
    #[error(transparent)]
    Network(#[from] NetError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid image: {0}")]
    InvalidImage(String),
    #[error("not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("poset is not bounded: {0}")]
    NotBounded(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub(crate) fn parse_error(line: usize, message: impl Into<String>) -> AppError {
    AppError::Parse { line, message: message.into() }
}

/// Non-empty, comment-stripped lines with their 1-based numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let tokens: Vec<&str> = l.split('#').next().unwrap_or("").split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}
