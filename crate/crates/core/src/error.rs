use alloc::string::String;

use crate::label::Simple;

/// Failures raised by construction routines.
///
/// Most variants correspond to a mathematical invariant that the code
/// witnesses rather than assumes; seeing one means either a bug or an input
/// far outside the supported range.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("index {index} is out of range for {what}")]
    InvalidIndex { what: &'static str, index: i64 },

    #[error("c_{j} has the wrong parity for the f/g split")]
    Parity { j: usize },

    #[error("R_{m} has a nonzero odd coefficient")]
    NotEven { m: usize },

    #[error("S/R decomposition of R_{m} does not reconstruct R_{m}")]
    SrMismatch { m: usize },

    #[error("eigenvector check failed for {vector}")]
    EigenVector { vector: &'static str },

    #[error("expected {expected} distinct eigenvalues, found {found}")]
    ClusterCount { expected: usize, found: usize },

    #[error("spectral invariant `{what}` violated (deviation {deviation:e})")]
    Spectral { what: &'static str, deviation: f64 },

    #[error("{what} did not converge within {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },

    #[error("graph has no identity vertex")]
    NoIdentityVertex,

    #[error("<{x}{y}, {z}> = {value} is not within tolerance of an integer")]
    NotIntegral { x: Simple, y: Simple, z: Simple, value: f64 },

    #[error("<{x}{y}, {z}> = {value} is negative")]
    Negative { x: Simple, y: Simple, z: Simple, value: f64 },

    #[error("halving failed in {what}: coefficient at {label} is not an integer")]
    Halving { what: &'static str, label: Simple },

    #[error("case-2 witness for k = {k} is an integer")]
    Case2Integral { k: usize },

    #[error("matrix is numerically singular")]
    Singular,

    #[error("malformed fusion table: {0}")]
    Table(String),
}
