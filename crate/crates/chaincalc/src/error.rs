//! Error type shared across the crate.
//!
//! Parse errors carry a byte position into the offending input; size and cap
//! errors name both the limit and the offending value so messages state the
//! violated precondition directly.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalcError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("invalid size {size}: series has a nonzero coefficient at index {max_index}")]
    InvalidSize { size: u32, max_index: u32 },

    #[error("not representable: h*-vector has nonzero top coefficient {top}")]
    NotRepresentable { top: String },

    #[error("infeasible input: {report}")]
    Infeasible { report: String },

    #[error("size limit exceeded: {vertices} vertices (limit {limit})")]
    SizeLimit { vertices: usize, limit: usize },

    #[error("search cap exceeded: target needs {needed} points (cap {cap})")]
    SearchCap { needed: u32, cap: u32 },

    #[error("composition sums to {got}, expected {expected}")]
    CompositionMismatch { got: u64, expected: u64 },

    #[error("{0}")]
    Domain(String),
}
