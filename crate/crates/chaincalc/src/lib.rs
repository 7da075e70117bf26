//! Exact arithmetic for order series of series-parallel posets in the chain basis.
//!
//! A poset's strict order series Σ Ω(X,n)·xⁿ is a finite integer combination of
//! the basis elements z[i] = xⁱ/(1−x)^(i+1); the non-strict series lives in the
//! basis w[i] = x/(1−x)^(i+1). This crate provides:
//!
//! - [`series`]: the two series types and their algebra (`star`, `hadamard`,
//!   `dee`, reciprocity, `star_plus`, `dee_plus`, expansion, evaluation).
//! - [`poset`]: series-parallel poset expressions, Hasse digraphs, structural
//!   invariants, isomorphism testing, and evaluation into series.
//! - [`oracle`]: independent brute-force counters of (non-)strict
//!   order-preserving maps used to validate everything else.
//! - [`hstar`]: conversions between chain coefficients and h*-vectors.
//! - [`inverse`]: the inverse problem — which posets have a given series.
//! - [`identities`]: exact sweep verifiers for a family of binomial identities.
//! - [`probability`]: the exact multivariate negative hypergeometric
//!   distribution.
//!
//! All arithmetic is exact (arbitrary-precision integers and rationals); no
//! floating point anywhere.

pub mod binom;
pub mod error;
pub mod hstar;
pub mod identities;
pub mod inverse;
pub mod oracle;
pub mod poset;
pub mod probability;
pub mod series;

pub use error::CalcError;
