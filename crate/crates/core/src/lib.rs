//! Greedy exploration on sparse Erdős–Rényi graphs and its large deviations.
//!
//! - [`explorer`]: explicit graphs and the vertex-level greedy algorithm.
//! - [`chain`]: the explored-count Markov chain and the exact law of its stopping time.
//! - [`fluid`]: fluid limit, hitting time and CLT variance.
//! - [`ldp`]: cost/Hamiltonian pair, closed-form extremals, rates and bounds.
//! - [`cli`]: the `greedy-ldp` command-line front end.

// NaN-rejecting guards are written as negated comparisons on purpose
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod chain;
pub mod checks;
pub mod cli;
pub mod error;
pub mod explorer;
pub mod fluid;
pub mod ldp;
pub mod model;
pub mod output;
pub mod par;
pub mod quadrature;
pub mod replicas;

pub use error::{Error, Result};
pub use model::{derive_seed, ExtReal, Interpolation, ModelParams, ScaledPath};
