//! Error type shared by all numerical operations.

use thiserror::Error;

/// Errors produced by evaluators, samplers and integrators.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series did not reach the accuracy target within the term budget.
    #[error("{context}: no convergence after {terms} terms")]
    NonConvergence { context: String, terms: usize },

    /// Adaptive quadrature could not reach the requested tolerance.
    #[error("quadrature failure in {context}: achieved error {achieved:.3e}, requested {requested:.3e}")]
    Quadrature {
        context: String,
        achieved: f64,
        requested: f64,
    },

    /// A grid is malformed (not strictly increasing, wrong origin, ...).
    #[error("grid error: {0}")]
    Grid(String),

    /// An interval was passed with its endpoints out of order.
    #[error("order error: s = {s} exceeds t = {t}")]
    Order { s: f64, t: f64 },

    /// A value exceeds the representable range of a bounded rate function.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// A subordinator path ends before the requested passage level.
    #[error("path too short: final value {final_value} <= passage level {level}")]
    PathTooShort { final_value: f64, level: f64 },

    /// Exact integer arithmetic overflowed.
    #[error("integer overflow in {0}")]
    Overflow(String),

    /// A computed variance fell below -abs_tol, signalling inconsistent quadrature.
    #[error("negative variance {0:.3e} beyond tolerance")]
    NegativeVariance(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
