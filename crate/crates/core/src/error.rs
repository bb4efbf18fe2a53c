use thiserror::Error;

/// Errors raised by the series engine, the special functions and the builders.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("inner series must have zero constant term for composition (got {0})")]
    NonzeroConstantTerm(String),
    #[error("series is not invertible at 0: {0}")]
    NotInvertible(&'static str),
    #[error("argument {0} lies outside the convergence disk |z| < 1")]
    OutsideDisk(String),
    #[error("series did not converge to tolerance {tol:e} within {terms} terms")]
    NoConvergence { tol: f64, terms: usize },
    #[error("pole: {0}")]
    Pole(&'static str),
    #[error("|u| = {radius_requested} exceeds trusted radius {trusted}")]
    BeyondRadius { radius_requested: f64, trusted: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("polynomial has degree {0}, expected 3")]
    NotCubic(i64),
    #[error("Newton iteration failed: {0}")]
    NewtonFailure(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
