use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// Numeric payloads are stored as `f64` regardless of the working scalar.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function} has a pole at argument {argument}")]
    PoleArgument { function: String, argument: f64 },

    #[error("hypergeometric parameter c = {c} is a nonpositive integer")]
    DegenerateC { c: f64 },

    #[error("{what} did not converge: error estimate {achieved:e} exceeds requested {requested:e}")]
    NonConvergent {
        what: String,
        achieved: f64,
        requested: f64,
    },

    #[error("dimension {n} unsupported (allowed {min}..={max})")]
    UnsupportedDimension { n: usize, min: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("outside domain: {0}")]
    DomainError(String),

    #[error("series does not converge here: {0}")]
    OutsideConvergence(String),

    #[error("effective mass squared {0} is not positive")]
    NegativeMassSquared(f64),

    #[error("argument {0} sits on a pole")]
    AtPole(f64),

    #[error("no pole detected near {near} (fitted residue {residue:e})")]
    NoPoleDetected { near: f64, residue: f64 },

    #[error("cutoff {cutoff} too small, need at least {minimum}")]
    CutoffTooSmall { cutoff: usize, minimum: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
