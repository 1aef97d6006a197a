use thiserror::Error;

use crate::quantum::Kind;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid particle parameters: {0}")]
    InvalidParticle(String),

    #[error("invalid field profile: {0}")]
    InvalidProfile(String),

    #[error("non-monotonic grid at index {index}")]
    NonMonotonicGrid { index: usize },

    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),

    #[error("field undefined at r = {0}: tabulated tail has no definite power law")]
    UndefinedTail(f64),

    #[error("invalid quantum numbers: {0}")]
    InvalidQuantumNumbers(String),

    #[error("no bound states of kind {kind} for this field orientation")]
    NoBoundStates { kind: Kind },

    #[error("energy {energy} gives only the trivial solution for kind {kind}")]
    Trivial { kind: Kind, energy: f64 },

    #[error("field sign at large r is indefinite")]
    IndefiniteSign,

    #[error("invalid shooting configuration: {0}")]
    InvalidConfig(String),

    #[error("solution overflowed at r = {r}; shrink r_max or rescale")]
    Overflow { r: f64 },

    #[error("step size underflow at r = {r}")]
    StepUnderflow { r: f64 },

    #[error("no sign change of the matching function in [{lo}, {hi}]")]
    NoRoot { lo: f64, hi: f64 },

    #[error("eigenvalue refinement did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("energy mesh too coarse near {energy}: node labels jump from {from} to {to}")]
    MeshTooCoarse { energy: f64, from: u32, to: u32 },

    #[error("solution does not decay at r_max (tail fraction {tail_fraction:e})")]
    NonDecayingTail { tail_fraction: f64 },

    #[error("cannot normalize a zero function")]
    ZeroFunction,

    #[error("inconsistent initial coefficients: {0}")]
    InconsistentInit(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
