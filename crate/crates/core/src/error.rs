use num_complex::Complex64;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("gamma pole at {0}")]
    Pole(Complex64),
    #[error("degenerate parameters: {0}")]
    DegenerateParams(String),
    #[error("series did not converge after {terms} terms")]
    NoConvergence { terms: usize },
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("point outside the convergence domain (distance {distance:e}, limit {limit:e})")]
    OutsideDomain { distance: f64, limit: f64 },
    #[error("gamma = {0} is not a negative integer")]
    NotDegenerate(Complex64),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("invalid basepoint: {0}")]
    BasepointInvalid(String),
    #[error("ODE step failed: {0}")]
    StepFailure(String),
    #[error("singularity too close: {0}")]
    SingularityTooClose(String),
    #[error("invalid problem: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
