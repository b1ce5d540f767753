use thiserror::Error;

/// Failure cases shared by every stage of rule construction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("degree must be at least 1, got {0}")]
    DegreeOutOfRange(usize),
    #[error("parameter {name} = {value} must be greater than -1")]
    ParameterOutOfRange { name: &'static str, value: f64 },
    #[error("parameter {name} is not a finite number")]
    NotFinite { name: &'static str },
    #[error("argument {value} outside the domain of {what}")]
    DomainError { what: &'static str, value: f64 },
    #[error("{what} overflows the scalar range")]
    Overflow { what: &'static str },
    #[error("{what} did not converge after {terms} terms")]
    NoConvergence { what: &'static str, terms: usize },
    #[error("Taylor step {step} does not fit inside the radius {radius}")]
    StepOutOfRadius { step: f64, radius: f64 },
    #[error("Omega is not positive at x = {x}")]
    OmegaNonpositive { x: f64 },
    #[error("Delta is not positive at theta = {theta}")]
    DeltaNonpositive { theta: f64 },
    #[error("fixed-point iteration exceeded {0} iterations")]
    MaxItersExceeded(usize),
    #[error("expected {expected} nodes, found {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("normalization system is singular")]
    SingularNormalization,
    #[error("tridiagonal eigensolver did not converge")]
    EigenNoConvergence,
    #[error("rules have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
}

pub type Result<T> = std::result::Result<T, QuadError>;
