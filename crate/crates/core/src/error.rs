use thiserror::Error;

/// Errors raised by the geometry, determinant, symbolic and experiment layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("points {a} and {b} are too close to define a ray (distance {distance:.3e})")]
    DegenerateRay { a: usize, b: usize, distance: f64 },

    #[error("numerical degeneracy: {0}")]
    NumericalDegeneracy(String),

    #[error("denominator bracket for pair ({a}, {b}) vanishes (|bracket| = {modulus:e})")]
    DegenerateDenominator { a: usize, b: usize, modulus: f64 },

    #[error("configuration is not coplanar (point {index} has y = {y:e})")]
    NotCoplanar { index: usize, y: f64 },

    #[error("invalid variable ordering: {0}")]
    InvalidOrdering(String),

    #[error("substitution matrix is singular")]
    SingularSubstitution,

    #[error("certificate check failed for {polynomial} ({ordering}): {reason}")]
    CertificateFailed {
        ordering: String,
        polynomial: String,
        reason: String,
        offending: Vec<String>,
    },

    #[error("group sum for n = {n} needs {terms} terms, above the cap for n <= {cap}")]
    CapExceeded { n: usize, cap: usize, terms: String },

    #[error("verification failed: {message}")]
    VerificationFailed { message: String, witness: Option<String> },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("bound violated: {0}")]
    BoundViolated(String),

    #[error("sampling exhausted after {rejections} rejections for shape {shape}")]
    SamplingExhausted { shape: String, rejections: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
