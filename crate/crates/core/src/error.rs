use thiserror::Error;

use crate::design::Violation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid design: {0}")]
    InvalidDesign(Violation),

    #[error("n = {n} is not {k}-admissible")]
    NotAdmissible { n: usize, k: usize },

    #[error("n = {n} is not congruent to 1 mod {}", k - 1)]
    Congruence { n: usize, k: usize },

    #[error("graph is not K_{k}-divisible")]
    NotDivisible { k: usize },

    #[error("expected {expected} vertices, found {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("certificate does not apply to this target: {0}")]
    CertificateKind(String),

    /// A derived inequality from the construction failed on valid input.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
