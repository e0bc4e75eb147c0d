use thiserror::Error;

use crate::Subset;

/// A negative Tawn-Molchanov coefficient produced by inverting a
/// coefficient system. These are the witnesses of non-realizability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeAtom {
    pub set: Subset,
    pub value: crate::Rational,
}

impl std::fmt::Display for NegativeAtom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "beta({}) = {}", self.set, self.value)
    }
}

fn join_atoms(atoms: &[NegativeAtom]) -> String {
    atoms
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension p = {p} outside the supported range 1..={limit}")]
    DimensionTooLarge { p: usize, limit: usize },

    #[error("dimension must be at least 1")]
    EmptyDimension,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid beta: coefficient of {set} is negative ({value})")]
    InvalidBeta { set: Subset, value: Box<crate::Rational> },

    #[error("expected a {expected} function, found {found}")]
    WrongKind {
        expected: &'static str,
        found: &'static str,
    },

    #[error("invalid tail-dependence matrix: {0}")]
    InvalidTdMatrix(String),

    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),

    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("not realizable: {}", join_atoms(.0))]
    NotRealizable(Vec<NegativeAtom>),

    #[error("not realizable at the given marginals: {}", join_atoms(.0))]
    NotRealizableAtTheseMarginals(Vec<NegativeAtom>),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate model: all coefficients vanish")]
    DegenerateModel,

    #[error("scale {scale} is below theta([p]) = {theta}")]
    ScaleTooSmall {
        scale: Box<crate::Rational>,
        theta: Box<crate::Rational>,
    },

    #[error("invalid pmf: {0}")]
    InvalidPmf(String),

    #[error("semimetric is not in the cut cone")]
    NotInCutCone,

    #[error("distance matrix is identically zero; the reduction is undefined")]
    DegenerateReduction,

    #[error("certificate rejected: {0}")]
    CertificateRejected(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
