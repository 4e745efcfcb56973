use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("evaluation point t = {value} is a pole")]
    EvaluationPole { value: String },
    #[error("matrix is not invertible (kernel vector {witness})")]
    NotInvertible { witness: String },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("{line}:{col}: syntax error: found {found}, expected one of {}", expected.join(", "))]
    Syntax {
        line: usize,
        col: usize,
        found: String,
        expected: Vec<String>,
    },
    #[error("{line}:{col}: unknown generator `{name}`")]
    UnknownGenerator { name: String, line: usize, col: usize },
    #[error("{line}:{col}: unknown name `{name}`")]
    UnknownName { name: String, line: usize, col: usize },
    #[error("{line}:{col}: duplicate name `{name}`")]
    DuplicateName { name: String, line: usize, col: usize },
    #[error("missing R-block for ({alpha}, {beta})")]
    MissingBlock { alpha: String, beta: String },
    #[error("missing representation data for `{0}`")]
    MissingRep(String),
    #[error("axiom {axiom} violated: {witness}")]
    AxiomViolation { axiom: String, witness: String },
    #[error("forbidden parameter: {0}")]
    ForbiddenParameter(String),
    #[error("operation needs a Lorentz-backed datum, not abstract Λ data")]
    AbstractLambdaMode,
    #[error("structure condition violated: {0}")]
    StructureViolation(String),
    #[error("unsupported sample point: {0}")]
    UnsupportedSample(String),
    #[error("unknown input `{0}`")]
    UnknownInput(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
