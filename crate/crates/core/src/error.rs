use thiserror::Error;

use crate::complex::CellId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown cell {0}")]
    UnknownCell(CellId),
    #[error("unknown cell label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("cell {0} is a vertex")]
    VertexCell(CellId),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid attachment: {0}")]
    Attachment(String),
    #[error("invalid sphere model: {0}")]
    Sphere(String),
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error("invalid split: {0}")]
    Split(String),
    #[error("cannot erase: {0}")]
    Erase(String),
    #[error("not simplicial: {0}")]
    NotSimplicial(String),
    #[error("step {step}: {source}")]
    Step {
        step: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
