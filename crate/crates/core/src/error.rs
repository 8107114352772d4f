use thiserror::Error;

use crate::diagram::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field: {0}")]
    Field(String),

    #[error("group: {0}")]
    Group(String),

    #[error("quandle: {0}")]
    Quandle(String),

    #[error("family: {0}")]
    Family(String),

    #[error("representation: {0}")]
    Representation(String),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("invalid diagram: {}", join_violations(.0))]
    InvalidDiagram(Vec<Violation>),

    #[error("move does not apply: {0}")]
    MovePattern(String),

    #[error("search budget of {0} candidates exceeded")]
    Budget(u64),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("genus: {0}")]
    Genus(String),

    #[error("unknown descriptor `{0}`")]
    Descriptor(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, column, message: message.into() }
    }
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}
