use thiserror::Error;

use crate::report::Report;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element mask {mask:#x} does not fit an algebra with {atoms} atoms")]
    WidthMismatch { mask: u64, atoms: usize },

    #[error("{what} exceeds the cap ({got} > {limit})")]
    CapExceeded {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("duplicate name `{0}`")]
    DuplicateName(String),

    #[error("malformed structure: {0}")]
    Malformed(String),

    #[error("map is not perfect: {0} fails")]
    NotPerfect(&'static str),

    #[error("subspace is not dense in the ambient space")]
    NotDense,

    #[error("{what} fails its axioms: {report}")]
    AxiomsFailed { what: &'static str, report: Report },

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("integrity failure: {0}")]
    Integrity(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
}
