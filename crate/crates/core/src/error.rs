use thiserror::Error;

/// Errors raised by poset, complex and recognizer operations.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[non_exhaustive]
pub enum Error {
    #[error("face {id} is not a member of this poset (size {size})")]
    UnknownFace { id: usize, size: usize },

    #[error("covering relation contains a cycle through face {0}")]
    Cyclic(usize),

    #[error("face sets overlap or do not cover the ground set: {0}")]
    NotAPartition(String),

    #[error("poset too large for isomorphism search: {size} faces exceeds bound {bound}")]
    TooLarge { size: usize, bound: usize },

    #[error("border is undefined on the empty order")]
    EmptyBorder,

    #[error("empty facet at position {0}")]
    EmptyFacet(usize),

    #[error("simplex {0} is not a member of the complex")]
    UnknownSimplex(String),

    #[error("input is not pure: {0}")]
    NotPure(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parameter out of bounds: {0}")]
    Parameter(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("fast and recursive classification disagree on {instance}: {detail}")]
    Disagreement { instance: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
