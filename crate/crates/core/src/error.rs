use thiserror::Error;

use crate::complex::ValidationReport;
use crate::graph::GraphViolation;

/// Domain errors. Each variant maps to a stable `E_*` code through [`Error::code`].
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid graph: {}", join(.0))]
    InvalidGraph(Vec<GraphViolation>),
    #[error("edge set {0} is not a perfect matching")]
    NotMatching(String),
    #[error("weight vector is not in the solution polytope: {0}")]
    NotInPolytope(String),
    #[error("edge path does not close a loop: {0}")]
    NotALoop(String),
    #[error("the graph has no perfect matching, so its solution polytope is empty")]
    EmptyPolytope,
    #[error("cannot divide by u^{0}: exponent exceeds the valuation")]
    Division(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(ValidationReport),
    #[error("Maslov drop violated on arrow {0}")]
    MaslovDrop(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("bad stabilization slot: {0}")]
    BadSlot(String),
    #[error("value out of range: {0}")]
    Range(String),
    #[error("differential is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("free rank {found} differs from the expected {expected}")]
    Rank { expected: usize, found: usize },
    #[error("point lies on the boundary of its line: {0}")]
    Boundary(String),
    #[error("piecewise-linear reconstruction could not be certified: {0}")]
    Uncertified(String),
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("io error: {0}")]
    Io(String),
}

fn join(v: &[GraphViolation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "E_PARSE",
            Error::InvalidGraph(v) => v.first().map(|x| x.code()).unwrap_or("E_INDEX"),
            Error::NotMatching(_) => "E_NOT_MATCHING",
            Error::NotInPolytope(_) => "E_NOT_IN_POLYTOPE",
            Error::NotALoop(_) => "E_NOT_A_LOOP",
            Error::EmptyPolytope => "E_EMPTY_POLYTOPE",
            Error::Division(_) => "E_DIVISION",
            Error::InvalidComplex(r) => r.violations.first().map(|v| v.code()).unwrap_or("E_INVALID"),
            Error::MaslovDrop(_) => "E_MASLOV_DROP",
            Error::ShapeMismatch(_) => "E_SHAPE_MISMATCH",
            Error::BadSlot(_) => "E_BAD_SLOT",
            Error::Range(_) => "E_RANGE",
            Error::Inhomogeneous(_) => "E_INHOMOGENEOUS",
            Error::Rank { .. } => "E_RANK",
            Error::Boundary(_) => "E_BOUNDARY",
            Error::Uncertified(_) => "E_UNCERTIFIED",
            Error::TooLarge(_) => "E_TOO_LARGE",
            Error::Io(_) => "E_IO",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
