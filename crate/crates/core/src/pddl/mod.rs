//! PDDL-subset ingestion, grounding and demonstration traces.

mod ast;
mod ground;
pub mod sexpr;
mod trace;

use thiserror::Error;

pub use ast::{
    parse_domain, parse_problem, ActionSchema, AtomLiteral, LiftedDomain, Predicate, ProblemInstance,
    TypeDecl, TypedName, ROOT_TYPE, SUPPORTED_REQUIREMENTS,
};
pub use ground::{bind_problem, ground, write_ground_domain, GroundWarning, Grounded};
pub use trace::{read_trace, write_trace, GeneratorInfo, TraceFile, TraceHeader, TraceRecord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PddlError {
    #[error("syntax error at {line}:{col}: expected {expected}")]
    Syntax {
        line: usize,
        col: usize,
        expected: String,
    },
    #[error("unsupported PDDL feature `{0}`")]
    UnsupportedFeature(String),
    #[error("type error: {0}")]
    Type(String),
    #[error("trace does not match the model: {0}")]
    SchemaMismatch(String),
    #[error("malformed trace record {index}: {reason}")]
    MalformedRecord { index: usize, reason: String },
    #[error("i/o: {0}")]
    Io(String),
    #[error(transparent)]
    Model(#[from] crate::Error),
}

impl From<std::io::Error> for PddlError {
    fn from(e: std::io::Error) -> Self {
        PddlError::Io(e.to_string())
    }
}
