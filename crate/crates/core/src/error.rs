use thiserror::Error;

use crate::vspace::Component;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate fluent `{0}`")]
    DuplicateFluent(String),
    #[error("unknown fluent `{0}`")]
    UnknownFluent(String),
    #[error("duplicate action `{0}`")]
    DuplicateAction(String),
    #[error("unknown action `{0}`")]
    UnknownAction(String),
    #[error("not a consistent total state: {0}")]
    InvalidState(String),
    #[error("effect contains a conflicting literal pair: {0}")]
    ConflictingEffect(String),
    #[error("action `{action}` has a conflicting {part}: {set}")]
    ConflictingAction {
        action: String,
        part: &'static str,
        set: String,
    },
    #[error("universe of {fluents} fluents exceeds the enumeration bound {limit}")]
    UniverseTooLarge { fluents: usize, limit: usize },
    #[error("literal set or state does not belong to this universe")]
    UniverseMismatch,
    #[error("update rejected: {component} version space of `{action}` has collapsed")]
    UpdateAfterCollapse { action: String, component: Component },
    #[error("negative demonstration for `{action}` but its precondition lower boundary is empty")]
    NegativeWithEmptyLower { action: String },
    #[error("upper precondition boundary of `{action}` grew to {size} hypotheses (limit {limit})")]
    UpperBoundaryLimit {
        action: String,
        size: usize,
        limit: usize,
    },
    #[error("{component} version space of `{action}` has collapsed")]
    CollapsedSpace { action: String, component: Component },
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("demonstration {index}: {source}")]
    AtDemonstration {
        index: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("snapshot: {0}")]
    Snapshot(String),
}

impl Error {
    pub(crate) fn at(index: usize, source: Error) -> Self {
        Error::AtDemonstration {
            index,
            source: Box::new(source),
        }
    }

    /// The innermost error, unwrapping demonstration-index context.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtDemonstration { source, .. } => source.root(),
            other => other,
        }
    }
}
