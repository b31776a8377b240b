use thiserror::Error;

/// Which explosion guard tripped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Guard {
    /// Too many reachable powerset states.
    ReachableStates { limit: usize },
    /// Too many covers enumerated for a single `(W, σ)`.
    Covers { candidates: usize, limit: usize },
    /// Too many initial choice functions.
    InitialChoices { limit: usize },
}

impl std::fmt::Display for Guard {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Guard::ReachableStates { limit } => {
                write!(f, "more than {limit} reachable supervisor states")
            }
            Guard::Covers { candidates, limit } => write!(
                f,
                "more than {limit} covers over {candidates} candidate pairs"
            ),
            Guard::InitialChoices { limit } => {
                write!(f, "more than {limit} initial choice functions")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown event `{0}`")]
    UnknownEvent(String),
    #[error("event `{0}` declared twice")]
    DuplicateEvent(String),
    #[error("state `{0}` declared twice")]
    DuplicateState(String),
    #[error("automaton has no initial state")]
    EmptyInitial,
    #[error("alphabets differ: {0}")]
    AlphabetMismatch(String),
    #[error("relation shape mismatch: {0}")]
    RelationShape(String),
    #[error("invalid identifier `{ident}`: {reason}")]
    InvalidIdentifier { ident: String, reason: &'static str },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("state `{state}` does not denote a set of plant/spec pairs: {reason}")]
    Payload { state: String, reason: String },
    #[error(
        "plant is not Σ_uc-simulated by the specification: initial plant state `{0}` \
         has no initial spec partner in the greatest Σ_uc fixpoint"
    )]
    NotUcSimulated(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no instance satisfying the precondition within {0} draws")]
    RejectionLimit(usize),
    #[error("explosion guard tripped: {guard}{}", at.as_ref().map(|s| format!(" at {s}")).unwrap_or_default())]
    Guard { guard: Guard, at: Option<String> },
}

impl Error {
    /// True for errors caused by malformed or inconsistent input.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::NotUcSimulated(_) | Error::Guard { .. } | Error::RejectionLimit(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
