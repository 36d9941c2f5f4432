use thiserror::Error;

/// Errors produced while building worlds, reading files or running the engines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("unknown action `{0}`")]
    UnknownAction(String),

    #[error("duplicate state label `{0}`")]
    DuplicateState(String),

    #[error("duplicate action symbol `{0}`")]
    DuplicateAction(String),

    #[error("alphabet must contain the identity action `1`")]
    MissingIdentity,

    #[error("identity action must fix every state, but `1` maps {from} to {to}")]
    IdentityNotTrivial { from: String, to: String },

    #[error("determinism violation: ({from}, {action}) is listed more than once")]
    Determinism { from: String, action: String },

    #[error("world must have at least one state")]
    NoStates,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cannot parse action word `{0}`")]
    BadWord(String),

    #[error("transform dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("{path}: {message}")]
    Schema { path: String, message: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(
        "element cap of {cap} exceeded ({elements} elements found, {pending} candidates pending)"
    )]
    Capped {
        cap: usize,
        elements: usize,
        pending: usize,
    },

    #[error("closure violation: composite `{0}` is non-empty but belongs to no class")]
    ClosureViolation(String),

    #[error("`{word}` is undefined at {state}")]
    UndefinedAt { word: String, state: String },

    #[error("action structures are over different algebras: {0}")]
    MismatchedAlgebras(String),

    #[error("malformed action structure: {0}")]
    MalformedStructure(String),

    #[error("malformed decomposition: {0}")]
    MalformedDecomposition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
