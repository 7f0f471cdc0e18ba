use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("size cap exceeded: {what} is {size}, cap is {cap}")]
    SizeCap {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    #[error("degenerate code: the code is {{0}} and has no minimum distance")]
    DegenerateCode,

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("bounds not applicable: {0}")]
    Applicability(String),

    #[error("capacity value rejected: {0}")]
    Provenance(String),

    #[error("infeasible: {0}")]
    Feasibility(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("unknown constraint predicate `{0}`")]
    UnknownPredicate(String),

    #[error("{command}: {source}")]
    Context {
        command: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit status: 3 for caps and infeasible ranges, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Context { source, .. } => source.exit_code(),
            Error::SizeCap { .. } | Error::Feasibility(_) => 3,
            _ => 2,
        }
    }

    pub fn context(self, command: impl Into<String>) -> Self {
        Error::Context {
            command: command.into(),
            source: Box::new(self),
        }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
