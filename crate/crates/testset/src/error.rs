use thiserror::Error;

/// Errors shared by the instance model, solvers, generators and analysis code.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The instance cannot be solved: some intra-group pair is not
    /// differentiated even by the full test collection.
    #[error("infeasible instance: items {i} and {j} (group {group}) are not differentiated by any test")]
    Infeasible { group: usize, i: usize, j: usize },

    /// Set cover counterpart of `Infeasible`.
    #[error("infeasible set cover: element {0} is not covered by any subset")]
    Uncoverable(usize),

    #[error("size limit exceeded: {0}")]
    TooLarge(String),

    /// A precondition stated by an operation's contract does not hold.
    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// Process exit code associated with this error kind.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidArgument(_) | Error::ContractViolation(_) => 2,
            Error::Infeasible { .. } | Error::Uncoverable(_) => 3,
            Error::TooLarge(_) => 4,
            Error::Io(_) => 5,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
