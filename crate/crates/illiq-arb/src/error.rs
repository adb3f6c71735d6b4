use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument fell outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A scenario tree failed structural validation.
    #[error("invalid tree: {0}")]
    Tree(String),
    /// A strategy is inconsistent with its tree or market kind.
    #[error("invalid strategy: {0}")]
    Strategy(String),
    /// An operation's precondition did not hold for the given inputs.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// Configuration parse or semantic error.
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
