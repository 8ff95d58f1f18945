use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error in `{input}` at byte {position}: {message}")]
    Parse { input: String, position: usize, message: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("confluence certificate failed for {presentation}: {pair}")]
    NotConfluent { presentation: String, pair: String },
    #[error("search exceeded its budget of {0} states")]
    Budget(usize),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
