use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported field order {0}: not a prime power")]
    NotPrimePower(u32),
    #[error("unsupported field order {0}: tables exist only for 2, 3, 4, 5, 7, 8, 9, 11, 13, 16")]
    UnsupportedOrder(u32),
    #[error("element {element} is outside a ground set of {size} elements")]
    OutOfRange { element: usize, size: usize },
    #[error("{what}: {size} elements exceeds the limit of {limit}")]
    TooLarge { what: &'static str, size: usize, limit: usize },
    #[error("contraction and deletion sets overlap in {0:?}")]
    Overlap(Vec<usize>),
    #[error("not a matroid: {0}")]
    NotMatroid(String),
    #[error("invalid modular cut: {0}")]
    InvalidCut(String),
    #[error("certificate invariant violated: {0}")]
    Certificate(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("search budget of {limit} nodes exhausted in {what}")]
    Budget { what: &'static str, limit: u64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}
