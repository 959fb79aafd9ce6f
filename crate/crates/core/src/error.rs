use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group spec syntax error: {0}")]
    Syntax(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid element for {group}: {detail}")]
    InvalidElement { group: String, detail: String },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("tuple does not generate the group")]
    NotGenerating,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("exploration cap of {cap} vertices exceeded")]
    CapExceeded { cap: usize },
    #[error("vertex set touches incomplete vertices; boundary not fully known")]
    IncompleteRegion,
    #[error("graph has {vertices} vertices, above the exhaustive limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
