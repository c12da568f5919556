use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structure(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("line {line}, column {column}: {message}")]
    File {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("degree mismatch: {0}")]
    Degree(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("not a 2-step algebra: generator `{0}` has a differential outside the closed generators")]
    NotTwoStep(String),
    #[error("unsupported splitting: {0}")]
    UnsupportedSplitting(String),
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error("weight error: {0}")]
    Weight(String),
    #[error("unknown corpus key `{0}`")]
    UnknownCorpus(String),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("invalid graph: {0}")]
    Graph(String),
}

impl Error {
    /// Errors caused by malformed input rather than by the mathematics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::UnknownGenerator(_)
                | Error::Syntax { .. }
                | Error::File { .. }
                | Error::UnknownCorpus(_)
                | Error::Parameter(_)
                | Error::Graph(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
