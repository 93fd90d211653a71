use std::fmt;

/// Position and expectation of a parse failure (1-based line and column).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: expected ", self.line, self.column)?;
        match self.expected.as_slice() {
            [] => f.write_str("end of input")?,
            [one] => f.write_str(one)?,
            many => write!(f, "one of {}", many.join(", "))?,
        }
        write!(f, ", found {}", self.found)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("syntax error at {0}")]
    Syntax(SyntaxError),
    #[error("malformed knowledge base: {0}")]
    Malformed(String),
    #[error("malformed PDLP: {0}")]
    MalformedPdlp(String),
    #[error("unknown distinguished concept {0}")]
    UnknownConcept(String),
    #[error("unknown individual {0}")]
    UnknownIndividual(String),
    #[error("cap exceeded: {what} exceeds the limit of {limit}")]
    CapExceeded { what: String, limit: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
