use thiserror::Error;

/// Errors raised by the analyses in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, byte {byte}: {message}")]
    Parse {
        line: usize,
        byte: usize,
        message: String,
    },

    #[error("{what} limit exceeded: {actual} > {limit}")]
    Budget {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("not a polymorphism: tuples {from:?} ~ {to:?} map to non-adjacent {image_from} and {image_to}")]
    NotEdgePreserving {
        from: Vec<usize>,
        to: Vec<usize>,
        image_from: usize,
        image_to: usize,
    },

    #[error("map is not simplicial: face {face:?} maps to non-face {image:?}")]
    NotSimplicial { face: Vec<usize>, image: Vec<usize> },
}

impl Error {
    pub(crate) fn parse(line: usize, byte: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            byte,
            message: message.into(),
        }
    }

    pub(crate) fn budget(what: &'static str, limit: usize, actual: usize) -> Self {
        Error::Budget {
            what,
            limit,
            actual,
        }
    }

    /// True for errors caused by exhausting a configured size or time guard.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
