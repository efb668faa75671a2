//! Error types shared across the crate.

use thiserror::Error;

/// Lexing failures. Offsets are byte positions into the source snippet.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexError {
    #[error("unterminated string literal starting at byte {offset}")]
    UnterminatedString { offset: usize },
    #[error("unterminated character literal starting at byte {offset}")]
    UnterminatedChar { offset: usize },
    #[error("unrecognized character {found:?} at byte {offset}")]
    UnrecognizedChar { found: char, offset: usize },
}

/// Structural-scanning failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScanError {
    #[error("unbalanced delimiter {delimiter:?} at byte {offset}")]
    UnbalancedDelimiters { delimiter: char, offset: usize },
}

/// Invalid simplification settings, rejected before any work happens.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("ratio must be within [0, 1], got {0}")]
    RatioOutOfRange(f64),
    #[error("input length budget must be at least 1")]
    ZeroInputLength,
    #[error("{0}")]
    InvalidFlagCombination(String),
}

/// Failures while simplifying a single snippet.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimplifyError {
    #[error("cannot compute a simplified ratio for an empty snippet")]
    EmptySnippet,
    #[error("dependence-aware removal requires a semantic verdict for the snippet")]
    MissingVerdict,
    #[error(transparent)]
    Config(#[from] ConfigError),
}

/// Failures while reading or writing JSONL corpora.
#[derive(Debug, Error)]
pub enum CorpusError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(
        "{path}: {malformed} of the first {seen} lines are not valid records; refusing to continue"
    )]
    Format {
        path: String,
        malformed: usize,
        seen: usize,
    },
    #[error("{path}, record {record}: {message}")]
    Record {
        path: String,
        record: String,
        message: String,
    },
}
