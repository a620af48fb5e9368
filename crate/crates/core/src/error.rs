use thiserror::Error;

use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("operation is undefined on the empty word")]
    EmptyWord,

    #[error("word {0} is not a Lyndon word")]
    NotLyndon(Word),

    #[error("word {0} is a letter and has no standard factorization")]
    IsLetter(Word),

    #[error("Lyndon word {0} does not have weakly increasing letters")]
    NotIncreasing(Word),

    #[error("sequence {0} is not a standard sequence of Lyndon words")]
    NotStandard(String),

    #[error("index {index} is not a {kind} of sequence {sequence}")]
    BadIndex {
        kind: &'static str,
        index: usize,
        sequence: String,
    },

    #[error("expected constant term 1, found {0}")]
    NonUnitConstant(String),

    #[error("expected a proper polynomial, found constant term {0}")]
    NotProper(String),

    #[error("basis matrix at weight {weight} is not unit {shape}-triangular (row {row})")]
    Triangularity {
        weight: usize,
        shape: &'static str,
        row: Word,
    },

    #[error("sigma mismatch at {word}: oracle = {oracle}, recursive = {recursive}")]
    SigmaMismatch {
        word: Word,
        oracle: String,
        recursive: String,
    },
}
