use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid transformation: {0}")]
    InvalidTransformation(String),

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("letter {0:?} is not in the alphabet")]
    UnknownLetter(char),

    #[error("the empty word induces no semigroup element")]
    EmptyWord,

    #[error("alphabets differ: {left:?} vs {right:?}")]
    AlphabetMismatch { left: Vec<char>, right: Vec<char> },

    #[error("invalid dialect: {0}")]
    InvalidDialect(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("budget exceeded: {what} would exceed the limit of {limit}")]
    BudgetExceeded { what: &'static str, limit: usize },

    #[error("basis {0:?} does not define an atom (empty atomic intersection)")]
    NotAnAtom(Vec<usize>),

    #[error("basis {0:?} cannot be an atom basis of a suffix-free language")]
    NotAtomBasis(Vec<usize>),

    #[error("automaton is not minimal ({states} states, {minimal} after minimization)")]
    NotMinimal { states: usize, minimal: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
