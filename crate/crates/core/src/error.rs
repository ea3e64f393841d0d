use thiserror::Error;

use crate::automaton::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("unknown state {0}")]
    UnknownState(u32),

    #[error("duplicate state {0}")]
    DuplicateState(u32),

    #[error("unknown tape `{0}`")]
    UnknownTape(String),

    #[error("duplicate tape `{0}`")]
    DuplicateTape(String),

    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(char),

    #[error("automaton violates {} invariant(s): {}", .0.len(), summarize(.0))]
    InvalidAutomaton(Vec<Violation>),

    #[error("alphabet mismatch between operands")]
    AlphabetMismatch,

    #[error("tape-set mismatch: {left:?} vs {right:?}")]
    TapeMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },

    #[error("operation requires a deterministic automaton")]
    NotDeterministic,

    #[error("tape renaming is not a bijection on the automaton's tapes: {0}")]
    BadRenaming(String),

    #[error("n-word does not match the automaton's tapes: {0}")]
    WordMismatch(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unbound predicate `{0}`")]
    UnboundPredicate(String),

    #[error("predicate `{name}` expects {expected} argument(s), got {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },

    #[error("variable `{var}` used with sorts {first} and {second}")]
    SortConflict {
        var: String,
        first: String,
        second: String,
    },
}

fn summarize(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
