use std::fmt;
use std::str::FromStr;

use crate::automaton::Alphabet;
use crate::domain::TapeDomain;
use crate::error::Error;

/// The kind of value a formula variable ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    /// Unary natural numbers, `a*`.
    Nat,
    /// Sequences of `{a, b}` words, each element terminated by `#`.
    Seq,
    /// Plain words over `{a, b}`.
    Word,
    /// Any word over the alphabet.
    Any,
}

impl Sort {
    pub fn domain(self, alphabet: &Alphabet) -> TapeDomain {
        match self {
            Sort::Nat => TapeDomain::new(vec![true], &[(0, 'a', 0)]),
            Sort::Word => TapeDomain::new(vec![true], &[(0, 'a', 0), (0, 'b', 0)]),
            Sort::Seq => TapeDomain::new(
                vec![true, false],
                &[
                    (0, 'a', 1),
                    (0, 'b', 1),
                    (0, '#', 0),
                    (1, 'a', 1),
                    (1, 'b', 1),
                    (1, '#', 0),
                ],
            ),
            Sort::Any => TapeDomain::any(alphabet),
        }
    }

    pub fn decode(self, word: &str) -> Option<Value> {
        let letters = |w: &str| w.chars().all(|c| c == 'a' || c == 'b');
        match self {
            Sort::Nat => word
                .chars()
                .all(|c| c == 'a')
                .then_some(Value::Nat(word.len())),
            Sort::Word => letters(word).then(|| Value::Word(word.to_string())),
            Sort::Seq if word.is_empty() => Some(Value::Seq(Vec::new())),
            Sort::Seq => {
                let body = word.strip_suffix('#')?;
                let elems: Vec<String> = body.split('#').map(str::to_string).collect();
                elems
                    .iter()
                    .all(|e| letters(e))
                    .then_some(Value::Seq(elems))
            }
            Sort::Any => Some(Value::Word(word.to_string())),
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Sort::Nat => "nat",
            Sort::Seq => "seq",
            Sort::Word => "word",
            Sort::Any => "any",
        };
        write!(f, "{s}")
    }
}

impl FromStr for Sort {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "nat" => Ok(Sort::Nat),
            "seq" => Ok(Sort::Seq),
            "word" => Ok(Sort::Word),
            "any" => Ok(Sort::Any),
            other => Err(Error::Parse {
                line: 0,
                message: format!("unknown sort `{other}`"),
            }),
        }
    }
}

/// A decoded value of the sequence theory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Nat(usize),
    Seq(Vec<String>),
    Word(String),
}

impl Value {
    pub fn encode(&self) -> String {
        match self {
            Value::Nat(n) => "a".repeat(*n),
            Value::Seq(elems) => elems.iter().map(|e| format!("{e}#")).collect(),
            Value::Word(w) => w.clone(),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Nat(n) => write!(f, "{n}"),
            Value::Seq(elems) => {
                let shown: Vec<&str> = elems
                    .iter()
                    .map(|e| if e.is_empty() { "ε" } else { e.as_str() })
                    .collect();
                write!(f, "[{}]", shown.join(", "))
            }
            Value::Word(w) if w.is_empty() => write!(f, "ε"),
            Value::Word(w) => write!(f, "{w}"),
        }
    }
}
