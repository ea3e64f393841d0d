use std::collections::BTreeMap;
use std::fmt;

use crate::automaton::{MultiTapeAutomaton, END};
use crate::error::{Error, Result};

/// One finite word per tape.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NWord {
    words: BTreeMap<String, String>,
}

impl NWord {
    pub fn new<K: Into<String>, V: Into<String>, I: IntoIterator<Item = (K, V)>>(pairs: I) -> Self {
        NWord {
            words: pairs
                .into_iter()
                .map(|(k, v)| (k.into(), v.into()))
                .collect(),
        }
    }

    /// The all-empty word over `tapes`.
    pub fn empty<S: AsRef<str>>(tapes: &[S]) -> Self {
        NWord::new(
            tapes
                .iter()
                .map(|t| (t.as_ref().to_string(), String::new())),
        )
    }

    pub fn get(&self, tape: &str) -> Option<&str> {
        self.words.get(tape).map(String::as_str)
    }

    pub fn set(&mut self, tape: impl Into<String>, word: impl Into<String>) {
        self.words.insert(tape.into(), word.into());
    }

    pub fn tapes(&self) -> impl Iterator<Item = &str> + '_ {
        self.words.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.words.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Restriction to a subset of tapes; missing tapes are omitted.
    pub fn project<S: AsRef<str>>(&self, tapes: &[S]) -> NWord {
        NWord::new(tapes.iter().filter_map(|t| {
            self.words
                .get(t.as_ref())
                .map(|w| (t.as_ref().to_string(), w.clone()))
        }))
    }

    /// Per-tape words in the automaton's tape order, after checking the
    /// domain and the absence of end markers.
    pub(crate) fn aligned(&self, a: &MultiTapeAutomaton) -> Result<Vec<Vec<char>>> {
        if self.words.len() != a.tapes().len()
            || a.tapes().iter().any(|t| !self.words.contains_key(t))
        {
            return Err(Error::WordMismatch(format!(
                "word tapes {:?} vs automaton tapes {:?}",
                self.words.keys().collect::<Vec<_>>(),
                a.tapes()
            )));
        }
        a.tapes()
            .iter()
            .map(|t| {
                let w = &self.words[t];
                if let Some(c) = w.chars().find(|&c| c == END || !a.alphabet().contains(c)) {
                    return Err(Error::WordMismatch(format!(
                        "tape {t}: symbol {c:?} not allowed"
                    )));
                }
                Ok(w.chars().collect())
            })
            .collect()
    }
}

impl fmt::Display for NWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (t, w) in &self.words {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if w.is_empty() {
                write!(f, "{t}=_")?;
            } else {
                write!(f, "{t}={w}")?;
            }
        }
        Ok(())
    }
}
