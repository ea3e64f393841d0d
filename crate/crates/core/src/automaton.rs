//! The multi-tape automaton data model.
//!
//! An automaton has a finite input alphabet, an ordered list of named tapes,
//! and a finite set of states. Every non-final state reads one tape; a
//! transition consumes exactly one symbol from that tape, either an alphabet
//! symbol or the end marker [`END`]. Final states are sinks.
//!
//! Values are immutable once built. Iteration over states and transitions is
//! always in id order, which keeps every derived construction reproducible.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::ops::Bound;

use crate::error::{Error, Result};

/// The right-end marker present at the end of every tape.
pub const END: char = '$';

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(symbols: I) -> Result<Self> {
        let set: BTreeSet<char> = symbols.into_iter().collect();
        if set.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        for &c in &set {
            if c == END {
                return Err(Error::InvalidAlphabet(format!(
                    "the end marker `{END}` cannot be an alphabet symbol"
                )));
            }
            if c.is_whitespace() || c == '_' || c == '=' {
                return Err(Error::InvalidAlphabet(format!("reserved symbol {c:?}")));
            }
        }
        Ok(Alphabet {
            symbols: set.into_iter().collect(),
        })
    }

    pub fn from_str_symbols(s: &str) -> Result<Self> {
        Self::new(s.chars())
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn contains(&self, c: char) -> bool {
        self.symbols.binary_search(&c).is_ok()
    }

    /// Σ ∪ {$} in sorted order.
    pub fn extended(&self) -> Vec<char> {
        let mut out = self.symbols.clone();
        out.push(END);
        out.sort_unstable();
        out
    }

    pub fn union(&self, other: &Alphabet) -> Alphabet {
        Alphabet::new(self.symbols.iter().chain(other.symbols.iter()).copied())
            .expect("union of valid alphabets is valid")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.symbols.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(pub u32);

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StateInfo {
    /// Index into the automaton's tape list; `None` only for final states.
    pub tape: Option<usize>,
    pub initial: bool,
    pub accepting: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub source: StateId,
    pub symbol: char,
    pub target: StateId,
}

impl Transition {
    pub fn new(source: StateId, symbol: char, target: StateId) -> Self {
        Transition {
            source,
            symbol,
            target,
        }
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.source, self.symbol, self.target)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiTapeAutomaton {
    name: String,
    alphabet: Alphabet,
    tapes: Vec<String>,
    states: BTreeMap<StateId, StateInfo>,
    transitions: BTreeSet<Transition>,
}

impl MultiTapeAutomaton {
    /// Assembles an automaton from already-checked parts.
    pub(crate) fn from_parts(
        name: impl Into<String>,
        alphabet: Alphabet,
        tapes: Vec<String>,
        states: BTreeMap<StateId, StateInfo>,
        transitions: BTreeSet<Transition>,
    ) -> Self {
        debug_assert!(transitions
            .iter()
            .all(|t| states.contains_key(&t.source) && states.contains_key(&t.target)));
        MultiTapeAutomaton {
            name: name.into(),
            alphabet,
            tapes,
            states,
            transitions,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn tapes(&self) -> &[String] {
        &self.tapes
    }

    pub fn tape_index(&self, tape: &str) -> Option<usize> {
        self.tapes.iter().position(|t| t == tape)
    }

    pub fn tape_set(&self) -> BTreeSet<&str> {
        self.tapes.iter().map(String::as_str).collect()
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.len()
    }

    pub fn states(&self) -> impl Iterator<Item = (StateId, &StateInfo)> + '_ {
        self.states.iter().map(|(&id, info)| (id, info))
    }

    pub fn state_ids(&self) -> impl Iterator<Item = StateId> + '_ {
        self.states.keys().copied()
    }

    pub fn state(&self, id: StateId) -> Option<&StateInfo> {
        self.states.get(&id)
    }

    pub fn contains_state(&self, id: StateId) -> bool {
        self.states.contains_key(&id)
    }

    pub fn tape_of(&self, id: StateId) -> Option<usize> {
        self.states.get(&id).and_then(|s| s.tape)
    }

    pub fn tape_name_of(&self, id: StateId) -> Option<&str> {
        self.tape_of(id).map(|i| self.tapes[i].as_str())
    }

    pub fn is_initial(&self, id: StateId) -> bool {
        self.states.get(&id).is_some_and(|s| s.initial)
    }

    pub fn is_final(&self, id: StateId) -> bool {
        self.states.get(&id).is_some_and(|s| s.accepting)
    }

    pub fn initial_states(&self) -> Vec<StateId> {
        self.states
            .iter()
            .filter(|(_, s)| s.initial)
            .map(|(&id, _)| id)
            .collect()
    }

    pub fn final_states(&self) -> Vec<StateId> {
        self.states
            .iter()
            .filter(|(_, s)| s.accepting)
            .map(|(&id, _)| id)
            .collect()
    }

    pub fn transitions(&self) -> impl Iterator<Item = &Transition> + '_ {
        self.transitions.iter()
    }

    pub fn has_transition(&self, t: &Transition) -> bool {
        self.transitions.contains(t)
    }

    /// Outgoing transitions of `q`, ordered by symbol then target.
    pub fn successors(&self, q: StateId) -> impl Iterator<Item = &Transition> + '_ {
        let lo = Transition::new(q, '\0', StateId(0));
        self.transitions
            .range((Bound::Included(lo), Bound::Unbounded))
            .take_while(move |t| t.source == q)
    }

    /// Targets of `q` on `symbol`, in increasing id order.
    pub fn successors_on(&self, q: StateId, symbol: char) -> impl Iterator<Item = StateId> + '_ {
        let lo = Transition::new(q, symbol, StateId(0));
        self.transitions
            .range((Bound::Included(lo), Bound::Unbounded))
            .take_while(move |t| t.source == q && t.symbol == symbol)
            .map(|t| t.target)
    }

    pub fn max_state_id(&self) -> Option<StateId> {
        self.states.keys().next_back().copied()
    }

    /// Every invariant violation, in a deterministic order. Empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for t in &self.transitions {
            if self.is_final(t.source) {
                out.push(Violation::TransitionFromFinal(*t));
            }
        }
        for (&id, info) in &self.states {
            if !info.accepting && info.tape.is_none() {
                out.push(Violation::MissingTape(id));
            }
        }
        out.extend(self.read_past_end_violations());
        out
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidAutomaton(v))
        }
    }

    /// A state that still reads tape `t` after some path already consumed the
    /// end marker of `t`. Dead states with no outgoing transitions never read,
    /// so they are not reported.
    fn read_past_end_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (ti, tape) in self.tapes.iter().enumerate() {
            let mut seen: BTreeSet<StateId> = BTreeSet::new();
            let mut queue: VecDeque<StateId> = VecDeque::new();
            for t in &self.transitions {
                if t.symbol == END && self.tape_of(t.source) == Some(ti) && seen.insert(t.target) {
                    queue.push_back(t.target);
                }
            }
            while let Some(q) = queue.pop_front() {
                for t in self.successors(q) {
                    if seen.insert(t.target) {
                        queue.push_back(t.target);
                    }
                }
            }
            for q in seen {
                if self.tape_of(q) == Some(ti) && self.successors(q).next().is_some() {
                    out.push(Violation::ReadPastEnd {
                        tape: tape.clone(),
                        state: q,
                    });
                }
            }
        }
        out
    }

    pub fn is_deterministic(&self) -> bool {
        if self.states.values().filter(|s| s.initial).count() > 1 {
            return false;
        }
        let mut prev: Option<(StateId, char)> = None;
        for t in &self.transitions {
            let key = (t.source, t.symbol);
            if prev == Some(key) {
                return false;
            }
            prev = Some(key);
        }
        true
    }
}

/// A broken invariant of [`MultiTapeAutomaton`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    TransitionFromFinal(Transition),
    MissingTape(StateId),
    ReadPastEnd { tape: String, state: StateId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TransitionFromFinal(t) => {
                write!(f, "final state {} has outgoing transition {t}", t.source)
            }
            Violation::MissingTape(q) => write!(f, "non-final state {q} has no tape"),
            Violation::ReadPastEnd { tape, state } => write!(
                f,
                "state {state} reads tape {tape} after its end marker may have been read"
            ),
        }
    }
}

/// Incremental construction with referential checks. Semantic invariants
/// are left to [`MultiTapeAutomaton::validate`].
#[derive(Clone, Debug)]
pub struct AutomatonBuilder {
    name: String,
    alphabet: Alphabet,
    tapes: Vec<String>,
    states: BTreeMap<StateId, StateInfo>,
    transitions: BTreeSet<Transition>,
}

impl AutomatonBuilder {
    pub fn new<S: AsRef<str>>(
        name: impl Into<String>,
        alphabet: Alphabet,
        tapes: &[S],
    ) -> Result<Self> {
        let mut names: Vec<String> = Vec::with_capacity(tapes.len());
        for t in tapes {
            let t = t.as_ref();
            if t.is_empty() || t.chars().any(|c| c.is_whitespace() || "=,()".contains(c)) {
                return Err(Error::UnknownTape(t.to_string()));
            }
            if names.iter().any(|n| n == t) {
                return Err(Error::DuplicateTape(t.to_string()));
            }
            names.push(t.to_string());
        }
        Ok(AutomatonBuilder {
            name: name.into(),
            alphabet,
            tapes: names,
            states: BTreeMap::new(),
            transitions: BTreeSet::new(),
        })
    }

    pub fn add_state(&mut self, id: u32, tape: Option<&str>) -> Result<&mut Self> {
        let sid = StateId(id);
        if self.states.contains_key(&sid) {
            return Err(Error::DuplicateState(id));
        }
        let tape = match tape {
            Some(name) => Some(
                self.tapes
                    .iter()
                    .position(|t| t == name)
                    .ok_or_else(|| Error::UnknownTape(name.to_string()))?,
            ),
            None => None,
        };
        self.states.insert(
            sid,
            StateInfo {
                tape,
                initial: false,
                accepting: false,
            },
        );
        Ok(self)
    }

    pub fn set_initial(&mut self, id: u32) -> Result<&mut Self> {
        self.states
            .get_mut(&StateId(id))
            .ok_or(Error::UnknownState(id))?
            .initial = true;
        Ok(self)
    }

    pub fn set_final(&mut self, id: u32) -> Result<&mut Self> {
        self.states
            .get_mut(&StateId(id))
            .ok_or(Error::UnknownState(id))?
            .accepting = true;
        Ok(self)
    }

    pub fn add_transition(&mut self, source: u32, symbol: char, target: u32) -> Result<&mut Self> {
        for id in [source, target] {
            if !self.states.contains_key(&StateId(id)) {
                return Err(Error::UnknownState(id));
            }
        }
        if symbol != END && !self.alphabet.contains(symbol) {
            return Err(Error::UnknownSymbol(symbol));
        }
        self.transitions
            .insert(Transition::new(StateId(source), symbol, StateId(target)));
        Ok(self)
    }

    pub fn has_state(&self, id: u32) -> bool {
        self.states.contains_key(&StateId(id))
    }

    pub fn build(self) -> MultiTapeAutomaton {
        MultiTapeAutomaton::from_parts(
            self.name,
            self.alphabet,
            self.tapes,
            self.states,
            self.transitions,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{aut_cat, aut_eq};

    fn two_state(tape2: &str) -> MultiTapeAutomaton {
        let mut b =
            AutomatonBuilder::new("t", Alphabet::new("a".chars()).unwrap(), &["X", "Y"]).unwrap();
        b.add_state(1, Some("X")).unwrap().set_initial(1).unwrap();
        b.add_state(2, Some(tape2)).unwrap();
        b.add_transition(1, END, 2).unwrap();
        b.add_transition(2, 'a', 2).unwrap();
        b.build()
    }

    #[test]
    fn alphabet_rejects_end_marker() {
        assert!(Alphabet::new("a$".chars()).is_err());
        assert!(Alphabet::new("".chars()).is_err());
        assert_eq!(Alphabet::new("ba".chars()).unwrap().symbols(), &['a', 'b']);
    }

    #[test]
    fn builders_are_valid() {
        assert_eq!(aut_eq().validate(), vec![]);
        assert_eq!(aut_cat().validate(), vec![]);
    }

    #[test]
    fn transition_out_of_final_is_reported() {
        let mut b =
            AutomatonBuilder::new("t", Alphabet::new("a".chars()).unwrap(), &["X"]).unwrap();
        b.add_state(1, Some("X")).unwrap().set_initial(1).unwrap();
        b.add_state(2, None).unwrap().set_final(2).unwrap();
        b.add_transition(1, END, 2).unwrap();
        b.add_transition(2, 'a', 2).unwrap();
        let v = b.build().validate();
        assert_eq!(
            v,
            vec![Violation::TransitionFromFinal(Transition::new(
                StateId(2),
                'a',
                StateId(2)
            ))]
        );
    }

    #[test]
    fn reading_past_end_is_reported() {
        let v = two_state("X").validate();
        assert_eq!(
            v,
            vec![Violation::ReadPastEnd {
                tape: "X".into(),
                state: StateId(2)
            }]
        );
        assert!(two_state("Y").validate().is_empty());
    }

    #[test]
    fn missing_tape_is_reported() {
        let mut b =
            AutomatonBuilder::new("t", Alphabet::new("a".chars()).unwrap(), &["X"]).unwrap();
        b.add_state(1, None).unwrap().set_initial(1).unwrap();
        assert_eq!(
            b.build().validate(),
            vec![Violation::MissingTape(StateId(1))]
        );
    }

    #[test]
    fn builder_rejects_dangling_references() {
        let mut b =
            AutomatonBuilder::new("t", Alphabet::new("a".chars()).unwrap(), &["X"]).unwrap();
        b.add_state(1, Some("X")).unwrap();
        assert_eq!(
            b.add_transition(1, 'a', 9).unwrap_err(),
            Error::UnknownState(9)
        );
        assert_eq!(
            b.add_transition(1, 'z', 1).unwrap_err(),
            Error::UnknownSymbol('z')
        );
        assert!(b.add_state(2, Some("Q")).is_err());
        assert!(
            AutomatonBuilder::new("t", Alphabet::new("a".chars()).unwrap(), &["X", "X"]).is_err()
        );
    }

    #[test]
    fn determinism() {
        assert!(aut_eq().is_deterministic());
        assert!(aut_cat().is_deterministic());
        let mut b =
            AutomatonBuilder::new("t", Alphabet::new("a".chars()).unwrap(), &["X"]).unwrap();
        b.add_state(1, Some("X")).unwrap().set_initial(1).unwrap();
        b.add_state(2, Some("X")).unwrap();
        b.add_transition(1, 'a', 1).unwrap();
        b.add_transition(1, 'a', 2).unwrap();
        assert!(!b.build().is_deterministic());
    }

    #[test]
    fn successors_are_ordered() {
        let a = aut_eq();
        let succ: Vec<_> = a
            .successors(StateId(1))
            .map(|t| (t.symbol, t.target.0))
            .collect();
        assert_eq!(succ, vec![('$', 4), ('a', 2), ('b', 3)]);
        assert_eq!(
            a.successors_on(StateId(1), 'a').collect::<Vec<_>>(),
            vec![StateId(2)]
        );
        assert_eq!(a.successors(StateId(5)).count(), 0);
    }
}
