//! Restricting tapes to regular domains.
//!
//! [`restrict_domain`] runs a checker DFA alongside every tape and only
//! lets the end marker through when the checker accepts. Tapes an accepting
//! run left unread are read to the end by a finishing chain, so the result
//! always reads every tape completely. With no checkers at all this is a
//! language-preserving normalization, [`end_reading`].

use std::collections::{BTreeMap, BTreeSet};

use crate::automaton::{Alphabet, MultiTapeAutomaton, StateId, StateInfo, Transition, END};
use crate::error::{Error, Result};
use crate::explore::Explorer;

/// A deterministic finite automaton over an alphabet, checking one tape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TapeDomain {
    accepting: Vec<bool>,
    delta: Vec<BTreeMap<char, usize>>,
}

impl TapeDomain {
    /// State 0 is the start state.
    pub fn new(accepting: Vec<bool>, edges: &[(usize, char, usize)]) -> Self {
        let mut delta = vec![BTreeMap::new(); accepting.len()];
        for &(s, c, t) in edges {
            delta[s].insert(c, t);
        }
        TapeDomain { accepting, delta }
    }

    /// Σ*.
    pub fn any(alphabet: &Alphabet) -> Self {
        let edges: Vec<_> = alphabet.symbols().iter().map(|&c| (0, c, 0)).collect();
        TapeDomain::new(vec![true], &edges)
    }

    pub fn step(&self, state: usize, c: char) -> Option<usize> {
        self.delta[state].get(&c).copied()
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn contains(&self, word: &str) -> bool {
        let mut s = 0;
        for c in word.chars() {
            match self.step(s, c) {
                Some(t) => s = t,
                None => return false,
            }
        }
        self.is_accepting(s)
    }
}

/// `L(a)` restricted to n-words whose tape `t` lies in `domains[t]`; tapes
/// without an entry are unrestricted. The result reads every tape to its end
/// marker and is deterministic whenever `a` is.
pub fn restrict_domain(
    a: &MultiTapeAutomaton,
    domains: &BTreeMap<String, TapeDomain>,
) -> Result<MultiTapeAutomaton> {
    a.ensure_valid()?;
    if let Some(t) = domains.keys().find(|t| a.tape_index(t).is_none()) {
        return Err(Error::UnknownTape(t.clone()));
    }
    let any = TapeDomain::any(a.alphabet());
    let checkers: Vec<&TapeDomain> = a
        .tapes()
        .iter()
        .map(|t| domains.get(t).unwrap_or(&any))
        .collect();

    // `None` marks a tape whose end marker has been read.
    type Checks = Vec<Option<usize>>;
    #[derive(Clone, PartialEq, Eq, Hash)]
    enum Node {
        Core(StateId, Checks),
        Finish(Checks),
        Accept,
    }
    let finish = |v: Checks| -> Node {
        if v.iter().all(Option::is_none) {
            Node::Accept
        } else {
            Node::Finish(v)
        }
    };
    let normalize = |node: Node| -> Node {
        match node {
            Node::Core(q, v) if a.is_final(q) => finish(v),
            Node::Finish(v) => finish(v),
            other => other,
        }
    };

    let mut ex = Explorer::new();
    let start: Checks = vec![Some(0); a.tapes().len()];
    let initial: BTreeSet<StateId> = a
        .initial_states()
        .into_iter()
        .map(|q| ex.id(normalize(Node::Core(q, start.clone()))))
        .collect();
    let mut states = BTreeMap::new();
    let mut transitions = BTreeSet::new();

    let step = |v: &Checks, t: usize, c: char| -> Option<Checks> {
        let s = v[t]?;
        let mut w = v.clone();
        if c == END {
            if !checkers[t].is_accepting(s) {
                return None;
            }
            w[t] = None;
        } else {
            w[t] = Some(checkers[t].step(s, c)?);
        }
        Some(w)
    };

    while let Some((id, node)) = ex.next() {
        let mut info = StateInfo {
            tape: None,
            initial: initial.contains(&id),
            accepting: false,
        };
        match node {
            Node::Accept => info.accepting = true,
            Node::Core(q, v) => {
                let t = a.tape_of(q).expect("valid automaton");
                info.tape = Some(t);
                for tr in a.successors(q) {
                    if let Some(w) = step(&v, t, tr.symbol) {
                        let target = ex.id(normalize(Node::Core(tr.target, w)));
                        transitions.insert(Transition::new(id, tr.symbol, target));
                    }
                }
            }
            Node::Finish(v) => {
                let t = v.iter().position(Option::is_some).expect("not all read");
                info.tape = Some(t);
                for sym in a.alphabet().extended() {
                    if let Some(w) = step(&v, t, sym) {
                        let target = ex.id(normalize(Node::Finish(w)));
                        transitions.insert(Transition::new(id, sym, target));
                    }
                }
            }
        }
        states.insert(id, info);
    }
    Ok(MultiTapeAutomaton::from_parts(
        a.name(),
        a.alphabet().clone(),
        a.tapes().to_vec(),
        states,
        transitions,
    ))
}

/// Same language, but every accepting run reads all tapes to the end.
pub fn end_reading(a: &MultiTapeAutomaton) -> Result<MultiTapeAutomaton> {
    restrict_domain(a, &BTreeMap::new())
}

/// Appends tapes that no state reads; they accept any word.
pub fn add_tapes<S: AsRef<str>>(a: &MultiTapeAutomaton, extra: &[S]) -> Result<MultiTapeAutomaton> {
    let mut tapes = a.tapes().to_vec();
    for t in extra {
        let t = t.as_ref();
        if tapes.iter().any(|u| u == t) {
            return Err(Error::DuplicateTape(t.to_string()));
        }
        tapes.push(t.to_string());
    }
    Ok(MultiTapeAutomaton::from_parts(
        a.name(),
        a.alphabet().clone(),
        tapes,
        a.states().map(|(id, s)| (id, s.clone())).collect(),
        a.transitions().copied().collect(),
    ))
}
