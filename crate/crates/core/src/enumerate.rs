//! Bounded language oracles.
//!
//! [`enumerate_language`] is the brute-force reference: every n-word within
//! the length bound is simulated. [`bounded_language`] computes the same set
//! by walking runs, which scales to bounds where brute force cannot.

use std::collections::{BTreeSet, HashSet};

use crate::automaton::{Alphabet, MultiTapeAutomaton, StateId, END};
use crate::error::Result;
use crate::nword::NWord;
use crate::run::accepts;

/// Every word over `alphabet` of length at most `max_len`, shortest first.
pub fn enumerate_words(alphabet: &Alphabet, max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for &c in alphabet.symbols() {
                let mut v = w.clone();
                v.push(c);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Every n-word over the tapes of `a` with components of length at most
/// `max_len`.
pub fn all_nwords(a: &MultiTapeAutomaton, max_len: usize) -> Vec<NWord> {
    let words = enumerate_words(a.alphabet(), max_len);
    let mut out = vec![NWord::default()];
    for t in a.tapes() {
        let mut next = Vec::with_capacity(out.len() * words.len());
        for x in &out {
            for w in &words {
                let mut y = x.clone();
                y.set(t.clone(), w.clone());
                next.push(y);
            }
        }
        out = next;
    }
    out
}

pub fn enumerate_language(a: &MultiTapeAutomaton, max_len: usize) -> Result<BTreeSet<NWord>> {
    let mut out = BTreeSet::new();
    for x in all_nwords(a, max_len) {
        if accepts(a, &x)? {
            out.insert(x);
        }
    }
    Ok(out)
}

/// A set of n-words accepted by one run: `prefix` exactly on closed tapes,
/// and any extension of `prefix` within the length bound on open ones.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pattern {
    pub prefix: NWord,
    pub open: BTreeSet<String>,
}

impl Pattern {
    /// The n-words described, restricted to `tapes`.
    pub fn expand<S: AsRef<str>>(
        &self,
        tapes: &[S],
        alphabet: &Alphabet,
        max_len: usize,
    ) -> Vec<NWord> {
        let suffixes = enumerate_words(alphabet, max_len);
        let mut out = vec![NWord::default()];
        for t in tapes {
            let t = t.as_ref();
            let w = self.prefix.get(t).unwrap_or_default();
            let options: Vec<String> = if self.open.contains(t) {
                let room = max_len - w.chars().count();
                suffixes
                    .iter()
                    .filter(|s| s.chars().count() <= room)
                    .map(|s| format!("{w}{s}"))
                    .collect()
            } else {
                vec![w.to_string()]
            };
            let mut next = Vec::with_capacity(out.len() * options.len());
            for x in &out {
                for o in &options {
                    let mut y = x.clone();
                    y.set(t, o.clone());
                    next.push(y);
                }
            }
            out = next;
        }
        out
    }
}

/// Accepting runs within the length bound, as patterns. A run may accept
/// before reading a tape to its end, which leaves that tape open.
pub fn accepted_patterns(a: &MultiTapeAutomaton, max_len: usize) -> Result<BTreeSet<Pattern>> {
    a.ensure_valid()?;
    let n = a.tapes().len();
    type Node = (StateId, Vec<String>, Vec<bool>);
    let mut seen: HashSet<Node> = HashSet::new();
    let mut stack: Vec<Node> = a
        .initial_states()
        .into_iter()
        .map(|q| (q, vec![String::new(); n], vec![false; n]))
        .collect();
    let mut out = BTreeSet::new();
    while let Some(node) = stack.pop() {
        if !seen.insert(node.clone()) {
            continue;
        }
        let (q, words, ended) = node;
        if a.is_final(q) {
            out.insert(Pattern {
                prefix: NWord::new(a.tapes().iter().cloned().zip(words)),
                open: a
                    .tapes()
                    .iter()
                    .zip(&ended)
                    .filter(|(_, &e)| !e)
                    .map(|(t, _)| t.clone())
                    .collect(),
            });
            continue;
        }
        let Some(t) = a.tape_of(q) else { continue };
        if ended[t] {
            continue;
        }
        for tr in a.successors(q) {
            let (mut w, mut e) = (words.clone(), ended.clone());
            if tr.symbol == END {
                e[t] = true;
            } else if w[t].chars().count() < max_len {
                w[t].push(tr.symbol);
            } else {
                continue;
            }
            stack.push((tr.target, w, e));
        }
    }
    Ok(out)
}

/// The same set as [`enumerate_language`], computed from runs.
pub fn bounded_language(a: &MultiTapeAutomaton, max_len: usize) -> Result<BTreeSet<NWord>> {
    let mut out = BTreeSet::new();
    for p in accepted_patterns(a, max_len)? {
        out.extend(p.expand(a.tapes(), a.alphabet(), max_len));
    }
    Ok(out)
}
