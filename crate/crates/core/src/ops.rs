//! Closure constructions, emptiness, renaming and trimming.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::automaton::{MultiTapeAutomaton, StateId, StateInfo, Transition, END};
use crate::error::{Error, Result};
use crate::explore::Explorer;
use crate::nword::NWord;

pub fn is_empty(a: &MultiTapeAutomaton) -> Result<bool> {
    Ok(nonempty_witness(a)?.is_none())
}

/// A word decoded from a shortest initial-to-final path, if any exists.
/// Each symbol is attributed to the tape of the state that reads it and end
/// markers are dropped.
pub fn nonempty_witness(a: &MultiTapeAutomaton) -> Result<Option<NWord>> {
    a.ensure_valid()?;
    let mut parent: HashMap<StateId, Option<Transition>> = HashMap::new();
    let mut queue = VecDeque::new();
    for q in a.initial_states() {
        parent.insert(q, None);
        queue.push_back(q);
    }
    while let Some(q) = queue.pop_front() {
        if a.is_final(q) {
            let mut path = Vec::new();
            let mut cur = q;
            while let Some(Some(t)) = parent.get(&cur) {
                path.push(*t);
                cur = t.source;
            }
            path.reverse();
            return Ok(Some(decode_path(a, &path)));
        }
        for t in a.successors(q) {
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(t.target) {
                e.insert(Some(*t));
                queue.push_back(t.target);
            }
        }
    }
    Ok(None)
}

pub(crate) fn decode_path(a: &MultiTapeAutomaton, path: &[Transition]) -> NWord {
    let mut words = NWord::empty(a.tapes());
    let mut buf: Vec<String> = vec![String::new(); a.tapes().len()];
    for t in path {
        if t.symbol == END {
            continue;
        }
        if let Some(ti) = a.tape_of(t.source) {
            buf[ti].push(t.symbol);
        }
    }
    for (ti, w) in buf.into_iter().enumerate() {
        words.set(a.tapes()[ti].clone(), w);
    }
    words
}

fn check_compatible(a: &MultiTapeAutomaton, b: &MultiTapeAutomaton) -> Result<()> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    if a.tape_set() != b.tape_set() {
        return Err(Error::TapeMismatch {
            left: a.tapes().to_vec(),
            right: b.tapes().to_vec(),
        });
    }
    Ok(())
}

/// Disjoint union of the transition graphs. `a` keeps its state ids; `b`'s
/// ids are shifted past `a`'s largest id.
pub fn union(a: &MultiTapeAutomaton, b: &MultiTapeAutomaton) -> Result<MultiTapeAutomaton> {
    check_compatible(a, b)?;
    let offset = a.max_state_id().map_or(0, |m| m.0 + 1);
    let remap: Vec<usize> = b
        .tapes()
        .iter()
        .map(|t| a.tape_index(t).expect("same tape set"))
        .collect();
    let mut states: BTreeMap<StateId, StateInfo> =
        a.states().map(|(id, s)| (id, s.clone())).collect();
    let mut transitions: BTreeSet<Transition> = a.transitions().copied().collect();
    for (id, s) in b.states() {
        let mut s = s.clone();
        s.tape = s.tape.map(|t| remap[t]);
        states.insert(StateId(id.0 + offset), s);
    }
    for t in b.transitions() {
        transitions.insert(Transition::new(
            StateId(t.source.0 + offset),
            t.symbol,
            StateId(t.target.0 + offset),
        ));
    }
    Ok(MultiTapeAutomaton::from_parts(
        "union",
        a.alphabet().clone(),
        a.tapes().to_vec(),
        states,
        transitions,
    ))
}

/// Exact complement of a deterministic automaton.
///
/// States are paired with the set of exhausted tapes. Every missing
/// transition is routed into a drain that reads the unexhausted tapes to
/// their end markers in tape order; the only accepting state is the drain
/// with every tape exhausted. Final states of `a` become rejecting sinks.
pub fn complement(a: &MultiTapeAutomaton) -> Result<MultiTapeAutomaton> {
    a.ensure_valid()?;
    if !a.is_deterministic() {
        return Err(Error::NotDeterministic);
    }
    let n = a.tapes().len();
    assert!(n < 64, "at most 63 tapes are supported");
    let all: u64 = (1u64 << n) - 1;

    #[derive(Clone, PartialEq, Eq, Hash)]
    enum Node {
        Orig(StateId, u64),
        Drain(u64),
    }

    let normalize = |node: Node| -> Node {
        match node {
            Node::Orig(q, e) if !a.is_final(q) => match a.tape_of(q) {
                Some(t) if e & (1 << t) == 0 => Node::Orig(q, e),
                _ => Node::Drain(e),
            },
            other => other,
        }
    };

    let mut ex = Explorer::new();
    let start = match a.initial_states().first() {
        Some(&q0) => normalize(Node::Orig(q0, 0)),
        None => Node::Drain(0),
    };
    let start_id = ex.id(start);
    let mut states = BTreeMap::new();
    let mut transitions = BTreeSet::new();
    let symbols = a.alphabet().extended();

    while let Some((id, node)) = ex.next() {
        let mut info = StateInfo {
            tape: None,
            initial: id == start_id,
            accepting: false,
        };
        match node {
            Node::Orig(q, _) if a.is_final(q) => {
                info.tape = a.tape_of(q).or(Some(0));
            }
            Node::Orig(q, e) => {
                let t = a.tape_of(q).expect("valid automaton");
                info.tape = Some(t);
                for &sym in &symbols {
                    let e2 = if sym == END { e | (1 << t) } else { e };
                    let target = match a.successors_on(q, sym).next() {
                        Some(q2) => normalize(Node::Orig(q2, e2)),
                        None => Node::Drain(e2),
                    };
                    transitions.insert(Transition::new(id, sym, ex.id(target)));
                }
            }
            Node::Drain(e) if e == all => info.accepting = true,
            Node::Drain(e) => {
                let t = (0..n)
                    .find(|t| e & (1 << t) == 0)
                    .expect("not all exhausted");
                info.tape = Some(t);
                for &sym in &symbols {
                    let e2 = if sym == END { e | (1 << t) } else { e };
                    transitions.insert(Transition::new(id, sym, ex.id(Node::Drain(e2))));
                }
            }
        }
        states.insert(id, info);
    }
    Ok(MultiTapeAutomaton::from_parts(
        format!("{}.complement", a.name()),
        a.alphabet().clone(),
        a.tapes().to_vec(),
        states,
        transitions,
    ))
}

/// Renames tapes through a bijection defined on every tape of `a`.
pub fn rename_tapes(
    a: &MultiTapeAutomaton,
    mapping: &BTreeMap<String, String>,
) -> Result<MultiTapeAutomaton> {
    let mut renamed = Vec::with_capacity(a.tapes().len());
    for t in a.tapes() {
        let target = mapping
            .get(t)
            .ok_or_else(|| Error::BadRenaming(format!("tape {t} is not mapped")))?;
        if renamed.contains(target) {
            return Err(Error::BadRenaming(format!("two tapes map to {target}")));
        }
        renamed.push(target.clone());
    }
    if let Some(extra) = mapping.keys().find(|k| a.tape_index(k).is_none()) {
        return Err(Error::BadRenaming(format!(
            "{extra} is not a tape of the automaton"
        )));
    }
    Ok(MultiTapeAutomaton::from_parts(
        a.name(),
        a.alphabet().clone(),
        renamed,
        a.states().map(|(id, s)| (id, s.clone())).collect(),
        a.transitions().copied().collect(),
    ))
}

/// Keeps only states on some initial-to-final path.
pub fn trim(a: &MultiTapeAutomaton) -> MultiTapeAutomaton {
    let mut forward: BTreeSet<StateId> = a.initial_states().into_iter().collect();
    let mut queue: VecDeque<StateId> = forward.iter().copied().collect();
    while let Some(q) = queue.pop_front() {
        for t in a.successors(q) {
            if forward.insert(t.target) {
                queue.push_back(t.target);
            }
        }
    }
    let mut preds: HashMap<StateId, Vec<StateId>> = HashMap::new();
    for t in a.transitions() {
        preds.entry(t.target).or_default().push(t.source);
    }
    let mut backward: BTreeSet<StateId> = a.final_states().into_iter().collect();
    let mut queue: VecDeque<StateId> = backward.iter().copied().collect();
    while let Some(q) = queue.pop_front() {
        for &p in preds.get(&q).map(Vec::as_slice).unwrap_or_default() {
            if backward.insert(p) {
                queue.push_back(p);
            }
        }
    }
    let keep: BTreeSet<StateId> = forward.intersection(&backward).copied().collect();
    MultiTapeAutomaton::from_parts(
        a.name(),
        a.alphabet().clone(),
        a.tapes().to_vec(),
        a.states()
            .filter(|(id, _)| keep.contains(id))
            .map(|(id, s)| (id, s.clone()))
            .collect(),
        a.transitions()
            .filter(|t| keep.contains(&t.source) && keep.contains(&t.target))
            .copied()
            .collect(),
    )
}
