//! Approximate determinization by bounded backtracking.
//!
//! At a nondeterministic choice the deterministic machine follows the
//! lowest-numbered target and remembers the second one. While the first
//! branch runs, the symbols it reads are logged. If the branch accepts
//! within `bound` symbols the machine accepts; if it dies, or the log
//! reaches `bound` symbols, the machine switches to the remembered
//! alternative and replays the log before reading fresh input. Only one
//! alternative is remembered at a time: choices met while one is pending, or
//! while replaying, follow their first target only.
//!
//! Every word accepted by the result is accepted by the input automaton.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::automaton::{MultiTapeAutomaton, StateId, StateInfo, Transition};
use crate::error::Result;
use crate::explore::Explorer;
use crate::ops::complement;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Mode {
    Plain,
    /// Following a first branch; `log` holds, per tape, what it has read.
    Pending {
        alt: StateId,
        log: Vec<Vec<char>>,
    },
    /// Following an alternative that still owes the buffered input.
    Replay {
        buffer: Vec<VecDeque<char>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Node {
    Accept,
    Run(StateId, Mode),
}

struct Det<'a> {
    a: &'a MultiTapeAutomaton,
    bound: usize,
}

impl Det<'_> {
    fn first(&self, q: StateId, symbol: char) -> Option<StateId> {
        self.a.successors_on(q, symbol).next()
    }

    fn replay(&self, alt: StateId, log: Vec<Vec<char>>) -> Option<Node> {
        let buffer = log.into_iter().map(VecDeque::from).collect();
        self.normalize(Node::Run(alt, Mode::Replay { buffer }))
    }

    /// Settles a node so that it is either accepting or about to read fresh
    /// input. `None` means every remaining branch is dead.
    fn normalize(&self, mut node: Node) -> Option<Node> {
        loop {
            let Node::Run(v, mode) = node else {
                return Some(node);
            };
            if self.a.is_final(v) {
                return Some(Node::Accept);
            }
            match mode {
                Mode::Plain => return Some(Node::Run(v, Mode::Plain)),
                Mode::Pending { alt, log } => {
                    if self.a.successors(v).next().is_none() {
                        return self.replay(alt, log);
                    }
                    return Some(Node::Run(v, Mode::Pending { alt, log }));
                }
                Mode::Replay { mut buffer } => {
                    if buffer.iter().all(VecDeque::is_empty) {
                        node = Node::Run(v, Mode::Plain);
                        continue;
                    }
                    let t = self.a.tape_of(v)?;
                    let Some(sym) = buffer[t].pop_front() else {
                        return Some(Node::Run(v, Mode::Replay { buffer }));
                    };
                    node = Node::Run(self.first(v, sym)?, Mode::Replay { buffer });
                }
            }
        }
    }

    fn choice(&self, first: StateId, alt: StateId, log: Vec<Vec<char>>) -> Option<Node> {
        if self.a.is_final(first) {
            return Some(Node::Accept);
        }
        if self.bound == 0 {
            return self.replay(alt, log);
        }
        self.normalize(Node::Run(first, Mode::Pending { alt, log }))
    }

    fn start(&self) -> Option<Node> {
        let init = self.a.initial_states();
        match init.as_slice() {
            [] => None,
            [q] => self.normalize(Node::Run(*q, Mode::Plain)),
            [q1, q2, ..] => self.choice(*q1, *q2, vec![Vec::new(); self.a.tapes().len()]),
        }
    }

    fn step(&self, v: StateId, mode: &Mode, t: usize, sym: char) -> Option<Node> {
        match mode {
            Mode::Plain => {
                let targets: Vec<StateId> = self.a.successors_on(v, sym).collect();
                match targets.as_slice() {
                    [] => None,
                    [q] => self.normalize(Node::Run(*q, Mode::Plain)),
                    [q1, q2, ..] => self.choice(*q1, *q2, vec![Vec::new(); self.a.tapes().len()]),
                }
            }
            Mode::Pending { alt, log } => {
                let mut log = log.clone();
                log[t].push(sym);
                let Some(q) = self.first(v, sym) else {
                    return self.replay(*alt, log);
                };
                if self.a.is_final(q) {
                    return Some(Node::Accept);
                }
                if log.iter().map(Vec::len).sum::<usize>() >= self.bound {
                    return self.replay(*alt, log);
                }
                self.normalize(Node::Run(q, Mode::Pending { alt: *alt, log }))
            }
            Mode::Replay { buffer } => {
                let q = self.first(v, sym)?;
                self.normalize(Node::Run(
                    q,
                    Mode::Replay {
                        buffer: buffer.clone(),
                    },
                ))
            }
        }
    }
}

/// A deterministic automaton accepting a subset of `L(a)`; `bound` is the
/// number of input symbols (end markers included) a first branch may read
/// before the alternative takes over.
pub fn determinize_approx(a: &MultiTapeAutomaton, bound: usize) -> Result<MultiTapeAutomaton> {
    a.ensure_valid()?;
    let det = Det { a, bound };
    let mut ex = Explorer::new();
    let mut states = BTreeMap::new();
    let mut transitions = BTreeSet::new();
    if let Some(start) = det.start() {
        ex.id(start);
    }
    let symbols = a.alphabet().extended();
    while let Some((id, node)) = ex.next() {
        let mut info = StateInfo {
            tape: None,
            initial: id.0 == 0,
            accepting: false,
        };
        match node {
            Node::Accept => info.accepting = true,
            Node::Run(v, mode) => {
                let t = a.tape_of(v).expect("normalized nodes are non-final");
                info.tape = Some(t);
                for &sym in &symbols {
                    if let Some(next) = det.step(v, &mode, t, sym) {
                        transitions.insert(Transition::new(id, sym, ex.id(next)));
                    }
                }
            }
        }
        states.insert(id, info);
    }
    Ok(MultiTapeAutomaton::from_parts(
        format!("{}.det{bound}", a.name()),
        a.alphabet().clone(),
        a.tapes().to_vec(),
        states,
        transitions,
    ))
}

/// `complement(determinize_approx(a, bound))`. Since the determinized
/// language is a subset of `L(a)`, this over-approximates the complement.
pub fn complement_approx(a: &MultiTapeAutomaton, bound: usize) -> Result<MultiTapeAutomaton> {
    complement(&determinize_approx(a, bound)?)
}
