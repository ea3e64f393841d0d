//! Nondeterministic run simulation.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::automaton::{MultiTapeAutomaton, StateId, END};
use crate::error::Result;
use crate::nword::NWord;

/// A state together with the unread input on every tape (end marker included).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub state: StateId,
    pub remaining: BTreeMap<String, String>,
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.state)?;
        for (t, r) in &self.remaining {
            write!(f, " {t}={r}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunWitness {
    pub configurations: Vec<Configuration>,
    pub accepted: bool,
}

impl RunWitness {
    /// Checks the witness against the successor relation from scratch.
    pub fn replays(&self, a: &MultiTapeAutomaton, x: &NWord) -> bool {
        let Some(first) = self.configurations.first() else {
            return false;
        };
        if !a.is_initial(first.state) {
            return false;
        }
        for t in a.tapes() {
            let expect = format!("{}{END}", x.get(t).unwrap_or_default());
            if first.remaining.get(t) != Some(&expect) {
                return false;
            }
        }
        for pair in self.configurations.windows(2) {
            let (cur, next) = (&pair[0], &pair[1]);
            let Some(tape) = a.tape_name_of(cur.state) else {
                return false;
            };
            let Some(symbol) = cur.remaining[tape].chars().next() else {
                return false;
            };
            if !a.successors_on(cur.state, symbol).any(|q| q == next.state) {
                return false;
            }
            for t in a.tapes() {
                let expect: &str = if t == tape {
                    &cur.remaining[t][symbol.len_utf8()..]
                } else {
                    &cur.remaining[t]
                };
                if next.remaining.get(t).map(String::as_str) != Some(expect) {
                    return false;
                }
            }
        }
        let last = self.configurations.last().expect("nonempty");
        self.accepted == a.is_final(last.state)
    }
}

impl fmt::Display for RunWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.configurations {
            writeln!(f, "{c}")?;
        }
        write!(
            f,
            "{}",
            if self.accepted {
                "accepted"
            } else {
                "rejected"
            }
        )
    }
}

pub fn accepts(a: &MultiTapeAutomaton, x: &NWord) -> Result<bool> {
    Ok(accepting_run(a, x)?.is_some())
}

/// Depth-first search over configurations, memoized on (state, positions).
pub fn accepting_run(a: &MultiTapeAutomaton, x: &NWord) -> Result<Option<RunWitness>> {
    a.ensure_valid()?;
    let mut tapes = x.aligned(a)?;
    for w in &mut tapes {
        w.push(END);
    }

    let mut visited: HashSet<Node> = HashSet::new();
    let mut parent: HashMap<Node, Node> = HashMap::new();
    let mut stack: Vec<Node> = Vec::new();
    for q in a.initial_states().into_iter().rev() {
        let n = (q, vec![0; tapes.len()]);
        if visited.insert(n.clone()) {
            stack.push(n);
        }
    }

    while let Some(node) = stack.pop() {
        let (q, pos) = &node;
        if a.is_final(*q) {
            return Ok(Some(witness(a, &tapes, &parent, node)));
        }
        let Some(ti) = a.tape_of(*q) else { continue };
        let Some(&symbol) = tapes[ti].get(pos[ti]) else {
            continue;
        };
        let targets: Vec<StateId> = a.successors_on(*q, symbol).collect();
        for target in targets.into_iter().rev() {
            let mut next_pos = pos.clone();
            next_pos[ti] += 1;
            let next = (target, next_pos);
            if visited.insert(next.clone()) {
                parent.insert(next.clone(), node.clone());
                stack.push(next);
            }
        }
    }
    Ok(None)
}

/// A state with the read position on each tape.
type Node = (StateId, Vec<usize>);

fn witness(
    a: &MultiTapeAutomaton,
    tapes: &[Vec<char>],
    parent: &HashMap<Node, Node>,
    end: Node,
) -> RunWitness {
    let mut chain = vec![end];
    while let Some(p) = parent.get(chain.last().expect("nonempty")) {
        chain.push(p.clone());
    }
    chain.reverse();
    let configurations = chain
        .into_iter()
        .map(|(state, pos)| Configuration {
            state,
            remaining: a
                .tapes()
                .iter()
                .enumerate()
                .map(|(i, t)| (t.clone(), tapes[i][pos[i]..].iter().collect()))
                .collect(),
        })
        .collect();
    RunWitness {
        configurations,
        accepted: true,
    }
}
