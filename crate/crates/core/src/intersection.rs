//! Delay-bounded under-approximation of intersection.
//!
//! A compound state pairs a state of each operand with per-tape FIFO queues
//! of delayed transitions: moves a component made ahead of time on a tape
//! that the other component must still confirm. Queues on a shared tape must
//! stay consistent (one symbol string a prefix of the other). States whose
//! queues grow beyond the delay bound are discarded, which is what makes the
//! result an under-approximation.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::rc::Rc;

use crate::automaton::{MultiTapeAutomaton, StateId, StateInfo, Transition};
use crate::error::{Error, Result};

/// A transition of a component automaton, recorded to be matched later.
pub type DelayedTransition = Transition;

/// Delayed transitions of one tape, oldest first.
pub type DelaySequence = Vec<DelayedTransition>;

/// A component state with one delay sequence per tape of its automaton.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DelayedState {
    pub state: StateId,
    pub delays: Vec<DelaySequence>,
}

impl DelayedState {
    pub fn undelayed(state: StateId, tapes: usize) -> Self {
        DelayedState {
            state,
            delays: vec![Vec::new(); tapes],
        }
    }

    pub fn max_delay(&self) -> usize {
        self.delays.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// A state of the intersection. `tape` indexes the tapes of the result and
/// is `None` only for final compound states.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompoundState {
    pub a_state: StateId,
    pub b_state: StateId,
    pub tape: Option<usize>,
    pub a_delays: Vec<DelaySequence>,
    pub b_delays: Vec<DelaySequence>,
}

impl CompoundState {
    pub fn max_delay(&self) -> usize {
        self.a_delays
            .iter()
            .chain(self.b_delays.iter())
            .map(Vec::len)
            .max()
            .unwrap_or(0)
    }

    fn has_delays(&self) -> bool {
        self.max_delay() > 0
    }
}

fn fmt_delays(f: &mut fmt::Formatter<'_>, delays: &[DelaySequence]) -> fmt::Result {
    for h in delays {
        let s: String = h.iter().map(|t| t.symbol).collect();
        write!(f, " [{s}]")?;
    }
    Ok(())
}

impl fmt::Display for CompoundState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}, ", self.a_state, self.b_state)?;
        match self.tape {
            Some(t) => write!(f, "t{t}")?,
            None => write!(f, "-")?,
        }
        fmt_delays(f, &self.a_delays)?;
        write!(f, " |")?;
        fmt_delays(f, &self.b_delays)?;
        write!(f, ">")
    }
}

/// How [`async_next`] enumerates paths to the first state of another tape.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PathMode {
    /// All minimum-length paths to each reachable target.
    #[default]
    Shortest,
    /// All paths without repeated states.
    Acyclic,
}

/// True iff the symbols of one sequence are a prefix of the other's.
pub fn consistent(h: &[DelayedTransition], k: &[DelayedTransition]) -> bool {
    h.iter().zip(k.iter()).all(|(x, y)| x.symbol == y.symbol)
}

/// Delayed states reachable from `q` by running ahead on other tapes.
///
/// Always contains `q` itself without delays. For every tape other than the
/// one `q` reads, each path from `q` to a first state reading that tape
/// contributes the path's end state, with every traversed transition queued
/// on the tape of its source state.
pub fn async_next(d: &MultiTapeAutomaton, q: StateId, mode: PathMode) -> Result<Vec<DelayedState>> {
    if !d.contains_state(q) {
        return Err(Error::UnknownState(q.0));
    }
    Ok(expand(d, q, mode, None))
}

/// [`async_next`] without the results whose own delays exceed `cap`; those
/// could only lead to discarded compound states.
fn expand(
    d: &MultiTapeAutomaton,
    q: StateId,
    mode: PathMode,
    cap: Option<usize>,
) -> Vec<DelayedState> {
    let n = d.tapes().len();
    let mut out = BTreeSet::new();
    out.insert(DelayedState::undelayed(q, n));
    if d.is_final(q) || cap == Some(0) {
        return out.into_iter().collect();
    }
    for ti in (0..n).filter(|&t| d.tape_of(q) != Some(t)) {
        let paths = match mode {
            PathMode::Shortest => shortest_paths(d, q, ti, n, cap),
            PathMode::Acyclic => simple_paths(d, q, ti, n, cap),
        };
        for path in paths {
            let mut delays = vec![Vec::new(); n];
            for tr in &path {
                let t = d.tape_of(tr.source).expect("sources are non-final");
                delays[t].push(*tr);
            }
            out.insert(DelayedState {
                state: path.last().expect("nonempty").target,
                delays,
            });
        }
    }
    out.into_iter().collect()
}

fn within_cap(counts: &[usize], cap: Option<usize>) -> bool {
    cap.is_none_or(|c| counts.iter().all(|&k| k <= c))
}

fn shortest_paths(
    d: &MultiTapeAutomaton,
    q: StateId,
    ti: usize,
    n: usize,
    cap: Option<usize>,
) -> Vec<Vec<Transition>> {
    let expandable = |s: StateId| d.tape_of(s) != Some(ti);
    let mut dist: HashMap<StateId, usize> = HashMap::from([(q, 0)]);
    let mut preds: HashMap<StateId, Vec<Transition>> = HashMap::new();
    let mut queue = VecDeque::from([q]);
    while let Some(u) = queue.pop_front() {
        let du = dist[&u];
        for tr in d.successors(u) {
            match dist.get(&tr.target) {
                None => {
                    dist.insert(tr.target, du + 1);
                    preds.entry(tr.target).or_default().push(*tr);
                    if expandable(tr.target) {
                        queue.push_back(tr.target);
                    }
                }
                Some(&dw) if dw == du + 1 => preds.entry(tr.target).or_default().push(*tr),
                Some(_) => {}
            }
        }
    }
    let mut targets: Vec<StateId> = dist
        .keys()
        .copied()
        .filter(|&s| d.tape_of(s) == Some(ti))
        .collect();
    targets.sort();

    // Walk predecessor edges back to `q`, building paths in reverse.
    let mut out = Vec::new();
    for v in targets {
        let mut stack: Vec<(StateId, Vec<Transition>, Vec<usize>)> =
            vec![(v, Vec::new(), vec![0; n])];
        while let Some((cur, rev, counts)) = stack.pop() {
            if cur == q {
                let mut path = rev;
                path.reverse();
                out.push(path);
                continue;
            }
            for tr in preds.get(&cur).map(Vec::as_slice).unwrap_or_default() {
                let t = d.tape_of(tr.source).expect("sources are non-final");
                let mut c = counts.clone();
                c[t] += 1;
                if !within_cap(&c, cap) {
                    continue;
                }
                let mut r = rev.clone();
                r.push(*tr);
                stack.push((tr.source, r, c));
            }
        }
    }
    out
}

fn simple_paths(
    d: &MultiTapeAutomaton,
    q: StateId,
    ti: usize,
    n: usize,
    cap: Option<usize>,
) -> Vec<Vec<Transition>> {
    let mut out = Vec::new();
    let mut stack: Vec<(StateId, Vec<Transition>, Vec<usize>)> = vec![(q, Vec::new(), vec![0; n])];
    while let Some((cur, path, counts)) = stack.pop() {
        if cur != q && d.tape_of(cur) == Some(ti) {
            out.push(path);
            continue;
        }
        let Some(t) = d.tape_of(cur) else { continue };
        let mut c = counts.clone();
        c[t] += 1;
        if !within_cap(&c, cap) {
            continue;
        }
        for tr in d.successors(cur) {
            if tr.target == q || path.iter().any(|p| p.target == tr.target) {
                continue;
            }
            let mut p = path.clone();
            p.push(*tr);
            stack.push((tr.target, p, c.clone()));
        }
    }
    out
}

/// Bounds and policies of [`intersect`]. `None` means unbounded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IntersectOptions {
    pub max_states: Option<usize>,
    pub max_delay: Option<usize>,
    pub stop_on_accept: bool,
    pub paths: PathMode,
}

impl IntersectOptions {
    pub fn with_delay(max_delay: Option<usize>) -> Self {
        IntersectOptions {
            max_delay,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IntersectStats {
    /// Compound states popped and kept.
    pub processed: usize,
    /// Compound states popped and dropped for exceeding the delay bound.
    pub discarded: usize,
    /// Distinct compound states ever created.
    pub generated: usize,
    pub state_limit_hit: bool,
    pub stopped_on_accept: bool,
}

/// The constructed automaton together with the compound state behind each
/// of its state ids.
#[derive(Clone, Debug)]
pub struct Intersection {
    pub automaton: MultiTapeAutomaton,
    pub states: Vec<CompoundState>,
    pub stats: IntersectStats,
}

/// Incremental construction state shared by the routines of the algorithm:
/// both operands, the interned compound states and the work stack.
pub struct Composer<'a> {
    a: &'a MultiTapeAutomaton,
    b: &'a MultiTapeAutomaton,
    tapes: Vec<String>,
    a_tape: Vec<Option<usize>>,
    b_tape: Vec<Option<usize>>,
    shared: Vec<(usize, usize)>,
    mode: PathMode,
    cap: Option<usize>,
    next_a: HashMap<StateId, Rc<Vec<DelayedState>>>,
    next_b: HashMap<StateId, Rc<Vec<DelayedState>>>,
    ids: HashMap<CompoundState, usize>,
    nodes: Vec<CompoundState>,
    stack: Vec<usize>,
    transitions: BTreeSet<(usize, char, usize)>,
    accept_seen: bool,
}

impl<'a> Composer<'a> {
    /// The result's tapes are those of `a` followed by the remaining tapes of
    /// `b`; tapes with equal names are shared.
    pub fn new(
        a: &'a MultiTapeAutomaton,
        b: &'a MultiTapeAutomaton,
        mode: PathMode,
    ) -> Result<Self> {
        if a.alphabet() != b.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        a.ensure_valid()?;
        b.ensure_valid()?;
        let mut tapes = a.tapes().to_vec();
        tapes.extend(
            b.tapes()
                .iter()
                .filter(|t| a.tape_index(t).is_none())
                .cloned(),
        );
        let a_tape = tapes.iter().map(|t| a.tape_index(t)).collect();
        let b_tape = tapes.iter().map(|t| b.tape_index(t)).collect();
        let shared = a
            .tapes()
            .iter()
            .enumerate()
            .filter_map(|(i, t)| b.tape_index(t).map(|j| (i, j)))
            .collect();
        Ok(Composer {
            a,
            b,
            tapes,
            a_tape,
            b_tape,
            shared,
            mode,
            cap: None,
            next_a: HashMap::new(),
            next_b: HashMap::new(),
            ids: HashMap::new(),
            nodes: Vec::new(),
            stack: Vec::new(),
            transitions: BTreeSet::new(),
            accept_seen: false,
        })
    }

    pub fn tapes(&self) -> &[String] {
        &self.tapes
    }

    pub fn state(&self, id: usize) -> &CompoundState {
        &self.nodes[id]
    }

    pub fn num_states(&self) -> usize {
        self.nodes.len()
    }

    pub fn stack(&self) -> &[usize] {
        &self.stack
    }

    pub fn transitions(&self) -> impl Iterator<Item = &(usize, char, usize)> + '_ {
        self.transitions.iter()
    }

    fn next_of_a(&mut self, q: StateId) -> Rc<Vec<DelayedState>> {
        let (a, mode, cap) = (self.a, self.mode, self.cap);
        self.next_a
            .entry(q)
            .or_insert_with(|| Rc::new(expand(a, q, mode, cap)))
            .clone()
    }

    fn next_of_b(&mut self, q: StateId) -> Rc<Vec<DelayedState>> {
        let (b, mode, cap) = (self.b, self.mode, self.cap);
        self.next_b
            .entry(q)
            .or_insert_with(|| Rc::new(expand(b, q, mode, cap)))
            .clone()
    }

    fn is_final(&self, s: &CompoundState) -> bool {
        self.a.is_final(s.a_state) && self.b.is_final(s.b_state) && !s.has_delays()
    }

    /// Composes every consistent pair, once per tape of the result (a final
    /// pair without delays yields a single tapeless state). States not seen
    /// before are pushed on the work stack. Returns the ids of all emitted
    /// states in canonical order.
    pub fn new_states(&mut self, p: &[DelayedState], q: &[DelayedState]) -> Vec<usize> {
        let mut emitted = BTreeSet::new();
        for x in p {
            for y in q {
                if !self
                    .shared
                    .iter()
                    .all(|&(i, j)| consistent(&x.delays[i], &y.delays[j]))
                {
                    continue;
                }
                let mut s = CompoundState {
                    a_state: x.state,
                    b_state: y.state,
                    tape: None,
                    a_delays: x.delays.clone(),
                    b_delays: y.delays.clone(),
                };
                if self.is_final(&s) {
                    emitted.insert(s);
                    continue;
                }
                for t in 0..self.tapes.len() {
                    s.tape = Some(t);
                    emitted.insert(s.clone());
                }
            }
        }
        let mut out = Vec::with_capacity(emitted.len());
        for s in emitted {
            let id = match self.ids.get(&s) {
                Some(&id) => id,
                None => {
                    let id = self.nodes.len();
                    if self.is_final(&s) {
                        self.accept_seen = true;
                    }
                    self.ids.insert(s.clone(), id);
                    self.nodes.push(s);
                    self.stack.push(id);
                    id
                }
            };
            out.push(id);
        }
        out
    }

    /// Prepends `prefix_a` and `prefix_b` to the delays of every state in `p`
    /// and `q`, composes them, and adds a `symbol` transition from `r` to each
    /// resulting state.
    pub fn compose_transition(
        &mut self,
        p: &[DelayedState],
        q: &[DelayedState],
        prefix_a: &[DelaySequence],
        prefix_b: &[DelaySequence],
        symbol: char,
        r: usize,
    ) {
        let prepend = |states: &[DelayedState], prefix: &[DelaySequence]| -> Vec<DelayedState> {
            states
                .iter()
                .map(|s| DelayedState {
                    state: s.state,
                    delays: prefix
                        .iter()
                        .zip(&s.delays)
                        .map(|(h, h2)| h.iter().chain(h2.iter()).copied().collect())
                        .collect(),
                })
                .collect()
        };
        let ja = prepend(p, prefix_a);
        let jb = prepend(q, prefix_b);
        for target in self.new_states(&ja, &jb) {
            self.transitions.insert((r, symbol, target));
        }
    }

    /// Delayed states after a normal move of `d` from `q` on tape `t`.
    fn normal_moves(
        &mut self,
        on_a: bool,
        q: StateId,
        t: usize,
        symbol: char,
    ) -> Vec<DelayedState> {
        let d = if on_a { self.a } else { self.b };
        if d.tape_of(q) != Some(t) {
            return Vec::new();
        }
        let targets: Vec<StateId> = d.successors_on(q, symbol).collect();
        let mut out = Vec::new();
        for q2 in targets {
            let next = if on_a {
                self.next_of_a(q2)
            } else {
                self.next_of_b(q2)
            };
            out.extend(next.iter().cloned());
        }
        out
    }

    fn expand_state(&mut self, r: usize) {
        let s = self.nodes[r].clone();
        let Some(t) = s.tape else { return };
        let symbols = self.a.alphabet().extended();
        let undelayed_a = vec![DelayedState::undelayed(s.a_state, s.a_delays.len())];
        let undelayed_b = vec![DelayedState::undelayed(s.b_state, s.b_delays.len())];
        let pop = |delays: &[DelaySequence], i: usize| -> Vec<DelaySequence> {
            let mut d = delays.to_vec();
            d[i].remove(0);
            d
        };
        match (self.a_tape[t], self.b_tape[t]) {
            (Some(ta), Some(tb)) => match (s.a_delays[ta].first(), s.b_delays[tb].first()) {
                (Some(x), Some(y)) => {
                    if x.symbol != y.symbol {
                        return;
                    }
                    let p = self.next_of_a(s.a_state);
                    let q = self.next_of_b(s.b_state);
                    let (pa, pb) = (pop(&s.a_delays, ta), pop(&s.b_delays, tb));
                    self.compose_transition(&p, &q, &pa, &pb, x.symbol, r);
                }
                (Some(x), None) => {
                    let p = self.next_of_a(s.a_state);
                    let q = self.normal_moves(false, s.b_state, tb, x.symbol);
                    let pa = pop(&s.a_delays, ta);
                    self.compose_transition(&p, &q, &pa, &s.b_delays, x.symbol, r);
                }
                (None, Some(y)) => {
                    let p = self.normal_moves(true, s.a_state, ta, y.symbol);
                    let q = self.next_of_b(s.b_state);
                    let pb = pop(&s.b_delays, tb);
                    self.compose_transition(&p, &q, &s.a_delays, &pb, y.symbol, r);
                }
                (None, None) => {
                    for sym in symbols {
                        let p = self.normal_moves(true, s.a_state, ta, sym);
                        if p.is_empty() {
                            continue;
                        }
                        let q = self.normal_moves(false, s.b_state, tb, sym);
                        self.compose_transition(&p, &q, &s.a_delays, &s.b_delays, sym, r);
                    }
                }
            },
            (Some(ta), None) => match s.a_delays[ta].first() {
                Some(x) => {
                    let p = self.next_of_a(s.a_state);
                    let pa = pop(&s.a_delays, ta);
                    self.compose_transition(&p, &undelayed_b, &pa, &s.b_delays, x.symbol, r);
                }
                None => {
                    for sym in symbols {
                        let p = self.normal_moves(true, s.a_state, ta, sym);
                        self.compose_transition(&p, &undelayed_b, &s.a_delays, &s.b_delays, sym, r);
                    }
                }
            },
            (None, Some(tb)) => match s.b_delays[tb].first() {
                Some(y) => {
                    let q = self.next_of_b(s.b_state);
                    let pb = pop(&s.b_delays, tb);
                    self.compose_transition(&undelayed_a, &q, &s.a_delays, &pb, y.symbol, r);
                }
                None => {
                    for sym in symbols {
                        let q = self.normal_moves(false, s.b_state, tb, sym);
                        self.compose_transition(&undelayed_a, &q, &s.a_delays, &s.b_delays, sym, r);
                    }
                }
            },
            (None, None) => unreachable!("every tape belongs to an operand"),
        }
    }
}

/// Builds an automaton whose language is contained in `L(a) ∩ L(b)`.
///
/// The work stack is processed last-in first-out. Popped states with a
/// delay sequence longer than `max_delay` are dropped. The result contains
/// the kept states plus every final state created, numbered in creation
/// order; transitions into dropped or unexplored states are omitted.
pub fn intersect(
    a: &MultiTapeAutomaton,
    b: &MultiTapeAutomaton,
    opts: IntersectOptions,
) -> Result<Intersection> {
    let mut c = Composer::new(a, b, opts.paths)?;
    c.cap = opts.max_delay;
    let mut ja = Vec::new();
    for i in a.initial_states() {
        ja.extend(c.next_of_a(i).iter().cloned());
    }
    let mut jb = Vec::new();
    for i in b.initial_states() {
        jb.extend(c.next_of_b(i).iter().cloned());
    }
    let initial: BTreeSet<usize> = c.new_states(&ja, &jb).into_iter().collect();

    let mut stats = IntersectStats::default();
    let mut kept: Vec<bool> = Vec::new();
    loop {
        if opts.stop_on_accept && c.accept_seen {
            stats.stopped_on_accept = true;
            break;
        }
        if opts.max_states.is_some_and(|m| stats.processed >= m) {
            stats.state_limit_hit = !c.stack.is_empty();
            break;
        }
        let Some(r) = c.stack.pop() else { break };
        if opts.max_delay.is_some_and(|d| c.nodes[r].max_delay() > d) {
            stats.discarded += 1;
            continue;
        }
        if kept.len() <= r {
            kept.resize(r + 1, false);
        }
        kept[r] = true;
        stats.processed += 1;
        c.expand_state(r);
    }
    stats.generated = c.nodes.len();
    kept.resize(c.nodes.len(), false);

    let mut out_id: Vec<Option<StateId>> = vec![None; c.nodes.len()];
    let mut states = std::collections::BTreeMap::new();
    let mut compound = Vec::new();
    for (i, s) in c.nodes.iter().enumerate() {
        let is_final = c.is_final(s);
        if !(kept[i] || is_final) {
            continue;
        }
        let id = StateId(compound.len() as u32);
        out_id[i] = Some(id);
        states.insert(
            id,
            StateInfo {
                tape: s.tape,
                initial: initial.contains(&i),
                accepting: is_final,
            },
        );
        compound.push(s.clone());
    }
    let transitions = c
        .transitions
        .iter()
        .filter_map(|&(r, sym, t)| Some(Transition::new(out_id[r]?, sym, out_id[t]?)))
        .collect();
    let automaton = MultiTapeAutomaton::from_parts(
        format!("{}&{}", a.name(), b.name()),
        a.alphabet().clone(),
        c.tapes.clone(),
        states,
        transitions,
    );
    Ok(Intersection {
        automaton,
        states: compound,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{Alphabet, AutomatonBuilder, END};
    use crate::builders::{aut_any_x, aut_any_y, aut_cat, aut_eq, aut_l1, aut_l2, aut_l3, aut_l4};
    use crate::enumerate::{bounded_language, enumerate_language};
    use crate::nword::NWord;
    use crate::ops::rename_tapes;

    fn tr(s: u32, c: char, t: u32) -> Transition {
        Transition::new(StateId(s), c, StateId(t))
    }

    fn ds(state: u32, delays: Vec<Vec<Transition>>) -> DelayedState {
        DelayedState {
            state: StateId(state),
            delays,
        }
    }

    fn renamed(a: &MultiTapeAutomaton, pairs: &[(&str, &str)]) -> MultiTapeAutomaton {
        let m = pairs
            .iter()
            .map(|(x, y)| (x.to_string(), y.to_string()))
            .collect();
        rename_tapes(a, &m).unwrap()
    }

    #[test]
    fn async_next_of_cat_matches_the_listing() {
        let got: BTreeSet<DelayedState> = async_next(&aut_cat(), StateId(1), PathMode::Shortest)
            .unwrap()
            .into_iter()
            .collect();
        let e = Vec::new;
        let expect: BTreeSet<DelayedState> = [
            ds(1, vec![e(), e(), e()]),
            ds(2, vec![vec![tr(1, 'a', 2)], e(), e()]),
            ds(3, vec![vec![tr(1, 'b', 3)], e(), e()]),
            ds(4, vec![vec![tr(1, END, 4)], e(), e()]),
            ds(5, vec![vec![tr(1, END, 4)], vec![tr(4, 'a', 5)], e()]),
            ds(6, vec![vec![tr(1, END, 4)], vec![tr(4, 'b', 6)], e()]),
            ds(7, vec![vec![tr(1, END, 4)], vec![tr(4, END, 7)], e()]),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn async_next_of_eq() {
        let got = async_next(&aut_eq(), StateId(1), PathMode::Shortest).unwrap();
        let e = Vec::new;
        assert_eq!(
            got,
            vec![
                ds(1, vec![e(), e()]),
                ds(2, vec![vec![tr(1, 'a', 2)], e()]),
                ds(3, vec![vec![tr(1, 'b', 3)], e()]),
                ds(4, vec![vec![tr(1, END, 4)], e()]),
            ]
        );
    }

    #[test]
    fn async_next_of_final_and_unknown() {
        let got = async_next(&aut_eq(), StateId(5), PathMode::Shortest).unwrap();
        assert_eq!(got, vec![DelayedState::undelayed(StateId(5), 2)]);
        assert_eq!(
            async_next(&aut_eq(), StateId(9), PathMode::Shortest).unwrap_err(),
            Error::UnknownState(9)
        );
    }

    #[test]
    fn acyclic_mode_contains_shortest_mode() {
        for a in [aut_cat(), aut_eq(), aut_l1(), aut_l2()] {
            for q in a.state_ids() {
                let s: BTreeSet<_> = async_next(&a, q, PathMode::Shortest)
                    .unwrap()
                    .into_iter()
                    .collect();
                let c: BTreeSet<_> = async_next(&a, q, PathMode::Acyclic)
                    .unwrap()
                    .into_iter()
                    .collect();
                assert!(s.is_subset(&c), "{} state {q}", a.name());
            }
        }
    }

    #[test]
    fn consistency() {
        let ab = vec![tr(1, 'a', 2), tr(2, 'b', 1)];
        let ab_end = vec![tr(7, 'a', 2), tr(2, 'b', 1), tr(1, END, 4)];
        let a_end = vec![tr(1, 'a', 2), tr(2, END, 1)];
        assert!(consistent(&[], &ab));
        assert!(consistent(&ab, &ab_end));
        assert!(consistent(&ab_end, &ab));
        assert!(!consistent(&ab, &a_end));
    }

    #[test]
    fn new_states_one_per_tape() {
        let cat = aut_cat();
        let eq = renamed(&aut_eq(), &[("X", "Z"), ("Y", "W")]);
        let mut c = Composer::new(&cat, &eq, PathMode::Shortest).unwrap();
        assert_eq!(c.tapes().len(), 4);
        let p = [DelayedState::undelayed(StateId(1), 3)];
        let q = [DelayedState::undelayed(StateId(1), 2)];
        let ids = c.new_states(&p, &q);
        assert_eq!(ids.len(), 4);
        assert_eq!(c.stack().len(), 4);
        // Emitting the same states again does not push them twice.
        let again = c.new_states(&p, &q);
        assert_eq!(again, ids);
        assert_eq!(c.stack().len(), 4);
    }

    #[test]
    fn new_states_drops_inconsistent_pairs() {
        let eq = aut_eq();
        let mut c = Composer::new(&eq, &eq, PathMode::Shortest).unwrap();
        let p = [ds(1, vec![Vec::new(), vec![tr(4, 'a', 5)]])];
        let q = [ds(1, vec![Vec::new(), vec![tr(4, 'b', 5)]])];
        assert!(c.new_states(&p, &q).is_empty());
        assert!(c.new_states(&p, &[]).is_empty());
    }

    #[test]
    fn compose_transition_prepends_prefix() {
        let eq = aut_eq();
        let mut c = Composer::new(&eq, &eq, PathMode::Shortest).unwrap();
        let root = c.new_states(
            &[DelayedState::undelayed(StateId(1), 2)],
            &[DelayedState::undelayed(StateId(1), 2)],
        )[0];
        let p = [DelayedState::undelayed(StateId(2), 2)];
        let q = [DelayedState::undelayed(StateId(2), 2)];
        let prefix_a = vec![Vec::new(), vec![tr(2, 'a', 1)]];
        let prefix_b = vec![Vec::new(), Vec::new()];
        c.compose_transition(&p, &q, &prefix_a, &prefix_b, 'a', root);
        let targets: Vec<usize> = c
            .transitions()
            .filter(|t| t.0 == root)
            .map(|t| t.2)
            .collect();
        assert_eq!(targets.len(), 2);
        for t in targets {
            assert_eq!(c.state(t).a_delays[1], vec![tr(2, 'a', 1)]);
        }
        let before = c.transitions().count();
        c.compose_transition(&[], &q, &prefix_a, &prefix_b, 'a', root);
        assert_eq!(c.transitions().count(), before);
    }

    #[test]
    fn finite_intersection_l12() {
        let c = intersect(&aut_l1(), &aut_l2(), IntersectOptions::default()).unwrap();
        assert!(!c.stats.state_limit_hit);
        let lang = bounded_language(&c.automaton, 8).unwrap();
        let expect: BTreeSet<NWord> = [NWord::new([("X", "abcabc"), ("Y", "abcabca")])]
            .into_iter()
            .collect();
        assert_eq!(lang, expect);
    }

    #[test]
    fn finite_intersection_l34() {
        let c = intersect(&aut_l3(), &aut_l4(), IntersectOptions::default()).unwrap();
        let lang = bounded_language(&c.automaton, 6).unwrap();
        let expect: BTreeSet<NWord> = [NWord::new([("X", "ab"), ("Y", "xyz")])]
            .into_iter()
            .collect();
        assert_eq!(lang, expect);
    }

    #[test]
    fn any_pair_intersection_is_incomplete() {
        let c = intersect(&aut_any_x(), &aut_any_y(), IntersectOptions::default()).unwrap();
        let lang = enumerate_language(&c.automaton, 4).unwrap();
        let mut expect = BTreeSet::new();
        for n in 0..=4 {
            let w = "a".repeat(n);
            expect.insert(NWord::new([("X", w.as_str()), ("Y", "")]));
            expect.insert(NWord::new([("X", ""), ("Y", w.as_str())]));
        }
        assert_eq!(lang, expect);
    }

    #[test]
    fn single_shared_tape_is_complete_at_zero_delay() {
        let cat = aut_cat();
        let eq = renamed(&aut_eq(), &[("X", "Z"), ("Y", "W")]);
        let c = intersect(&cat, &eq, IntersectOptions::with_delay(Some(0))).unwrap();
        assert!(c.automaton.validate().is_empty());
        let got = bounded_language(&c.automaton, 3).unwrap();
        let cat_l = bounded_language(&cat, 3).unwrap();
        let expect: BTreeSet<NWord> = cat_l
            .into_iter()
            .map(|x| {
                let z = x.get("Z").unwrap().to_string();
                let mut y = x.clone();
                y.set("W", z);
                y
            })
            .collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn final_states_are_pure() {
        let c = intersect(&aut_l1(), &aut_l2(), IntersectOptions::default()).unwrap();
        for (id, info) in c.automaton.states() {
            if info.accepting {
                let s = &c.states[id.0 as usize];
                assert_eq!(s.max_delay(), 0);
                assert!(aut_l1().is_final(s.a_state) && aut_l2().is_final(s.b_state));
            }
        }
    }

    #[test]
    fn delay_pruning_is_invisible() {
        // The capped expansion must give the same result as discarding at pop time.
        let eq = aut_eq();
        let cat = aut_cat();
        for d in 0..3 {
            let c = intersect(
                &eq,
                &cat,
                IntersectOptions {
                    max_delay: Some(d),
                    max_states: Some(3000),
                    ..Default::default()
                },
            )
            .unwrap();
            let mut slow = Composer::new(&eq, &cat, PathMode::Shortest).unwrap();
            let mut ja = Vec::new();
            ja.extend(expand(&eq, StateId(1), PathMode::Shortest, None));
            let mut jb = Vec::new();
            jb.extend(expand(&cat, StateId(1), PathMode::Shortest, None));
            slow.new_states(&ja, &jb);
            let mut processed = Vec::new();
            while let Some(r) = slow.stack.pop() {
                if processed.len() >= 3000 {
                    break;
                }
                if slow.nodes[r].max_delay() > d {
                    continue;
                }
                processed.push(slow.nodes[r].clone());
                slow.expand_state(r);
            }
            let fast: Vec<CompoundState> = c
                .states
                .iter()
                .zip(c.automaton.state_ids())
                .filter(|(_, id)| !c.automaton.is_final(*id))
                .map(|(s, _)| s.clone())
                .collect();
            let mut slow_sorted = processed.clone();
            slow_sorted.retain(|s| {
                !(eq.is_final(s.a_state) && cat.is_final(s.b_state) && s.max_delay() == 0)
            });
            let mut fast_sorted = fast.clone();
            slow_sorted.sort();
            fast_sorted.sort();
            assert_eq!(fast_sorted, slow_sorted, "d = {d}");
        }
    }

    #[test]
    fn stop_on_accept_and_state_cap() {
        let c = intersect(
            &aut_l3(),
            &aut_l4(),
            IntersectOptions {
                stop_on_accept: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(c.stats.stopped_on_accept);
        assert!(!c.automaton.final_states().is_empty());
        let capped = intersect(
            &aut_eq(),
            &aut_cat(),
            IntersectOptions {
                max_states: Some(10),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(capped.stats.processed, 10);
        assert!(capped.stats.state_limit_hit);
    }

    #[test]
    fn alphabet_mismatch() {
        assert_eq!(
            intersect(&aut_eq(), &aut_l1(), IntersectOptions::default()).unwrap_err(),
            Error::AlphabetMismatch
        );
    }

    #[test]
    fn empty_operand_gives_empty_result() {
        let mut b =
            AutomatonBuilder::new("none", Alphabet::new("ab".chars()).unwrap(), &["X", "Y"])
                .unwrap();
        b.add_state(1, Some("X")).unwrap().set_initial(1).unwrap();
        let none = b.build();
        let c = intersect(&aut_eq(), &none, IntersectOptions::default()).unwrap();
        assert!(c.automaton.final_states().is_empty());
    }
}
