#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use mtap::{Alphabet, AutomatonBuilder, MultiTapeAutomaton, NWord, Violation};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ab() -> Alphabet {
    Alphabet::new(['a', 'b']).unwrap()
}

#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_states: u32,
    pub deterministic: bool,
    /// Chance that a (state, symbol) pair gets a transition.
    pub density: f64,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_states: 5,
            deterministic: false,
            density: 0.45,
        }
    }
}

/// A random valid automaton over `tapes`. States that would read a tape
/// after its end marker lose their outgoing transitions until the result
/// validates.
pub fn random_automaton<S: AsRef<str>>(
    rng: &mut Rng8,
    alphabet: &Alphabet,
    tapes: &[S],
    shape: Shape,
) -> MultiTapeAutomaton {
    let n = rng.gen_range(2..=shape.max_states.max(2));
    let finals = rng.gen_range(1..=2.min(n - 1));
    let symbols = alphabet.extended();
    let names: Vec<&str> = tapes.iter().map(AsRef::as_ref).collect();
    let mut tape_of: BTreeMap<u32, &str> = BTreeMap::new();
    for q in 0..n - finals {
        tape_of.insert(q, names[rng.gen_range(0..names.len())]);
    }
    let mut edges: BTreeSet<(u32, char, u32)> = BTreeSet::new();
    for q in 0..n - finals {
        for &c in &symbols {
            if rng.gen_bool(shape.density) {
                edges.insert((q, c, rng.gen_range(0..n)));
                if !shape.deterministic && rng.gen_bool(0.25) {
                    edges.insert((q, c, rng.gen_range(0..n)));
                }
            }
        }
    }
    let second_initial = !shape.deterministic && n - finals > 1 && rng.gen_bool(0.2);
    loop {
        let mut b = AutomatonBuilder::new("random", alphabet.clone(), &names).unwrap();
        for q in 0..n {
            b.add_state(q, tape_of.get(&q).copied()).unwrap();
            if q >= n - finals {
                b.set_final(q).unwrap();
            }
        }
        b.set_initial(0).unwrap();
        if second_initial {
            b.set_initial(1).unwrap();
        }
        for &(s, c, t) in &edges {
            b.add_transition(s, c, t).unwrap();
        }
        let a = b.build();
        let bad: Vec<u32> = a
            .validate()
            .into_iter()
            .map(|v| match v {
                Violation::ReadPastEnd { state, .. } => state.0,
                other => panic!("generator produced {other}"),
            })
            .collect();
        if bad.is_empty() {
            return a;
        }
        edges.retain(|e| !bad.contains(&e.0));
    }
}

/// A random automaton whose language is not trivially empty, tried a few
/// times before giving up and returning the last attempt.
pub fn random_nonempty<S: AsRef<str>>(
    rng: &mut Rng8,
    alphabet: &Alphabet,
    tapes: &[S],
    shape: Shape,
) -> MultiTapeAutomaton {
    let mut a = random_automaton(rng, alphabet, tapes, shape);
    for _ in 0..8 {
        if !mtap::is_empty(&a).unwrap() {
            break;
        }
        a = random_automaton(rng, alphabet, tapes, shape);
    }
    a
}

/// Tape lists for a pair: each side has 1..=`max` tapes and they share
/// `shared` of them.
pub fn tape_pair(rng: &mut Rng8, shared: usize, max: usize) -> (Vec<String>, Vec<String>) {
    let ka = rng.gen_range(shared.max(1)..=max);
    let kb = rng.gen_range(shared.max(1)..=max);
    let a: Vec<String> = (0..ka).map(|i| format!("A{i}")).collect();
    let mut b: Vec<String> = a.choose_multiple(rng, shared).cloned().collect();
    b.extend((0..kb - shared).map(|i| format!("B{i}")));
    b.shuffle(rng);
    (a, b)
}

/// `{x over tapes(A) ∪ tapes(B) | x|A ∈ la and x|B ∈ lb}`.
pub fn join(
    la: &BTreeSet<NWord>,
    lb: &BTreeSet<NWord>,
    a_tapes: &[String],
    b_tapes: &[String],
) -> BTreeSet<NWord> {
    let shared: Vec<&String> = a_tapes.iter().filter(|t| b_tapes.contains(t)).collect();
    let mut by_key: BTreeMap<NWord, Vec<&NWord>> = BTreeMap::new();
    for y in lb {
        by_key.entry(y.project(&shared)).or_default().push(y);
    }
    let mut out = BTreeSet::new();
    for x in la {
        if let Some(ys) = by_key.get(&x.project(&shared)) {
            for y in ys {
                let mut z = x.clone();
                for (t, w) in y.iter() {
                    z.set(t, w);
                }
                out.insert(z);
            }
        }
    }
    out
}
