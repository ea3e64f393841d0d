//! Ready-made automata: equality and concatenation, the any-pair automata, the four
//! finite-intersection languages and the predicates of the sequence theory.
//!
//! Data encoding used by the predicates, over the alphabet `{#, a, b}`:
//! naturals are unary (`aaa` is 3), a sequence is a concatenation of
//! elements each terminated by `#` (`ab#a#` has two elements), and plain
//! words range over `{a, b}`.

use crate::automaton::{Alphabet, AutomatonBuilder, MultiTapeAutomaton, END};

/// States are `(id, tape)` with `None` marking the single final state; each
/// transition row fans out over the characters of its symbol string.
fn table(
    name: &str,
    alphabet: &Alphabet,
    tapes: &[&str],
    states: &[(u32, Option<&str>)],
    trans: &[(u32, &str, u32)],
) -> MultiTapeAutomaton {
    let mut b = AutomatonBuilder::new(name, alphabet.clone(), tapes).expect("static tapes");
    for &(id, tape) in states {
        b.add_state(id, tape).expect("static state");
        if tape.is_none() {
            b.set_final(id).expect("declared");
        }
    }
    b.set_initial(states[0].0).expect("declared");
    for &(src, symbols, dst) in trans {
        for c in symbols.chars() {
            b.add_transition(src, c, dst).expect("static transition");
        }
    }
    b.build()
}

fn alphabet(symbols: &str) -> Alphabet {
    Alphabet::from_str_symbols(symbols).expect("static alphabet")
}

/// `{#, a, b}`, shared by every predicate of the sequence theory.
pub fn theory_alphabet() -> Alphabet {
    alphabet("#ab")
}

/// Equality of the words on X and Y, for words over `letters`.
///
/// State 1 reads X; for the i-th letter, state `2 + i` checks it on Y;
/// the next two states check both end markers.
pub fn eq_over(alphabet: &Alphabet, letters: &[char]) -> MultiTapeAutomaton {
    let mut b = AutomatonBuilder::new("eq", alphabet.clone(), &["X", "Y"]).expect("static tapes");
    let k = letters.len() as u32;
    b.add_state(1, Some("X")).unwrap().set_initial(1).unwrap();
    for (i, &c) in letters.iter().enumerate() {
        let s = 2 + i as u32;
        b.add_state(s, Some("Y")).unwrap();
        b.add_transition(1, c, s).unwrap();
        b.add_transition(s, c, 1).unwrap();
    }
    b.add_state(k + 2, Some("Y")).unwrap();
    b.add_state(k + 3, None).unwrap().set_final(k + 3).unwrap();
    b.add_transition(1, END, k + 2).unwrap();
    b.add_transition(k + 2, END, k + 3).unwrap();
    b.build()
}

/// Z is the concatenation of X and Y, for words over `letters`.
pub fn cat_over(alphabet: &Alphabet, letters: &[char]) -> MultiTapeAutomaton {
    let mut b =
        AutomatonBuilder::new("cat", alphabet.clone(), &["X", "Y", "Z"]).expect("static tapes");
    let k = letters.len() as u32;
    let (x, y, z_end, fin) = (1, k + 2, 2 * k + 3, 2 * k + 4);
    b.add_state(x, Some("X")).unwrap().set_initial(x).unwrap();
    for (i, &c) in letters.iter().enumerate() {
        let s = 2 + i as u32;
        b.add_state(s, Some("Z")).unwrap();
        b.add_transition(x, c, s).unwrap();
        b.add_transition(s, c, x).unwrap();
    }
    b.add_state(y, Some("Y")).unwrap();
    for (i, &c) in letters.iter().enumerate() {
        let s = k + 3 + i as u32;
        b.add_state(s, Some("Z")).unwrap();
        b.add_transition(y, c, s).unwrap();
        b.add_transition(s, c, y).unwrap();
    }
    b.add_state(z_end, Some("Z")).unwrap();
    b.add_state(fin, None).unwrap().set_final(fin).unwrap();
    b.add_transition(x, END, y).unwrap();
    b.add_transition(y, END, z_end).unwrap();
    b.add_transition(z_end, END, fin).unwrap();
    b.build()
}

/// Pairs of equal words over `{a, b}`.
pub fn aut_eq() -> MultiTapeAutomaton {
    eq_over(&alphabet("ab"), &['a', 'b'])
}

/// Triples ⟨x, y, xy⟩ over `{a, b}`.
pub fn aut_cat() -> MultiTapeAutomaton {
    cat_over(&alphabet("ab"), &['a', 'b'])
}

/// Reads all of X, then all of Y.
pub fn aut_any_x() -> MultiTapeAutomaton {
    table(
        "anyX",
        &alphabet("a"),
        &["X", "Y"],
        &[(1, Some("X")), (2, Some("Y")), (3, None)],
        &[(1, "a", 1), (1, "$", 2), (2, "a", 2), (2, "$", 3)],
    )
}

/// Reads all of Y, then all of X.
pub fn aut_any_y() -> MultiTapeAutomaton {
    table(
        "anyY",
        &alphabet("a"),
        &["X", "Y"],
        &[(1, Some("Y")), (2, Some("X")), (3, None)],
        &[(1, "a", 1), (1, "$", 2), (2, "a", 2), (2, "$", 3)],
    )
}

/// ⟨ab(cab)ⁿc, a(bc)ⁿabca⟩.
pub fn aut_l1() -> MultiTapeAutomaton {
    table(
        "L1",
        &alphabet("abc"),
        &["X", "Y"],
        &[
            (0, Some("Y")),
            (1, Some("X")),
            (2, Some("X")),
            (3, Some("X")),
            (4, Some("X")),
            (5, Some("X")),
            (6, Some("Y")),
            (7, Some("Y")),
            (8, Some("Y")),
            (9, Some("Y")),
            (10, Some("Y")),
            (11, Some("Y")),
            (12, Some("Y")),
            (13, None),
        ],
        &[
            (0, "a", 1),
            (1, "a", 2),
            (2, "b", 3),
            (3, "c", 4),
            (4, "a", 5),
            (5, "b", 6),
            (6, "b", 7),
            (7, "c", 3),
            (4, "$", 8),
            (8, "a", 9),
            (9, "b", 10),
            (10, "c", 11),
            (11, "a", 12),
            (12, "$", 13),
        ],
    )
}

/// ⟨(abc)ⁿ, a(bca)ⁿ⟩.
pub fn aut_l2() -> MultiTapeAutomaton {
    table(
        "L2",
        &alphabet("abc"),
        &["X", "Y"],
        &[
            (0, Some("Y")),
            (1, Some("X")),
            (2, Some("X")),
            (3, Some("X")),
            (4, Some("Y")),
            (5, Some("Y")),
            (6, Some("Y")),
            (7, Some("Y")),
            (8, None),
        ],
        &[
            (0, "a", 1),
            (1, "a", 2),
            (2, "b", 3),
            (3, "c", 4),
            (4, "b", 5),
            (5, "c", 6),
            (6, "a", 1),
            (1, "$", 7),
            (7, "$", 8),
        ],
    )
}

/// ⟨abⁿ, xyⁿz⟩.
pub fn aut_l3() -> MultiTapeAutomaton {
    table(
        "L3",
        &alphabet("abxyz"),
        &["X", "Y"],
        &[
            (0, Some("X")),
            (1, Some("Y")),
            (2, Some("X")),
            (3, Some("Y")),
            (4, Some("Y")),
            (5, Some("Y")),
            (6, None),
        ],
        &[
            (0, "a", 1),
            (1, "x", 2),
            (2, "b", 3),
            (3, "y", 2),
            (2, "$", 4),
            (4, "z", 5),
            (5, "$", 6),
        ],
    )
}

/// ⟨aⁿb, xyⁿz⟩.
pub fn aut_l4() -> MultiTapeAutomaton {
    table(
        "L4",
        &alphabet("abxyz"),
        &["X", "Y"],
        &[
            (0, Some("Y")),
            (1, Some("X")),
            (2, Some("Y")),
            (3, Some("X")),
            (4, Some("Y")),
            (5, Some("Y")),
            (6, None),
        ],
        &[
            (0, "x", 1),
            (1, "a", 2),
            (2, "y", 1),
            (1, "b", 3),
            (3, "$", 4),
            (4, "z", 5),
            (5, "$", 6),
        ],
    )
}

/// Sequence X has at least as many elements as the natural N.
pub fn aut_len() -> MultiTapeAutomaton {
    table(
        "len",
        &theory_alphabet(),
        &["X", "N"],
        &[
            (0, Some("N")),
            (1, Some("X")),
            (2, Some("X")),
            (3, Some("X")),
            (4, Some("X")),
            (5, None),
        ],
        &[
            // one element of X per `a` of N
            (0, "a", 1),
            (1, "ab", 2),
            (1, "#", 0),
            (2, "ab", 2),
            (2, "#", 0),
            // N is used up: the rest of X is any sequence
            (0, "$", 3),
            (3, "ab", 4),
            (3, "#", 3),
            (4, "ab", 4),
            (4, "#", 3),
            (3, "$", 5),
        ],
    )
}

/// Sequence Y is sequence X without its first element; X must be nonempty.
pub fn aut_rest() -> MultiTapeAutomaton {
    table(
        "rest",
        &theory_alphabet(),
        &["X", "Y"],
        &[
            (0, Some("X")),
            (1, Some("X")),
            (2, Some("X")),
            (3, Some("X")),
            (4, Some("Y")),
            (5, Some("Y")),
            (6, Some("Y")),
            (7, Some("Y")),
            (8, None),
        ],
        &[
            // skip the first element
            (0, "ab", 1),
            (0, "#", 2),
            (1, "ab", 1),
            (1, "#", 2),
            // copy, with 2 at an element boundary and 3 inside one
            (2, "a", 4),
            (2, "b", 5),
            (2, "#", 6),
            (2, "$", 7),
            (3, "a", 4),
            (3, "b", 5),
            (3, "#", 6),
            (4, "a", 3),
            (5, "b", 3),
            (6, "#", 2),
            (7, "$", 8),
        ],
    )
}

/// M = N − 1.
pub fn aut_dec() -> MultiTapeAutomaton {
    table(
        "dec",
        &theory_alphabet(),
        &["M", "N"],
        &[
            (0, Some("N")),
            (1, Some("M")),
            (2, Some("N")),
            (3, Some("N")),
            (4, None),
        ],
        &[
            (0, "a", 1),
            (1, "a", 2),
            (2, "a", 1),
            (1, "$", 3),
            (3, "$", 4),
        ],
    )
}

/// M = 0.
pub fn aut_zero() -> MultiTapeAutomaton {
    table(
        "zero",
        &theory_alphabet(),
        &["M"],
        &[(0, Some("M")), (1, None)],
        &[(0, "$", 1)],
    )
}

/// Sequence R has exactly U elements.
pub fn aut_size() -> MultiTapeAutomaton {
    table(
        "size",
        &theory_alphabet(),
        &["R", "U"],
        &[
            (0, Some("R")),
            (1, Some("R")),
            (2, Some("U")),
            (3, Some("U")),
            (4, None),
        ],
        &[
            (0, "ab", 1),
            (1, "ab", 1),
            (0, "#", 2),
            (1, "#", 2),
            (2, "a", 0),
            (0, "$", 3),
            (3, "$", 4),
        ],
    )
}

/// U = |Y| − M, defined only when sequence Y has at least M elements.
///
/// One element of Y is consumed per `a` of M, then one per `a` of U, and Y
/// must end exactly there.
pub fn aut_sub() -> MultiTapeAutomaton {
    table(
        "sub",
        &theory_alphabet(),
        &["U", "Y", "M"],
        &[
            (0, Some("M")),
            (1, Some("Y")),
            (2, Some("Y")),
            (3, Some("U")),
            (4, Some("Y")),
            (5, Some("Y")),
            (6, Some("Y")),
            (7, None),
        ],
        &[
            (0, "a", 1),
            (1, "ab", 2),
            (1, "#", 0),
            (2, "ab", 2),
            (2, "#", 0),
            (0, "$", 3),
            (3, "a", 4),
            (4, "ab", 5),
            (4, "#", 3),
            (5, "ab", 5),
            (5, "#", 3),
            (3, "$", 6),
            (6, "$", 7),
        ],
    )
}

/// U is the last letter of word Z, or empty when Z is empty.
pub fn aut_last() -> MultiTapeAutomaton {
    table(
        "last",
        &theory_alphabet(),
        &["Z", "U"],
        &[
            (0, Some("Z")),
            (1, Some("Z")),
            (2, Some("Z")),
            (3, Some("U")),
            (4, Some("U")),
            (5, Some("U")),
            (6, None),
        ],
        &[
            (0, "a", 1),
            (0, "b", 2),
            (1, "a", 1),
            (1, "b", 2),
            (2, "a", 1),
            (2, "b", 2),
            (0, "$", 5),
            (1, "$", 3),
            (2, "$", 4),
            (3, "a", 5),
            (4, "b", 5),
            (5, "$", 6),
        ],
    )
}

/// Equality over the theory alphabet.
pub fn aut_theory_eq() -> MultiTapeAutomaton {
    let sigma = theory_alphabet();
    eq_over(&sigma, sigma.symbols())
}

/// Concatenation of plain words, embedded in the theory alphabet.
pub fn aut_theory_cat() -> MultiTapeAutomaton {
    cat_over(&theory_alphabet(), &['a', 'b'])
}
