//! The emptiness experiments: two finite language intersections, three valid
//! verification conditions of a `tail` routine over sequences, two invalid
//! variants, and a false claim about concatenation.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use crate::automaton::MultiTapeAutomaton;
use crate::builders;
use crate::error::Result;
use crate::intersection::{intersect, IntersectOptions, PathMode};
use crate::nword::NWord;
use crate::ops::{nonempty_witness, trim};
use crate::theory::{compile, decode_model, evaluate, CompileOptions, Environment, Formula, Value};

pub const DEFAULT_MAX_STATES: usize = 500_000;

#[derive(Clone, Debug)]
pub enum Query {
    /// Intersection of two fixed automata with unbounded delay.
    Languages(fn() -> MultiTapeAutomaton, fn() -> MultiTapeAutomaton),
    /// Satisfiability of `query`, the negation of the claim being checked.
    Formula {
        query: Formula,
        claim: Formula,
        max_delay: Option<usize>,
        stop_on_accept: bool,
    },
}

#[derive(Clone, Debug)]
pub struct Row {
    pub name: &'static str,
    pub query: Query,
    pub expect_empty: bool,
}

#[derive(Clone, Debug)]
pub struct RowResult {
    pub name: &'static str,
    pub intersect_time: Duration,
    pub states: usize,
    pub transitions: usize,
    pub emptiness_time: Duration,
    pub empty: bool,
    pub expect_empty: bool,
    pub witness: Option<NWord>,
    /// The witness decoded against the claim's variables.
    pub model: Option<BTreeMap<String, Value>>,
    /// Truth of the claim under the witness, by direct evaluation.
    pub claim_holds: Option<bool>,
    /// A state cap was reached somewhere in the construction.
    pub truncated: bool,
}

impl RowResult {
    pub fn outcome(&self) -> char {
        if self.empty {
            'Y'
        } else {
            'N'
        }
    }

    pub fn matches(&self) -> bool {
        self.empty == self.expect_empty
    }
}

fn p(name: &str, args: &[&str]) -> Formula {
    Formula::pred(name, args)
}

fn all(fs: Vec<Formula>) -> Formula {
    fs.into_iter()
        .reduce(Formula::and)
        .expect("nonempty conjunction")
}

fn implies(lhs: Formula, rhs: Formula) -> Formula {
    lhs.negate().or(rhs)
}

fn formula_row(name: &'static str, query: Formula, claim: Formula, expect_empty: bool) -> Row {
    Row {
        name,
        query: Query::Formula {
            query,
            claim,
            max_delay: Some(0),
            stop_on_accept: false,
        },
        expect_empty,
    }
}

/// The eight rows in table order.
pub fn table1_rows() -> Vec<Row> {
    // vc0: the base case n = 0, where the result is x itself.
    let vc0 = formula_row(
        "tail: vc0",
        all(vec![
            p("zero", &["M"]),
            p("dec", &["M", "N"]),
            p("len", &["X", "N"]).negate(),
            p("rest", &["X", "Y"]),
        ]),
        implies(
            all(vec![
                p("zero", &["M"]),
                p("dec", &["M", "N"]),
                p("rest", &["X", "Y"]),
            ]),
            p("len", &["X", "N"]),
        ),
        true,
    );
    let vc1 = formula_row(
        "tail: vc1",
        all(vec![
            p("len", &["Y", "M"]),
            p("rest", &["X", "Y"]),
            p("dec", &["M", "N"]),
            p("len", &["X", "N"]).negate(),
        ]),
        implies(
            all(vec![
                p("len", &["Y", "M"]),
                p("rest", &["X", "Y"]),
                p("dec", &["M", "N"]),
            ]),
            p("len", &["X", "N"]),
        ),
        true,
    );
    let vc2_hyp = vec![
        p("size", &["R", "U"]),
        p("sub", &["U", "Y", "M"]),
        p("rest", &["X", "Y"]),
        p("dec", &["M", "N"]),
        p("sub", &["V", "X", "N"]),
    ];
    let mut vc2_query = vc2_hyp.clone();
    vc2_query.push(p("size", &["R", "V"]).negate());
    let vc2 = formula_row(
        "tail: vc2",
        all(vc2_query),
        implies(all(vc2_hyp), p("size", &["R", "V"])),
        true,
    );

    let ice1 = formula_row(
        "tail: ice1",
        all(vec![
            p("len", &["Y", "M"]),
            p("rest", &["X", "Y"]),
            p("len", &["X", "N"]),
        ]),
        implies(
            all(vec![p("len", &["Y", "M"]), p("rest", &["X", "Y"])]),
            p("len", &["X", "N"]).negate(),
        ),
        false,
    );
    let ice2_hyp = vec![
        p("size", &["R", "U"]),
        p("sub", &["U", "Y", "M"]),
        p("rest", &["X", "Y"]),
    ];
    let mut ice2_query = ice2_hyp.clone();
    ice2_query.push(p("size", &["R", "V"]).negate());
    let ice2 = formula_row(
        "tail: ice2",
        all(ice2_query),
        implies(all(ice2_hyp), p("size", &["R", "V"])),
        false,
    );

    let cat_hyp = vec![
        p("cat", &["X", "Y", "Z"]),
        p("last", &["Z", "U"]),
        p("last", &["Y", "V"]),
    ];
    let mut cat_query = cat_hyp.clone();
    cat_query.push(p("eq", &["U", "V"]).negate());
    let cat0 = Row {
        name: "cat0",
        query: Query::Formula {
            query: all(cat_query),
            claim: implies(all(cat_hyp), p("eq", &["U", "V"])),
            max_delay: Some(0),
            stop_on_accept: true,
        },
        expect_empty: false,
    };

    vec![
        Row {
            name: "L1,2",
            query: Query::Languages(builders::aut_l1, builders::aut_l2),
            expect_empty: false,
        },
        Row {
            name: "L3,4",
            query: Query::Languages(builders::aut_l3, builders::aut_l4),
            expect_empty: false,
        },
        vc0,
        vc1,
        vc2,
        ice1,
        ice2,
        cat0,
    ]
}

pub fn run_row(row: &Row, env: &Environment, max_states: usize) -> Result<RowResult> {
    let start = Instant::now();
    let (automaton, truncated, claim) = match &row.query {
        Query::Languages(a, b) => {
            let opts = IntersectOptions {
                max_states: Some(max_states),
                max_delay: None,
                stop_on_accept: false,
                paths: PathMode::Shortest,
            };
            let c = intersect(&a(), &b(), opts)?;
            (trim(&c.automaton), c.stats.state_limit_hit, None)
        }
        Query::Formula {
            query,
            claim,
            max_delay,
            stop_on_accept,
        } => {
            let opts = CompileOptions {
                max_delay: *max_delay,
                max_states: Some(max_states),
                stop_on_accept: *stop_on_accept,
                paths: PathMode::Shortest,
            };
            let c = compile(query, env, opts)?;
            let truncated = c.intersections.iter().any(|s| s.state_limit_hit);
            (c.automaton, truncated, Some(claim))
        }
    };
    let intersect_time = start.elapsed();
    let start = Instant::now();
    let witness = nonempty_witness(&automaton)?;
    let emptiness_time = start.elapsed();
    let (model, claim_holds) = match (&witness, claim) {
        (Some(w), Some(f)) => (Some(decode_model(f, w)?), Some(evaluate(f, w)?)),
        _ => (None, None),
    };
    Ok(RowResult {
        name: row.name,
        intersect_time,
        states: automaton.num_states(),
        transitions: automaton.num_transitions(),
        emptiness_time,
        empty: witness.is_none(),
        expect_empty: row.expect_empty,
        witness,
        model,
        claim_holds,
        truncated,
    })
}

pub fn run_table1(max_states: usize) -> Result<Vec<RowResult>> {
    let env = Environment::sequences();
    table1_rows()
        .iter()
        .map(|r| run_row(r, &env, max_states))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_shapes() {
        let rows = table1_rows();
        let names: Vec<&str> = rows.iter().map(|r| r.name).collect();
        assert_eq!(
            names,
            [
                "L1,2",
                "L3,4",
                "tail: vc0",
                "tail: vc1",
                "tail: vc2",
                "tail: ice1",
                "tail: ice2",
                "cat0"
            ]
        );
        let expected: String = rows
            .iter()
            .map(|r| if r.expect_empty { 'Y' } else { 'N' })
            .collect();
        assert_eq!(expected, "NNYYYNNN");
        for r in &rows {
            if let Query::Formula { query, claim, .. } = &r.query {
                assert_eq!(query.vars(), claim.vars(), "{}", r.name);
            }
        }
    }

    #[test]
    fn conjunction_sharing() {
        let rows = table1_rows();
        let sharing = |i: usize| match &rows[i].query {
            Query::Formula { query, .. } => query.single_shared_tape(),
            _ => unreachable!(),
        };
        assert!(sharing(2));
        // The two inductive conditions relate their variables in a cycle,
        // so some conjunction must share two of them.
        assert!(!sharing(3));
        assert!(!sharing(4));
    }

    #[test]
    fn small_rows_agree() {
        let env = Environment::sequences();
        for r in table1_rows()
            .iter()
            .filter(|r| matches!(r.name, "L1,2" | "L3,4" | "tail: vc0" | "tail: ice1"))
        {
            let res = run_row(r, &env, DEFAULT_MAX_STATES).unwrap();
            assert!(res.matches(), "{}", r.name);
            assert!(!res.truncated);
        }
    }
}
