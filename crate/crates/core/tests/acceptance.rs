//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines are always printed; exits nonzero on any FAIL.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{ab, join, random_automaton, random_nonempty, rng, tape_pair, Shape};
use mtap::builders::{aut_any_x, aut_any_y, aut_cat, aut_l1, aut_l2, aut_l3, aut_l4};
use mtap::enumerate::{accepted_patterns, all_nwords, bounded_language, enumerate_language};
use mtap::experiments::{run_table1, DEFAULT_MAX_STATES};
use mtap::theory::Value;
use mtap::{
    async_next, complement, complement_approx, determinize_approx, end_reading, intersect,
    DelayedState, IntersectOptions, NWord, PathMode, StateId, Transition, END,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, ok: impl Into<String>, bad: impl Into<String>) -> Outcome {
    if cond {
        Ok(ok.into())
    } else {
        Err(bad.into())
    }
}

fn table1() -> Outcome {
    let start = Instant::now();
    let rows = run_table1(DEFAULT_MAX_STATES).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let outcomes: String = rows.iter().map(|r| r.outcome()).collect();
    let truncated: Vec<&str> = rows
        .iter()
        .filter(|r| r.truncated)
        .map(|r| r.name)
        .collect();
    check(
        outcomes == "NNYYYNNN" && truncated.is_empty() && elapsed < Duration::from_secs(300),
        format!("outcomes {outcomes} in {:.2}s", elapsed.as_secs_f64()),
        format!(
            "outcomes {outcomes}, capped rows {truncated:?}, {:.2}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn finite_intersections() -> Outcome {
    let unbounded = IntersectOptions::default();
    let c12 = intersect(&aut_l1(), &aut_l2(), unbounded).map_err(|e| e.to_string())?;
    let l12 = bounded_language(&c12.automaton, 8).map_err(|e| e.to_string())?;
    let c34 = intersect(&aut_l3(), &aut_l4(), unbounded).map_err(|e| e.to_string())?;
    let l34 = bounded_language(&c34.automaton, 8).map_err(|e| e.to_string())?;
    let e12: BTreeSet<NWord> = [NWord::new([("X", "abcabc"), ("Y", "abcabca")])].into();
    let e34: BTreeSet<NWord> = [NWord::new([("X", "ab"), ("Y", "xyz")])].into();
    check(
        l12 == e12 && l34 == e34,
        format!(
            "L1,2 = {{{}}}, L3,4 = {{{}}}",
            e12.first().unwrap(),
            e34.first().unwrap()
        ),
        format!("L1,2 = {l12:?}, L3,4 = {l34:?}"),
    )
}

fn golden_async_next() -> Outcome {
    let tr = |s, c, t| Transition::new(StateId(s), c, StateId(t));
    let ds = |q, delays| DelayedState {
        state: StateId(q),
        delays,
    };
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
    .into();
    let got: BTreeSet<DelayedState> = async_next(&aut_cat(), StateId(1), PathMode::Shortest)
        .map_err(|e| e.to_string())?
        .into_iter()
        .collect();
    check(
        got == expect,
        "7 delayed states, exact",
        format!("got {} states: {got:?}", got.len()),
    )
}

fn incompleteness() -> Outcome {
    let (ax, ay) = (aut_any_x(), aut_any_y());
    let c = intersect(&ax, &ay, IntersectOptions::default()).map_err(|e| e.to_string())?;
    let got = enumerate_language(&c.automaton, 4).map_err(|e| e.to_string())?;
    let mut expect = BTreeSet::new();
    for n in 0..=4 {
        let w = "a".repeat(n);
        expect.insert(NWord::new([("X", w.as_str()), ("Y", "")]));
        expect.insert(NWord::new([("X", ""), ("Y", w.as_str())]));
    }
    let truth: BTreeSet<NWord> = enumerate_language(&ax, 4)
        .map_err(|e| e.to_string())?
        .intersection(&enumerate_language(&ay, 4).map_err(|e| e.to_string())?)
        .cloned()
        .collect();
    check(
        got == expect && got.is_subset(&truth) && got.len() < truth.len(),
        format!("{} of {} bounded words found", got.len(), truth.len()),
        format!("got {got:?}"),
    )
}

fn soundness_suite() -> Outcome {
    let mut violations = Vec::new();
    let mut nonempty = 0;
    for i in 0..200u64 {
        let mut r = rng(0x7e0_0000 + i);
        let shared = (i % 3) as usize;
        let (ta, tb) = tape_pair(&mut r, shared, 3);
        let a = random_nonempty(&mut r, &ab(), &ta, Shape::default());
        let b = random_nonempty(&mut r, &ab(), &tb, Shape::default());
        let d = (i % 3) as usize;
        let opts = IntersectOptions {
            max_delay: Some(d),
            max_states: Some(20_000),
            ..Default::default()
        };
        let c = intersect(&a, &b, opts).map_err(|e| e.to_string())?;
        let la = bounded_language(&a, 3).map_err(|e| e.to_string())?;
        let lb = bounded_language(&b, 3).map_err(|e| e.to_string())?;
        // Each pattern is a product of per-tape word sets, so it lies in the
        // join exactly when its projections lie in the operand languages.
        let patterns = accepted_patterns(&c.automaton, 3).map_err(|e| e.to_string())?;
        if !patterns.is_empty() {
            nonempty += 1;
        }
        for p in &patterns {
            let bad = p
                .expand(&ta, &ab(), 3)
                .into_iter()
                .find(|x| !la.contains(x))
                .or_else(|| {
                    p.expand(&tb, &ab(), 3)
                        .into_iter()
                        .find(|x| !lb.contains(x))
                });
            if let Some(x) = bad {
                violations.push(format!("pair {i} (d={d}): {x} from {}", p.prefix));
                break;
            }
        }
    }
    check(
        violations.is_empty(),
        format!("200 pairs, 0 violations, {nonempty} with nonempty results"),
        format!(
            "{} violations, first {}",
            violations.len(),
            violations.first().map_or("", String::as_str)
        ),
    )
}

fn completeness_suite() -> Outcome {
    let mut violations = Vec::new();
    let mut words = 0;
    for i in 0..100u64 {
        let mut r = rng(0x1e_0000 + i);
        let (ta, tb) = tape_pair(&mut r, 1, 3);
        let a = end_reading(&random_nonempty(&mut r, &ab(), &ta, Shape::default()))
            .map_err(|e| e.to_string())?;
        let b = end_reading(&random_nonempty(&mut r, &ab(), &tb, Shape::default()))
            .map_err(|e| e.to_string())?;
        let c =
            intersect(&a, &b, IntersectOptions::with_delay(Some(0))).map_err(|e| e.to_string())?;
        let lc = bounded_language(&c.automaton, 3).map_err(|e| e.to_string())?;
        let truth = join(
            &bounded_language(&a, 3).map_err(|e| e.to_string())?,
            &bounded_language(&b, 3).map_err(|e| e.to_string())?,
            &ta,
            &tb,
        );
        words += truth.len();
        if lc != truth {
            violations.push(format!(
                "pair {i}: {} found, {} expected",
                lc.len(),
                truth.len()
            ));
        }
    }
    check(
        violations.is_empty(),
        format!("100 pairs, 0 violations, {words} bounded words compared"),
        format!(
            "{} violations, first {}",
            violations.len(),
            violations.first().map_or("", String::as_str)
        ),
    )
}

fn complement_suite() -> Outcome {
    let mut violations = Vec::new();
    for i in 0..100u64 {
        let mut r = rng(0xc0_0000 + i);
        let k = 1 + (i % 3) as usize;
        let tapes: Vec<String> = (0..k).map(|t| format!("T{t}")).collect();
        let shape = Shape {
            deterministic: true,
            ..Shape::default()
        };
        let a = random_automaton(&mut r, &ab(), &tapes, shape);
        let c = complement(&a).map_err(|e| e.to_string())?;
        let cc = complement(&c).map_err(|e| e.to_string())?;
        let la = enumerate_language(&a, 3).map_err(|e| e.to_string())?;
        let lc = enumerate_language(&c, 3).map_err(|e| e.to_string())?;
        let lcc = enumerate_language(&cc, 3).map_err(|e| e.to_string())?;
        let all: BTreeSet<NWord> = all_nwords(&a, 3).into_iter().collect();
        let expect: BTreeSet<NWord> = all.difference(&la).cloned().collect();
        if !c.is_deterministic() || !c.validate().is_empty() || lc != expect || lcc != la {
            violations.push(format!("automaton {i}"));
        }
    }
    check(
        violations.is_empty(),
        "100 automata, 0 violations",
        format!("{} violations: {violations:?}", violations.len()),
    )
}

fn determinize_suite() -> Outcome {
    let mut violations = Vec::new();
    let mut strict = 0;
    for i in 0..100u64 {
        let mut r = rng(0xde_0000 + i);
        let k = 1 + (i % 2) as usize;
        let tapes: Vec<String> = (0..k).map(|t| format!("T{t}")).collect();
        let a = random_automaton(&mut r, &ab(), &tapes, Shape::default());
        let la = enumerate_language(&a, 3).map_err(|e| e.to_string())?;
        let all: BTreeSet<NWord> = all_nwords(&a, 3).into_iter().collect();
        let co: BTreeSet<NWord> = all.difference(&la).cloned().collect();
        for b in 0..=2 {
            let d = determinize_approx(&a, b).map_err(|e| e.to_string())?;
            let ld = enumerate_language(&d, 3).map_err(|e| e.to_string())?;
            let c = complement_approx(&a, b).map_err(|e| e.to_string())?;
            let lc = enumerate_language(&c, 3).map_err(|e| e.to_string())?;
            if ld.len() < la.len() {
                strict += 1;
            }
            if !d.is_deterministic()
                || !d.validate().is_empty()
                || !ld.is_subset(&la)
                || !lc.is_superset(&co)
            {
                violations.push(format!("automaton {i}, b={b}"));
            }
        }
    }
    check(
        violations.is_empty(),
        format!("300 cases, 0 violations, {strict} strict under-approximations"),
        format!("{} violations: {violations:?}", violations.len()),
    )
}

fn counterexamples() -> Outcome {
    let rows = run_table1(DEFAULT_MAX_STATES).map_err(|e| e.to_string())?;
    let find = |name: &str| rows.iter().find(|r| r.name == name).unwrap();
    let cat0 = find("cat0");
    let y_empty = cat0.model.as_ref().and_then(|m| m.get("Y")) == Some(&Value::Word(String::new()));
    let ice1 = find("tail: ice1").claim_holds == Some(false);
    let ice2 = find("tail: ice2").claim_holds == Some(false);
    check(
        y_empty && ice1 && ice2,
        format!(
            "cat0 witness {}, ice1 and ice2 witnesses falsify their claims",
            cat0.witness.as_ref().unwrap()
        ),
        format!("cat0 y empty: {y_empty}, ice1 falsified: {ice1}, ice2 falsified: {ice2}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("table outcomes", table1),
        ("exact finite intersections", finite_intersections),
        ("golden async_next", golden_async_next),
        ("incompleteness witness", incompleteness),
        ("soundness suite", soundness_suite),
        ("single shared tape completeness suite", completeness_suite),
        ("complement exactness", complement_suite),
        ("approximate determinization suite", determinize_suite),
        ("counterexample decoding", counterexamples),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let t = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {} {name}: {msg} ({t:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {} {name}: {msg} ({t:.1}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
