//! Direct evaluation of formulas over decoded values, with no automata
//! involved. Used as an independent check on compilation.

use std::collections::BTreeMap;

use super::{Formula, Sort, Value};
use crate::error::{Error, Result};
use crate::nword::NWord;

fn signature(name: &str) -> Option<&'static [Sort]> {
    use Sort::*;
    Some(match name {
        "eq" => &[Any, Any],
        "cat" => &[Word, Word, Word],
        "last" => &[Word, Word],
        "len" => &[Seq, Nat],
        "rest" => &[Seq, Seq],
        "dec" => &[Nat, Nat],
        "zero" => &[Nat],
        "size" => &[Seq, Nat],
        "sub" => &[Nat, Seq, Nat],
        _ => return None,
    })
}

fn sorts_of(f: &Formula) -> Result<BTreeMap<String, Sort>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![f];
    while let Some(g) = stack.pop() {
        match g {
            Formula::Pred { name, args } => {
                let sig = signature(name).ok_or_else(|| Error::UnboundPredicate(name.clone()))?;
                if sig.len() != args.len() {
                    return Err(Error::Arity {
                        name: name.clone(),
                        expected: sig.len(),
                        found: args.len(),
                    });
                }
                for (v, &s) in args.iter().zip(sig) {
                    let slot = out.entry(v.clone()).or_insert(s);
                    if *slot == Sort::Any {
                        *slot = s;
                    }
                }
            }
            Formula::Not(h) => stack.push(h),
            Formula::And(l, r) | Formula::Or(l, r) => {
                stack.push(l);
                stack.push(r);
            }
        }
    }
    Ok(out)
}

/// Decodes every variable of `f` from `x`; fails if a value is missing or
/// is not a valid encoding for its sort.
pub fn decode_model(f: &Formula, x: &NWord) -> Result<BTreeMap<String, Value>> {
    sorts_of(f)?
        .into_iter()
        .map(|(v, s)| {
            let raw = x
                .get(&v)
                .ok_or_else(|| Error::WordMismatch(format!("no value for {v}")))?;
            let val = s
                .decode(raw)
                .ok_or_else(|| Error::WordMismatch(format!("{v}={raw} is not a valid {s}")))?;
            Ok((v, val))
        })
        .collect()
}

fn nat(v: &Value) -> usize {
    match v {
        Value::Nat(n) => *n,
        other => panic!("expected a natural, got {other}"),
    }
}

fn seq(v: &Value) -> &[String] {
    match v {
        Value::Seq(s) => s,
        other => panic!("expected a sequence, got {other}"),
    }
}

fn word(v: &Value) -> &str {
    match v {
        Value::Word(w) => w,
        other => panic!("expected a word, got {other}"),
    }
}

fn holds(name: &str, a: &[&Value]) -> bool {
    match name {
        "eq" => a[0].encode() == a[1].encode(),
        "cat" => format!("{}{}", word(a[0]), word(a[1])) == word(a[2]),
        "last" => {
            let z = word(a[0]);
            word(a[1]) == z.chars().last().map(String::from).unwrap_or_default()
        }
        "len" => seq(a[0]).len() >= nat(a[1]),
        "rest" => {
            let x = seq(a[0]);
            !x.is_empty() && x[1..] == *seq(a[1])
        }
        "dec" => nat(a[0]) + 1 == nat(a[1]),
        "zero" => nat(a[0]) == 0,
        "size" => seq(a[0]).len() == nat(a[1]),
        "sub" => {
            let (u, y, m) = (nat(a[0]), seq(a[1]).len(), nat(a[2]));
            y >= m && u == y - m
        }
        _ => unreachable!("signature checked"),
    }
}

/// Truth value of `f` under the assignment encoded by `x`.
pub fn evaluate(f: &Formula, x: &NWord) -> Result<bool> {
    let model = decode_model(f, x)?;
    Ok(eval_in(f, &model))
}

fn eval_in(f: &Formula, m: &BTreeMap<String, Value>) -> bool {
    match f {
        Formula::Pred { name, args } => {
            let vals: Vec<&Value> = args.iter().map(|v| &m[v]).collect();
            holds(name, &vals)
        }
        Formula::Not(g) => !eval_in(g, m),
        Formula::And(l, r) => eval_in(l, m) && eval_in(r, m),
        Formula::Or(l, r) => eval_in(l, m) || eval_in(r, m),
    }
}
