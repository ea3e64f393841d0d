//! Line-based text formats for automata, n-words and formulas.
//!
//! ```text
//! automaton eq
//! alphabet a b
//! tapes X Y
//! state 1 tape X initial
//! state 5 final
//! trans 1 $ 4
//! ```
//!
//! A line whose first non-blank character is `#` is a comment.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::automaton::{Alphabet, AutomatonBuilder, MultiTapeAutomaton, END};
use crate::error::{Error, Result};
use crate::nword::NWord;
use crate::theory::{Environment, Formula, PredicateBinding, Sort};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn single_char(tok: &str, line: usize) -> Result<char> {
    let mut it = tok.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(parse_err(
            line,
            format!("expected a single symbol, found `{tok}`"),
        )),
    }
}

struct StateDecl {
    line: usize,
    id: u32,
    tape: Option<String>,
    initial: bool,
    accepting: bool,
}

pub fn parse_automaton(text: &str) -> Result<MultiTapeAutomaton> {
    let mut name: Option<String> = None;
    let mut alphabet: Option<Alphabet> = None;
    let mut tapes: Option<Vec<String>> = None;
    let mut states: Vec<StateDecl> = Vec::new();
    let mut trans: Vec<(usize, u32, char, u32)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        let id = |tok: &str| -> Result<u32> {
            tok.parse()
                .map_err(|_| parse_err(line, format!("bad state id `{tok}`")))
        };
        match toks[0] {
            "automaton" => {
                if name.is_some() {
                    return Err(parse_err(line, "duplicate `automaton` line"));
                }
                if toks.len() != 2 {
                    return Err(parse_err(line, "expected `automaton NAME`"));
                }
                name = Some(toks[1].to_string());
            }
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(parse_err(line, "duplicate `alphabet` line"));
                }
                let syms = toks[1..]
                    .iter()
                    .map(|t| single_char(t, line))
                    .collect::<Result<Vec<char>>>()?;
                if syms.iter().collect::<std::collections::BTreeSet<_>>().len() != syms.len() {
                    return Err(parse_err(line, "duplicate alphabet symbol"));
                }
                alphabet = Some(Alphabet::new(syms).map_err(|e| parse_err(line, e.to_string()))?);
            }
            "tapes" => {
                if tapes.is_some() {
                    return Err(parse_err(line, "duplicate `tapes` line"));
                }
                tapes = Some(toks[1..].iter().map(|t| t.to_string()).collect());
            }
            "state" => {
                if toks.len() < 2 {
                    return Err(parse_err(line, "expected `state ID ...`"));
                }
                let mut decl = StateDecl {
                    line,
                    id: id(toks[1])?,
                    tape: None,
                    initial: false,
                    accepting: false,
                };
                let mut rest = toks[2..].iter();
                while let Some(&tok) = rest.next() {
                    match tok {
                        "tape" if decl.tape.is_none() => {
                            let t = rest
                                .next()
                                .ok_or_else(|| parse_err(line, "`tape` needs a name"))?;
                            decl.tape = Some(t.to_string());
                        }
                        "initial" if !decl.initial => decl.initial = true,
                        "final" if !decl.accepting => decl.accepting = true,
                        other => return Err(parse_err(line, format!("unexpected `{other}`"))),
                    }
                }
                states.push(decl);
            }
            "trans" => {
                if toks.len() != 4 {
                    return Err(parse_err(line, "expected `trans SRC SYM DST`"));
                }
                trans.push((
                    line,
                    id(toks[1])?,
                    single_char(toks[2], line)?,
                    id(toks[3])?,
                ));
            }
            other => return Err(parse_err(line, format!("unknown declaration `{other}`"))),
        }
    }

    let alphabet = alphabet.ok_or_else(|| parse_err(0, "missing `alphabet` line"))?;
    let tapes = tapes.ok_or_else(|| parse_err(0, "missing `tapes` line"))?;
    if states.is_empty() {
        return Err(parse_err(0, "no states"));
    }
    let mut b = AutomatonBuilder::new(name.unwrap_or_else(|| "automaton".into()), alphabet, &tapes)
        .map_err(|e| parse_err(0, e.to_string()))?;
    for s in &states {
        let at = |e: Error| parse_err(s.line, e.to_string());
        b.add_state(s.id, s.tape.as_deref()).map_err(at)?;
        if s.initial {
            b.set_initial(s.id).map_err(at)?;
        }
        if s.accepting {
            b.set_final(s.id).map_err(at)?;
        }
    }
    for &(line, src, sym, dst) in &trans {
        b.add_transition(src, sym, dst)
            .map_err(|e| parse_err(line, e.to_string()))?;
    }
    let a = b.build();
    a.ensure_valid()?;
    Ok(a)
}

/// Canonical text: sections in a fixed order, states and transitions sorted.
pub fn serialize_automaton(a: &MultiTapeAutomaton) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "automaton {}", a.name());
    let syms: Vec<String> = a.alphabet().symbols().iter().map(char::to_string).collect();
    let _ = writeln!(out, "alphabet {}", syms.join(" "));
    let _ = writeln!(out, "tapes {}", a.tapes().join(" "));
    for (id, info) in a.states() {
        let _ = write!(out, "state {id}");
        if let Some(t) = info.tape {
            let _ = write!(out, " tape {}", a.tapes()[t]);
        }
        if info.initial {
            out.push_str(" initial");
        }
        if info.accepting {
            out.push_str(" final");
        }
        out.push('\n');
    }
    for t in a.transitions() {
        let _ = writeln!(out, "trans {} {} {}", t.source, t.symbol, t.target);
    }
    out
}

/// `X=ab Y=_`, where `_` stands for the empty word.
pub fn parse_nword(text: &str) -> Result<NWord> {
    let mut out = NWord::default();
    let mut col = 1;
    for tok in text.split(' ') {
        if tok.is_empty() {
            col += 1;
            continue;
        }
        let bad = |msg: &str| parse_err(1, format!("column {col}: {msg} in `{tok}`"));
        let (tape, word) = tok
            .split_once('=')
            .ok_or_else(|| bad("expected TAPE=WORD"))?;
        if tape.is_empty() {
            return Err(bad("empty tape name"));
        }
        if out.get(tape).is_some() {
            return Err(bad("tape given twice"));
        }
        let word = if word == "_" { "" } else { word };
        if word.is_empty() && tok.ends_with('=') {
            return Err(bad("write `_` for the empty word"));
        }
        if word.contains(['_', '=', END]) || word.chars().any(char::is_whitespace) {
            return Err(bad("reserved symbol"));
        }
        out.set(tape, word);
        col += tok.chars().count() + 1;
    }
    Ok(out)
}

pub fn serialize_nword(x: &NWord) -> String {
    x.to_string()
}

#[derive(Debug, PartialEq)]
enum Tok<'a> {
    Open,
    Close,
    Atom(&'a str),
}

fn tokenize(text: &str) -> Vec<(usize, usize, Tok<'_>)> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let mut start: Option<usize> = None;
        let bytes: Vec<(usize, char)> = line.char_indices().collect();
        for &(pos, c) in bytes.iter().chain(std::iter::once(&(line.len(), ' '))) {
            let delim = c.is_whitespace() || c == '(' || c == ')';
            if delim {
                if let Some(s) = start.take() {
                    out.push((i + 1, s + 1, Tok::Atom(&line[s..pos])));
                }
                if c == '(' {
                    out.push((i + 1, pos + 1, Tok::Open));
                } else if c == ')' {
                    out.push((i + 1, pos + 1, Tok::Close));
                }
            } else if start.is_none() {
                start = Some(pos);
            }
        }
    }
    out
}

/// Prefix form: `(and (eq X Y) (not (eq X Y)))`.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let toks = tokenize(text);
    let mut pos = 0;
    let f = formula_at(&toks, &mut pos)?;
    if let Some((line, col, t)) = toks.get(pos) {
        return Err(parse_err(
            *line,
            format!("column {col}: trailing input {t:?}"),
        ));
    }
    Ok(f)
}

fn formula_at(toks: &[(usize, usize, Tok<'_>)], pos: &mut usize) -> Result<Formula> {
    let end_line = toks.last().map_or(1, |t| t.0);
    let mut next = |what: &str| -> Result<&(usize, usize, Tok<'_>)> {
        let t = toks.get(*pos).ok_or_else(|| {
            parse_err(
                end_line,
                format!("unexpected end of input, expected {what}"),
            )
        })?;
        *pos += 1;
        Ok(t)
    };
    let (line, col, t) = next("`(`")?;
    if *t != Tok::Open {
        return Err(parse_err(*line, format!("column {col}: expected `(`")));
    }
    let (line, col, head) = next("an operator")?;
    let (line, col) = (*line, *col);
    let head = match head {
        Tok::Atom(h) => *h,
        _ => {
            return Err(parse_err(
                line,
                format!("column {col}: expected an operator"),
            ))
        }
    };
    let f = match head {
        "not" => formula_at(toks, pos)?.negate(),
        "and" | "or" => {
            let l = formula_at(toks, pos)?;
            let r = formula_at(toks, pos)?;
            if head == "and" {
                l.and(r)
            } else {
                l.or(r)
            }
        }
        name => {
            let mut args = Vec::new();
            while let Some((_, _, Tok::Atom(a))) = toks.get(*pos) {
                args.push(a.to_string());
                *pos += 1;
            }
            Formula::pred(name, &args)
        }
    };
    match toks.get(*pos) {
        Some((_, _, Tok::Close)) => {
            *pos += 1;
            Ok(f)
        }
        Some((l, c, _)) => Err(parse_err(*l, format!("column {c}: expected `)`"))),
        None => Err(parse_err(end_line, "unexpected end of input, expected `)`")),
    }
}

/// Reads `NAME.aut` files from `dir`. An optional `sorts` file holds lines
/// `NAME SORT...`; predicates it does not mention get sort `any` throughout.
pub fn load_environment(dir: &Path) -> Result<Environment> {
    let io = |e: std::io::Error| parse_err(0, format!("{}: {e}", dir.display()));
    let mut sorts: BTreeMap<String, Vec<Sort>> = BTreeMap::new();
    let sorts_path = dir.join("sorts");
    if sorts_path.exists() {
        let text = fs::read_to_string(&sorts_path).map_err(io)?;
        for (i, raw) in text.lines().enumerate() {
            let body = raw.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            let mut toks = body.split_whitespace();
            let name = toks.next().unwrap_or_default().to_string();
            let list = toks
                .map(|t| {
                    t.parse::<Sort>()
                        .map_err(|e| parse_err(i + 1, format!("sorts: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            sorts.insert(name, list);
        }
    }
    let mut paths: Vec<_> = fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "aut"))
        .collect();
    paths.sort();
    let mut env = Environment::new();
    for p in paths {
        let name = p
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or_default()
            .to_string();
        let text = fs::read_to_string(&p).map_err(io)?;
        let a = parse_automaton(&text).map_err(|e| match e {
            Error::Parse { line, message } => {
                parse_err(line, format!("{}: {message}", p.display()))
            }
            other => other,
        })?;
        let s = sorts
            .remove(&name)
            .unwrap_or_else(|| vec![Sort::Any; a.tapes().len()]);
        env.insert(PredicateBinding::new(name, a, s)?);
    }
    if let Some(name) = sorts.keys().next() {
        return Err(Error::UnboundPredicate(name.clone()));
    }
    Ok(env)
}

/// Writes `env` in the layout read by [`load_environment`].
pub fn write_environment(env: &Environment, dir: &Path) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let mut sorts = String::new();
    for b in env.bindings() {
        fs::write(
            dir.join(format!("{}.aut", b.name)),
            serialize_automaton(&b.template),
        )?;
        let list: Vec<String> = b.sorts.iter().map(Sort::to_string).collect();
        let _ = writeln!(sorts, "{} {}", b.name, list.join(" "));
    }
    fs::write(dir.join("sorts"), sorts)
}
