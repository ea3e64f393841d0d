use std::collections::BTreeMap;

use super::{Environment, Formula, Sort};
use crate::automaton::MultiTapeAutomaton;
use crate::domain::{add_tapes, restrict_domain, TapeDomain};
use crate::error::{Error, Result};
use crate::intersection::{intersect, IntersectOptions, IntersectStats, PathMode};
use crate::ops::{complement, rename_tapes, trim, union};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompileOptions {
    /// Delay bound of every conjunction; `None` is unbounded.
    pub max_delay: Option<usize>,
    pub max_states: Option<usize>,
    /// Applies to the outermost conjunction only.
    pub stop_on_accept: bool,
    pub paths: PathMode,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions {
            max_delay: Some(0),
            max_states: None,
            stop_on_accept: false,
            paths: PathMode::Shortest,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Compiled {
    pub automaton: MultiTapeAutomaton,
    pub sorts: BTreeMap<String, Sort>,
    /// One entry per conjunction, in the order they were built.
    pub intersections: Vec<IntersectStats>,
}

/// Each variable gets the most specific sort among its argument positions.
/// Two different specific sorts for one variable are an error.
pub fn infer_sorts(f: &Formula, env: &Environment) -> Result<BTreeMap<String, Sort>> {
    let mut out: BTreeMap<String, Sort> = BTreeMap::new();
    let mut stack = vec![f];
    while let Some(g) = stack.pop() {
        match g {
            Formula::Pred { name, args } => {
                let b = env
                    .get(name)
                    .ok_or_else(|| Error::UnboundPredicate(name.clone()))?;
                if b.arity() != args.len() {
                    return Err(Error::Arity {
                        name: name.clone(),
                        expected: b.arity(),
                        found: args.len(),
                    });
                }
                for (v, &s) in args.iter().zip(&b.sorts) {
                    let slot = out.entry(v.clone()).or_insert(s);
                    match (*slot, s) {
                        (old, new) if old == new => {}
                        (Sort::Any, new) => *slot = new,
                        (_, Sort::Any) => {}
                        (old, new) => {
                            return Err(Error::SortConflict {
                                var: v.clone(),
                                first: old.to_string(),
                                second: new.to_string(),
                            })
                        }
                    }
                }
            }
            Formula::Not(h) => stack.push(h),
            Formula::And(l, r) | Formula::Or(l, r) => {
                stack.push(r);
                stack.push(l);
            }
        }
    }
    Ok(out)
}

struct Compiler<'a> {
    env: &'a Environment,
    sorts: BTreeMap<String, Sort>,
    opts: CompileOptions,
    stats: Vec<IntersectStats>,
}

impl Compiler<'_> {
    fn restrict(&self, a: &MultiTapeAutomaton) -> Result<MultiTapeAutomaton> {
        let domains: BTreeMap<String, TapeDomain> = a
            .tapes()
            .iter()
            .filter_map(|t| match self.sorts.get(t) {
                Some(Sort::Any) | None => None,
                Some(s) => Some((t.clone(), s.domain(a.alphabet()))),
            })
            .collect();
        restrict_domain(a, &domains)
    }

    fn node(&mut self, f: &Formula, root: bool) -> Result<MultiTapeAutomaton> {
        match f {
            Formula::Pred { name, args } => {
                let b = self
                    .env
                    .get(name)
                    .ok_or_else(|| Error::UnboundPredicate(name.clone()))?;
                let mapping = b
                    .template
                    .tapes()
                    .iter()
                    .cloned()
                    .zip(args.iter().cloned())
                    .collect();
                let a = rename_tapes(&b.template, &mapping)?;
                self.restrict(&a)
            }
            Formula::Not(g) => {
                let a = self.node(g, false)?;
                self.restrict(&complement(&a)?)
            }
            Formula::Or(l, r) => {
                let a = self.node(l, false)?;
                let b = self.node(r, false)?;
                let a_extra: Vec<String> = b
                    .tapes()
                    .iter()
                    .filter(|t| a.tape_index(t).is_none())
                    .cloned()
                    .collect();
                let b_extra: Vec<String> = a
                    .tapes()
                    .iter()
                    .filter(|t| b.tape_index(t).is_none())
                    .cloned()
                    .collect();
                let a = self.restrict(&add_tapes(&a, &a_extra)?)?;
                let b = self.restrict(&add_tapes(&b, &b_extra)?)?;
                union(&a, &b)
            }
            Formula::And(l, r) => {
                let a = self.node(l, false)?;
                let b = self.node(r, false)?;
                let c = intersect(
                    &a,
                    &b,
                    IntersectOptions {
                        max_states: self.opts.max_states,
                        max_delay: self.opts.max_delay,
                        stop_on_accept: root && self.opts.stop_on_accept,
                        paths: self.opts.paths,
                    },
                )?;
                self.stats.push(c.stats);
                Ok(trim(&c.automaton))
            }
        }
    }
}

/// An automaton over the formula's variables whose accepted words encode
/// models of `f`. Exact when every conjunction shares at most one variable
/// and the delay bound is zero or more; an under-approximation otherwise.
pub fn compile(f: &Formula, env: &Environment, opts: CompileOptions) -> Result<Compiled> {
    let sorts = infer_sorts(f, env)?;
    let mut c = Compiler {
        env,
        sorts,
        opts,
        stats: Vec::new(),
    };
    let automaton = c.node(f, true)?;
    Ok(Compiled {
        automaton,
        sorts: c.sorts,
        intersections: c.stats,
    })
}
