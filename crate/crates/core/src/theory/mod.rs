//! Quantifier-free formulas over rational predicates, decided by compiling
//! them to automata: negation becomes complement, disjunction union and
//! conjunction delay-bounded intersection.

mod compile;
mod eval;
mod formula;
mod sort;

use std::collections::BTreeMap;

pub use compile::{compile, infer_sorts, CompileOptions, Compiled};
pub use eval::{decode_model, evaluate};
pub use formula::Formula;
pub use sort::{Sort, Value};

use crate::automaton::MultiTapeAutomaton;
use crate::builders;
use crate::error::{Error, Result};

/// A predicate symbol interpreted by an automaton. The automaton's tapes,
/// in order, are the predicate's argument positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredicateBinding {
    pub name: String,
    pub template: MultiTapeAutomaton,
    pub sorts: Vec<Sort>,
}

impl PredicateBinding {
    pub fn new(
        name: impl Into<String>,
        template: MultiTapeAutomaton,
        sorts: Vec<Sort>,
    ) -> Result<Self> {
        let name = name.into();
        template.ensure_valid()?;
        if sorts.len() != template.tapes().len() {
            return Err(Error::Arity {
                name,
                expected: template.tapes().len(),
                found: sorts.len(),
            });
        }
        Ok(PredicateBinding {
            name,
            template,
            sorts,
        })
    }

    pub fn arity(&self) -> usize {
        self.sorts.len()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Environment {
    bindings: BTreeMap<String, PredicateBinding>,
}

impl Environment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, binding: PredicateBinding) {
        self.bindings.insert(binding.name.clone(), binding);
    }

    pub fn get(&self, name: &str) -> Option<&PredicateBinding> {
        self.bindings.get(name)
    }

    pub fn bindings(&self) -> impl Iterator<Item = &PredicateBinding> + '_ {
        self.bindings.values()
    }

    /// The predicates of the sequence theory over `{#, a, b}`.
    pub fn sequences() -> Self {
        use Sort::*;
        let mut env = Environment::new();
        let table: Vec<(&str, MultiTapeAutomaton, Vec<Sort>)> = vec![
            ("eq", builders::aut_theory_eq(), vec![Any, Any]),
            ("cat", builders::aut_theory_cat(), vec![Word, Word, Word]),
            ("last", builders::aut_last(), vec![Word, Word]),
            ("len", builders::aut_len(), vec![Seq, Nat]),
            ("rest", builders::aut_rest(), vec![Seq, Seq]),
            ("dec", builders::aut_dec(), vec![Nat, Nat]),
            ("zero", builders::aut_zero(), vec![Nat]),
            ("size", builders::aut_size(), vec![Seq, Nat]),
            ("sub", builders::aut_sub(), vec![Nat, Seq, Nat]),
        ];
        for (name, a, sorts) in table {
            env.insert(
                PredicateBinding::new(name, a.with_name(name), sorts)
                    .expect("builtin predicates are valid"),
            );
        }
        env
    }
}
