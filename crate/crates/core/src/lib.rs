//! Asynchronous multi-tape automata: each state reads from one tape, and
//! words on different tapes are consumed independently. Provides the
//! classical constructions, delay-bounded intersection, an approximate
//! determinization, and a decision procedure for quantifier-free formulas
//! over rational predicates.

pub mod automaton;
pub mod builders;
pub mod determinize;
pub mod domain;
pub mod enumerate;
pub mod error;
pub mod experiments;
mod explore;
pub mod intersection;
pub mod nword;
pub mod ops;
pub mod run;
pub mod textio;
pub mod theory;

pub use automaton::{
    Alphabet, AutomatonBuilder, MultiTapeAutomaton, StateId, StateInfo, Transition, Violation, END,
};
pub use determinize::{complement_approx, determinize_approx};
pub use domain::{add_tapes, end_reading, restrict_domain, TapeDomain};
pub use error::{Error, Result};
pub use intersection::{
    async_next, intersect, CompoundState, DelayedState, IntersectOptions, IntersectStats,
    Intersection, PathMode,
};
pub use nword::NWord;
pub use ops::{complement, is_empty, nonempty_witness, rename_tapes, trim, union};
pub use run::{accepting_run, accepts, Configuration, RunWitness};
