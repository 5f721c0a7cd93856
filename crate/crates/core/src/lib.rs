//! State, syntactic and atom complexity of suffix-free regular languages.
//!
//! The crate has four layers:
//!
//! * automata values and generic algorithms: [`Transformation`], [`Dfa`],
//!   [`Nfa`], subset construction, Hopcroft minimization and canonical
//!   numbering;
//! * transformation semigroups: closure generation and the suffix-free
//!   classes `Bsf(n)`, `Vsf(n)`, `Wsf(n)`;
//! * the regular operations (star, product, reversal, boolean operations,
//!   dialects) and atoms;
//! * the witness families and a verification harness that compares
//!   computed complexities with closed-form bounds.
//!
//! Data-parallel sweeps go through [`Exec`]; with the default `parallel`
//! feature they run on rayon, otherwise sequentially. Results never depend
//! on the strategy.

pub mod atoms;
pub mod classes;
pub mod dfa;
pub mod error;
pub mod exec;
pub mod minimize;
pub mod nfa;
pub mod ops;
pub mod semigroup;
pub mod state_set;
pub mod transformation;
pub mod verify;
pub mod witnesses;

pub use classes::{in_bsf, in_vsf, in_wsf, NamedTransformation, SuffixFreeClass};
pub use dfa::Dfa;
pub use error::{Error, Result};
pub use exec::Exec;
pub use minimize::{is_isomorphic, minimize, quotient_complexity};
pub use nfa::{determinize, Nfa};
pub use ops::{BooleanOp, PartialPermutation};
pub use semigroup::{generate, transition_semigroup, StatePair, TransitionSemigroup};
pub use state_set::StateSet;
pub use transformation::{zero_path, Transformation, ZeroPath};

/// `delta_w` for a non-empty word over the alphabet of `d`.
pub fn word_transformation(d: &Dfa, word: &str) -> Result<Transformation> {
    d.word_transformation(word)
}
