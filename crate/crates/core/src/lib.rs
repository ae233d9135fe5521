//! Regular right ideals: the most complex witness stream `R_n`, the automaton
//! operations needed to measure its complexities, atoms and the átomaton, and
//! a harness that checks each complexity claim mechanically.
//!
//! States are 0-based in code and 1-based in every human-facing form (JSON,
//! DOT, `Display`).

pub mod atoms;
pub mod automaton;
pub mod error;
pub mod io;
pub mod ops;
pub mod oracle;
pub mod stateset;
pub mod transform;
pub mod verify;
pub mod witnesses;

pub use automaton::{Alphabet, Determinized, Dfa, Nfa, Word, DEFAULT_SUBSET_CAP};
pub use error::{Error, Result};
pub use stateset::{StateId, StateSet};
pub use transform::Transformation;
