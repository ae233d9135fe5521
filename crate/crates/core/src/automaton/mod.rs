//! Automaton data model and the fundamental constructions.

mod alphabet;
mod dfa;
mod minimize;
mod nfa;

pub use alphabet::{Alphabet, Word};
pub use dfa::Dfa;
pub use nfa::{Determinized, Nfa, DEFAULT_SUBSET_CAP};
