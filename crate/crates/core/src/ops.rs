//! Boolean operations via the direct product, concatenation and star via
//! ε-NFAs, and reversal, each returning a minimal DFA.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::automaton::{Dfa, Nfa, DEFAULT_SUBSET_CAP};
use crate::error::{Error, Result};
use crate::stateset::{StateId, StateSet};
use crate::transform::Transformation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BooleanOp {
    Union,
    Intersection,
    Difference,
    SymmetricDifference,
}

impl BooleanOp {
    pub const ALL: [BooleanOp; 4] = [
        BooleanOp::Union,
        BooleanOp::Intersection,
        BooleanOp::Difference,
        BooleanOp::SymmetricDifference,
    ];

    /// Is a pair state final, given finality in the left and right factor?
    pub fn select(self, left: bool, right: bool) -> bool {
        match self {
            BooleanOp::Union => left || right,
            BooleanOp::Intersection => left && right,
            BooleanOp::Difference => left && !right,
            BooleanOp::SymmetricDifference => left != right,
        }
    }
}

impl FromStr for BooleanOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "union" => Ok(BooleanOp::Union),
            "intersect" | "intersection" => Ok(BooleanOp::Intersection),
            "diff" | "difference" => Ok(BooleanOp::Difference),
            "symdiff" | "symmetric_difference" => Ok(BooleanOp::SymmetricDifference),
            _ => Err(Error::input(format!("unknown boolean operation '{s}'"))),
        }
    }
}

impl fmt::Display for BooleanOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BooleanOp::Union => "union",
            BooleanOp::Intersection => "intersect",
            BooleanOp::Difference => "diff",
            BooleanOp::SymmetricDifference => "symdiff",
        })
    }
}

/// The full `m × n` product automaton. Pair `(i, j)` is state `i * n + j`.
#[derive(Debug, Clone)]
pub struct DirectProduct {
    pub dfa: Dfa,
    pub left_states: usize,
    pub right_states: usize,
    /// Row of the left factor's final sink, when both factors have a unique
    /// final sink.
    pub h: Option<StateSet>,
    /// Column of the right factor's final sink, under the same condition.
    pub v: Option<StateSet>,
}

impl DirectProduct {
    pub fn pair(&self, i: usize, j: usize) -> StateId {
        StateId(i * self.right_states + j)
    }

    pub fn unpair(&self, q: StateId) -> (usize, usize) {
        (q.index() / self.right_states, q.index() % self.right_states)
    }

    /// Finals chosen by a selector on (final in left, final in right).
    pub fn finals_for(&self, left: &Dfa, right: &Dfa, op: BooleanOp) -> StateSet {
        let n = self.right_states;
        StateSet::from_indices(
            self.dfa.n(),
            (0..self.dfa.n()).filter(|&q| op.select(left.is_final(q / n), right.is_final(q % n))),
        )
    }
}

fn unique_final_sink(d: &Dfa) -> Option<usize> {
    let mut finals = d.finals().iter();
    match (finals.next(), finals.next()) {
        (Some(f), None) if (0..d.alphabet().len()).all(|x| d.step(f, x) == f) => Some(f),
        _ => None,
    }
}

pub fn direct_product(left: &Dfa, right: &Dfa) -> Result<DirectProduct> {
    left.check_same_alphabet(right)?;
    let (m, n) = (left.n(), right.n());
    let delta = (0..left.alphabet().len())
        .map(|x| {
            Transformation::new(
                (0..m * n)
                    .map(|q| left.step(q / n, x) * n + right.step(q % n, x))
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let initial = StateId(left.initial().index() * n + right.initial().index());
    let dfa = Dfa::new(left.alphabet().clone(), delta, initial, StateSet::empty(m * n))?;
    let (h, v) = match (unique_final_sink(left), unique_final_sink(right)) {
        (Some(fl), Some(fr)) => (
            Some(StateSet::from_indices(m * n, (0..n).map(|j| fl * n + j))),
            Some(StateSet::from_indices(m * n, (0..m).map(|i| i * n + fr))),
        ),
        _ => (None, None),
    };
    Ok(DirectProduct {
        dfa,
        left_states: m,
        right_states: n,
        h,
        v,
    })
}

/// Minimal DFA of `L(left) ∘ L(right)`.
pub fn boolean(left: &Dfa, right: &Dfa, op: BooleanOp) -> Result<Dfa> {
    let product = direct_product(left, right)?;
    let finals = product.finals_for(left, right, op);
    Ok(product.dfa.with_finals(finals)?.minimize())
}

/// Minimal DFA of `L(left) · L(right)`, via the ε-NFA with an ε-edge from each
/// final state of `left` to the initial state of `right`.
pub fn concat(left: &Dfa, right: &Dfa) -> Result<Dfa> {
    concat_with_cap(left, right, DEFAULT_SUBSET_CAP)
}

pub fn concat_with_cap(left: &Dfa, right: &Dfa, cap: usize) -> Result<Dfa> {
    left.check_same_alphabet(right)?;
    let (m, n) = (left.n(), right.n());
    let total = m + n;
    let eta = (0..left.alphabet().len())
        .map(|x| {
            (0..m)
                .map(|q| StateSet::singleton(total, left.step(q, x)))
                .chain((0..n).map(|q| StateSet::singleton(total, m + right.step(q, x))))
                .collect()
        })
        .collect();
    let mut eps = vec![StateSet::empty(total); total];
    for f in left.finals().iter() {
        eps[f].insert(m + right.initial().index());
    }
    let nfa = Nfa::new(
        left.alphabet().clone(),
        eta,
        Some(eps),
        StateSet::singleton(total, left.initial().index()),
        StateSet::from_indices(total, right.finals().iter().map(|q| m + q)),
    )?;
    Ok(nfa.determinize(cap)?.dfa.minimize())
}

/// Minimal DFA of `L(d)*`: a fresh initial and final state with the outgoing
/// transitions of the old initial state, and ε-edges from every final state
/// back to the old initial state.
pub fn star(d: &Dfa) -> Result<Dfa> {
    star_with_cap(d, DEFAULT_SUBSET_CAP)
}

pub fn star_with_cap(d: &Dfa, cap: usize) -> Result<Dfa> {
    let n = d.n();
    let s = n;
    let total = n + 1;
    let init = d.initial().index();
    let eta = (0..d.alphabet().len())
        .map(|x| {
            (0..n)
                .map(|q| StateSet::singleton(total, d.step(q, x)))
                .chain(std::iter::once(StateSet::singleton(total, d.step(init, x))))
                .collect()
        })
        .collect();
    let mut eps = vec![StateSet::empty(total); total];
    for f in d.finals().iter() {
        eps[f].insert(init);
    }
    let mut finals = d.finals().with_universe(total);
    finals.insert(s);
    let nfa = Nfa::new(
        d.alphabet().clone(),
        eta,
        Some(eps),
        StateSet::singleton(total, s),
        finals,
    )?;
    Ok(nfa.determinize(cap)?.dfa.minimize())
}

/// Complexity of the reverse language.
pub fn reverse_complexity(d: &Dfa) -> Result<usize> {
    reverse_complexity_with_cap(d, DEFAULT_SUBSET_CAP)
}

pub fn reverse_complexity_with_cap(d: &Dfa, cap: usize) -> Result<usize> {
    Ok(d.minimize().reverse().determinize(cap)?.dfa.complexity())
}
