//! Atoms of a regular language and the átomaton.
//!
//! For a minimal DFA `D` with states `Q`, the átomaton is `D^{RDR}`: reverse,
//! determinize, reverse. Each state of `D^{RD}` is a subset of `Q`, and that
//! subset is the basis of the atom the state stands for.

mod interval;
mod table;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;

pub use interval::{recognize_interval, Interval, IntervalType};
pub use table::{atom_table, AtomTable, TableCell};

use crate::automaton::{Alphabet, Determinized, Dfa, Nfa, DEFAULT_SUBSET_CAP};
use crate::error::{Error, Result};
use crate::stateset::StateSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Atom {
    #[serde(serialize_with = "one_based")]
    pub basis: StateSet,
    #[serde(serialize_with = "one_based")]
    pub cobasis: StateSet,
    pub complexity: Option<usize>,
}

fn one_based<S: serde::Serializer>(s: &StateSet, ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_seq(s.iter().map(|q| q + 1))
}

impl Atom {
    pub fn new(basis: StateSet) -> Self {
        Atom {
            cobasis: basis.complement(),
            basis,
            complexity: None,
        }
    }

    /// Size of the co-basis, `r`.
    pub fn r(&self) -> usize {
        self.cobasis.len()
    }
}

/// The átomaton, with each state labelled by the basis of its atom.
#[derive(Debug, Clone)]
pub struct Atomaton {
    nfa: Nfa,
    labels: Vec<StateSet>,
    index: FxHashMap<StateSet, usize>,
    final_state: usize,
}

impl Atomaton {
    fn from_parts(nfa: Nfa, labels: Vec<StateSet>, final_state: usize) -> Self {
        let index = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        Atomaton {
            nfa,
            labels,
            index,
            final_state,
        }
    }

    pub fn nfa(&self) -> &Nfa {
        &self.nfa
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[StateSet] {
        &self.labels
    }

    pub fn state_of(&self, label: &StateSet) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn initial_labels(&self) -> Vec<&StateSet> {
        self.nfa.initials().iter().map(|i| &self.labels[i]).collect()
    }

    pub fn final_label(&self) -> &StateSet {
        &self.labels[self.final_state]
    }

    /// Atoms in basis order (basis read as a binary number).
    pub fn atoms(&self) -> Vec<Atom> {
        let mut atoms: Vec<Atom> = self.labels.iter().cloned().map(Atom::new).collect();
        atoms.sort_by(|a, b| a.basis.cmp(&b.basis));
        atoms
    }

    /// `A_S^D`: the átomaton started at the atom with basis `S`, determinized.
    pub fn atom_dfa(&self, basis: &StateSet, cap: usize) -> Result<Determinized> {
        let s = self
            .state_of(basis)
            .ok_or_else(|| Error::input(format!("{basis} is not the basis of an atom")))?;
        self.nfa
            .with_initials(StateSet::singleton(self.len(), s))?
            .determinize(cap)
    }

    /// Complexity of the atom with basis `S`: the state count of `A_S^D`. The
    /// átomaton has no empty states and a deterministic reverse, so `A_S^D` is
    /// already minimal.
    pub fn atom_complexity(&self, basis: &StateSet, cap: usize) -> Result<usize> {
        Ok(self.atom_dfa(basis, cap)?.dfa.n())
    }

    /// Every atom with its complexity filled in. Atoms are processed in
    /// parallel; the result order is the basis order of [`Atomaton::atoms`].
    pub fn atoms_with_complexity(&self, cap: usize) -> Result<Vec<Atom>> {
        self.atoms()
            .into_par_iter()
            .map(|mut atom| {
                atom.complexity = Some(self.atom_complexity(&atom.basis, cap)?);
                Ok(atom)
            })
            .collect()
    }

    /// Successor labels of `label` under letter `c`, sorted.
    pub fn successor_labels(&self, label: &StateSet, c: char) -> Result<Vec<StateSet>> {
        let s = self
            .state_of(label)
            .ok_or_else(|| Error::input(format!("{label} is not an átomaton state")))?;
        let x = self.nfa.alphabet().index_of(c)?;
        let mut out: Vec<StateSet> = self
            .nfa
            .successors(s, x)
            .iter()
            .map(|t| self.labels[t].clone())
            .collect();
        out.sort();
        Ok(out)
    }

    /// Number of labels of `self` whose initial flag, final flag, and labelled
    /// successors under every letter coincide with those in `other`.
    pub fn label_agreement(&self, other: &Atomaton) -> usize {
        if self.nfa.alphabet() != other.nfa.alphabet() {
            return 0;
        }
        let letters = self.nfa.alphabet().letters();
        self.labels
            .iter()
            .enumerate()
            .filter(|(i, label)| {
                let Some(j) = other.state_of(label) else {
                    return false;
                };
                self.nfa.initials().contains(*i) == other.nfa.initials().contains(j)
                    && (*i == self.final_state) == (j == other.final_state)
                    && letters.iter().all(|&c| {
                        self.successor_labels(label, c).ok() == other.successor_labels(label, c).ok()
                    })
            })
            .count()
    }

    /// Equality up to renumbering of states, comparing labels.
    pub fn same_labels(&self, other: &Atomaton) -> bool {
        self.len() == other.len() && self.label_agreement(other) == self.len()
    }
}

/// Atomaton of the language of `dfa`. A non-minimal input is minimized first;
/// a minimal one keeps its own state numbering for the labels.
pub fn atomaton(dfa: &Dfa) -> Result<Atomaton> {
    atomaton_with_cap(dfa, DEFAULT_SUBSET_CAP)
}

pub fn atomaton_with_cap(dfa: &Dfa, cap: usize) -> Result<Atomaton> {
    let minimal;
    let dfa = if dfa.complexity() == dfa.n() {
        dfa
    } else {
        minimal = dfa.minimize();
        &minimal
    };
    let rd = dfa.reverse().determinize(cap)?;
    // The initial subset of D^{RD} becomes the unique final state.
    Ok(Atomaton::from_parts(rd.dfa.reverse(), rd.subsets, 0))
}

pub fn atoms_of(dfa: &Dfa) -> Result<Vec<Atom>> {
    Ok(atomaton(dfa)?.atoms())
}

/// Complexity of the atom of `dfa` with the given basis.
pub fn atom_complexity(dfa: &Dfa, basis: &StateSet) -> Result<usize> {
    atomaton(dfa)?.atom_complexity(basis, DEFAULT_SUBSET_CAP)
}

fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul(u128::from(n - i))
            .ok_or(Error::Overflow("binomial coefficient"))?
            / u128::from(i + 1);
    }
    u64::try_from(acc).map_err(|_| Error::Overflow("binomial coefficient"))
}

/// Maximal complexity of an atom with co-basis size `r` of a right ideal of
/// complexity `n`: `2^(n-1)` for `r = 0`, otherwise
/// `1 + sum_{k=1..r} sum_{h=k+1..k+n-r} C(n-1, h-1) C(h-1, k)`.
pub fn atom_bound(n: usize, r: usize) -> Result<u64> {
    if n == 0 || r >= n {
        return Err(Error::input(format!(
            "co-basis size r = {r} out of range 0..={} for n = {n}",
            n.saturating_sub(1)
        )));
    }
    let overflow = || Error::Overflow("atom bound");
    let (n, r) = (n as u64, r as u64);
    if r == 0 {
        return 1u64.checked_shl((n - 1) as u32).filter(|_| n <= 64).ok_or_else(overflow);
    }
    let mut total: u64 = 1;
    for k in 1..=r {
        for h in (k + 1)..=(k + n - r) {
            let term = binomial(n - 1, h - 1)?
                .checked_mul(binomial(h - 1, k)?)
                .ok_or_else(overflow)?;
            total = total.checked_add(term).ok_or_else(overflow)?;
        }
    }
    Ok(total)
}

/// The átomaton of `R_n(a,b,c,d)` built directly from its transition rules,
/// without going through `R_n`. States are the subsets of `Q` containing `n`,
/// initial states those also containing `1`, final state `{n}`.
pub fn closed_form_atomaton_rn(n: usize) -> Result<Atomaton> {
    if n < 3 {
        return Err(Error::input(format!("closed-form átomaton needs n >= 3, got {n}")));
    }
    if n < 4 {
        log::warn!("closed-form átomaton rules are stated for n >= 4; building n = {n}");
    }
    let sink = n - 1;
    let pen = n - 2; // state n-1
    let rn = crate::witnesses::build_rn(n, crate::witnesses::RLetters::Abcd)?;

    let labels: Vec<StateSet> = (0u64..1 << (n - 1))
        .map(|bits| {
            let mut s = StateSet::from_indices(n, (0..n - 1).filter(|&i| bits >> i & 1 == 1));
            s.insert(sink);
            s
        })
        .collect();
    let index: FxHashMap<StateSet, usize> =
        labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
    let m = labels.len();
    let id = |s: &StateSet| index[s];
    let one = |s: &StateSet| StateSet::singleton(m, id(s));
    let pair = |s: &StateSet, t: &StateSet| StateSet::from_indices(m, [id(s), id(t)]);

    let mut eta = vec![vec![StateSet::empty(m); m]; 4];
    for (i, t) in labels.iter().enumerate() {
        // a, b: image of the set under the letter of R_n
        eta[0][i] = one(&rn.letter_map(0).apply_set(t));
        eta[1][i] = one(&rn.letter_map(1).apply_set(t));

        let mut s = t.clone();
        s.remove(0);
        s.remove(pen);
        let with = |extra: &[usize]| {
            let mut u = s.clone();
            for &q in extra {
                u.insert(q);
            }
            u
        };
        eta[2][i] = match (t.contains(0), t.contains(pen)) {
            (false, false) => pair(&s, &with(&[pen])),
            (true, true) => pair(&with(&[0]), &with(&[0, pen])),
            _ => StateSet::empty(m),
        };

        let mut s = t.clone();
        s.remove(pen);
        eta[3][i] = if t.contains(pen) {
            let mut u = s.clone();
            u.insert(pen);
            pair(&s, &u)
        } else {
            StateSet::empty(m)
        };
    }
    let initials = StateSet::from_indices(m, (0..m).filter(|&i| labels[i].contains(0)));
    let final_label = StateSet::singleton(n, sink);
    let final_state = id(&final_label);
    let nfa = Nfa::new(
        Alphabet::default(),
        eta,
        None,
        initials,
        StateSet::singleton(m, final_state),
    )?;
    Ok(Atomaton::from_parts(nfa, labels, final_state))
}

/// Result of checking that every state of every `A_S^D` is an interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IntervalCensus {
    /// Total reachable states over all atoms.
    pub states: usize,
    /// States that are the empty interval or an interval `[V, U]` with the
    /// sink in `V`.
    pub intervals: usize,
}

impl Atomaton {
    /// Classify the states of `A_S^D` as intervals over the labels.
    pub fn atom_intervals(&self, basis: &StateSet, cap: usize) -> Result<Vec<Option<Interval>>> {
        let det = self.atom_dfa(basis, cap)?;
        Ok(det
            .subsets
            .iter()
            .map(|sub| {
                let coll: Vec<StateSet> = sub.iter().map(|i| self.labels[i].clone()).collect();
                recognize_interval(&coll)
            })
            .collect())
    }

    pub fn interval_census(&self, sink: usize, cap: usize) -> Result<IntervalCensus> {
        let per_atom: Vec<(usize, usize)> = self
            .labels
            .par_iter()
            .map(|basis| {
                let states = self.atom_intervals(basis, cap)?;
                let good = states
                    .iter()
                    .filter(|iv| match iv {
                        Some(Interval::Empty) => true,
                        Some(Interval::Range { lower, .. }) => lower.contains(sink),
                        None => false,
                    })
                    .count();
                Ok((states.len(), good))
            })
            .collect::<Result<_>>()?;
        Ok(IntervalCensus {
            states: per_atom.iter().map(|p| p.0).sum(),
            intervals: per_atom.iter().map(|p| p.1).sum(),
        })
    }

    /// In `A_S^D`, do the intervals of each type form a single strongly
    /// connected set under the given letters?
    pub fn types_strongly_connected(&self, basis: &StateSet, letters: &[char], cap: usize) -> Result<bool> {
        let det = self.atom_dfa(basis, cap)?;
        let xs = letters
            .iter()
            .map(|&c| det.dfa.alphabet().index_of(c))
            .collect::<Result<Vec<_>>>()?;
        let intervals = self.atom_intervals(basis, cap)?;
        let n = det.dfa.n();
        let reach = |from: usize| {
            let mut seen = StateSet::singleton(n, from);
            let mut stack = vec![from];
            while let Some(q) = stack.pop() {
                for &x in &xs {
                    let p = det.dfa.step(q, x);
                    if seen.insert(p) {
                        stack.push(p);
                    }
                }
            }
            seen
        };
        let mut groups: FxHashMap<IntervalType, Vec<usize>> = FxHashMap::default();
        for (q, iv) in intervals.iter().enumerate() {
            if let Some(t) = iv.as_ref().and_then(Interval::interval_type) {
                groups.entry(t).or_default().push(q);
            }
        }
        Ok(groups.values().all(|members| {
            let root = members[0];
            let from_root = reach(root);
            members
                .iter()
                .all(|&q| from_root.contains(q) && reach(q).contains(root))
        }))
    }
}
