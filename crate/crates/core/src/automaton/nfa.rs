use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use super::{Alphabet, Dfa, Word};
use crate::error::{Error, Result};
use crate::stateset::{StateId, StateSet};
use crate::transform::Transformation;

/// Default cap on the number of subsets explored by [`Nfa::determinize`].
pub const DEFAULT_SUBSET_CAP: usize = 1 << 22;

/// A nondeterministic automaton, optionally with ε-transitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    // eta[x][q]
    eta: Vec<Vec<StateSet>>,
    epsilon: Option<Vec<StateSet>>,
    initials: StateSet,
    finals: StateSet,
}

/// Output of the subset construction: the DFA and, for each of its states,
/// the subset of NFA states it stands for.
#[derive(Debug, Clone)]
pub struct Determinized {
    pub dfa: Dfa,
    pub subsets: Vec<StateSet>,
}

impl Nfa {
    pub fn new(
        alphabet: Alphabet,
        eta: Vec<Vec<StateSet>>,
        epsilon: Option<Vec<StateSet>>,
        initials: StateSet,
        finals: StateSet,
    ) -> Result<Self> {
        let n = initials.universe();
        if n == 0 {
            return Err(Error::input("an NFA needs at least one state"));
        }
        if finals.universe() != n {
            return Err(Error::input("initial and final sets disagree on state count"));
        }
        if eta.len() != alphabet.len() {
            return Err(Error::input(format!(
                "{} transition rows for {} letters",
                eta.len(),
                alphabet.len()
            )));
        }
        let rows = eta.iter().chain(epsilon.iter());
        for row in rows {
            if row.len() != n || row.iter().any(|s| s.universe() != n) {
                return Err(Error::input("transition relation does not match state count"));
            }
        }
        Ok(Nfa {
            alphabet,
            eta,
            epsilon,
            initials,
            finals,
        })
    }

    pub fn n(&self) -> usize {
        self.initials.universe()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn initials(&self) -> &StateSet {
        &self.initials
    }

    pub fn finals(&self) -> &StateSet {
        &self.finals
    }

    pub fn has_epsilon(&self) -> bool {
        self.epsilon.is_some()
    }

    pub fn successors(&self, q: usize, x: usize) -> &StateSet {
        &self.eta[x][q]
    }

    pub fn epsilon_successors(&self, q: usize) -> Option<&StateSet> {
        self.epsilon.as_ref().map(|e| &e[q])
    }

    pub fn with_initials(&self, initials: StateSet) -> Result<Nfa> {
        Nfa::new(
            self.alphabet.clone(),
            self.eta.clone(),
            self.epsilon.clone(),
            initials,
            self.finals.clone(),
        )
    }

    /// Swap initial and final sets and reverse every transition, ε included.
    pub fn reverse(&self) -> Nfa {
        let n = self.n();
        let flip = |rel: &[StateSet]| {
            let mut out = vec![StateSet::empty(n); n];
            for (q, targets) in rel.iter().enumerate() {
                for p in targets.iter() {
                    out[p].insert(q);
                }
            }
            out
        };
        Nfa {
            alphabet: self.alphabet.clone(),
            eta: self.eta.iter().map(|row| flip(row)).collect(),
            epsilon: self.epsilon.as_deref().map(flip),
            initials: self.finals.clone(),
            finals: self.initials.clone(),
        }
    }

    /// ε-closure of every single state.
    fn closures(&self) -> Vec<StateSet> {
        let n = self.n();
        let Some(eps) = &self.epsilon else {
            return (0..n).map(|q| StateSet::singleton(n, q)).collect();
        };
        (0..n)
            .map(|q| {
                let mut seen = StateSet::singleton(n, q);
                let mut stack = vec![q];
                while let Some(p) = stack.pop() {
                    for r in eps[p].iter() {
                        if seen.insert(r) {
                            stack.push(r);
                        }
                    }
                }
                seen
            })
            .collect()
    }

    fn close(closures: &[StateSet], set: &StateSet) -> StateSet {
        let mut out = StateSet::empty(set.universe());
        for q in set.iter() {
            out.union_with(&closures[q]);
        }
        out
    }

    pub fn accepts(&self, w: &Word) -> Result<bool> {
        let letters = self.alphabet.indices_of(w)?;
        let closures = self.closures();
        let mut cur = Self::close(&closures, &self.initials);
        for x in letters {
            let mut next = StateSet::empty(self.n());
            for q in cur.iter() {
                next.union_with(&self.eta[x][q]);
            }
            cur = Self::close(&closures, &next);
        }
        Ok(cur.intersects(&self.finals))
    }

    /// Subset construction over the subsets reachable from the (ε-closed)
    /// initial subset. States are numbered in BFS discovery order with letters
    /// in alphabet order; state 0 is the initial subset. A reachable empty
    /// subset is kept as an ordinary dead state.
    pub fn determinize(&self, cap: usize) -> Result<Determinized> {
        let n = self.n();
        let k = self.alphabet.len();
        let closures = self.closures();
        // step[x][q]: ε-closure of η(q, x)
        let step: Vec<Vec<StateSet>> = self
            .eta
            .iter()
            .map(|row| row.iter().map(|s| Self::close(&closures, s)).collect())
            .collect();

        let start = Self::close(&closures, &self.initials);
        let mut index: FxHashMap<StateSet, usize> = FxHashMap::default();
        let mut subsets = vec![start.clone()];
        index.insert(start, 0);
        let mut table: Vec<Vec<usize>> = vec![Vec::new(); k];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (x, col) in table.iter_mut().enumerate() {
                let mut next = StateSet::empty(n);
                for q in subsets[i].iter() {
                    next.union_with(&step[x][q]);
                }
                let j = match index.get(&next) {
                    Some(&j) => j,
                    None => {
                        let j = subsets.len();
                        if j >= cap {
                            return Err(Error::Resource {
                                what: "subset construction",
                                cap,
                                reached: j,
                            });
                        }
                        index.insert(next.clone(), j);
                        subsets.push(next);
                        queue.push_back(j);
                        j
                    }
                };
                col.push(j);
            }
        }
        // BFS pops states in id order, so col[i] is the successor of state i.
        let m = subsets.len();
        let delta = table
            .into_iter()
            .map(Transformation::new)
            .collect::<Result<Vec<_>>>()?;
        let finals = StateSet::from_indices(
            m,
            subsets
                .iter()
                .enumerate()
                .filter(|(_, s)| s.intersects(&self.finals))
                .map(|(i, _)| i),
        );
        let dfa = Dfa::new(self.alphabet.clone(), delta, StateId(0), finals)?;
        Ok(Determinized { dfa, subsets })
    }
}

impl From<&Dfa> for Nfa {
    fn from(d: &Dfa) -> Self {
        let n = d.n();
        Nfa {
            alphabet: d.alphabet().clone(),
            eta: (0..d.alphabet().len())
                .map(|x| (0..n).map(|q| StateSet::singleton(n, d.step(q, x))).collect())
                .collect(),
            epsilon: None,
            initials: StateSet::singleton(n, d.initial().index()),
            finals: d.finals().clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witnesses::{build_rn, RLetters};

    fn set(n: usize, one_based: &[usize]) -> StateSet {
        StateSet::from_indices(n, one_based.iter().map(|q| q - 1))
    }

    #[test]
    fn determinize_small_chain() {
        // η(1,a)={1,2}, η(2,a)={3}, η(3,a)={}
        let nfa = Nfa::new(
            Alphabet::new(['a']).unwrap(),
            vec![vec![set(3, &[1, 2]), set(3, &[3]), set(3, &[])]],
            None,
            set(3, &[1]),
            set(3, &[3]),
        )
        .unwrap();
        let det = nfa.determinize(DEFAULT_SUBSET_CAP).unwrap();
        let got: Vec<Vec<usize>> = det.subsets.iter().map(|s| s.to_one_based()).collect();
        assert_eq!(got, vec![vec![1], vec![1, 2], vec![1, 2, 3]]);
        assert_eq!(det.dfa.finals().to_one_based(), vec![3]);
    }

    #[test]
    fn determinize_deterministic_input_is_isomorphic() {
        let d = build_rn(5, RLetters::Abcd).unwrap();
        let det = d.to_nfa().determinize(DEFAULT_SUBSET_CAP).unwrap();
        assert!(det.dfa.isomorphic(&d).unwrap());
    }

    #[test]
    fn empty_subset_is_kept() {
        let nfa = Nfa::new(
            Alphabet::new(['a']).unwrap(),
            vec![vec![set(1, &[])]],
            None,
            set(1, &[1]),
            set(1, &[1]),
        )
        .unwrap();
        let det = nfa.determinize(DEFAULT_SUBSET_CAP).unwrap();
        assert_eq!(det.subsets.len(), 2);
        assert!(det.subsets[1].is_empty());
    }

    #[test]
    fn reverse_of_witness() {
        let d = build_rn(4, RLetters::Ad).unwrap();
        let r = d.reverse();
        assert_eq!(r.initials().to_one_based(), vec![4]);
        assert_eq!(r.finals().to_one_based(), vec![1]);
        assert_eq!(r.determinize(DEFAULT_SUBSET_CAP).unwrap().dfa.complexity(), 8);
        assert_eq!(r.reverse(), d.to_nfa());
    }

    #[test]
    fn epsilon_transitions_are_followed() {
        // 1 -ε-> 2 -a-> 3, final 3: accepts exactly "a"
        let nfa = Nfa::new(
            Alphabet::new(['a']).unwrap(),
            vec![vec![set(3, &[]), set(3, &[3]), set(3, &[])]],
            Some(vec![set(3, &[2]), set(3, &[]), set(3, &[])]),
            set(3, &[1]),
            set(3, &[3]),
        )
        .unwrap();
        assert!(nfa.accepts(&"a".into()).unwrap());
        assert!(!nfa.accepts(&Word::empty()).unwrap());
        let det = nfa.determinize(DEFAULT_SUBSET_CAP).unwrap();
        assert_eq!(det.subsets[0].to_one_based(), vec![1, 2]);
        assert!(det.dfa.accepts(&"a".into()).unwrap());
        assert!(!det.dfa.accepts(&"aa".into()).unwrap());
    }

    #[test]
    fn subset_cap_reports_resource_error() {
        let r = build_rn(8, RLetters::Ad).unwrap().reverse();
        match r.determinize(10) {
            Err(Error::Resource { cap: 10, .. }) => {}
            other => panic!("expected resource error, got {other:?}"),
        }
    }
}
