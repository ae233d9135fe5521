use std::collections::VecDeque;

use super::{Alphabet, Nfa, Word};
use crate::error::{Error, Result};
use crate::stateset::{StateId, StateSet};
use crate::transform::Transformation;

/// A complete deterministic finite automaton. Each letter acts on the states
/// through a [`Transformation`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Alphabet,
    delta: Vec<Transformation>,
    initial: StateId,
    finals: StateSet,
}

impl Dfa {
    pub fn new(
        alphabet: Alphabet,
        delta: Vec<Transformation>,
        initial: StateId,
        finals: StateSet,
    ) -> Result<Self> {
        let n = finals.universe();
        if n == 0 {
            return Err(Error::input("a DFA needs at least one state"));
        }
        if delta.len() != alphabet.len() {
            return Err(Error::input(format!(
                "{} transformations for {} letters",
                delta.len(),
                alphabet.len()
            )));
        }
        if let Some((i, t)) = delta.iter().enumerate().find(|(_, t)| t.degree() != n) {
            return Err(Error::input(format!(
                "letter '{}' acts on {} states, expected {n}",
                alphabet.letter(i),
                t.degree()
            )));
        }
        if initial.index() >= n {
            return Err(Error::input(format!("initial state {initial} out of range")));
        }
        Ok(Dfa {
            alphabet,
            delta,
            initial,
            finals,
        })
    }

    /// Convenience constructor from 1-based images, one per letter of
    /// `letters`.
    pub fn from_one_based(
        letters: &str,
        images: &[&[usize]],
        initial: usize,
        finals: &[usize],
    ) -> Result<Self> {
        let alphabet = Alphabet::new(letters.chars())?;
        let n = images.first().map_or(0, |i| i.len());
        let delta = images
            .iter()
            .map(|img| Transformation::from_one_based(img))
            .collect::<Result<Vec<_>>>()?;
        let initial = StateId::from_one_based(initial)
            .ok_or_else(|| Error::input("state 0 in 1-based numbering"))?;
        let mut f = StateSet::empty(n);
        for &q in finals {
            if q == 0 || q > n {
                return Err(Error::input(format!("final state {q} out of range")));
            }
            f.insert(q - 1);
        }
        Dfa::new(alphabet, delta, initial, f)
    }

    pub fn n(&self) -> usize {
        self.finals.universe()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn finals(&self) -> &StateSet {
        &self.finals
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals.contains(q)
    }

    /// The transformation induced by the letter with index `x`.
    pub fn letter_map(&self, x: usize) -> &Transformation {
        &self.delta[x]
    }

    pub fn step(&self, q: usize, x: usize) -> usize {
        self.delta[x].apply(q)
    }

    pub fn run(&self, q: usize, letters: &[usize]) -> usize {
        letters.iter().fold(q, |q, &x| self.step(q, x))
    }

    pub fn accepts(&self, w: &Word) -> Result<bool> {
        let letters = self.alphabet.indices_of(w)?;
        Ok(self.is_final(self.run(self.initial.index(), &letters)))
    }

    /// `D_q`: same automaton, different start state.
    pub fn with_initial(&self, q: StateId) -> Result<Dfa> {
        Dfa::new(self.alphabet.clone(), self.delta.clone(), q, self.finals.clone())
    }

    pub fn with_finals(&self, finals: StateSet) -> Result<Dfa> {
        if finals.universe() != self.n() {
            return Err(Error::input("final set universe differs from state count"));
        }
        Dfa::new(self.alphabet.clone(), self.delta.clone(), self.initial, finals)
    }

    /// Keep only the listed letters, in the given order.
    pub fn restrict(&self, letters: &str) -> Result<Dfa> {
        let mut delta = vec![];
        for c in letters.chars() {
            delta.push(self.delta[self.alphabet.index_of(c)?].clone());
        }
        Dfa::new(
            Alphabet::new(letters.chars())?,
            delta,
            self.initial,
            self.finals.clone(),
        )
    }

    /// Restriction to the states reachable from the initial state, numbered in
    /// BFS discovery order with letters taken in alphabet order. Two reachable
    /// DFAs are isomorphic exactly when their reachable parts are equal.
    pub fn reachable_part(&self) -> Dfa {
        let n = self.n();
        let mut order = Vec::with_capacity(n);
        let mut number = vec![usize::MAX; n];
        let mut queue = VecDeque::from([self.initial.index()]);
        number[self.initial.index()] = 0;
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for t in &self.delta {
                let p = t.apply(q);
                if number[p] == usize::MAX {
                    number[p] = order.len() + queue.len();
                    queue.push_back(p);
                }
            }
        }
        let delta = self
            .delta
            .iter()
            .map(|t| Transformation::new(order.iter().map(|&q| number[t.apply(q)]).collect()))
            .collect::<Result<Vec<_>>>()
            .expect("renumbered transitions stay in range");
        let finals = StateSet::from_indices(
            order.len(),
            order
                .iter()
                .enumerate()
                .filter(|&(_, &q)| self.is_final(q))
                .map(|(i, _)| i),
        );
        Dfa {
            alphabet: self.alphabet.clone(),
            delta,
            initial: StateId(0),
            finals,
        }
    }

    /// The minimal DFA of the same language, canonically numbered.
    pub fn minimize(&self) -> Dfa {
        super::minimize::minimize(self)
    }

    /// Number of states of the minimal DFA (state/quotient complexity).
    pub fn complexity(&self) -> usize {
        self.minimize().n()
    }

    /// Complexity of the language of each state of the minimal DFA, in the
    /// minimal DFA's canonical numbering.
    pub fn state_complexities(&self) -> Vec<usize> {
        let m = self.minimize();
        (0..m.n())
            .map(|q| m.with_initial(StateId(q)).expect("in range").complexity())
            .collect()
    }

    /// Shortest word (lexicographically least among shortest) that sends
    /// exactly one of `p`, `q` into `target`.
    pub fn distinguishing_word(&self, p: StateId, q: StateId, target: &StateSet) -> Option<Word> {
        let n = self.n();
        if p == q || p.index() >= n || q.index() >= n {
            return None;
        }
        let key = |a: usize, b: usize| if a < b { a * n + b } else { b * n + a };
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n * n];
        let mut seen = vec![false; n * n];
        let start = (p.index(), q.index());
        seen[key(start.0, start.1)] = true;
        let mut queue = VecDeque::from([start]);
        while let Some((a, b)) = queue.pop_front() {
            if target.contains(a) != target.contains(b) {
                let mut letters = vec![];
                let mut cur = key(a, b);
                while let Some((from, x)) = prev[cur] {
                    letters.push(x);
                    cur = from;
                }
                letters.reverse();
                return Some(self.alphabet.word(&letters));
            }
            for x in 0..self.alphabet.len() {
                let (a2, b2) = (self.step(a, x), self.step(b, x));
                let k = key(a2, b2);
                if !seen[k] {
                    seen[k] = true;
                    prev[k] = Some((key(a, b), x));
                    queue.push_back((a2, b2));
                }
            }
        }
        None
    }

    /// `L = LΣ*` holds iff the minimal DFA has a single final state and that
    /// state is a sink.
    pub fn is_right_ideal(&self) -> bool {
        let m = self.minimize();
        let mut finals = m.finals.iter();
        match (finals.next(), finals.next()) {
            (Some(f), None) => m.delta.iter().all(|t| t.apply(f) == f),
            _ => false,
        }
    }

    pub fn isomorphic(&self, other: &Dfa) -> Result<bool> {
        self.check_same_alphabet(other)?;
        Ok(self.reachable_part() == other.reachable_part())
    }

    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        self.check_same_alphabet(other)?;
        Ok(self.minimize() == other.minimize())
    }

    pub(crate) fn check_same_alphabet(&self, other: &Dfa) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::input(format!(
                "alphabet mismatch: {} vs {}",
                self.alphabet, other.alphabet
            )));
        }
        Ok(())
    }

    pub fn to_nfa(&self) -> Nfa {
        Nfa::from(self)
    }

    pub fn reverse(&self) -> Nfa {
        self.to_nfa().reverse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witnesses::{build_rn, RLetters};

    fn r(n: usize, letters: RLetters) -> Dfa {
        build_rn(n, letters).unwrap()
    }

    #[test]
    fn accepts_examples() {
        let d = r(4, RLetters::Ad);
        assert!(d.accepts(&"aad".into()).unwrap());
        assert!(!d.accepts(&"ad".into()).unwrap());
        assert!(!d.accepts(&Word::empty()).unwrap());
        assert!(matches!(d.accepts(&"ab".into()), Err(Error::Input(_))));
        assert!(r(1, RLetters::Abcd).accepts(&Word::empty()).unwrap());
    }

    #[test]
    fn reachable_part_drops_isolated_state() {
        // state 2 has no in-edges and is not initial
        let d = Dfa::from_one_based("ab", &[&[3, 3, 1], &[1, 1, 3]], 1, &[3]).unwrap();
        let r = d.reachable_part();
        assert_eq!(r.n(), 2);
        assert!(r.equivalent(&d).unwrap());
        let rn = build_rn(4, RLetters::Abcd).unwrap();
        assert_eq!(rn.reachable_part(), rn);
    }

    #[test]
    fn complexity_examples() {
        assert_eq!(r(4, RLetters::Ad).complexity(), 4);
        assert_eq!(r(2, RLetters::Abcd).complexity(), 2);
        let all = Dfa::from_one_based("a", &[&[1]], 1, &[1]).unwrap();
        assert_eq!(all.complexity(), 1);
        assert_eq!(all.state_complexities(), vec![1]);
    }

    #[test]
    fn state_complexities_of_witnesses() {
        assert_eq!(r(4, RLetters::Ad).state_complexities(), vec![4, 4, 4, 1]);
        assert_eq!(r(5, RLetters::Abcd).state_complexities(), vec![5, 5, 5, 5, 1]);
    }

    #[test]
    fn distinguishing_words() {
        let d = r(4, RLetters::Ad);
        let s = StateSet::singleton(4, 3);
        let w = d.distinguishing_word(StateId(0), StateId(1), &s).unwrap();
        assert_eq!(w.to_string(), "ad");
        let w = d.distinguishing_word(StateId(2), StateId(3), &s).unwrap();
        assert!(w.is_empty());
        assert_eq!(d.distinguishing_word(StateId(1), StateId(1), &s), None);
        // states 1 and 2 of a permutation automaton with S = Q are never split
        let all = StateSet::full(4);
        assert_eq!(d.distinguishing_word(StateId(0), StateId(1), &all), None);
    }

    #[test]
    fn right_ideal_predicate() {
        for n in 3..=8 {
            assert!(r(n, RLetters::Abcd).is_right_ideal());
        }
        let sigma_star = Dfa::from_one_based("a", &[&[1]], 1, &[1]).unwrap();
        assert!(sigma_star.is_right_ideal());
        // {a} over {a}
        let just_a = Dfa::from_one_based("a", &[&[2, 3, 3]], 1, &[2]).unwrap();
        assert!(!just_a.is_right_ideal());
        let empty = Dfa::from_one_based("a", &[&[1]], 1, &[]).unwrap();
        assert!(!empty.is_right_ideal());
    }

    #[test]
    fn isomorphism_and_equivalence() {
        let d = r(4, RLetters::Ad);
        assert!(d.isomorphic(&d).unwrap());
        assert!(d.isomorphic(&d.minimize()).unwrap());
        assert!(!d.isomorphic(&r(5, RLetters::Ad)).unwrap());
        assert!(d.equivalent(&d.minimize()).unwrap());
        assert!(!r(4, RLetters::Abd).equivalent(&r(4, RLetters::Bad)).unwrap());
        assert!(matches!(
            d.equivalent(&r(4, RLetters::Abd)),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn b_is_identity_at_three() {
        let r3 = r(3, RLetters::Abcd);
        let explicit = Dfa::new(
            r3.alphabet().clone(),
            vec![
                r3.letter_map(0).clone(),
                Transformation::identity(3),
                r3.letter_map(2).clone(),
                r3.letter_map(3).clone(),
            ],
            StateId(0),
            r3.finals().clone(),
        )
        .unwrap();
        assert!(r3.equivalent(&explicit).unwrap());
        // restricting away b loses nothing at n = 3
        let acd = r3.restrict("acd").unwrap();
        let padded = Dfa::new(
            Alphabet::default(),
            vec![
                acd.letter_map(0).clone(),
                Transformation::identity(3),
                acd.letter_map(1).clone(),
                acd.letter_map(2).clone(),
            ],
            StateId(0),
            acd.finals().clone(),
        )
        .unwrap();
        assert!(padded.equivalent(&r3).unwrap());
    }

    #[test]
    fn constructor_validation() {
        assert!(Dfa::from_one_based("ab", &[&[1, 2]], 1, &[]).is_err());
        assert!(Dfa::from_one_based("a", &[&[1, 2]], 3, &[]).is_err());
        assert!(Dfa::from_one_based("a", &[&[1, 2]], 1, &[3]).is_err());
        assert!(Dfa::from_one_based("aa", &[&[1], &[1]], 1, &[]).is_err());
    }
}
