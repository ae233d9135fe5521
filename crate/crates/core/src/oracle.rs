//! Small-instance semantic oracle: random DFAs, exhaustive word enumeration,
//! and membership computed directly from the operands' acceptance, never from
//! the constructions under test.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::automaton::{Alphabet, Dfa, Word};
use crate::error::Result;
use crate::ops::{self, BooleanOp};
use crate::stateset::{StateId, StateSet};
use crate::transform::Transformation;

/// A uniformly random complete DFA with `1..=max_states` states.
pub fn random_dfa(rng: &mut impl Rng, max_states: usize, alphabet: &Alphabet) -> Dfa {
    let n = rng.gen_range(1..=max_states);
    let delta = (0..alphabet.len())
        .map(|_| Transformation::new((0..n).map(|_| rng.gen_range(0..n)).collect()).unwrap())
        .collect();
    let finals = StateSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5)));
    Dfa::new(alphabet.clone(), delta, StateId(rng.gen_range(0..n)), finals).unwrap()
}

/// All words of length `0..=max_len`, shortest first, then in alphabet order.
pub fn words_up_to(alphabet: &Alphabet, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                alphabet
                    .letters()
                    .iter()
                    .map(move |&c| w.concat(&Word::from(vec![c])))
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn accepts(d: &Dfa, w: &[char]) -> bool {
    d.accepts(&Word::from(w.to_vec())).expect("word over the operand alphabet")
}

pub fn in_concat(left: &Dfa, right: &Dfa, w: &Word) -> bool {
    let l = w.letters();
    (0..=l.len()).any(|i| accepts(left, &l[..i]) && accepts(right, &l[i..]))
}

pub fn in_star(d: &Dfa, w: &Word) -> bool {
    let l = w.letters();
    // ok[i]: the prefix of length i is in L*
    let mut ok = vec![false; l.len() + 1];
    ok[0] = true;
    for j in 1..=l.len() {
        ok[j] = (0..j).any(|i| ok[i] && accepts(d, &l[i..j]));
    }
    ok[l.len()]
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct OracleReport {
    pub seed: u64,
    pub pairs: usize,
    pub words_checked: usize,
    pub disagreements: usize,
    /// First few disagreements, for diagnostics.
    pub examples: Vec<String>,
}

impl OracleReport {
    pub fn pass(&self) -> bool {
        self.disagreements == 0
    }
}

/// Check boolean operations, concatenation and star on `pairs` random DFA
/// pairs against word-level set arithmetic over all words up to `max_len`.
pub fn word_sample_oracle(seed: u64, pairs: usize, max_states: usize, max_len: usize) -> Result<OracleReport> {
    let alphabet = Alphabet::new(['a', 'b'])?;
    let words = words_up_to(&alphabet, max_len);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = OracleReport {
        seed,
        pairs,
        words_checked: 0,
        disagreements: 0,
        examples: vec![],
    };
    let record = |report: &mut OracleReport, what: String, got: bool, want: bool| {
        report.words_checked += 1;
        if got != want {
            report.disagreements += 1;
            if report.examples.len() < 5 {
                report.examples.push(what);
            }
        }
    };
    for pair in 0..pairs {
        let left = random_dfa(&mut rng, max_states, &alphabet);
        let right = random_dfa(&mut rng, max_states, &alphabet);
        let bools: Vec<(BooleanOp, Dfa)> = BooleanOp::ALL
            .iter()
            .map(|&op| Ok((op, ops::boolean(&left, &right, op)?)))
            .collect::<Result<_>>()?;
        let cat = ops::concat(&left, &right)?;
        let st = ops::star(&left)?;
        for w in &words {
            let (l, r) = (left.accepts(w)?, right.accepts(w)?);
            for (op, d) in &bools {
                record(&mut report, format!("pair {pair}: {op} on {w}"), d.accepts(w)?, op.select(l, r));
            }
            record(&mut report, format!("pair {pair}: concat on {w}"), cat.accepts(w)?, in_concat(&left, &right, w));
            record(&mut report, format!("pair {pair}: star on {w}"), st.accepts(w)?, in_star(&left, w));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_enumeration() {
        let ab = Alphabet::new(['a', 'b']).unwrap();
        let w = words_up_to(&ab, 2);
        let s: Vec<String> = w.iter().map(|w| w.to_string()).collect();
        assert_eq!(s, ["ε", "a", "b", "aa", "ab", "ba", "bb"]);
        assert_eq!(words_up_to(&ab, 6).len(), 127);
    }

    #[test]
    fn star_and_concat_membership() {
        // L = {a}
        let d = Dfa::from_one_based("ab", &[&[2, 3, 3], &[3, 3, 3]], 1, &[2]).unwrap();
        assert!(in_star(&d, &"".into()));
        assert!(in_star(&d, &"aaa".into()));
        assert!(!in_star(&d, &"ab".into()));
        assert!(in_concat(&d, &d, &"aa".into()));
        assert!(!in_concat(&d, &d, &"a".into()));
    }

    #[test]
    fn same_seed_same_report() {
        let a = word_sample_oracle(7, 5, 3, 4).unwrap();
        let b = word_sample_oracle(7, 5, 3, 4).unwrap();
        assert_eq!(a, b);
        assert!(a.pass());
    }
}
