//! Constructors for the right-ideal witness stream `R_n`, its letter
//! restrictions, the auxiliary `P_n`, and the regular-language stream `L_n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::automaton::{Alphabet, Dfa};
use crate::error::{Error, Result};
use crate::stateset::{StateId, StateSet};
use crate::transform::Transformation;

/// Which letters of `R_n(a,b,c,d)` to keep, and in which roles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RLetters {
    Abcd,
    Ad,
    Abd,
    /// `R_n(a,b,d)` with the transformations of `a` and `b` exchanged.
    Bad,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    R(RLetters),
    P,
    L,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WitnessSpec {
    pub family: Family,
    pub n: usize,
}

impl WitnessSpec {
    pub fn new(family: Family, n: usize) -> Self {
        WitnessSpec { family, n }
    }

    pub fn build(&self) -> Result<Dfa> {
        match self.family {
            Family::R(letters) => build_rn(self.n, letters),
            Family::P => build_pn(self.n),
            Family::L => build_ln(self.n),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "r:abcd" => Family::R(RLetters::Abcd),
            "r:ad" => Family::R(RLetters::Ad),
            "r:abd" => Family::R(RLetters::Abd),
            "r:bad" => Family::R(RLetters::Bad),
            "p" => Family::P,
            "l" => Family::L,
            _ => {
                return Err(Error::input(format!(
                    "unknown family '{s}' (expected r:abcd, r:ad, r:abd, r:bad, p, l)"
                )))
            }
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::R(RLetters::Abcd) => "r:abcd",
            Family::R(RLetters::Ad) => "r:ad",
            Family::R(RLetters::Abd) => "r:abd",
            Family::R(RLetters::Bad) => "r:bad",
            Family::P => "p",
            Family::L => "l",
        })
    }
}

// 0-based helpers; the degenerate cases for tiny n collapse to the identity.
fn cycle_range(lo: usize, hi: usize, n: usize) -> Transformation {
    let elems: Vec<usize> = (lo..hi).collect();
    Transformation::cycle(&elems, n).expect("distinct in-range points")
}

fn unitary_or_id(p: Option<usize>, q: Option<usize>, n: usize) -> Transformation {
    match (p, q) {
        (Some(p), Some(q)) if p < n && q < n => Transformation::unitary(p, q, n).unwrap(),
        _ => Transformation::identity(n),
    }
}

fn with_letters(letters: &str, delta: Vec<Transformation>, n: usize) -> Dfa {
    Dfa::new(
        Alphabet::new(letters.chars()).unwrap(),
        delta,
        StateId(0),
        StateSet::singleton(n, n - 1),
    )
    .expect("witness automaton is well formed")
}

/// The four letter maps of `R_n`:
/// `a: (1,..,n-1)`, `b: (2,..,n-1)`, `c: (n-1 -> 1)`, `d: (n-1 -> n)`.
fn rn_maps(n: usize) -> [Transformation; 4] {
    let last = n.checked_sub(2); // state n-1, 0-based
    [
        cycle_range(0, n - 1, n),
        cycle_range(1.min(n - 1), n - 1, n),
        unitary_or_id(last, Some(0), n),
        unitary_or_id(last, Some(n - 1), n),
    ]
}

/// `R_n` restricted to the requested letters. Letter labels are kept, so
/// `R_n(a,d)` has alphabet exactly `{a, d}`.
pub fn build_rn(n: usize, letters: RLetters) -> Result<Dfa> {
    if n == 0 {
        return Err(Error::input("R_n needs n >= 1"));
    }
    let [a, b, c, d] = rn_maps(n);
    Ok(match letters {
        RLetters::Abcd => with_letters("abcd", vec![a, b, c, d], n),
        RLetters::Ad => with_letters("ad", vec![a, d], n),
        RLetters::Abd => with_letters("abd", vec![a, b, d], n),
        RLetters::Bad => with_letters("abd", vec![b, a, d], n),
    })
}

/// `P_n`: as `R_n(a,b,c,d)` except `b: (1,2)`. Only meaningful for `n >= 4`;
/// `n = 3` is built with a warning.
pub fn build_pn(n: usize) -> Result<Dfa> {
    if n < 3 {
        return Err(Error::input(format!("P_n needs n >= 3, got {n}")));
    }
    if n == 3 {
        log::warn!("P_3 is outside the range where P_n is defined (n >= 4)");
    }
    let [a, _, c, d] = rn_maps(n);
    let b = Transformation::transposition(0, 1, n)?;
    Ok(with_letters("abcd", vec![a, b, c, d], n))
}

/// `L_n` over `{a,b,c}`: `a: (1,..,n)`, `b: (1,2)`, `c: (n -> 1)`, final `{n}`.
pub fn build_ln(n: usize) -> Result<Dfa> {
    if n < 2 {
        return Err(Error::input(format!("L_n needs n >= 2, got {n}")));
    }
    let a = cycle_range(0, n, n);
    let b = Transformation::transposition(0, 1, n)?;
    let c = Transformation::unitary(n - 1, 0, n)?;
    Ok(with_letters("abc", vec![a, b, c], n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Word;
    use crate::transform::transformation_of_word;

    fn img(d: &Dfa, x: usize) -> String {
        d.letter_map(x).to_string()
    }

    #[test]
    fn r4_letters() {
        let d = build_rn(4, RLetters::Abcd).unwrap();
        assert_eq!(img(&d, 0), "[2,3,1,4]");
        assert_eq!(img(&d, 1), "[1,3,2,4]");
        assert_eq!(img(&d, 2), "[1,2,1,4]");
        assert_eq!(img(&d, 3), "[1,2,4,4]");
        assert_eq!(d.finals().to_one_based(), vec![4]);
        assert_eq!(d.initial(), StateId(0));
    }

    #[test]
    fn degenerate_sizes() {
        let r3 = build_rn(3, RLetters::Abcd).unwrap();
        assert!(r3.letter_map(1).is_identity());

        let r1 = build_rn(1, RLetters::Abcd).unwrap();
        assert_eq!(r1.n(), 1);
        assert!((0..4).all(|x| r1.letter_map(x).is_identity()));
        assert!(r1.accepts(&"abcd".into()).unwrap());

        let r2 = build_rn(2, RLetters::Abcd).unwrap();
        assert!((0..3).all(|x| r2.letter_map(x).is_identity()));
        assert_eq!(img(&r2, 3), "[2,2]");
        assert_eq!(r2.complexity(), 2);
        assert!(build_rn(0, RLetters::Ad).is_err());
    }

    #[test]
    fn restrictions_keep_labels() {
        let d = build_rn(5, RLetters::Ad).unwrap();
        assert_eq!(d.alphabet().letters(), &['a', 'd']);
        let abd = build_rn(5, RLetters::Abd).unwrap();
        let bad = build_rn(5, RLetters::Bad).unwrap();
        assert_eq!(bad.letter_map(0), abd.letter_map(1));
        assert_eq!(bad.letter_map(1), abd.letter_map(0));
        assert_eq!(bad.letter_map(2), abd.letter_map(2));
    }

    #[test]
    fn pn_differs_from_rn_only_in_b() {
        let p = build_pn(4).unwrap();
        let r = build_rn(4, RLetters::Abcd).unwrap();
        assert_eq!(img(&p, 1), "[2,1,3,4]");
        for x in [0, 2, 3] {
            assert_eq!(p.letter_map(x), r.letter_map(x));
        }
        assert!(build_pn(3).is_ok());
        assert!(build_pn(2).is_err());
    }

    #[test]
    fn ln_shape() {
        let l = build_ln(4).unwrap();
        assert_eq!(l.alphabet().letters(), &['a', 'b', 'c']);
        assert_eq!(l.finals().to_one_based(), vec![4]);
        assert!(!l.is_right_ideal());
        for n in 3..=6 {
            assert_eq!(build_ln(n).unwrap().complexity(), n);
        }
        assert!(build_ln(1).is_err());
    }

    #[test]
    fn a_pow_b_is_transposition() {
        for n in 3..=8 {
            let d = build_rn(n, RLetters::Abcd).unwrap();
            let w = Word::from("a").pow(n - 2).concat(&"b".into());
            assert_eq!(
                transformation_of_word(&d, &w).unwrap(),
                Transformation::transposition(0, 1, n).unwrap()
            );
        }
    }

    #[test]
    fn family_names_round_trip() {
        for s in ["r:abcd", "r:ad", "r:abd", "r:bad", "p", "l"] {
            assert_eq!(s.parse::<Family>().unwrap().to_string(), s);
        }
        assert!("r:xyz".parse::<Family>().is_err());
    }
}
