//! Transformations of a finite state set and semigroups generated by them.
//!
//! Composition is a *right action*: `q · t_w = δ(q, w)`. Consequently
//! [`Transformation::then`] applies `self` first and its argument second, so
//! the transformation of the word `uv` is `t_u.then(&t_v)`.

use std::fmt;

use rustc_hash::FxHashMap;

use crate::automaton::{Dfa, Word};
use crate::error::{Error, Result};
use crate::stateset::StateSet;

/// Default element cap for [`generate_semigroup`].
pub const DEFAULT_SEMIGROUP_CAP: usize = 5_000_000;

/// A total map `{0..n} -> {0..n}`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    image: Vec<u32>,
}

impl Transformation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        if let Some(&bad) = image.iter().find(|&&p| p >= n) {
            return Err(Error::input(format!(
                "transformation image {bad} out of range for degree {n}"
            )));
        }
        Ok(Transformation {
            image: image.into_iter().map(|p| p as u32).collect(),
        })
    }

    /// Build from a 1-based image, e.g. `[2, 3, 1, 4]`.
    pub fn from_one_based(image: &[usize]) -> Result<Self> {
        let zero: Option<Vec<usize>> = image.iter().map(|&p| p.checked_sub(1)).collect();
        let zero = zero.ok_or_else(|| Error::input("state 0 in 1-based transformation"))?;
        Self::new(zero)
    }

    pub fn identity(n: usize) -> Self {
        Transformation {
            image: (0..n as u32).collect(),
        }
    }

    /// The cycle `(p1, p2, .., pk)` on 0-based points. An empty or one-point
    /// cycle is the identity.
    pub fn cycle(elems: &[usize], n: usize) -> Result<Self> {
        check_distinct(elems, n)?;
        let mut t = Self::identity(n);
        for (i, &p) in elems.iter().enumerate() {
            t.image[p] = elems[(i + 1) % elems.len()] as u32;
        }
        Ok(t)
    }

    pub fn transposition(p: usize, q: usize, n: usize) -> Result<Self> {
        Self::cycle(&[p, q], n)
    }

    /// `(p -> q)`: sends `p` to `q` and fixes everything else. `p == q` gives
    /// the identity.
    pub fn unitary(p: usize, q: usize, n: usize) -> Result<Self> {
        if p >= n || q >= n {
            return Err(Error::input(format!(
                "unitary ({}->{}) out of range for degree {n}",
                p + 1,
                q + 1
            )));
        }
        let mut t = Self::identity(n);
        t.image[p] = q as u32;
        Ok(t)
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, q: usize) -> usize {
        self.image[q] as usize
    }

    pub fn image(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.image.iter().map(|&p| p as usize)
    }

    /// Apply `self`, then `next`.
    pub fn then(&self, next: &Transformation) -> Transformation {
        debug_assert_eq!(self.degree(), next.degree());
        Transformation {
            image: self.image.iter().map(|&p| next.image[p as usize]).collect(),
        }
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.degree()];
        self.image
            .iter()
            .all(|&p| !std::mem::replace(&mut seen[p as usize], true))
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(q, &p)| q as u32 == p)
    }

    /// Image of a set of states.
    pub fn apply_set(&self, set: &StateSet) -> StateSet {
        StateSet::from_indices(set.universe(), set.iter().map(|q| self.apply(q)))
    }

    /// Disjoint-cycle notation (1-based), e.g. `(1,2,3)(4,5)`; `None` unless
    /// this is a permutation. The identity renders as `()`.
    pub fn cycle_notation(&self) -> Option<String> {
        if !self.is_permutation() {
            return None;
        }
        let mut seen = vec![false; self.degree()];
        let mut out = String::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cyc = vec![];
            let mut q = start;
            while !seen[q] {
                seen[q] = true;
                cyc.push((q + 1).to_string());
                q = self.apply(q);
            }
            out.push('(');
            out.push_str(&cyc.join(","));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        Some(out)
    }

    fn pack(&self) -> Option<u64> {
        if self.degree() > 16 {
            return None;
        }
        Some(
            self.image
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &p)| acc | (u64::from(p) << (4 * i))),
        )
    }
}

fn check_distinct(elems: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    for &p in elems {
        if p >= n {
            return Err(Error::input(format!("point {} out of range 1..={n}", p + 1)));
        }
        if std::mem::replace(&mut seen[p], true) {
            return Err(Error::input(format!("point {} repeated in cycle", p + 1)));
        }
    }
    Ok(())
}

/// Composition as a free function: `compose(s, t)` applies `s` then `t`.
pub fn compose(s: &Transformation, t: &Transformation) -> Result<Transformation> {
    if s.degree() != t.degree() {
        return Err(Error::input(format!(
            "cannot compose transformations of degree {} and {}",
            s.degree(),
            t.degree()
        )));
    }
    Ok(s.then(t))
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.image().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", p + 1)?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Transformation{self}")
    }
}

/// `t_w` for a non-empty word.
pub fn transformation_of_word(dfa: &Dfa, w: &Word) -> Result<Transformation> {
    let letters = dfa.alphabet().indices_of(w)?;
    let (first, rest) = letters
        .split_first()
        .ok_or_else(|| Error::input("t_w is only defined for non-empty words"))?;
    Ok(rest
        .iter()
        .fold(dfa.letter_map(*first).clone(), |t, &x| t.then(dfa.letter_map(x))))
}

/// Labelled generators of equal degree.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    gens: Vec<(char, Transformation)>,
}

impl GeneratorSet {
    pub fn new(gens: Vec<(char, Transformation)>) -> Result<Self> {
        let Some((_, first)) = gens.first() else {
            return Err(Error::input("generator set must be non-empty"));
        };
        let n = first.degree();
        if gens.iter().any(|(_, t)| t.degree() != n) {
            return Err(Error::input("generators have inconsistent degrees"));
        }
        Ok(GeneratorSet { gens })
    }

    /// Generators labelled `a`, `b`, `c`, ... in order.
    pub fn unlabelled(gens: Vec<Transformation>) -> Result<Self> {
        Self::new(
            gens.into_iter()
                .enumerate()
                .map(|(i, t)| ((b'a' + (i % 26) as u8) as char, t))
                .collect(),
        )
    }

    pub fn of_dfa(dfa: &Dfa) -> Self {
        GeneratorSet {
            gens: dfa
                .alphabet()
                .letters()
                .iter()
                .enumerate()
                .map(|(i, &c)| (c, dfa.letter_map(i).clone()))
                .collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.gens[0].1.degree()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(char, Transformation)> {
        self.gens.iter()
    }
}

#[derive(Debug)]
enum Index {
    Packed(FxHashMap<u64, u32>),
    Wide(FxHashMap<Vec<u32>, u32>),
}

impl Index {
    fn new(n: usize) -> Self {
        if n <= 16 {
            Index::Packed(FxHashMap::default())
        } else {
            Index::Wide(FxHashMap::default())
        }
    }

    fn get(&self, t: &Transformation) -> Option<u32> {
        match self {
            Index::Packed(m) => m.get(&t.pack().unwrap()).copied(),
            Index::Wide(m) => m.get(&t.image).copied(),
        }
    }

    fn insert(&mut self, t: &Transformation, id: u32) {
        match self {
            Index::Packed(m) => {
                m.insert(t.pack().unwrap(), id);
            }
            Index::Wide(m) => {
                m.insert(t.image.clone(), id);
            }
        }
    }
}

/// The semigroup generated by a [`GeneratorSet`], with a shortest witness word
/// for each element.
#[derive(Debug)]
pub struct SemigroupClosure {
    labels: Vec<char>,
    elements: Vec<Transformation>,
    // (parent element, generator index); parent u32::MAX marks a generator.
    parent: Vec<(u32, u8)>,
    index: Index,
}

impl SemigroupClosure {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Transformation] {
        &self.elements
    }

    pub fn contains(&self, t: &Transformation) -> bool {
        self.index.get(t).is_some()
    }

    /// Shortest generator word inducing element `i`, ties broken by generator
    /// order.
    pub fn witness(&self, i: usize) -> Word {
        let mut letters = vec![];
        let mut cur = i as u32;
        loop {
            let (parent, g) = self.parent[cur as usize];
            letters.push(self.labels[g as usize]);
            if parent == u32::MAX {
                break;
            }
            cur = parent;
        }
        letters.reverse();
        Word::from(letters)
    }
}

/// Breadth-first closure of the generators under right multiplication.
pub fn generate_semigroup(gens: &GeneratorSet, cap: usize) -> Result<SemigroupClosure> {
    if cap == 0 {
        return Err(Error::input("semigroup cap must be at least 1"));
    }
    if gens.gens.len() > u8::MAX as usize {
        return Err(Error::input("too many generators"));
    }
    let mut c = SemigroupClosure {
        labels: gens.gens.iter().map(|(l, _)| *l).collect(),
        elements: vec![],
        parent: vec![],
        index: Index::new(gens.degree()),
    };
    let push = |c: &mut SemigroupClosure, t: Transformation, parent: (u32, u8)| -> Result<()> {
        if c.index.get(&t).is_some() {
            return Ok(());
        }
        if c.elements.len() >= cap {
            return Err(Error::Resource {
                what: "semigroup closure",
                cap,
                reached: c.elements.len(),
            });
        }
        let id = c.elements.len() as u32;
        c.index.insert(&t, id);
        c.elements.push(t);
        c.parent.push(parent);
        Ok(())
    };
    for (g, (_, t)) in gens.gens.iter().enumerate() {
        push(&mut c, t.clone(), (u32::MAX, g as u8))?;
    }
    // elements are appended in discovery order, so the vector is the queue
    let mut head = 0;
    while head < c.elements.len() {
        let id = head as u32;
        head += 1;
        for (g, (_, t)) in gens.gens.iter().enumerate() {
            let next = c.elements[id as usize].then(t);
            push(&mut c, next, (id, g as u8))?;
        }
    }
    Ok(c)
}

/// Size of the transition semigroup of the minimal DFA, i.e. of the syntactic
/// semigroup of the language.
pub fn syntactic_semigroup_size(dfa: &Dfa, cap: usize) -> Result<usize> {
    let minimal = dfa.minimize();
    Ok(generate_semigroup(&GeneratorSet::of_dfa(&minimal), cap)?.size())
}
