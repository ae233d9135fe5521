//! JSON and Graphviz DOT forms of automata. Both use 1-based state numbers.
//!
//! DFA JSON: `{"n", "alphabet", "delta": {letter: [images]}, "initial", "finals"}`.
//! NFA JSON: `{"n", "alphabet", "eta": {letter: [[targets] per state]}, "initials", "finals"}`,
//! with ε-transitions under the key `"eps"`.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::automaton::{Alphabet, Dfa, Nfa};
use crate::error::{Error, Result};
use crate::stateset::{StateId, StateSet};
use crate::transform::Transformation;

pub const EPSILON_KEY: &str = "eps";

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DfaJson {
    n: usize,
    alphabet: Vec<String>,
    delta: IndexMap<String, Vec<usize>>,
    initial: usize,
    finals: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NfaJson {
    n: usize,
    alphabet: Vec<String>,
    eta: IndexMap<String, Vec<Vec<usize>>>,
    initials: Vec<usize>,
    finals: Vec<usize>,
}

#[derive(Debug, Clone)]
pub enum Automaton {
    Dfa(Dfa),
    Nfa(Nfa),
}

impl Automaton {
    /// A DFA as-is, or the subset construction of an NFA.
    pub fn into_dfa(self, cap: usize) -> Result<Dfa> {
        match self {
            Automaton::Dfa(d) => Ok(d),
            Automaton::Nfa(n) => Ok(n.determinize(cap)?.dfa),
        }
    }
}

fn parse_alphabet(letters: &[String]) -> Result<Alphabet> {
    let chars = letters
        .iter()
        .map(|s| {
            let mut it = s.chars();
            match (it.next(), it.next()) {
                (Some(c), None) => Ok(c),
                _ => Err(Error::input(format!("letter '{s}' is not a single character"))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Alphabet::new(chars)
}

fn state_set(n: usize, one_based: &[usize], what: &str) -> Result<StateSet> {
    let mut s = StateSet::empty(n);
    for &q in one_based {
        if q == 0 || q > n {
            return Err(Error::input(format!("{what}: state {q} out of range 1..={n}")));
        }
        s.insert(q - 1);
    }
    Ok(s)
}

fn letter_keys_match<V>(alphabet: &Alphabet, map: &IndexMap<String, V>, extra: Option<&str>) -> Result<()> {
    for key in map.keys() {
        let known = extra == Some(key.as_str())
            || key.chars().count() == 1 && alphabet.letters().contains(&key.chars().next().unwrap());
        if !known {
            return Err(Error::input(format!("transition key '{key}' is not a letter of the alphabet")));
        }
    }
    Ok(())
}

pub fn dfa_to_json(d: &Dfa) -> String {
    let j = DfaJson {
        n: d.n(),
        alphabet: d.alphabet().letters().iter().map(|c| c.to_string()).collect(),
        delta: d
            .alphabet()
            .letters()
            .iter()
            .enumerate()
            .map(|(x, c)| (c.to_string(), d.letter_map(x).image().map(|p| p + 1).collect()))
            .collect(),
        initial: d.initial().index() + 1,
        finals: d.finals().to_one_based(),
    };
    serde_json::to_string_pretty(&j).expect("serializable")
}

pub fn nfa_to_json(a: &Nfa) -> String {
    let n = a.n();
    let mut eta: IndexMap<String, Vec<Vec<usize>>> = a
        .alphabet()
        .letters()
        .iter()
        .enumerate()
        .map(|(x, c)| {
            (
                c.to_string(),
                (0..n).map(|q| a.successors(q, x).to_one_based()).collect(),
            )
        })
        .collect();
    if a.has_epsilon() {
        eta.insert(
            EPSILON_KEY.into(),
            (0..n)
                .map(|q| a.epsilon_successors(q).unwrap().to_one_based())
                .collect(),
        );
    }
    let j = NfaJson {
        n,
        alphabet: a.alphabet().letters().iter().map(|c| c.to_string()).collect(),
        eta,
        initials: a.initials().to_one_based(),
        finals: a.finals().to_one_based(),
    };
    serde_json::to_string_pretty(&j).expect("serializable")
}

fn dfa_from_json(j: DfaJson) -> Result<Dfa> {
    let alphabet = parse_alphabet(&j.alphabet)?;
    letter_keys_match(&alphabet, &j.delta, None)?;
    let delta = alphabet
        .letters()
        .iter()
        .map(|c| {
            let img = j
                .delta
                .get(&c.to_string())
                .ok_or_else(|| Error::input(format!("no transitions for letter '{c}'")))?;
            if img.len() != j.n {
                return Err(Error::input(format!(
                    "letter '{c}' has {} images, expected {}",
                    img.len(),
                    j.n
                )));
            }
            if img.iter().any(|&p| p == 0 || p > j.n) {
                return Err(Error::input(format!("letter '{c}' maps outside 1..={}", j.n)));
            }
            Transformation::from_one_based(img)
        })
        .collect::<Result<Vec<_>>>()?;
    let initial = StateId::from_one_based(j.initial)
        .filter(|q| q.index() < j.n)
        .ok_or_else(|| Error::input(format!("initial state {} out of range", j.initial)))?;
    Dfa::new(alphabet, delta, initial, state_set(j.n, &j.finals, "finals")?)
}

fn nfa_from_json(j: NfaJson) -> Result<Nfa> {
    let alphabet = parse_alphabet(&j.alphabet)?;
    letter_keys_match(&alphabet, &j.eta, Some(EPSILON_KEY))?;
    let row = |key: &str| -> Result<Option<Vec<StateSet>>> {
        let Some(rows) = j.eta.get(key) else {
            return Ok(None);
        };
        if rows.len() != j.n {
            return Err(Error::input(format!("'{key}' has {} rows, expected {}", rows.len(), j.n)));
        }
        rows.iter()
            .map(|targets| state_set(j.n, targets, key))
            .collect::<Result<Vec<_>>>()
            .map(Some)
    };
    let mut eta = vec![];
    for c in alphabet.letters() {
        eta.push(row(&c.to_string())?.unwrap_or_else(|| vec![StateSet::empty(j.n); j.n]));
    }
    let epsilon = row(EPSILON_KEY)?;
    Nfa::new(
        alphabet,
        eta,
        epsilon,
        state_set(j.n, &j.initials, "initials")?,
        state_set(j.n, &j.finals, "finals")?,
    )
}

/// Parse either JSON form; the presence of `delta` or `eta` decides which.
pub fn parse_automaton(text: &str) -> Result<Automaton> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::input("automaton JSON must be an object"))?;
    match (obj.contains_key("delta"), obj.contains_key("eta")) {
        (true, false) => Ok(Automaton::Dfa(dfa_from_json(serde_json::from_value(value)?)?)),
        (false, true) => Ok(Automaton::Nfa(nfa_from_json(serde_json::from_value(value)?)?)),
        _ => Err(Error::input("automaton JSON needs exactly one of 'delta' or 'eta'")),
    }
}

pub fn load_automaton(path: impl AsRef<Path>) -> Result<Automaton> {
    parse_automaton(&std::fs::read_to_string(path)?)
}

fn dot(
    n: usize,
    initials: &StateSet,
    finals: &StateSet,
    edges: BTreeMap<(usize, usize), Vec<String>>,
) -> String {
    let mut s = String::from("digraph {\n  rankdir=LR;\n");
    for q in 0..n {
        let shape = if finals.contains(q) { "doublecircle" } else { "circle" };
        let _ = writeln!(s, "  {} [shape={shape}];", q + 1);
    }
    for q in initials.iter() {
        let _ = writeln!(s, "  start{0} [shape=point];\n  start{0} -> {0};", q + 1);
    }
    for ((p, q), labels) in edges {
        let _ = writeln!(s, "  {} -> {} [label=\"{}\"];", p + 1, q + 1, labels.join(","));
    }
    s.push_str("}\n");
    s
}

pub fn dfa_to_dot(d: &Dfa) -> String {
    let mut edges: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for (x, &c) in d.alphabet().letters().iter().enumerate() {
        for q in 0..d.n() {
            edges.entry((q, d.step(q, x))).or_default().push(c.to_string());
        }
    }
    dot(
        d.n(),
        &StateSet::singleton(d.n(), d.initial().index()),
        d.finals(),
        edges,
    )
}

pub fn nfa_to_dot(a: &Nfa) -> String {
    let mut edges: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for (x, &c) in a.alphabet().letters().iter().enumerate() {
        for q in 0..a.n() {
            for p in a.successors(q, x).iter() {
                edges.entry((q, p)).or_default().push(c.to_string());
            }
        }
    }
    for q in 0..a.n() {
        if let Some(eps) = a.epsilon_successors(q) {
            for p in eps.iter() {
                edges.entry((q, p)).or_default().push("ε".into());
            }
        }
    }
    dot(a.n(), a.initials(), a.finals(), edges)
}
