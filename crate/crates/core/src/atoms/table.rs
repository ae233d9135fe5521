//! Maximal atom complexity per co-basis size, measured on `R_n` (right ideals)
//! and `L_n` (regular languages).

use std::fmt::Write;

use serde::Serialize;

use super::atomaton_with_cap;
use crate::automaton::Dfa;
use crate::error::Result;
use crate::witnesses::{build_ln, build_rn, RLetters};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableCell {
    pub n: usize,
    pub r: usize,
    /// `None`: no atom of `R_n` has a co-basis of this size.
    pub right_ideal: Option<usize>,
    /// `None`: no measurement (no atom of `L_n` with this `r`, or no `L_n`).
    pub regular: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableColumn {
    pub n: usize,
    pub cells: Vec<TableCell>,
    pub max_right_ideal: Option<usize>,
    pub max_regular: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtomTable {
    pub columns: Vec<TableColumn>,
}

fn max_by_r(dfa: &Dfa, n: usize, cap: usize) -> Result<Vec<Option<usize>>> {
    let atoms = atomaton_with_cap(dfa, cap)?.atoms_with_complexity(cap)?;
    let mut out = vec![None; n + 1];
    for a in atoms {
        let slot = &mut out[a.r()];
        *slot = (*slot).max(a.complexity);
    }
    Ok(out)
}

/// Measure the table for `n = 1..=n_max`.
pub fn atom_table(n_max: usize, cap: usize) -> Result<AtomTable> {
    let mut columns = vec![];
    for n in 1..=n_max {
        let right = max_by_r(&build_rn(n, RLetters::Abcd)?, n, cap)?;
        let regular = if n >= 2 {
            max_by_r(&build_ln(n)?, n, cap)?
        } else {
            // the two one-state languages, Σ* and ∅, each have one atom
            let full = max_by_r(&Dfa::from_one_based("a", &[&[1]], 1, &[1])?, n, cap)?;
            let empty = max_by_r(&Dfa::from_one_based("a", &[&[1]], 1, &[])?, n, cap)?;
            full.into_iter().zip(empty).map(|(x, y)| x.max(y)).collect()
        };
        let cells: Vec<TableCell> = (0..=n)
            .map(|r| TableCell {
                n,
                r,
                right_ideal: right[r],
                regular: regular[r],
            })
            .collect();
        columns.push(TableColumn {
            n,
            max_right_ideal: right.iter().flatten().max().copied(),
            max_regular: regular.iter().flatten().max().copied(),
            cells,
        });
    }
    Ok(AtomTable { columns })
}

fn ratio(cur: Option<usize>, prev: Option<usize>) -> String {
    match (cur, prev) {
        (Some(c), Some(p)) if p > 0 => {
            if c % p == 0 {
                (c / p).to_string()
            } else {
                format!("{:.2}", c as f64 / p as f64)
            }
        }
        _ => "-".into(),
    }
}

fn num(v: Option<usize>) -> String {
    v.map_or_else(|| "-".into(), |v| v.to_string())
}

impl AtomTable {
    pub fn cell(&self, n: usize, r: usize) -> Option<&TableCell> {
        self.columns.iter().find(|c| c.n == n)?.cells.get(r)
    }

    /// `m_n / m_{n-1}` for both columns, rendered as in the markdown table.
    pub fn ratio(&self, n: usize) -> (String, String) {
        let col = |n: usize| self.columns.iter().find(|c| c.n == n);
        match (col(n), n.checked_sub(1).and_then(col)) {
            (Some(c), Some(p)) => (
                ratio(c.max_right_ideal, p.max_right_ideal),
                ratio(c.max_regular, p.max_regular),
            ),
            _ => ("-".into(), "-".into()),
        }
    }

    /// Rows `r = 0..=n_max`, one column per `n`, cells `right/regular`. An
    /// asterisk marks a co-basis size with no atom in `R_n`.
    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let n_max = self.columns.len();
        s.push_str("| n |");
        for c in &self.columns {
            let _ = write!(s, " {} |", c.n);
        }
        s.push_str("\n|---|");
        s.push_str(&"---|".repeat(n_max));
        s.push('\n');
        for r in 0..=n_max {
            let _ = write!(s, "| r={r} |");
            for c in &self.columns {
                match c.cells.get(r) {
                    Some(cell) => {
                        let left = cell.right_ideal.map_or_else(|| "*".into(), |v| v.to_string());
                        let _ = write!(s, " {left}/{} |", num(cell.regular));
                    }
                    None => s.push_str("  |"),
                }
            }
            s.push('\n');
        }
        s.push_str("| max |");
        for c in &self.columns {
            let _ = write!(s, " {}/{} |", num(c.max_right_ideal), num(c.max_regular));
        }
        s.push_str("\n| ratio |");
        for c in &self.columns {
            let (a, b) = self.ratio(c.n);
            if a == "-" && b == "-" {
                s.push_str(" - |");
            } else {
                let _ = write!(s, " {a}/{b} |");
            }
        }
        s.push('\n');
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let cells: Vec<&TableCell> = self.columns.iter().flat_map(|c| &c.cells).collect();
        let max: Vec<serde_json::Value> = self
            .columns
            .iter()
            .map(|c| {
                serde_json::json!({
                    "n": c.n,
                    "right_ideal": c.max_right_ideal,
                    "regular": c.max_regular,
                })
            })
            .collect();
        let ratio: Vec<serde_json::Value> = self
            .columns
            .iter()
            .map(|c| {
                let (a, b) = self.ratio(c.n);
                serde_json::json!({ "n": c.n, "right_ideal": a, "regular": b })
            })
            .collect();
        serde_json::json!({ "cells": cells, "max": max, "ratio": ratio })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::DEFAULT_SUBSET_CAP;

    #[test]
    fn small_table() {
        let t = atom_table(4, DEFAULT_SUBSET_CAP).unwrap();
        let cell = t.cell(3, 1).unwrap();
        assert_eq!((cell.right_ideal, cell.regular), (Some(5), Some(10)));
        assert_eq!(t.cell(3, 3).unwrap().right_ideal, None);
        assert_eq!(t.ratio(4).0, "3.20");
        assert_eq!(t.ratio(4).1, "4.30");
        let md = t.to_markdown();
        assert!(md.contains("| r=2 |"));
        assert!(md.contains(" */7 |"));
    }
}
