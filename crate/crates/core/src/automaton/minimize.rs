//! Hopcroft partition refinement.
//!
//! Blocks start as {finals, non-finals}. A splitter (B, x) splits every block
//! Y that has some but not all of its states mapped into B by letter x. When a
//! block Y splits into Y and Z, for each letter c: if (Y, c) is pending then
//! (Z, c) is added too, otherwise only the smaller half is added.

use super::Dfa;
use crate::error::Result;
use crate::stateset::{StateId, StateSet};
use crate::transform::Transformation;

pub(super) fn minimize(dfa: &Dfa) -> Dfa {
    let dfa = dfa.reachable_part();
    let block_of = refine(&dfa);
    let blocks = block_of.iter().max().map_or(0, |&b| b + 1);
    let mut rep = vec![usize::MAX; blocks];
    for (q, &b) in block_of.iter().enumerate() {
        if rep[b] == usize::MAX {
            rep[b] = q;
        }
    }
    let delta = (0..dfa.alphabet().len())
        .map(|x| {
            Transformation::new(rep.iter().map(|&q| block_of[dfa.step(q, x)]).collect())
        })
        .collect::<Result<Vec<_>>>()
        .expect("block ids in range");
    let finals = StateSet::from_indices(
        blocks,
        (0..blocks).filter(|&b| dfa.is_final(rep[b])),
    );
    Dfa::new(
        dfa.alphabet().clone(),
        delta,
        StateId(block_of[dfa.initial().index()]),
        finals,
    )
    .expect("quotient automaton is well formed")
    .reachable_part()
}

#[allow(clippy::needless_range_loop)]
fn refine(dfa: &Dfa) -> Vec<usize> {
    let n = dfa.n();
    let k = dfa.alphabet().len();

    // inverse[x][q] = states p with δ(p, x) = q
    let mut inverse = vec![vec![Vec::new(); n]; k];
    for (x, inv) in inverse.iter_mut().enumerate() {
        for p in 0..n {
            inv[dfa.step(p, x)].push(p);
        }
    }

    let (fin, non): (Vec<usize>, Vec<usize>) = (0..n).partition(|&q| dfa.is_final(q));
    let mut blocks: Vec<Vec<usize>> = [fin, non].into_iter().filter(|b| !b.is_empty()).collect();
    let mut block_of = vec![0; n];
    for (b, members) in blocks.iter().enumerate() {
        for &q in members {
            block_of[q] = b;
        }
    }
    if blocks.len() < 2 {
        return block_of;
    }

    let mut pending = vec![vec![false; k]; 2];
    let mut work = Vec::new();
    let smaller = if blocks[0].len() <= blocks[1].len() { 0 } else { 1 };
    pending[smaller] = vec![true; k];
    work.extend((0..k).map(|x| (smaller, x)));

    let mut in_preimage = vec![false; n];
    let mut hits = vec![0usize; n];
    while let Some((b, x)) = work.pop() {
        pending[b][x] = false;
        let preimage: Vec<usize> = blocks[b]
            .iter()
            .flat_map(|&q| inverse[x][q].iter().copied())
            .collect();
        let mut touched = vec![];
        for &p in &preimage {
            in_preimage[p] = true;
            let y = block_of[p];
            if hits[y] == 0 {
                touched.push(y);
            }
            hits[y] += 1;
        }
        for y in touched {
            if hits[y] < blocks[y].len() {
                let (inside, outside): (Vec<usize>, Vec<usize>) =
                    blocks[y].iter().partition(|&&q| in_preimage[q]);
                let z = blocks.len();
                for &q in &inside {
                    block_of[q] = z;
                }
                blocks[y] = outside;
                blocks.push(inside);
                pending.push(vec![false; k]);
                for c in 0..k {
                    let add = if pending[y][c] || blocks[z].len() <= blocks[y].len() {
                        z
                    } else {
                        y
                    };
                    if !pending[add][c] {
                        pending[add][c] = true;
                        work.push((add, c));
                    }
                }
            }
            hits[y] = 0;
        }
        for p in preimage {
            in_preimage[p] = false;
        }
    }
    block_of
}
