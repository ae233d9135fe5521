//! One PASS/FAIL line per acceptance criterion. Run with
//! `cargo test -p rideal --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rideal::atoms::{atom_bound, atom_table, atomaton, atoms_of, closed_form_atomaton_rn};
use rideal::ops::{self, BooleanOp};
use rideal::oracle::word_sample_oracle;
use rideal::transform::{
    generate_semigroup, syntactic_semigroup_size, transformation_of_word, GeneratorSet, DEFAULT_SEMIGROUP_CAP,
};
use rideal::verify::{verify_main_results, VerifyConfig};
use rideal::witnesses::{build_rn, RLetters};
use rideal::{Dfa, Result, Transformation, Word, DEFAULT_SUBSET_CAP};

type Check = fn() -> Result<Vec<String>>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    check: Check,
}

fn rn(n: usize, letters: RLetters) -> Dfa {
    build_rn(n, letters).unwrap()
}

fn pow2(k: usize) -> usize {
    1 << k
}

fn expect(errs: &mut Vec<String>, what: String, got: usize, want: usize) {
    if got != want {
        errs.push(format!("{what}: got {got}, want {want}"));
    }
}

fn witness_minimality() -> Result<Vec<String>> {
    let mut e = vec![];
    for n in 1..=8 {
        expect(&mut e, format!("n={n}"), rn(n, RLetters::Ad).complexity(), n);
    }
    Ok(e)
}

fn syntactic_semigroup() -> Result<Vec<String>> {
    let mut e = vec![];
    for n in 3..=7 {
        let size = syntactic_semigroup_size(&rn(n, RLetters::Abcd), DEFAULT_SEMIGROUP_CAP)?;
        expect(&mut e, format!("n={n}"), size, n.pow(n as u32 - 1));
    }
    Ok(e)
}

fn quotient_complexities() -> Result<Vec<String>> {
    let mut e = vec![];
    for n in 3..=8 {
        let mut want = vec![n; n - 1];
        want.push(1);
        let got = rn(n, RLetters::Ad).state_complexities();
        if got != want {
            e.push(format!("n={n}: got {got:?}"));
        }
    }
    Ok(e)
}

fn reverse_and_atom_count() -> Result<Vec<String>> {
    let mut e = vec![];
    for n in 1..=8 {
        expect(
            &mut e,
            format!("reverse n={n}"),
            ops::reverse_complexity(&rn(n, RLetters::Ad))?,
            pow2(n - 1),
        );
        expect(&mut e, format!("atoms n={n}"), atoms_of(&rn(n, RLetters::Abcd))?.len(), pow2(n - 1));
    }
    Ok(e)
}

const RIGHT_IDEAL_MAX: [usize; 5] = [5, 16, 53, 166, 542];

fn atom_complexities() -> Result<Vec<String>> {
    let mut e = vec![];
    for n in 1..=7 {
        let atoms = atomaton(&rn(n, RLetters::Abcd))?.atoms_with_complexity(DEFAULT_SUBSET_CAP)?;
        for a in &atoms {
            let want = atom_bound(n, a.r())? as usize;
            expect(&mut e, format!("n={n} basis {}", a.basis), a.complexity.unwrap(), want);
        }
        if n >= 3 {
            let max = atoms.iter().filter_map(|a| a.complexity).max().unwrap();
            expect(&mut e, format!("max n={n}"), max, RIGHT_IDEAL_MAX[n - 3]);
        }
    }
    Ok(e)
}

const REGULAR_COLUMN: [&[usize]; 4] = [
    &[7, 10, 10, 7],
    &[15, 29, 43, 29, 15],
    &[31, 76, 141, 141, 76, 31],
    &[63, 187, 406, 501, 406, 187, 63],
];

fn regular_column() -> Result<Vec<String>> {
    let mut e = vec![];
    let table = atom_table(6, DEFAULT_SUBSET_CAP)?;
    for n in 3..=6 {
        for (r, &want) in REGULAR_COLUMN[n - 3].iter().enumerate() {
            let got = table.cell(n, r).and_then(|c| c.regular).unwrap_or(0);
            expect(&mut e, format!("n={n} r={r}"), got, want);
        }
    }
    Ok(e)
}

fn closed_form() -> Result<Vec<String>> {
    let mut e = vec![];
    for n in 4..=7 {
        let pipe = atomaton(&rn(n, RLetters::Abcd))?;
        let closed = closed_form_atomaton_rn(n)?;
        if !closed.same_labels(&pipe) {
            e.push(format!("n={n}: {} of {} labels agree", closed.label_agreement(&pipe), pipe.len()));
        }
    }
    Ok(e)
}

fn interval_property() -> Result<Vec<String>> {
    let mut e = vec![];
    for n in 4..=6 {
        let census = atomaton(&rn(n, RLetters::Abcd))?.interval_census(n - 1, DEFAULT_SUBSET_CAP)?;
        expect(&mut e, format!("n={n} interval states"), census.intervals, census.states);
    }
    Ok(e)
}

fn star() -> Result<Vec<String>> {
    let mut e = vec![];
    expect(&mut e, "n=1".into(), ops::star(&rn(1, RLetters::Ad))?.n(), 1);
    for n in 2..=8 {
        expect(&mut e, format!("n={n}"), ops::star(&rn(n, RLetters::Ad))?.n(), n + 1);
    }
    Ok(e)
}

fn product() -> Result<Vec<String>> {
    let mut e = vec![];
    for m in 1..=6 {
        for n in 2..=6 {
            let d = ops::concat(&rn(m, RLetters::Abd), &rn(n, RLetters::Abd))?;
            expect(&mut e, format!("m={m} n={n}"), d.n(), m + pow2(n - 2));
        }
    }
    Ok(e)
}

fn bool_formula(op: BooleanOp, m: usize, n: usize) -> usize {
    match op {
        BooleanOp::Union => m * n - (m + n - 2),
        BooleanOp::Intersection | BooleanOp::SymmetricDifference => m * n,
        BooleanOp::Difference => m * n - (m - 1),
    }
}

fn boolean_grid(right: RLetters, unequal_only: bool) -> Result<Vec<String>> {
    let mut e = vec![];
    for m in 3..=6 {
        for n in 3..=6 {
            if unequal_only && m == n {
                continue;
            }
            let (l, r) = (rn(m, RLetters::Abd), rn(n, right));
            for op in BooleanOp::ALL {
                let got = ops::boolean(&l, &r, op)?.n();
                expect(&mut e, format!("{op} m={m} n={n}"), got, bool_formula(op, m, n));
            }
        }
    }
    Ok(e)
}

fn boolean_mixed() -> Result<Vec<String>> {
    boolean_grid(RLetters::Bad, false)
}

fn boolean_same_unequal() -> Result<Vec<String>> {
    boolean_grid(RLetters::Abd, true)
}

fn transposition_word() -> Result<Vec<String>> {
    let mut e = vec![];
    for n in 3..=8 {
        let w = Word::from("a").pow(n - 2).concat(&Word::from("b"));
        let t = transformation_of_word(&rn(n, RLetters::Abcd), &w)?;
        if t != Transformation::transposition(0, 1, n)? {
            e.push(format!("n={n}: {t}"));
        }
    }
    Ok(e)
}

fn closure_sizes() -> Result<Vec<String>> {
    let mut e = vec![];
    for n in 3..=6 {
        let cycle = Transformation::cycle(&(0..n).collect::<Vec<_>>(), n)?;
        let swap = Transformation::transposition(0, 1, n)?;
        let reset = Transformation::unitary(n - 1, 0, n)?;
        let perms = generate_semigroup(&GeneratorSet::unlabelled(vec![cycle.clone(), swap.clone()])?, DEFAULT_SEMIGROUP_CAP)?;
        let all = generate_semigroup(&GeneratorSet::unlabelled(vec![cycle, swap, reset])?, DEFAULT_SEMIGROUP_CAP)?;
        expect(&mut e, format!("perms n={n}"), perms.size(), (1..=n).product());
        expect(&mut e, format!("all n={n}"), all.size(), n.pow(n as u32));
    }
    Ok(e)
}

fn word_oracle() -> Result<Vec<String>> {
    let report = word_sample_oracle(2024, 200, 4, 6)?;
    if report.pass() {
        Ok(vec![])
    } else {
        Ok(report.examples)
    }
}

fn determinism() -> Result<Vec<String>> {
    let a = verify_main_results(VerifyConfig::default())?.to_json();
    let b = verify_main_results(VerifyConfig::default())?.to_json();
    Ok(if a == b { vec![] } else { vec!["JSON reports differ".into()] })
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

const CRITERIA: [Criterion; 16] = [
    Criterion { id: 1, name: "witness minimality, n = 1..8", limit: secs(1), check: witness_minimality },
    Criterion { id: 2, name: "syntactic semigroup n^(n-1), n = 3..7", limit: secs(60), check: syntactic_semigroup },
    Criterion { id: 3, name: "quotient complexities (n,..,n,1), n = 3..8", limit: None, check: quotient_complexities },
    Criterion { id: 4, name: "reverse and atom count 2^(n-1), n = 1..8", limit: secs(10), check: reverse_and_atom_count },
    Criterion { id: 5, name: "atom complexities meet the bound, n = 1..7", limit: secs(120), check: atom_complexities },
    Criterion { id: 6, name: "regular comparison column, n = 3..6", limit: secs(120), check: regular_column },
    Criterion { id: 7, name: "closed-form átomaton, n = 4..7", limit: None, check: closed_form },
    Criterion { id: 8, name: "interval property, n = 4..6", limit: secs(60), check: interval_property },
    Criterion { id: 9, name: "star n+1, n = 2..8; 1 at n = 1", limit: None, check: star },
    Criterion { id: 10, name: "product m+2^(n-2), 1 <= m <= 6, 2 <= n <= 6", limit: None, check: product },
    Criterion { id: 11, name: "boolean operations, mixed roles, 3 <= m,n <= 6", limit: None, check: boolean_mixed },
    Criterion { id: 12, name: "boolean operations, same roles, 3 <= m != n <= 6", limit: None, check: boolean_same_unequal },
    Criterion { id: 13, name: "a^(n-2)b is the transposition (1,2), n = 3..8", limit: None, check: transposition_word },
    Criterion { id: 14, name: "closure sizes n! and n^n, n = 3..6", limit: None, check: closure_sizes },
    Criterion { id: 15, name: "word-sample oracle, 200 pairs", limit: None, check: word_oracle },
    Criterion { id: 16, name: "verify JSON is byte-identical across runs", limit: None, check: determinism },
];

fn main() -> ExitCode {
    let mut failed = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let result = (c.check)();
        let elapsed = start.elapsed();
        let mut problems = match result {
            Ok(p) => p,
            Err(e) => vec![format!("error: {e}")],
        };
        if let Some(limit) = c.limit {
            if elapsed > limit {
                problems.push(format!("took {elapsed:?}, limit {limit:?}"));
            }
        }
        let status = if problems.is_empty() { "PASS" } else { "FAIL" };
        println!("{status} [{:>2}] {} ({} ms)", c.id, c.name, elapsed.as_millis());
        for p in problems.iter().take(5) {
            println!("       {p}");
        }
        if !problems.is_empty() {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
