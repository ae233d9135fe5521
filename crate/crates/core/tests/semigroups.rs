use proptest::prelude::*;

use rideal::transform::{compose, generate_semigroup, syntactic_semigroup_size, transformation_of_word, GeneratorSet};
use rideal::witnesses::{build_pn, build_rn, RLetters};
use rideal::{Transformation, Word};

fn arb_transformation(n: usize) -> impl Strategy<Value = Transformation> {
    prop::collection::vec(0..n, n).prop_map(|i| Transformation::new(i).unwrap())
}

fn arb_triple() -> impl Strategy<Value = (Transformation, Transformation, Transformation)> {
    (1..=8usize).prop_flat_map(|n| (arb_transformation(n), arb_transformation(n), arb_transformation(n)))
}

fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(vec!['a', 'b', 'c', 'd']), 1..=max_len).prop_map(Word::from)
}

proptest! {
    #[test]
    fn composition_is_associative((s, t, u) in arb_triple()) {
        let left = compose(&compose(&s, &t).unwrap(), &u).unwrap();
        let right = compose(&s, &compose(&t, &u).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn word_transformations_compose(n in 3..=7usize, u in arb_word(6), v in arb_word(6)) {
        let d = build_rn(n, RLetters::Abcd).unwrap();
        let tu = transformation_of_word(&d, &u).unwrap();
        let tv = transformation_of_word(&d, &v).unwrap();
        let tuv = transformation_of_word(&d, &u.concat(&v)).unwrap();
        prop_assert_eq!(tuv, tu.then(&tv));
    }
}

#[test]
fn closure_is_closed_and_witnessed() {
    for n in 3..=5 {
        let d = build_rn(n, RLetters::Abcd).unwrap();
        let gens = GeneratorSet::of_dfa(&d);
        let closure = generate_semigroup(&gens, 1 << 20).unwrap();
        for (i, t) in closure.elements().iter().enumerate() {
            for (_, g) in gens.iter() {
                assert!(closure.contains(&t.then(g)));
            }
            let w = closure.witness(i);
            assert_eq!(&transformation_of_word(&d, &w).unwrap(), t);
        }
    }
}

#[test]
fn witness_words_are_shortest() {
    let d = build_rn(4, RLetters::Abcd).unwrap();
    let closure = generate_semigroup(&GeneratorSet::of_dfa(&d), 1 << 20).unwrap();
    let lens: Vec<usize> = (0..closure.size()).map(|i| closure.witness(i).len()).collect();
    assert!(lens.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn permutation_witness_is_contained_in_rn() {
    for n in 4..=7 {
        let p = generate_semigroup(&GeneratorSet::of_dfa(&build_pn(n).unwrap()), 1 << 22).unwrap();
        let r = generate_semigroup(&GeneratorSet::of_dfa(&build_rn(n, RLetters::Abcd).unwrap()), 1 << 22).unwrap();
        assert!(p.elements().iter().all(|t| r.contains(t)), "n={n}");
        assert_eq!(p.size(), r.size());
    }
}

#[test]
fn syntactic_semigroup_sizes() {
    for (n, want) in [(3, 9), (4, 64), (5, 625), (6, 7776)] {
        assert_eq!(syntactic_semigroup_size(&build_rn(n, RLetters::Abcd).unwrap(), 1 << 22).unwrap(), want);
    }
}

#[test]
fn closure_cap_reports_partial_count() {
    let d = build_rn(5, RLetters::Abcd).unwrap();
    let err = generate_semigroup(&GeneratorSet::of_dfa(&d), 100).unwrap_err();
    assert!(err.is_resource());
}
