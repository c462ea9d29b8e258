use liegrowth::counting::{
    count_avoiding, divisors, graded_lie_dimension, mobius, witt_dimension, word_count, AvoidanceAutomaton,
};
use liegrowth::words::generate_ls_words;
use liegrowth::{GradedAlphabet, LetterSpec, Word};
use proptest::prelude::*;

fn alphabet(degrees: &[u32]) -> GradedAlphabet {
    let specs = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| LetterSpec { name: format!("a{i}"), degree: d })
        .collect();
    GradedAlphabet::new(specs).unwrap()
}

/// Words of each degree, by listing them.
fn brute_words(a: &GradedAlphabet, n: u32, forbidden: Option<&Word>) -> usize {
    a.words_of_degree(n)
        .iter()
        .filter(|w| forbidden.is_none_or(|u| !u.is_factor_of(w)))
        .count()
}

proptest! {
    #[test]
    fn mobius_sums_vanish(n in 2u64..2000) {
        let s: i64 = divisors(n).iter().map(|&d| i64::from(mobius(d).unwrap())).sum();
        prop_assert_eq!(s, 0);
    }

    #[test]
    fn graded_dimension_counts_ls_words(degrees in prop::collection::vec(1u32..4, 1..4)) {
        let a = alphabet(&degrees);
        let t = graded_lie_dimension(&a.histogram(), 8).unwrap();
        for n in 1..=8u32 {
            prop_assert_eq!(t.d(n as usize).unwrap(), &generate_ls_words(&a, n).len().into());
        }
    }

    #[test]
    fn avoidance_counts_match_listing(degrees in prop::collection::vec(1u32..3, 2..4), u in prop::collection::vec(0usize..3, 1..4)) {
        let a = alphabet(&degrees);
        let letters: Vec<_> = u.iter().map(|&i| a.letter(i % a.len())).collect();
        let u = Word::from_letters(letters);
        let t = count_avoiding(&a, &u, 9).unwrap();
        for n in 1..=9u32 {
            prop_assert_eq!(t.d(n as usize).unwrap(), &brute_words(&a, n, Some(&u)).into());
        }
    }

    #[test]
    fn transfer_rows_sum_to_letter_counts(u in prop::collection::vec(0usize..2, 1..5)) {
        let a = GradedAlphabet::binary();
        let u = Word::from_letters(u.iter().map(|&i| a.letter(i)));
        let aut = AvoidanceAutomaton::new(&a, &u).unwrap();
        let m = aut.transfer_matrix(1);
        for row in &m {
            prop_assert_eq!(row.iter().sum::<u64>(), 2);
        }
    }
}

#[test]
fn witt_small_values() {
    let expected = [2u32, 1, 2, 3, 6, 9, 18, 30, 56, 99];
    for (n, &e) in expected.iter().enumerate() {
        assert_eq!(witt_dimension(2, n as u64 + 1), e.into());
    }
    assert_eq!(witt_dimension(3, 4), 18u32.into());
}

#[test]
fn word_counts_follow_the_recursion() {
    let a = alphabet(&[1, 2, 2]);
    let t = word_count(&a, 10);
    for n in 1..=10u32 {
        assert_eq!(t.d(n as usize).unwrap(), &brute_words(&a, n, None).into());
    }
}
