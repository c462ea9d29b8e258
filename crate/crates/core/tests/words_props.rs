use liegrowth::freealg::expand;
use liegrowth::words::{
    cfl_factorize, generate_ls_words, is_ls_commutator, is_ls_word, ls_words_by_filter, ls_words_streaming,
    standard_bracketing,
};
use liegrowth::{GradedAlphabet, Letter, Rational, Word};
use proptest::prelude::*;

fn word(letters: &[u16]) -> Word {
    Word::from_letters(letters.iter().map(|&i| Letter::new(i, 1)))
}

fn greater_than_rotations(w: &Word) -> bool {
    (1..w.len()).all(|i| *w > w.rotation(i))
}

proptest! {
    #[test]
    fn cfl_factors_are_ls_and_non_decreasing(letters in prop::collection::vec(0u16..3, 1..14)) {
        let w = word(&letters);
        let factors = cfl_factorize(&w).unwrap();
        let joined = factors.iter().fold(Word::empty(), |acc, f| acc.concat(f));
        prop_assert_eq!(&joined, &w);
        for f in &factors {
            prop_assert!(is_ls_word(f).unwrap());
        }
        for pair in factors.windows(2) {
            prop_assert!(pair[0] <= pair[1]);
        }
    }

    #[test]
    fn ls_test_matches_rotation_definition(letters in prop::collection::vec(0u16..3, 1..12)) {
        let w = word(&letters);
        prop_assert_eq!(is_ls_word(&w).unwrap(), greater_than_rotations(&w));
    }

    #[test]
    fn order_is_total_and_prefix_greater(a in prop::collection::vec(0u16..3, 0..8), b in prop::collection::vec(0u16..3, 0..8)) {
        let (u, v) = (word(&a), word(&b));
        prop_assert_eq!(u.cmp(&v), v.cmp(&u).reverse());
        if !a.is_empty() {
            let longer = u.concat(&v);
            if !v.is_empty() {
                prop_assert!(u > longer);
            }
        }
    }

    #[test]
    fn standard_bracketing_is_an_ls_commutator(letters in prop::collection::vec(0u16..3, 1..10)) {
        let w = word(&letters);
        prop_assume!(is_ls_word(&w).unwrap());
        let t = standard_bracketing(&w).unwrap();
        prop_assert_eq!(t.support(), w.clone());
        prop_assert!(is_ls_commutator(&t));
        // the expansion has leading word w with coefficient 1
        let p = expand::<Rational>(&t);
        let (lead, c) = p.leading_term().unwrap();
        prop_assert_eq!(lead, &w);
        prop_assert_eq!(c, &Rational::from_integer(1.into()));
    }
}

#[test]
fn three_enumerators_agree() {
    for spec in ["y:1,x:1", "z:1,y:1,x:1", "b:2,a:1", "c:1,b:2,a:3"] {
        let a = GradedAlphabet::parse(spec).unwrap();
        for n in 1..=9 {
            let g = generate_ls_words(&a, n);
            assert_eq!(g, ls_words_by_filter(&a, n), "{spec} degree {n}");
            assert_eq!(g, ls_words_streaming(&a, n), "{spec} degree {n}");
            assert!(g.windows(2).all(|p| p[0] > p[1]));
        }
    }
}

#[test]
fn non_ls_words_have_no_standard_bracketing() {
    let a = GradedAlphabet::binary();
    for text in ["yx", "xyxy", "yy"] {
        assert!(standard_bracketing(&a.parse_word(text).unwrap()).is_err(), "{text}");
    }
    assert!(cfl_factorize(&Word::empty()).is_err());
}
