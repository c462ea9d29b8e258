use liegrowth::freealg::{expand_ls, ls_compose, ls_decompose, parse_expression};
use liegrowth::words::generate_ls_words;
use liegrowth::{GradedAlphabet, LieElement, NcPoly, Rational};
use proptest::prelude::*;

fn ternary() -> GradedAlphabet {
    GradedAlphabet::parse("z:1,y:1,x:1").unwrap()
}

/// A random homogeneous Lie element as a combination of LS-commutators.
fn lie(degree: u32, picks: &[(usize, i64)]) -> LieElement {
    let a = ternary();
    let words = generate_ls_words(&a, degree);
    let mut p = NcPoly::<Rational>::zero();
    for &(i, c) in picks {
        let w = &words[i % words.len()];
        p = p.add(&expand_ls::<Rational>(w).unwrap().scale(&Rational::from_integer(c.into())));
    }
    LieElement::from_poly(p).unwrap()
}

fn element() -> impl Strategy<Value = LieElement> {
    (1u32..5, prop::collection::vec((0usize..50, -3i64..4), 1..4)).prop_map(|(d, picks)| lie(d, &picks))
}

proptest! {
    #[test]
    fn bracket_is_antisymmetric(a in element(), b in element()) {
        prop_assert_eq!(a.bracket(&b), b.bracket(&a).scale(&Rational::from_integer((-1).into())));
    }

    #[test]
    fn jacobi_identity(a in element(), b in element(), c in element()) {
        let s = a.bracket(&b.bracket(&c)).add(&b.bracket(&c.bracket(&a))).add(&c.bracket(&a.bracket(&b)));
        prop_assert!(s.is_zero());
    }

    #[test]
    fn ls_coordinates_round_trip(a in element()) {
        let coords = ls_decompose(a.poly()).unwrap();
        prop_assert_eq!(&ls_compose(&coords).unwrap(), a.poly());
    }

    #[test]
    fn text_round_trip(a in element(), b in element()) {
        let e = a.add(&b);
        let names = ternary();
        let text = e.to_text(&names);
        prop_assert_eq!(parse_expression(&text, &names).unwrap(), e);
    }
}

#[test]
fn non_lie_polynomials_are_rejected() {
    let a = GradedAlphabet::binary();
    let x = NcPoly::<Rational>::letter(a.letter(1));
    let y = NcPoly::<Rational>::letter(a.letter(0));
    assert!(LieElement::from_poly(x.mul(&y)).is_err());
    assert!(LieElement::from_poly(x.bracket(&y)).is_ok());
}
