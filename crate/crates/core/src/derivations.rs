//! The shifting derivation `D x_i = x_{i+1}` on the free algebra over a
//! countable alphabet, and the search for an `n` with `D^n(a)` outside the
//! monomial ideal generated by `x_1, ..., x_k`.
//!
//! Only associative membership is tested. The Lie ideal `J_k` lies inside
//! `I_k`, so escaping `I_k` also certifies escaping `J_k`.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::freealg::{LetterNames, NcPoly};
use crate::words::{Letter, Word};

/// Letters per family; a letter's code is `family * FAMILY_STRIDE + index`.
pub const FAMILY_STRIDE: u16 = 4096;
pub const MAX_FAMILY: u16 = 15;
pub const MAX_INDEX: u16 = FAMILY_STRIDE - 1;

/// Letters `x_i^{(j)}`, `i >= 1`, `1 <= j <= 15`, all of degree 1.
///
/// Family 1 is written `x<i>`, the others `x<j>_<i>`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IndexedAlphabet;

impl IndexedAlphabet {
    pub fn letter(family: u16, index: u16) -> Result<Letter> {
        if !(1..=MAX_FAMILY).contains(&family) || !(1..=MAX_INDEX).contains(&index) {
            return Err(Error::InvalidArgument(format!(
                "indexed letter ({family}, {index}) out of range"
            )));
        }
        Ok(Letter::new(family * FAMILY_STRIDE + index, 1))
    }

    /// `x_i` of the first family.
    pub fn x(index: u16) -> Letter {
        Self::letter(1, index).expect("index in range")
    }

    pub fn family(letter: Letter) -> u16 {
        letter.index() / FAMILY_STRIDE
    }

    pub fn index(letter: Letter) -> u16 {
        letter.index() % FAMILY_STRIDE
    }
}

impl LetterNames for IndexedAlphabet {
    fn resolve(&self, name: &str) -> Option<Letter> {
        let rest = name.strip_prefix('x')?;
        let number = |s: &str| -> Option<u16> {
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            s.parse().ok()
        };
        let (family, index) = match rest.split_once('_') {
            Some((j, i)) => (number(j)?, number(i)?),
            None => (1, number(rest)?),
        };
        Self::letter(family, index).ok()
    }

    fn letter_name(&self, letter: Letter) -> String {
        match Self::family(letter) {
            1 => format!("x{}", Self::index(letter)),
            j => format!("x{j}_{}", Self::index(letter)),
        }
    }
}

fn shifted(letter: Letter) -> Result<Letter> {
    IndexedAlphabet::letter(IndexedAlphabet::family(letter), IndexedAlphabet::index(letter) + 1)
}

/// One application of `D`, by the Leibniz rule on each monomial.
pub fn shift<F: Field>(p: &NcPoly<F>) -> Result<NcPoly<F>> {
    let mut terms = Vec::new();
    for (w, c) in p.terms() {
        for i in 0..w.len() {
            let mut letters = w.letters().to_vec();
            letters[i] = shifted(letters[i])?;
            terms.push((Word::from_letters(letters), c.clone()));
        }
    }
    Ok(NcPoly::from_terms(terms))
}

/// `D^n(p)`.
pub fn apply_shift<F: Field>(p: &NcPoly<F>, n: usize) -> Result<NcPoly<F>> {
    let mut p = p.clone();
    for _ in 0..n {
        p = shift(&p)?;
    }
    Ok(p)
}

/// True iff every monomial of `p` contains a letter of the first family with
/// index at most `k`. The zero polynomial lies in every ideal.
pub fn in_monomial_ideal<F: Field>(p: &NcPoly<F>, k: u16) -> bool {
    escaping_monomial(p, k).is_none()
}

/// A monomial of `p` free of `x_1, ..., x_k`, if there is one.
pub fn escaping_monomial<F: Field>(p: &NcPoly<F>, k: u16) -> Option<&Word> {
    let cutoff = |l: &Letter| IndexedAlphabet::family(*l) == 1 && IndexedAlphabet::index(*l) <= k;
    escaping_by(p, cutoff)
}

/// Membership in the monomial ideal generated by an arbitrary set of letters.
pub fn in_letter_ideal<F: Field>(p: &NcPoly<F>, generators: &[Letter]) -> bool {
    escaping_by(p, |l| generators.contains(l)).is_none()
}

fn escaping_by<F: Field>(p: &NcPoly<F>, in_ideal: impl Fn(&Letter) -> bool) -> Option<&Word> {
    p.terms()
        .iter()
        .map(|(w, _)| w)
        .find(|w| !w.letters().iter().any(&in_ideal))
}

/// Least `n <= cap` with `D^n(a)` outside `I_k`, or `None` when every power up
/// to `cap` stays inside.
pub fn escape_exponent(a: &NcPoly<Rational>, k: u16, cap: usize) -> Result<Option<usize>> {
    if k == 0 {
        return Err(Error::InvalidArgument("cutoff k must be at least 1".into()));
    }
    escape_by(a, cap, |p| in_monomial_ideal(p, k))
}

/// Least `n <= cap` with `D^n(a)` outside the ideal generated by `generators`.
pub fn escape_exponent_from(a: &NcPoly<Rational>, generators: &[Letter], cap: usize) -> Result<Option<usize>> {
    escape_by(a, cap, |p| in_letter_ideal(p, generators))
}

fn escape_by(a: &NcPoly<Rational>, cap: usize, inside: impl Fn(&NcPoly<Rational>) -> bool) -> Result<Option<usize>> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    if cap == 0 {
        return Err(Error::InvalidArgument("cap must be at least 1".into()));
    }
    let mut p = a.clone();
    for n in 0..=cap {
        if !inside(&p) {
            return Ok(Some(n));
        }
        if n < cap {
            p = shift(&p)?;
        }
    }
    Ok(None)
}

/// `K_d = (1/2)(2k+2)^(2^(c-d))`, the bound used in the existence argument.
pub fn claim_bound(c: u32, k: u32, d: u32) -> Result<BigUint> {
    if d == 0 || d > c {
        return Err(Error::InvalidArgument(format!("need 1 <= d <= c, got d = {d}, c = {c}")));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("cutoff k must be at least 1".into()));
    }
    if c - d > 24 {
        return Err(Error::InvalidArgument(format!("2^{} exponent is too large to materialize", c - d)));
    }
    // (2k+2)^e / 2 = (k+1)^e * 2^(e-1)
    let e = 1u32 << (c - d);
    Ok(BigUint::from(k + 1).pow(e) << (e - 1) as usize)
}

/// Merges families into the first: `x_i^{(j)} -> x_{i + (j-1) m}`.
///
/// This commutes with the shift, but it is injective on letters only up to
/// index `m` in each family.
pub fn relabel<F: Field>(p: &NcPoly<F>, m: u16) -> Result<NcPoly<F>> {
    let mut terms = Vec::with_capacity(p.len());
    for (w, c) in p.terms() {
        let letters = w
            .letters()
            .iter()
            .map(|&l| {
                let j = IndexedAlphabet::family(l);
                let i = u32::from(IndexedAlphabet::index(l)) + u32::from(j - 1) * u32::from(m);
                u16::try_from(i)
                    .map_err(|_| Error::InvalidArgument("relabeled index out of range".into()))
                    .and_then(|i| IndexedAlphabet::letter(1, i))
            })
            .collect::<Result<Vec<_>>>()?;
        terms.push((Word::from_letters(letters), c.clone()));
    }
    Ok(NcPoly::from_terms(terms))
}

/// Largest letter index in use, over all families.
pub fn max_index<F: Field>(p: &NcPoly<F>) -> u16 {
    p.letters().map(IndexedAlphabet::index).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::parse_expression;

    fn p(text: &str) -> NcPoly<Rational> {
        parse_expression(text, &IndexedAlphabet).unwrap().into_poly()
    }

    fn word(indices: &[u16]) -> Word {
        Word::from_letters(indices.iter().map(|&i| IndexedAlphabet::x(i)))
    }

    #[test]
    fn names_round_trip() {
        let l = IndexedAlphabet.resolve("x2_7").unwrap();
        assert_eq!((IndexedAlphabet::family(l), IndexedAlphabet::index(l)), (2, 7));
        assert_eq!(IndexedAlphabet.letter_name(l), "x2_7");
        assert_eq!(IndexedAlphabet.resolve("x1_3"), IndexedAlphabet.resolve("x3"));
        assert_eq!(IndexedAlphabet.letter_name(IndexedAlphabet::x(12)), "x12");
        for bad in ["x0", "y1", "x", "x1_", "x16_1", "x+1"] {
            assert!(IndexedAlphabet.resolve(bad).is_none(), "{bad}");
        }
    }

    #[test]
    fn shift_examples() {
        assert_eq!(shift(&p("x1")).unwrap(), p("x2"));
        let x1x2 = NcPoly::monomial(word(&[1, 2]), Rational::one());
        let expected = NcPoly::from_terms([(word(&[2, 2]), Rational::one()), (word(&[1, 3]), Rational::one())]);
        assert_eq!(shift(&x1x2).unwrap(), expected);
        assert_eq!(apply_shift(&p("[x1,x2]"), 2).unwrap(), p("[x2,x3] + [x1,x4]"));
        assert_eq!(apply_shift(&p("[x1,x2]"), 3).unwrap(), p("[x1,x5] + 2*[x2,x4]"));
        assert_eq!(
            apply_shift(&p("[x1,x2]"), 4).unwrap(),
            p("[x1,x6] + 3*[x2,x5] + 2*[x3,x4]")
        );
        assert_eq!(apply_shift(&p("x3_1"), 0).unwrap(), p("x3_1"));
        assert_eq!(shift(&p("x2_4")).unwrap(), p("x2_5"));
    }

    #[test]
    fn membership_examples() {
        let one = Rational::one();
        let x2x2 = NcPoly::monomial(word(&[2, 2]), one.clone());
        let x1x3 = NcPoly::monomial(word(&[1, 3]), one.clone());
        assert!(!in_monomial_ideal(&x2x2, 1));
        assert!(in_monomial_ideal(&x1x3, 1));
        assert!(!in_monomial_ideal(&x2x2.add(&x1x3), 1));
        assert!(in_monomial_ideal(&NcPoly::<Rational>::zero(), 1));
        // other families never lie in I_k
        assert!(!in_monomial_ideal(&p("x2_1"), 5));
        assert!(in_letter_ideal(&p("x2_1"), &[IndexedAlphabet::letter(2, 1).unwrap()]));
    }

    #[test]
    fn escape_examples() {
        assert_eq!(escape_exponent(&p("x1"), 1, 50).unwrap(), Some(1));
        assert_eq!(escape_exponent(&p("x5"), 1, 50).unwrap(), Some(0));
        assert_eq!(escape_exponent(&p("[x1,x2]"), 1, 50).unwrap(), Some(2));
        assert_eq!(escape_exponent(&p("[x1,x2]"), 2, 50).unwrap(), Some(4));
        assert_eq!(escape_exponent(&p("[x1,x2]"), 2, 3).unwrap(), None);
        assert_eq!(escape_exponent(&NcPoly::zero(), 1, 5).unwrap_err(), Error::ZeroElement);
        assert!(escape_exponent(&p("x1"), 1, 0).is_err());
    }

    #[test]
    fn claim_bound_recursion() {
        assert_eq!(claim_bound(1, 1, 1).unwrap(), BigUint::from(2u32));
        for c in 1..6 {
            for k in 1..4 {
                assert_eq!(claim_bound(c, k, c).unwrap(), BigUint::from(k + 1));
                for d in 1..c {
                    let next = claim_bound(c, k, d + 1).unwrap();
                    assert_eq!(claim_bound(c, k, d).unwrap(), BigUint::from(2u32) * &next * &next);
                }
            }
        }
        assert!(claim_bound(2, 1, 3).is_err());
        assert!(claim_bound(2, 1, 0).is_err());
    }

    #[test]
    fn relabel_commutes_with_shift() {
        let a = p("[x1,x2_1] + [x2,[x1,x2_2]]");
        for n in 0..6 {
            let left = relabel(&apply_shift(&a, n).unwrap(), 2).unwrap();
            let right = apply_shift(&relabel(&a, 2).unwrap(), n).unwrap();
            assert_eq!(left, right);
        }
    }
}
