//! Noncommutative polynomials, Lie elements and the bracket-expression grammar.
//!
//! ```text
//! expr := term (('+' | '-') term)*
//! term := [rational '*'] atom
//! atom := letter | '[' expr ',' expr ']'
//! ```
//!
//! A leading sign is allowed, whitespace is ignored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{parse_rational, Field, Rational};
use crate::words::{is_ls_word, standard_bracketing, BracketTree, GradedAlphabet, Letter, Word};

/// Finite linear combination of words, kept sorted by descending word order.
#[derive(Clone, Debug, PartialEq)]
pub struct NcPoly<F: Field = Rational> {
    terms: Vec<(Word, F)>,
}

impl<F: Field> Default for NcPoly<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> NcPoly<F> {
    pub fn zero() -> Self {
        NcPoly { terms: Vec::new() }
    }

    pub fn monomial(word: Word, coefficient: F) -> Self {
        Self::from_terms([(word, coefficient)])
    }

    pub fn letter(letter: Letter) -> Self {
        Self::monomial(Word::letter(letter), F::one())
    }

    /// Collects terms, merging repeated words and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Word, F)>>(terms: I) -> Self {
        let mut terms: Vec<(Word, F)> = terms.into_iter().collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut merged: Vec<(Word, F)> = Vec::with_capacity(terms.len());
        for (w, c) in terms {
            match merged.last_mut() {
                Some((last, acc)) if *last == w => *acc = acc.add(&c),
                _ => merged.push((w, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        NcPoly { terms: merged }
    }

    pub fn terms(&self) -> &[(Word, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Word, F)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &Word) -> F {
        self.terms
            .binary_search_by(|(w, _)| word.cmp(w))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| F::zero())
    }

    /// The greatest word and its coefficient.
    pub fn leading_term(&self) -> Option<(&Word, &F)> {
        self.terms.first().map(|(w, c)| (w, c))
    }

    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.first().map(|(w, _)| w)
    }

    /// Maximal degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(w, _)| w.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms
            .first()
            .is_none_or(|(w, _)| self.terms.iter().all(|(v, _)| v.degree() == w.degree()))
    }

    /// Homogeneous component of the given degree.
    pub fn component(&self, degree: u32) -> Self {
        NcPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() == degree)
                .cloned()
                .collect(),
        }
    }

    pub fn components(&self) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.degree())
                .or_default()
                .terms
                .push((w.clone(), c.clone()));
        }
        out
    }

    /// The top-degree homogeneous component.
    pub fn leading_part(&self) -> Self {
        match self.degree() {
            Some(d) => self.component(d),
            None => Self::zero(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let adjust = |c: &F| if negate { c.neg() } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (a, ca) = &self.terms[i];
            let (b, cb) = &other.terms[j];
            match a.cmp(b) {
                Ordering::Greater => {
                    out.push((a.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b.clone(), adjust(cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca.add(&adjust(cb));
                    if !c.is_zero() {
                        out.push((a.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(w, c)| (w.clone(), adjust(c))));
        NcPoly { terms: out }
    }

    pub fn neg(&self) -> Self {
        NcPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, factor: &F) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.mul(factor)))
                .collect(),
        }
    }

    /// Concatenation product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                terms.push((a.concat(b), ca.mul(cb)));
            }
        }
        Self::from_terms(terms)
    }

    /// `[a, b] = ab - ba`.
    pub fn bracket(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Applies `f` to every word and re-collects.
    pub fn map_words<G: FnMut(&Word) -> Word>(&self, mut f: G) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (f(w), c.clone())))
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.terms.iter().flat_map(|(w, _)| w.letters().iter().copied())
    }
}

impl NcPoly<Rational> {
    /// Maps coefficients into another field.
    pub fn to_field<F: Field>(&self) -> Result<NcPoly<F>> {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| Ok((w.clone(), F::from_rational(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(NcPoly::from_terms(terms))
    }
}

/// Recursive bracket expansion of a commutator.
pub fn expand<F: Field>(tree: &BracketTree) -> NcPoly<F> {
    match tree {
        BracketTree::Leaf(l) => NcPoly::letter(*l),
        BracketTree::Pair(a, b) => expand::<F>(a).bracket(&expand(b)),
    }
}

/// Expansion of the LS-commutator `[w]`.
pub fn expand_ls<F: Field>(w: &Word) -> Result<NcPoly<F>> {
    Ok(expand(&standard_bracketing(w)?))
}

/// Coefficients of `e` in the LS-commutator basis, by descending LS-word.
///
/// Repeatedly removes the leading word with the matching LS-commutator. The
/// leading coefficient of `[w]` is 1 for every word this crate has been
/// checked on; should it ever differ, the rewriting divides by it instead.
pub fn ls_decompose<F: Field>(e: &NcPoly<F>) -> Result<Vec<(Word, F)>> {
    let mut rest = e.clone();
    let mut out = Vec::new();
    while let Some((w, c)) = rest.leading_term() {
        let (w, c) = (w.clone(), c.clone());
        if !is_ls_word(&w)? {
            return Err(Error::NotLie(format!("{w:?}")));
        }
        let basis: NcPoly<F> = expand_ls(&w)?;
        let lead = basis.coefficient(&w);
        let coefficient = if lead.is_one() {
            c
        } else {
            c.div(&lead)
                .ok_or_else(|| Error::Consistency(format!("LS commutator of {w:?} vanishes")))?
        };
        rest = rest.sub(&basis.scale(&coefficient));
        out.push((w, coefficient));
    }
    Ok(out)
}

/// Inverse of [`ls_decompose`].
pub fn ls_compose<F: Field>(coordinates: &[(Word, F)]) -> Result<NcPoly<F>> {
    let mut sum = NcPoly::zero();
    for (w, c) in coordinates {
        sum = sum.add(&expand_ls::<F>(w)?.scale(c));
    }
    Ok(sum)
}

/// Names and parses letters. Implemented by graded and indexed alphabets.
pub trait LetterNames {
    fn resolve(&self, name: &str) -> Option<Letter>;
    fn letter_name(&self, letter: Letter) -> String;
}

impl LetterNames for GradedAlphabet {
    fn resolve(&self, name: &str) -> Option<Letter> {
        self.lookup(name)
    }
    fn letter_name(&self, letter: Letter) -> String {
        self.name(letter).to_string()
    }
}

pub fn format_tree<N: LetterNames + ?Sized>(names: &N, tree: &BracketTree) -> String {
    match tree {
        BracketTree::Leaf(l) => names.letter_name(*l),
        BracketTree::Pair(a, b) => format!("[{},{}]", format_tree(names, a), format_tree(names, b)),
    }
}

/// An element of the free Lie algebra, stored by its associative expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct LieElement<F: Field = Rational> {
    poly: NcPoly<F>,
}

impl<F: Field> LieElement<F> {
    pub fn zero() -> Self {
        LieElement { poly: NcPoly::zero() }
    }

    pub fn letter(letter: Letter) -> Self {
        LieElement { poly: NcPoly::letter(letter) }
    }

    pub fn from_tree(tree: &BracketTree) -> Self {
        LieElement { poly: expand(tree) }
    }

    /// `Σ c_i t_i` for commutators `t_i`.
    pub fn from_trees<'a, I: IntoIterator<Item = (F, &'a BracketTree)>>(terms: I) -> Self {
        let mut poly = NcPoly::zero();
        for (c, t) in terms {
            poly = poly.add(&expand::<F>(t).scale(&c));
        }
        LieElement { poly }
    }

    /// Checks Lie membership by LS rewriting.
    pub fn from_poly(poly: NcPoly<F>) -> Result<Self> {
        ls_decompose(&poly)?;
        Ok(LieElement { poly })
    }

    pub(crate) fn from_poly_unchecked(poly: NcPoly<F>) -> Self {
        LieElement { poly }
    }

    pub fn poly(&self) -> &NcPoly<F> {
        &self.poly
    }

    pub fn into_poly(self) -> NcPoly<F> {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn degree(&self) -> Option<u32> {
        self.poly.degree()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.poly.is_homogeneous()
    }

    pub fn leading_part(&self) -> Self {
        LieElement { poly: self.poly.leading_part() }
    }

    pub fn component(&self, degree: u32) -> Self {
        LieElement { poly: self.poly.component(degree) }
    }

    pub fn add(&self, other: &Self) -> Self {
        LieElement { poly: self.poly.add(&other.poly) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        LieElement { poly: self.poly.sub(&other.poly) }
    }

    pub fn scale(&self, c: &F) -> Self {
        LieElement { poly: self.poly.scale(c) }
    }

    pub fn bracket(&self, other: &Self) -> Self {
        LieElement { poly: self.poly.bracket(&other.poly) }
    }

    /// Coordinates in the LS-commutator basis.
    pub fn ls_coordinates(&self) -> Vec<(Word, F)> {
        ls_decompose(&self.poly).expect("Lie elements decompose")
    }

    /// The bracket view: LS-commutators with their coefficients.
    pub fn ls_terms(&self) -> Vec<(F, BracketTree)> {
        self.ls_coordinates()
            .into_iter()
            .map(|(w, c)| (c, standard_bracketing(&w).expect("LS word")))
            .collect()
    }

    /// Canonical text: LS-commutators by descending word, explicit coefficients.
    ///
    /// The output parses back to the same element.
    pub fn to_text<N: LetterNames + ?Sized>(&self, names: &N) -> String {
        let terms = self.ls_terms();
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (c, t)) in terms.iter().enumerate() {
            let text = c.to_string();
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, text),
            };
            match (i, negative) {
                (0, false) => {}
                (0, true) => out.push('-'),
                (_, false) => out.push_str(" + "),
                (_, true) => out.push_str(" - "),
            }
            if magnitude == "1" {
                out.push_str(&format_tree(names, t));
            } else {
                let _ = write!(out, "{magnitude}*{}", format_tree(names, t));
            }
        }
        out
    }
}

impl LieElement<Rational> {
    pub fn convert<G: Field>(&self) -> Result<LieElement<G>> {
        Ok(LieElement { poly: self.poly.to_field()? })
    }
}

/// Parses a bracket expression into a Lie element with rational coefficients.
pub fn parse_expression<N: LetterNames + ?Sized>(text: &str, names: &N) -> Result<LieElement> {
    if text.trim() == "0" {
        return Ok(LieElement::zero());
    }
    let mut p = Parser { text, pos: 0, names };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("expected an expression"));
    }
    let poly = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(LieElement::from_poly_unchecked(poly))
}

struct Parser<'a, N: ?Sized> {
    text: &'a str,
    pos: usize,
    names: &'a N,
}

impl<N: LetterNames + ?Sized> Parser<'_, N> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += self.peek().map_or(0, char::len_utf8);
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<NcPoly> {
        let mut negate = false;
        if self.eat('-') {
            negate = true;
        } else {
            self.eat('+');
        }
        let mut sum = NcPoly::zero();
        loop {
            let t = self.term()?;
            sum = if negate { sum.sub(&t) } else { sum.add(&t) };
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else {
                return Ok(sum);
            }
        }
    }

    fn term(&mut self) -> Result<NcPoly> {
        self.skip_ws();
        if self.peek().is_some_and(|c| c.is_ascii_digit() || c == '.') {
            let start = self.pos;
            let literal = self.number();
            let q = parse_rational(literal).map_err(|_| Error::Syntax {
                offset: start,
                message: format!("bad coefficient `{literal}`"),
            })?;
            self.expect('*')?;
            return Ok(self.atom()?.scale(&q));
        }
        self.atom()
    }

    fn number(&mut self) -> &str {
        let start = self.pos;
        let bytes = self.text.as_bytes();
        while self.pos < bytes.len() {
            let c = bytes[self.pos];
            let exponent_follows = (c == b'e' || c == b'E')
                && match bytes.get(self.pos + 1) {
                    Some(d) if d.is_ascii_digit() => true,
                    Some(b'-' | b'+') => bytes.get(self.pos + 2).is_some_and(u8::is_ascii_digit),
                    _ => false,
                };
            if c.is_ascii_digit() || c == b'.' || c == b'/' {
                self.pos += 1;
            } else if exponent_follows {
                self.pos += 2;
            } else {
                break;
            }
        }
        &self.text[start..self.pos]
    }

    fn atom(&mut self) -> Result<NcPoly> {
        self.skip_ws();
        if self.eat('[') {
            let left = self.expr_or_error()?;
            self.expect(',')?;
            let right = self.expr_or_error()?;
            self.expect(']')?;
            return Ok(left.bracket(&right));
        }
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_alphanumeric() || c == '_' || c == '\'')
        {
            self.pos += self.peek().map_or(0, char::len_utf8);
        }
        if start == self.pos {
            return Err(self.error("expected a letter or `[`"));
        }
        let name = &self.text[start..self.pos];
        match self.names.resolve(name) {
            Some(l) => Ok(NcPoly::letter(l)),
            None => Err(Error::UnknownLetter(name.to_string())),
        }
    }

    fn expr_or_error(&mut self) -> Result<NcPoly> {
        self.skip_ws();
        if self.at_end() {
            return Err(self.error("unexpected end of input"));
        }
        self.expr()
    }
}
