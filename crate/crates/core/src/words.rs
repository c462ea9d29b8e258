//! Graded alphabets, words, Lyndon-Shirshov words and their bracketings.
//!
//! Words are ordered lexicographically by the letter order, except that a
//! proper prefix is *greater* than any word it is a prefix of: `x > xy`.
//! An LS-word is a word strictly greater than each of its proper rotations.
//! This is the mirror image of the usual Lyndon convention, and the whole
//! crate uses this single comparator.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Filtered enumeration is used up to this degree, the streaming generator above it.
pub const FILTER_ENUMERATION_LIMIT: u32 = 14;

/// A letter reference: alphabet position plus its degree.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u32);

impl Letter {
    pub fn new(index: u16, degree: u16) -> Self {
        Letter(((index as u32) << 16) | degree as u32)
    }

    pub fn index(self) -> u16 {
        (self.0 >> 16) as u16
    }

    pub fn degree(self) -> u32 {
        self.0 & 0xffff
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}:{}", self.index(), self.degree())
    }
}

/// A word over a graded alphabet. Immutable; the degree is cached.
#[derive(Clone, Default)]
pub struct Word {
    letters: SmallVec<[Letter; 8]>,
    degree: u32,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let letters: SmallVec<[Letter; 8]> = letters.into_iter().collect();
        let degree = letters.iter().map(|l| l.degree()).sum();
        Word { letters, degree }
    }

    pub fn letter(letter: Letter) -> Self {
        Word::from_letters([letter])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word {
            letters,
            degree: self.degree + other.degree,
        }
    }

    pub fn subword(&self, range: std::ops::Range<usize>) -> Word {
        Word::from_letters(self.letters[range].iter().copied())
    }

    /// The rotation `vu` of `w = uv` with `|u| = split`.
    pub fn rotation(&self, split: usize) -> Word {
        let letters = self.letters[split..]
            .iter()
            .chain(&self.letters[..split])
            .copied()
            .collect();
        Word {
            letters,
            degree: self.degree,
        }
    }

    /// True if `self` occurs as a factor (contiguous subword) of `other`.
    pub fn is_factor_of(&self, other: &Word) -> bool {
        self.is_empty()
            || other
                .letters
                .windows(self.len())
                .any(|w| w == &self.letters[..])
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.letters.starts_with(&self.letters)
    }
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters
    }
}

impl Eq for Word {}

impl std::hash::Hash for Word {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.letters.hash(state)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.letters.iter().zip(&other.letters) {
            match a.index().cmp(&b.index()) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        // One is a prefix of the other: the shorter word is greater.
        other.len().cmp(&self.len())
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(")?;
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{}", l.index())?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LetterSpec {
    pub name: String,
    pub degree: u32,
}

/// A finite, ordered, graded set of letters. Later letters are greater.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedAlphabet {
    letters: Vec<LetterSpec>,
}

impl GradedAlphabet {
    pub fn new(letters: Vec<LetterSpec>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidAlphabet("at least one letter is required".into()));
        }
        if letters.len() > u16::MAX as usize {
            return Err(Error::InvalidAlphabet("too many letters".into()));
        }
        for (i, l) in letters.iter().enumerate() {
            if l.name.is_empty() {
                return Err(Error::InvalidAlphabet("empty letter name".into()));
            }
            if l.degree == 0 || l.degree > u16::MAX as u32 {
                return Err(Error::InvalidAlphabet(format!(
                    "letter `{}` has degree {}; degrees must be positive",
                    l.name, l.degree
                )));
            }
            if letters[..i].iter().any(|o| o.name == l.name) {
                return Err(Error::InvalidAlphabet(format!("duplicate letter `{}`", l.name)));
            }
        }
        Ok(GradedAlphabet { letters })
    }

    /// Parses `name:degree` pairs separated by commas, listed in ascending order.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for part in spec.split(',') {
            let part = part.trim();
            let (name, degree) = part.split_once(':').ok_or_else(|| {
                Error::InvalidAlphabet(format!("expected `name:degree`, found `{part}`"))
            })?;
            let degree: u32 = degree.trim().parse().map_err(|_| {
                Error::InvalidAlphabet(format!("bad degree in `{part}`"))
            })?;
            letters.push(LetterSpec {
                name: name.trim().to_string(),
                degree,
            });
        }
        Self::new(letters)
    }

    /// Rank-`m` alphabet of degree-one letters `x1 < x2 < ... < xm`.
    pub fn uniform(rank: usize) -> Result<Self> {
        Self::new(
            (1..=rank)
                .map(|i| LetterSpec {
                    name: format!("x{i}"),
                    degree: 1,
                })
                .collect(),
        )
    }

    /// The alphabet `y < x`, both of degree one.
    pub fn binary() -> Self {
        Self::parse("y:1,x:1").expect("static alphabet")
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn specs(&self) -> &[LetterSpec] {
        &self.letters
    }

    pub fn letter(&self, index: usize) -> Letter {
        Letter::new(index as u16, self.letters[index].degree as u16)
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.len()).map(|i| self.letter(i))
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.letters[letter.index() as usize].name
    }

    pub fn lookup(&self, name: &str) -> Option<Letter> {
        self.letters
            .iter()
            .position(|l| l.name == name)
            .map(|i| self.letter(i))
    }

    pub fn greatest(&self) -> Letter {
        self.letter(self.len() - 1)
    }

    pub fn min_degree(&self) -> u32 {
        self.letters.iter().map(|l| l.degree).min().unwrap_or(1)
    }

    pub fn max_degree(&self) -> u32 {
        self.letters.iter().map(|l| l.degree).max().unwrap_or(1)
    }

    /// `k[i-1]` = number of letters of degree `i`, up to the maximal degree.
    pub fn histogram(&self) -> Vec<u64> {
        let mut k = vec![0u64; self.max_degree() as usize];
        for l in &self.letters {
            k[l.degree as usize - 1] += 1;
        }
        k
    }

    /// True if `letter` belongs to this alphabet with the right degree.
    pub fn owns(&self, letter: Letter) -> bool {
        self.letters
            .get(letter.index() as usize)
            .is_some_and(|l| l.degree == letter.degree())
    }

    pub fn owns_word(&self, w: &Word) -> bool {
        w.letters().iter().all(|&l| self.owns(l))
    }

    /// Compares two words under the prefix-greater lexicographic order.
    pub fn compare_words(&self, u: &Word, v: &Word) -> Result<Ordering> {
        if !self.owns_word(u) || !self.owns_word(v) {
            return Err(Error::AlphabetMismatch);
        }
        Ok(u.cmp(v))
    }

    fn separated(&self) -> bool {
        self.letters.iter().any(|l| l.name.chars().count() > 1)
    }

    pub fn format_word(&self, w: &Word) -> String {
        let sep = if self.separated() { "." } else { "" };
        w.letters()
            .iter()
            .map(|&l| self.name(l))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Parses concatenated letter names (dot-separated when any name is longer than one character).
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::empty());
        }
        let names: Vec<String> = if self.separated() {
            text.split('.').map(|s| s.to_string()).collect()
        } else {
            text.chars().map(|c| c.to_string()).collect()
        };
        names
            .iter()
            .map(|n| self.lookup(n).ok_or_else(|| Error::UnknownLetter(n.clone())))
            .collect::<Result<Vec<_>>>()
            .map(Word::from_letters)
    }

    pub fn format_tree(&self, t: &BracketTree) -> String {
        match t {
            BracketTree::Leaf(l) => self.name(*l).to_string(),
            BracketTree::Pair(a, b) => format!("[{},{}]", self.format_tree(a), self.format_tree(b)),
        }
    }

    /// All words of exactly the given degree, in no particular order.
    pub fn words_of_degree(&self, degree: u32) -> Vec<Word> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        self.extend_words(degree, &mut stack, &mut out);
        out
    }

    fn extend_words(&self, remaining: u32, stack: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if remaining == 0 {
            out.push(Word::from_letters(stack.iter().copied()));
            return;
        }
        for l in self.letters() {
            if l.degree() <= remaining {
                stack.push(l);
                self.extend_words(remaining - l.degree(), stack, out);
                stack.pop();
            }
        }
    }
}

impl fmt::Display for GradedAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}:{}", l.name, l.degree)?;
        }
        Ok(())
    }
}

/// A commutator: a letter or a bracket of two commutators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BracketTree {
    Leaf(Letter),
    Pair(Box<BracketTree>, Box<BracketTree>),
}

impl BracketTree {
    pub fn pair(left: BracketTree, right: BracketTree) -> Self {
        BracketTree::Pair(Box::new(left), Box::new(right))
    }

    /// The associative support: the word left after erasing brackets.
    pub fn support(&self) -> Word {
        let mut letters = Vec::new();
        self.collect_letters(&mut letters);
        Word::from_letters(letters)
    }

    fn collect_letters(&self, out: &mut Vec<Letter>) {
        match self {
            BracketTree::Leaf(l) => out.push(*l),
            BracketTree::Pair(a, b) => {
                a.collect_letters(out);
                b.collect_letters(out);
            }
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            BracketTree::Leaf(l) => l.degree(),
            BracketTree::Pair(a, b) => a.degree() + b.degree(),
        }
    }
}

pub fn is_ls_word(w: &Word) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(is_ls_nonempty(w.letters()))
}

fn is_ls_nonempty(w: &[Letter]) -> bool {
    let n = w.len();
    (1..n).all(|split| {
        // compare w against its rotation w[split..] w[..split]
        let rotated = w[split..].iter().chain(&w[..split]);
        for (a, b) in w.iter().zip(rotated) {
            match a.index().cmp(&b.index()) {
                Ordering::Equal => continue,
                Ordering::Greater => return true,
                Ordering::Less => return false,
            }
        }
        false
    })
}

/// Factors a nonempty word into LS-words `u1 <= u2 <= ... <= us`.
pub fn cfl_factorize(w: &Word) -> Result<Vec<Word>> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(factor_ranges(w.letters())
        .into_iter()
        .map(|r| w.subword(r))
        .collect())
}

// Duval's algorithm with the letter comparisons reversed.
fn factor_ranges(s: &[Letter]) -> Vec<std::ops::Range<usize>> {
    let n = s.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        let mut k = i;
        while j < n && s[k].index() >= s[j].index() {
            if s[k].index() > s[j].index() {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            out.push(i..i + j - k);
            i += j - k;
        }
    }
    out
}

/// The LS-commutator with associative support `w`: strip the first letter,
/// factor the tail, bracket each factor and fold left-normed.
pub fn standard_bracketing(w: &Word) -> Result<BracketTree> {
    if !is_ls_word(w)? {
        return Err(Error::NotLsWord(format!("{w:?}")));
    }
    Ok(bracket_ls(w.letters()))
}

fn bracket_ls(w: &[Letter]) -> BracketTree {
    let mut tree = BracketTree::Leaf(w[0]);
    let tail = &w[1..];
    if !tail.is_empty() {
        for r in factor_ranges(tail) {
            tree = BracketTree::pair(tree, bracket_ls(&tail[r]));
        }
    }
    tree
}

/// Checks that `t` is an LS-commutator: its support is an LS-word and
/// (a) `t = [c1, c2]` has LS-commutator children with supports `w1 > w2`;
/// (b) if `c1 = [c1', c1'']` then the support of `c1''` is at most `w2`.
pub fn is_ls_commutator(t: &BracketTree) -> bool {
    let support = t.support();
    if !is_ls_nonempty(support.letters()) {
        return false;
    }
    match t {
        BracketTree::Leaf(_) => true,
        BracketTree::Pair(c1, c2) => {
            let w1 = c1.support();
            let w2 = c2.support();
            if !(is_ls_commutator(c1) && is_ls_commutator(c2) && w1 > w2) {
                return false;
            }
            match c1.as_ref() {
                BracketTree::Pair(_, inner) => inner.support() <= w2,
                BracketTree::Leaf(_) => true,
            }
        }
    }
}

/// All LS-words of the given degree, each once, in descending order.
pub fn generate_ls_words(alphabet: &GradedAlphabet, degree: u32) -> Vec<Word> {
    if degree == 0 {
        return Vec::new();
    }
    if degree <= FILTER_ENUMERATION_LIMIT {
        ls_words_by_filter(alphabet, degree)
    } else {
        ls_words_streaming(alphabet, degree)
    }
}

pub fn ls_words_by_filter(alphabet: &GradedAlphabet, degree: u32) -> Vec<Word> {
    let mut words: Vec<Word> = alphabet
        .words_of_degree(degree)
        .into_iter()
        .filter(|w| is_ls_nonempty(w.letters()))
        .collect();
    words.sort_unstable_by(|a, b| b.cmp(a));
    words
}

/// Streams LS-words with the Fredricksen-Kessler-Maiorana recursion,
/// reading the alphabet in reverse so that the usual Lyndon order turns
/// into descending LS order. Words are produced already sorted.
pub fn ls_words_streaming(alphabet: &GradedAlphabet, degree: u32) -> Vec<Word> {
    let mut out = Vec::new();
    for_each_ls_word(alphabet, degree, |w| out.push(w.clone()));
    out
}

/// Calls `f` on every LS-word of the given degree, in descending order.
pub fn for_each_ls_word<F: FnMut(&Word)>(alphabet: &GradedAlphabet, degree: u32, mut f: F) {
    let r = alphabet.len();
    if degree == 0 || r == 0 {
        return;
    }
    let max_len = (degree / alphabet.min_degree()) as usize;
    let letter_of = |s: usize| alphabet.letter(r - 1 - s);
    let mut w: Vec<usize> = vec![0];
    let mut first = true;
    loop {
        if !first {
            // increment last symbol
            *w.last_mut().unwrap() += 1;
        }
        first = false;
        let word = Word::from_letters(w.iter().map(|&s| letter_of(s)));
        if word.degree() == degree {
            f(&word);
        }
        let m = w.len();
        while w.len() < max_len {
            let next = w[w.len() - m];
            w.push(next);
        }
        while let Some(&last) = w.last() {
            if last == r - 1 {
                w.pop();
            } else {
                break;
            }
        }
        if w.is_empty() {
            break;
        }
    }
}
