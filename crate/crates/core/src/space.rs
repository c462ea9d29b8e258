//! Degree-truncated graded subspaces of a free Lie algebra and the closure
//! engine behind subalgebras, ideals and subideal chains.
//!
//! A homogeneous Lie element of degree `n` is recorded by its coefficients on
//! the LS-words of degree `n`. Since `[w]` has leading word `w` with
//! coefficient 1, this projection is injective on `L_n` and unitriangular with
//! respect to the LS-commutator basis, so ranks, pivots and complements can
//! be read off it directly. Columns are ordered by descending LS-word.
//!
//! Words are packed into `u128` keys, five bits per letter, so the engine is
//! limited to 31 letters and words of length 25.

use std::sync::Arc;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::freealg::{expand_ls, LieElement, NcPoly};
use crate::table::GrowthTable;
use crate::words::{generate_ls_words, GradedAlphabet, Word};

const BITS: u32 = 5;
pub const MAX_LETTERS: usize = 31;
pub const MAX_WORD_LENGTH: usize = 25;

/// Letter multiplicities of a multihomogeneous element, by letter index.
pub(crate) type Content = SmallVec<[u8; 8]>;

fn key_len(key: u128) -> u32 {
    (128 - key.leading_zeros()).div_ceil(BITS)
}

fn encode(w: &Word) -> u128 {
    w.letters()
        .iter()
        .fold(0u128, |k, l| (k << BITS) | (l.index() as u128 + 1))
}

fn decode(key: u128, alphabet: &GradedAlphabet) -> Word {
    let len = key_len(key);
    Word::from_letters((0..len).rev().map(|i| {
        let code = ((key >> (i * BITS)) & 31) as usize;
        alphabet.letter(code - 1)
    }))
}

fn key_content(key: u128, rank: usize) -> Content {
    let mut c: Content = SmallVec::from_elem(0, rank);
    let mut k = key;
    while k != 0 {
        c[(k & 31) as usize - 1] += 1;
        k >>= BITS;
    }
    c
}

fn add_content(a: &Content, b: &Content) -> Content {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Sparse polynomial over packed word keys, sorted by key.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct PackedPoly<F> {
    terms: Vec<(u128, F)>,
}

impl<F: Field> PackedPoly<F> {
    fn collect(mut terms: Vec<(u128, F)>) -> Self {
        terms.sort_unstable_by_key(|a| a.0);
        let mut out: Vec<(u128, F)> = Vec::with_capacity(terms.len());
        for (k, c) in terms {
            match out.last_mut() {
                Some((last, acc)) if *last == k => *acc = acc.add(&c),
                _ => out.push((k, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        PackedPoly { terms: out }
    }

    pub(crate) fn from_nc(p: &NcPoly<F>) -> Self {
        Self::collect(p.terms().iter().map(|(w, c)| (encode(w), c.clone())).collect())
    }

    pub(crate) fn to_nc(&self, alphabet: &GradedAlphabet) -> NcPoly<F> {
        NcPoly::from_terms(self.terms.iter().map(|(k, c)| (decode(*k, alphabet), c.clone())))
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn bracket(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(2 * self.terms.len() * other.terms.len());
        let other_lens: Vec<u32> = other.terms.iter().map(|(k, _)| key_len(*k) * BITS).collect();
        for (a, ca) in &self.terms {
            let a_shift = key_len(*a) * BITS;
            for ((b, cb), &b_shift) in other.terms.iter().zip(&other_lens) {
                let p = ca.mul(cb);
                terms.push(((b << a_shift) | a, p.neg()));
                terms.push(((a << b_shift) | b, p));
            }
        }
        Self::collect(terms)
    }

    /// Letter content, if every term has the same one.
    fn content(&self, rank: usize) -> Option<Content> {
        let mut it = self.terms.iter().map(|(k, _)| key_content(*k, rank));
        let first = it.next()?;
        it.all(|c| c == first).then_some(first)
    }
}

/// Column structure of one degree: LS-words, and their grouping by content.
pub(crate) struct Layout {
    words: Vec<Word>,
    /// key -> (global column, block, local column)
    lookup: FxHashMap<u128, (u32, u32, u32)>,
    block_of_content: FxHashMap<Content, u32>,
    /// global columns of each block, ascending
    blocks: Vec<Vec<u32>>,
}

impl Layout {
    fn new(alphabet: &GradedAlphabet, degree: u32) -> Self {
        let words = generate_ls_words(alphabet, degree);
        let rank = alphabet.len();
        let mut lookup = FxHashMap::default();
        let mut block_of_content = FxHashMap::default();
        let mut blocks: Vec<Vec<u32>> = Vec::new();
        for (g, w) in words.iter().enumerate() {
            let key = encode(w);
            let content = key_content(key, rank);
            let next = blocks.len() as u32;
            let b = *block_of_content.entry(content).or_insert(next);
            if b == next {
                blocks.push(Vec::new());
            }
            let local = blocks[b as usize].len() as u32;
            blocks[b as usize].push(g as u32);
            lookup.insert(key, (g as u32, b, local));
        }
        Layout {
            words,
            lookup,
            block_of_content,
            blocks,
        }
    }

    pub(crate) fn width(&self) -> usize {
        self.words.len()
    }
}

/// LS-word layouts for every degree up to a truncation.
pub(crate) struct Layouts {
    alphabet: GradedAlphabet,
    degrees: Vec<Layout>,
}

impl Layouts {
    pub(crate) fn new(alphabet: &GradedAlphabet, max_degree: usize) -> Result<Arc<Self>> {
        if alphabet.len() > MAX_LETTERS {
            return Err(Error::InvalidArgument(format!(
                "the linear engine supports at most {MAX_LETTERS} letters"
            )));
        }
        if max_degree / alphabet.min_degree() as usize > MAX_WORD_LENGTH {
            return Err(Error::InvalidArgument(format!(
                "the linear engine supports words of length at most {MAX_WORD_LENGTH}"
            )));
        }
        let degrees = (1..=max_degree as u32).map(|n| Layout::new(alphabet, n)).collect();
        Ok(Arc::new(Layouts {
            alphabet: alphabet.clone(),
            degrees,
        }))
    }

    pub(crate) fn layout(&self, degree: usize) -> &Layout {
        &self.degrees[degree - 1]
    }
}

/// Truncation degree plus the safety cap on it.
///
/// Without an explicit cap the field's default applies (12 for rationals,
/// 20 for the prime field).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub max_degree: usize,
    pub degree_cap: Option<usize>,
}

impl Truncation {
    pub fn new(max_degree: usize) -> Self {
        Truncation {
            max_degree,
            degree_cap: None,
        }
    }

    pub fn with_cap(self, cap: usize) -> Self {
        Truncation {
            degree_cap: Some(cap),
            ..self
        }
    }

    pub(crate) fn check<F: Field>(&self) -> Result<usize> {
        if self.max_degree == 0 {
            return Err(Error::InvalidArgument("max degree must be at least 1".into()));
        }
        let cap = self.degree_cap.unwrap_or(F::DEGREE_CAP);
        if self.max_degree > cap {
            return Err(Error::DegreeCap {
                requested: self.max_degree,
                cap,
                field: F::NAME,
            });
        }
        Ok(self.max_degree)
    }
}

impl From<usize> for Truncation {
    fn from(max_degree: usize) -> Self {
        Truncation::new(max_degree)
    }
}

/// Sparse semi-echelon form over local columns, pivots normalised to 1.
#[derive(Clone, Debug)]
pub(crate) struct Echelon<F> {
    width: usize,
    rows: Vec<Vec<(u32, F)>>,
    pivot_row: Vec<u32>,
}

const NO_ROW: u32 = u32::MAX;

impl<F: Field> Echelon<F> {
    fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: Vec::new(),
            pivot_row: vec![NO_ROW; width],
        }
    }

    fn identity(width: usize) -> Self {
        Echelon {
            width,
            rows: (0..width as u32).map(|c| vec![(c, F::one())]).collect(),
            pivot_row: (0..width as u32).collect(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    /// Reduces `v` in place; returns the first surviving column.
    fn reduce(&self, v: &mut [F]) -> Option<usize> {
        let mut first = None;
        for col in 0..self.width {
            if v[col].is_zero() {
                continue;
            }
            let r = self.pivot_row[col];
            if r == NO_ROW {
                if first.is_none() {
                    first = Some(col);
                }
                continue;
            }
            let factor = v[col].clone();
            for (c, x) in &self.rows[r as usize] {
                v[*c as usize].sub_mul_assign(&factor, x);
            }
        }
        first
    }

    fn insert(&mut self, mut v: Vec<F>) -> bool {
        let Some(pivot) = self.reduce(&mut v) else {
            return false;
        };
        let inv = v[pivot].inv().expect("pivot is nonzero");
        let row: Vec<(u32, F)> = v
            .into_iter()
            .enumerate()
            .skip(pivot)
            .filter(|(_, x)| !x.is_zero())
            .map(|(c, x)| (c as u32, x.mul(&inv)))
            .collect();
        self.pivot_row[pivot] = self.rows.len() as u32;
        self.rows.push(row);
        true
    }

    fn contains(&self, v: &[F]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v).is_none()
    }

    fn has_pivot(&self, col: usize) -> bool {
        self.pivot_row[col] != NO_ROW
    }

    /// Rows in reduced row-echelon form, ordered by pivot column.
    fn reduced_rows(&self) -> Vec<Vec<(u32, F)>> {
        let mut dense: Vec<(usize, Vec<F>)> = Vec::with_capacity(self.rows.len());
        for col in 0..self.width {
            let r = self.pivot_row[col];
            if r != NO_ROW {
                let mut v = vec![F::zero(); self.width];
                for (c, x) in &self.rows[r as usize] {
                    v[*c as usize] = x.clone();
                }
                dense.push((col, v));
            }
        }
        // back-substitution, from the last pivot upwards
        for i in (0..dense.len()).rev() {
            let (pivot, row) = (dense[i].0, dense[i].1.clone());
            for (_, other) in dense.iter_mut().take(i) {
                let factor = other[pivot].clone();
                if !factor.is_zero() {
                    for (c, x) in row.iter().enumerate().skip(pivot) {
                        if !x.is_zero() {
                            other[c].sub_mul_assign(&factor, x);
                        }
                    }
                }
            }
        }
        dense
            .into_iter()
            .map(|(_, v)| {
                v.into_iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(c, x)| (c as u32, x))
                    .collect()
            })
            .collect()
    }
}

/// Component of a subspace in one degree: one echelon per content block, or a
/// single echelon over all columns when the subspace is not multigraded.
#[derive(Clone, Debug)]
struct Component<F> {
    blocks: Vec<Echelon<F>>,
}

/// A generator kept with its expansion, so the subspace can serve as an ambient.
#[derive(Clone, Debug)]
pub(crate) struct Element<F> {
    pub(crate) poly: PackedPoly<F>,
    pub(crate) content: Option<Content>,
    pub(crate) degree: usize,
    /// position in the caller's input list
    pub(crate) origin: usize,
}

impl<F: Field> Element<F> {
    pub(crate) fn from_lie(e: &LieElement<F>, rank: usize, origin: usize) -> Result<Self> {
        let degree = e.degree().ok_or(Error::ZeroElement)? as usize;
        if !e.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let poly = PackedPoly::from_nc(e.poly());
        Ok(Element {
            content: poly.content(rank),
            poly,
            degree,
            origin,
        })
    }
}

/// Finite-degree truncation of a graded subspace of `L(X)`.
#[derive(Clone)]
pub struct GradedSubspace<F: Field = crate::field::Rational> {
    layouts: Arc<Layouts>,
    max_degree: usize,
    multigraded: bool,
    components: Vec<Component<F>>,
    generators: Option<Vec<Vec<Element<F>>>>,
}

impl<F: Field> std::fmt::Debug for GradedSubspace<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedSubspace")
            .field("alphabet", &self.layouts.alphabet.to_string())
            .field("max_degree", &self.max_degree)
            .field("dims", &self.dims())
            .finish()
    }
}

impl<F: Field> GradedSubspace<F> {
    /// The whole free Lie algebra, generated by its letters.
    pub fn whole(alphabet: &GradedAlphabet, max_degree: usize) -> Result<Self> {
        let layouts = Layouts::new(alphabet, max_degree)?;
        Ok(Self::whole_with(layouts, max_degree))
    }

    pub(crate) fn whole_with(layouts: Arc<Layouts>, max_degree: usize) -> Self {
        let alphabet = layouts.alphabet.clone();
        let components = (1..=max_degree)
            .map(|n| Component {
                blocks: layouts
                    .layout(n)
                    .blocks
                    .iter()
                    .map(|b| Echelon::identity(b.len()))
                    .collect(),
            })
            .collect();
        let mut generators = vec![Vec::new(); max_degree];
        for (i, l) in alphabet.letters().enumerate() {
            let d = l.degree() as usize;
            if d <= max_degree {
                let e = LieElement::<F>::letter(l);
                generators[d - 1]
                    .push(Element::from_lie(&e, alphabet.len(), i).expect("letters are homogeneous"));
            }
        }
        GradedSubspace {
            layouts,
            max_degree,
            multigraded: true,
            components,
            generators: Some(generators),
        }
    }

    pub(crate) fn layouts(&self) -> &Arc<Layouts> {
        &self.layouts
    }

    pub fn alphabet(&self) -> &GradedAlphabet {
        &self.layouts.alphabet
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// True when the subspace is stored block-wise by letter content.
    pub fn is_multigraded(&self) -> bool {
        self.multigraded
    }

    /// `dim (H ∩ L_n)`.
    pub fn dim(&self, degree: usize) -> usize {
        self.components[degree - 1].blocks.iter().map(Echelon::rank).sum()
    }

    /// `dim L_n`, the number of LS-words of degree `n`.
    pub fn ambient_dim(&self, degree: usize) -> usize {
        self.layouts.layout(degree).width()
    }

    pub fn dims(&self) -> Vec<usize> {
        (1..=self.max_degree).map(|n| self.dim(n)).collect()
    }

    pub fn growth_table(&self) -> GrowthTable {
        GrowthTable::from_graded(1, self.dims().into_iter().map(|d| d as u64))
    }

    /// `d(n) = dim L_n - dim (H ∩ L_n)`.
    pub fn cogrowth_table(&self) -> GrowthTable {
        GrowthTable::from_graded(
            1,
            (1..=self.max_degree).map(|n| (self.ambient_dim(n) - self.dim(n)) as u64),
        )
    }

    /// Number of generators recorded in each degree, if they were tracked.
    pub fn generator_counts(&self) -> Option<Vec<usize>> {
        self.generators
            .as_ref()
            .map(|g| g.iter().map(Vec::len).collect())
    }

    /// Generators as Lie elements, by degree.
    pub fn generators(&self) -> Option<Vec<LieElement<F>>> {
        let alphabet = self.alphabet();
        self.generators.as_ref().map(|g| {
            g.iter()
                .flatten()
                .map(|e| LieElement::from_poly_unchecked(e.poly.to_nc(alphabet)))
                .collect()
        })
    }

    pub(crate) fn generator_elements(&self) -> Option<&Vec<Vec<Element<F>>>> {
        self.generators.as_ref()
    }

    /// LS-words of degree `n` in descending order; the column labels.
    pub fn columns(&self, degree: usize) -> &[Word] {
        &self.layouts.layout(degree).words
    }

    fn block_echelon(&self, degree: usize, block: usize) -> &Echelon<F> {
        &self.components[degree - 1].blocks[block]
    }

    /// Global column of local column `local` in block `block`.
    fn global_col(&self, degree: usize, block: usize, local: u32) -> u32 {
        if self.multigraded {
            self.layouts.layout(degree).blocks[block][local as usize]
        } else {
            local
        }
    }

    /// Columns carrying a pivot: the leading LS-words of the subspace.
    pub fn pivot_words(&self, degree: usize) -> Vec<Word> {
        let layout = self.layouts.layout(degree);
        (0..layout.width())
            .filter(|&g| self.has_pivot_global(degree, g))
            .map(|g| layout.words[g].clone())
            .collect()
    }

    /// LS-words without a pivot; their LS-commutators span a complement.
    pub fn complement_words(&self, degree: usize) -> Vec<Word> {
        let layout = self.layouts.layout(degree);
        (0..layout.width())
            .filter(|&g| !self.has_pivot_global(degree, g))
            .map(|g| layout.words[g].clone())
            .collect()
    }

    fn has_pivot_global(&self, degree: usize, g: usize) -> bool {
        if self.multigraded {
            let key = encode(&self.layouts.layout(degree).words[g]);
            let (_, b, l) = self.layouts.layout(degree).lookup[&key];
            self.block_echelon(degree, b as usize).has_pivot(l as usize)
        } else {
            self.block_echelon(degree, 0).has_pivot(g)
        }
    }

    /// Rows of the reduced row-echelon form in degree `n`, as (column word, coefficient).
    pub fn rows(&self, degree: usize) -> Vec<Vec<(Word, F)>> {
        let layout = self.layouts.layout(degree);
        let mut out: Vec<(u32, Vec<(Word, F)>)> = Vec::new();
        for (b, ech) in self.components[degree - 1].blocks.iter().enumerate() {
            for row in ech.reduced_rows() {
                let first = self.global_col(degree, b, row[0].0);
                let converted = row
                    .into_iter()
                    .map(|(c, x)| (layout.words[self.global_col(degree, b, c) as usize].clone(), x))
                    .collect();
                out.push((first, converted));
            }
        }
        out.sort_by_key(|(c, _)| *c);
        out.into_iter().map(|(_, r)| r).collect()
    }

    /// A basis of `H ∩ L_n` as Lie elements, recovered from the echelon rows.
    pub fn basis(&self, degree: usize) -> Result<Vec<LieElement<F>>> {
        self.rows(degree)
            .into_iter()
            .map(|row| {
                // solve P(e) = row against the unitriangular LS-commutator basis
                let mut acc: NcPoly<F> = NcPoly::zero();
                for w in self.columns(degree) {
                    let target = row
                        .iter()
                        .find(|(v, _)| v == w)
                        .map_or_else(F::zero, |(_, c)| c.clone());
                    let c = target.sub(&acc.coefficient(w));
                    if !c.is_zero() {
                        acc = acc.add(&expand_ls::<F>(w)?.scale(&c));
                    }
                }
                Ok(LieElement::from_poly_unchecked(acc))
            })
            .collect()
    }

    /// Projection of a homogeneous polynomial of degree `n` onto the LS columns.
    fn project_global(&self, degree: usize, p: &PackedPoly<F>) -> Vec<F> {
        let layout = self.layouts.layout(degree);
        let mut v = vec![F::zero(); layout.width()];
        for (k, c) in &p.terms {
            if let Some(&(g, _, _)) = layout.lookup.get(k) {
                v[g as usize] = c.clone();
            }
        }
        v
    }

    fn contains_global(&self, degree: usize, v: &[F]) -> bool {
        if !self.multigraded {
            return self.block_echelon(degree, 0).contains(v);
        }
        let layout = self.layouts.layout(degree);
        layout.blocks.iter().enumerate().all(|(b, cols)| {
            let part: Vec<F> = cols.iter().map(|&g| v[g as usize].clone()).collect();
            part.iter().all(Field::is_zero) || self.block_echelon(degree, b).contains(&part)
        })
    }

    /// Membership of a Lie element, componentwise up to the truncation degree.
    pub fn contains(&self, e: &LieElement<F>) -> Result<bool> {
        for (d, part) in e.poly().components() {
            let d = d as usize;
            if d > self.max_degree {
                return Err(Error::InvalidArgument(format!(
                    "degree {d} lies beyond the truncation {}",
                    self.max_degree
                )));
            }
            let v = self.project_global(d, &PackedPoly::from_nc(&part));
            if !self.contains_global(d, &v) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Row-space containment in every common degree.
    pub fn is_subspace_of(&self, other: &Self) -> bool {
        let top = self.max_degree.min(other.max_degree);
        (1..=top).all(|n| {
            let width = self.ambient_dim(n);
            self.components[n - 1].blocks.iter().enumerate().all(|(b, ech)| {
                ech.rows.iter().all(|row| {
                    let mut v = vec![F::zero(); width];
                    for (c, x) in row {
                        v[self.global_col(n, b, *c) as usize] = x.clone();
                    }
                    other.contains_global(n, &v)
                })
            })
        })
    }

    /// Drops the generator expansions.
    pub(crate) fn forget_generators(&mut self) {
        self.generators = None;
    }
}

/// How an accepted element was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Recipe {
    Seed(usize),
    /// `[accepted[degree][parent], multiplier]`
    Bracket {
        parent: usize,
        parent_degree: usize,
        multiplier: Multiplier,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Multiplier {
    /// an extracted generator of the space being built: (degree, index into accepted)
    Own(usize, usize),
    /// an ambient generator: (degree, index into the multiplier list)
    Ambient(usize, usize),
}

pub(crate) struct Accepted<F> {
    pub(crate) poly: Option<PackedPoly<F>>,
    pub(crate) content: Option<Content>,
    pub(crate) recipe: Recipe,
}

/// Degree-by-degree closure `V_n = span(seeds_n ∪ [V_{n-k}, multipliers_k])`.
///
/// With extraction on, each degree first collects `[V_{n-k}, G_k]` for the
/// generators `G` found so far; whatever the seeds and ambient brackets add on
/// top of that is a new generator.
pub(crate) struct Closure<F: Field> {
    space: GradedSubspace<F>,
    seeds: Vec<Vec<Element<F>>>,
    multipliers: Vec<Vec<Element<F>>>,
    accepted: Vec<Vec<Accepted<F>>>,
    own_generators: Vec<Vec<usize>>,
    extract: bool,
    keep_all: bool,
    rank: usize,
    done: usize,
}

impl<F: Field> Closure<F> {
    pub(crate) fn new(
        layouts: Arc<Layouts>,
        max_degree: usize,
        seeds: Vec<Element<F>>,
        multipliers: Vec<Element<F>>,
        extract: bool,
    ) -> Self {
        let multigraded = seeds
            .iter()
            .chain(&multipliers)
            .all(|e| e.content.is_some());
        let components = (1..=max_degree)
            .map(|n| {
                let layout = layouts.layout(n);
                let blocks = if multigraded {
                    layout.blocks.iter().map(|b| Echelon::new(b.len())).collect()
                } else {
                    vec![Echelon::new(layout.width())]
                };
                Component { blocks }
            })
            .collect();
        let by_degree = |list: Vec<Element<F>>| {
            let mut out = vec![Vec::new(); max_degree + 1];
            for e in list {
                if e.degree <= max_degree {
                    out[e.degree].push(e);
                }
            }
            out
        };
        let seeds = by_degree(seeds);
        let multipliers = by_degree(multipliers);
        Closure {
            space: GradedSubspace {
                layouts,
                max_degree,
                multigraded,
                components,
                generators: None,
            },
            seeds,
            multipliers,
            accepted: (0..=max_degree).map(|_| Vec::new()).collect(),
            own_generators: vec![Vec::new(); max_degree + 1],
            extract,
            keep_all: false,
            rank: 0,
            done: 0,
        }
    }

    /// Keep expansions in the top degree as well (needed to solve for combinations).
    pub(crate) fn keep_all_expansions(mut self) -> Self {
        self.keep_all = true;
        self
    }

    pub(crate) fn space(&self) -> &GradedSubspace<F> {
        &self.space
    }

    pub(crate) fn accepted(&self, degree: usize) -> &[Accepted<F>] {
        &self.accepted[degree]
    }

    pub(crate) fn multiplier(&self, degree: usize, index: usize) -> &Element<F> {
        &self.multipliers[degree][index]
    }

    pub(crate) fn seed(&self, degree: usize, index: usize) -> &Element<F> {
        &self.seeds[degree][index]
    }

    pub(crate) fn run(mut self) -> Self {
        while self.done < self.space.max_degree {
            self.step();
        }
        self
    }

    /// Computes the next degree.
    pub(crate) fn step(&mut self) {
        let n = self.done + 1;
        assert!(n <= self.space.max_degree, "closure already complete");
        if self.extract {
            for k in 1..n {
                for gi in 0..self.own_generators[k].len() {
                    let g = self.own_generators[k][gi];
                    for v in 0..self.accepted[n - k].len() {
                        self.try_bracket(n, n - k, v, Multiplier::Own(k, g), false);
                    }
                }
            }
        }
        for i in 0..self.seeds[n].len() {
            let e = &self.seeds[n][i];
            let (poly, content) = (e.poly.clone(), e.content.clone());
            if self.offer(n, poly, content, Recipe::Seed(i), self.extract) && self.extract {
                let idx = self.accepted[n].len() - 1;
                self.own_generators[n].push(idx);
            }
        }
        for k in 1..n {
            for h in 0..self.multipliers[k].len() {
                for v in 0..self.accepted[n - k].len() {
                    if self.try_bracket(n, n - k, v, Multiplier::Ambient(k, h), self.extract) && self.extract {
                        let idx = self.accepted[n].len() - 1;
                        self.own_generators[n].push(idx);
                    }
                }
            }
        }
        self.done = n;
    }

    fn multiplier_element(&self, m: Multiplier) -> (&PackedPoly<F>, Option<&Content>) {
        match m {
            Multiplier::Own(k, i) => {
                let a = &self.accepted[k][i];
                (a.poly.as_ref().expect("generator expansions are kept"), a.content.as_ref())
            }
            Multiplier::Ambient(k, i) => {
                let e = &self.multipliers[k][i];
                (&e.poly, e.content.as_ref())
            }
        }
    }

    fn try_bracket(&mut self, n: usize, d: usize, v: usize, m: Multiplier, generator: bool) -> bool {
        let parent = &self.accepted[d][v];
        let (g_poly, g_content) = self.multiplier_element(m);
        let content = match (&parent.content, g_content) {
            (Some(a), Some(b)) if self.space.multigraded => Some(add_content(a, b)),
            _ => None,
        };
        if self.space.multigraded {
            let layout = self.space.layouts.layout(n);
            let c = content.as_ref().expect("multigraded elements carry content");
            match layout.block_of_content.get(c) {
                None => return false,
                Some(&b) => {
                    if self.space.components[n - 1].blocks[b as usize].is_full() {
                        return false;
                    }
                }
            }
        } else if self.space.components[n - 1].blocks[0].is_full() {
            return false;
        }
        let poly = parent
            .poly
            .as_ref()
            .expect("expansions below the top degree are kept")
            .bracket(g_poly);
        self.offer(
            n,
            poly,
            content,
            Recipe::Bracket {
                parent: v,
                parent_degree: d,
                multiplier: m,
            },
            generator,
        )
    }

    /// Projects and inserts; records the element if it is new. Top-degree
    /// expansions are dropped unless they are generators or `keep_all` is set.
    fn offer(
        &mut self,
        n: usize,
        poly: PackedPoly<F>,
        content: Option<Content>,
        recipe: Recipe,
        generator: bool,
    ) -> bool {
        if poly.is_zero() {
            return false;
        }
        let layout = self.space.layouts.layout(n);
        let (block, v) = if self.space.multigraded {
            let c = content.as_ref().expect("multigraded elements carry content");
            let Some(&b) = layout.block_of_content.get(c) else {
                return false;
            };
            let mut v = vec![F::zero(); layout.blocks[b as usize].len()];
            for (k, x) in &poly.terms {
                if let Some(&(_, _, l)) = layout.lookup.get(k) {
                    v[l as usize] = x.clone();
                }
            }
            (b as usize, v)
        } else {
            (0, self.space.project_global(n, &poly))
        };
        if !self.space.components[n - 1].blocks[block].insert(v) {
            return false;
        }
        self.rank += 1;
        let keep = n < self.space.max_degree || self.keep_all || generator;
        self.accepted[n].push(Accepted {
            poly: keep.then_some(poly),
            content,
            recipe,
        });
        true
    }

    /// Inserts an element by hand (used to adjoin complement elements).
    pub(crate) fn adjoin(&mut self, e: Element<F>) -> bool {
        let n = e.degree;
        let index = self.multipliers[n].len();
        let accepted = self.offer(
            n,
            e.poly.clone(),
            e.content.clone(),
            Recipe::Bracket {
                parent: usize::MAX,
                parent_degree: 0,
                multiplier: Multiplier::Ambient(n, index),
            },
            false,
        );
        self.multipliers[n].push(e);
        accepted
    }

    /// Coordinates of `target` (degree `n`) on the accepted elements of degree `n`.
    pub(crate) fn solve(&self, n: usize, target: &PackedPoly<F>) -> Option<Vec<F>> {
        let vectors: Vec<Vec<F>> = self.accepted[n]
            .iter()
            .map(|a| {
                self.space
                    .project_global(n, a.poly.as_ref().expect("expansions are kept"))
            })
            .collect();
        solve_combination(&vectors, &self.space.project_global(n, target))
    }

    /// Finishes; generators are the extracted ones, or the multipliers when
    /// the closure generates a subalgebra from them.
    pub(crate) fn finish(self, generators_are_multipliers: bool) -> GradedSubspace<F> {
        let Closure {
            mut space,
            multipliers,
            accepted,
            own_generators,
            extract,
            ..
        } = self;
        let max = space.max_degree;
        if extract {
            let rank = space.alphabet().len();
            let mut gens = vec![Vec::new(); max];
            let mut accepted = accepted;
            for n in 1..=max {
                for &i in &own_generators[n] {
                    let poly = accepted[n][i].poly.take().expect("generator expansions are kept");
                    gens[n - 1].push(Element {
                        content: poly.content(rank),
                        poly,
                        degree: n,
                        origin: i,
                    });
                }
            }
            space.generators = Some(gens);
        } else if generators_are_multipliers {
            space.generators = Some(multipliers.into_iter().skip(1).collect());
        }
        space
    }
}

/// Solves `Σ c_i vectors[i] = target` by Gaussian elimination with tracking.
pub(crate) fn solve_combination<F: Field>(vectors: &[Vec<F>], target: &[F]) -> Option<Vec<F>> {
    let m = vectors.len();
    // rows: [vector | unit tracking]
    let mut pivots: Vec<(usize, Vec<F>, Vec<F>)> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let mut v = v.clone();
        let mut track = vec![F::zero(); m];
        track[i] = F::one();
        for (p, row, rt) in &pivots {
            let f = v[*p].clone();
            if !f.is_zero() {
                for (a, b) in v.iter_mut().zip(row) {
                    a.sub_mul_assign(&f, b);
                }
                for (a, b) in track.iter_mut().zip(rt) {
                    a.sub_mul_assign(&f, b);
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[p].inv().expect("nonzero");
            v.iter_mut().for_each(|x| *x = x.mul(&inv));
            track.iter_mut().for_each(|x| *x = x.mul(&inv));
            pivots.push((p, v, track));
        }
    }
    let mut t = target.to_vec();
    let mut coefficients = vec![F::zero(); m];
    for (p, row, rt) in &pivots {
        let f = t[*p].clone();
        if !f.is_zero() {
            for (a, b) in t.iter_mut().zip(row) {
                a.sub_mul_assign(&f, b);
            }
            for (a, b) in coefficients.iter_mut().zip(rt) {
                a.add_mul_assign(&f, b);
            }
        }
    }
    t.iter().all(Field::is_zero).then_some(coefficients)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::witt_dimension;
    use crate::field::{Fp, Rational};
    use crate::freealg::parse_expression;
    use num_traits::ToPrimitive;

    #[test]
    fn packing_round_trips() {
        let a = GradedAlphabet::parse("u:2,y:1,x:1").unwrap();
        let w = a.parse_word("xuyxx").unwrap();
        let k = encode(&w);
        assert_eq!(key_len(k), 5);
        assert_eq!(decode(k, &a), w);
        assert_eq!(key_content(k, 3).to_vec(), vec![1, 1, 3]);
    }

    #[test]
    fn packed_bracket_matches_ncpoly() {
        let a = GradedAlphabet::binary();
        let p = parse_expression("[x,[x,y]] + 2*[[x,y],y]", &a).unwrap();
        let q = parse_expression("[y,[x,y]]", &a).unwrap();
        let expected = p.poly().bracket(q.poly());
        let packed = PackedPoly::from_nc(p.poly()).bracket(&PackedPoly::from_nc(q.poly()));
        assert_eq!(packed.to_nc(&a), expected);
    }

    #[test]
    fn whole_algebra_has_witt_dimensions() {
        let s = GradedSubspace::<Fp>::whole(&GradedAlphabet::binary(), 10).unwrap();
        for n in 1..=10 {
            assert_eq!(s.dim(n), witt_dimension(2, n as u64).to_usize().unwrap());
        }
        assert!(s.cogrowth_table().graded_u64().iter().all(|&d| d == 0));
    }

    #[test]
    fn echelon_rref_has_unit_pivots() {
        let mut e = Echelon::<Rational>::new(3);
        let r = |n: i64| Rational::from_i64(n);
        assert!(e.insert(vec![r(1), r(2), r(3)]));
        assert!(e.insert(vec![r(0), r(1), r(1)]));
        assert!(!e.insert(vec![r(2), r(5), r(7)]));
        let rows = e.reduced_rows();
        assert_eq!(rows[0], vec![(0, r(1)), (2, r(1))]);
        assert_eq!(rows[1], vec![(1, r(1)), (2, r(1))]);
    }

    #[test]
    fn solve_finds_combinations() {
        let r = |n: i64| Rational::from_i64(n);
        let vs = vec![vec![r(1), r(1), r(0)], vec![r(0), r(1), r(1)]];
        assert_eq!(solve_combination(&vs, &[r(2), r(5), r(3)]), Some(vec![r(2), r(3)]));
        assert_eq!(solve_combination(&vs, &[r(1), r(0), r(0)]), None);
    }
}
