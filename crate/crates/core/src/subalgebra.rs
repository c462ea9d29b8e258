//! Finitely generated subalgebras: leading parts, irreducible generating sets,
//! growth tables and free complements, all truncated by degree.
//!
//! Growth is computed on `gr H`. For an irreducible generating set that is the
//! subalgebra generated by the leading parts, so nonhomogeneous inputs are
//! first made irreducible and then replaced by their leading parts.

use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::freealg::{expand_ls, parse_expression, LieElement};
use crate::space::{Closure, Element, GradedSubspace, Layouts, Multiplier, Recipe, Truncation};
use crate::table::GrowthTable;
use crate::words::{GradedAlphabet, Word};

/// A finite set of Lie elements over one alphabet.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSet {
    alphabet: GradedAlphabet,
    elements: Vec<LieElement>,
}

impl GeneratorSet {
    pub fn new(alphabet: &GradedAlphabet, elements: Vec<LieElement>) -> Self {
        GeneratorSet {
            alphabet: alphabet.clone(),
            elements,
        }
    }

    /// One expression per line; blank lines and `#` comments are skipped.
    pub fn parse(alphabet: &GradedAlphabet, text: &str) -> Result<Self> {
        let mut elements = Vec::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let body = line.split('#').next().unwrap_or("");
            if !body.trim().is_empty() {
                let e = parse_expression(body, alphabet).map_err(|e| match e {
                    Error::Syntax { offset: o, message } => Error::Syntax {
                        offset: offset + o,
                        message,
                    },
                    other => other,
                })?;
                elements.push(e);
            }
            offset += line.len();
        }
        Ok(Self::new(alphabet, elements))
    }

    pub fn alphabet(&self) -> &GradedAlphabet {
        &self.alphabet
    }

    pub fn elements(&self) -> &[LieElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.elements.iter().all(LieElement::is_homogeneous)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.elements.iter().filter_map(LieElement::degree).max()
    }

    /// `k[i-1]` = number of elements of degree `i`.
    pub fn degree_histogram(&self) -> Vec<u64> {
        let top = self.max_degree().unwrap_or(0) as usize;
        let mut k = vec![0; top];
        for d in self.elements.iter().filter_map(LieElement::degree) {
            k[d as usize - 1] += 1;
        }
        k
    }

    /// One canonical expression per line.
    pub fn to_text(&self) -> String {
        self.elements
            .iter()
            .map(|e| e.to_text(&self.alphabet) + "\n")
            .collect()
    }

    pub(crate) fn engine_elements<F: Field>(&self) -> Result<Vec<Element<F>>> {
        self.elements
            .iter()
            .enumerate()
            .map(|(i, e)| Element::from_lie(&e.convert::<F>()?, self.alphabet.len(), i))
            .collect()
    }
}

/// The top homogeneous component of each element.
pub fn leading_parts(s: &GeneratorSet) -> Result<GeneratorSet> {
    let elements = s
        .elements
        .iter()
        .map(|e| {
            if e.is_zero() {
                Err(Error::ZeroElement)
            } else {
                Ok(e.leading_part())
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratorSet::new(&s.alphabet, elements))
}

/// Outcome of testing one leading part against the others.
struct Witness {
    /// an element of the subalgebra generated by the others, with the same leading part
    element: LieElement,
}

fn realize(closure: &Closure<Rational>, elements: &[LieElement], degree: usize, idx: usize) -> LieElement {
    match closure.accepted(degree)[idx].recipe {
        Recipe::Seed(i) => elements[closure.seed(degree, i).origin].clone(),
        Recipe::Bracket {
            parent,
            parent_degree,
            multiplier: Multiplier::Ambient(k, h),
        } => {
            let left = realize(closure, elements, parent_degree, parent);
            left.bracket(&elements[closure.multiplier(k, h).origin])
        }
        Recipe::Bracket { .. } => unreachable!("subalgebra closures do not extract generators"),
    }
}

/// A generating set of the same subalgebra whose leading parts are irreducible.
///
/// Whenever `Lp(s)` lies in the subalgebra generated by the other leading
/// parts, `s` is replaced by `s - w` for an element `w` of the subalgebra
/// generated by the others with the same leading part. Zeros are dropped.
pub fn irreducible_reduce(s: &GeneratorSet, truncation: impl Into<Truncation>) -> Result<GeneratorSet> {
    let max_degree = truncation.into().check::<Rational>()?;
    let mut elements: Vec<LieElement> = s.elements.iter().filter(|e| !e.is_zero()).cloned().collect();
    'restart: loop {
        for i in 0..elements.len() {
            if elements[i].degree().is_some_and(|d| d as usize > max_degree) {
                continue;
            }
            if let Some(w) = find_witness_in(&s.alphabet, &elements, i)? {
                let reduced = elements[i].sub(&w.element);
                if reduced.is_zero() {
                    elements.remove(i);
                } else {
                    elements[i] = reduced;
                }
                continue 'restart;
            }
        }
        return Ok(GeneratorSet::new(&s.alphabet, elements));
    }
}

/// Looks for `Lp(elements[i])` in the subalgebra generated by the other leading parts.
fn find_witness_in(alphabet: &GradedAlphabet, elements: &[LieElement], i: usize) -> Result<Option<Witness>> {
    let target = elements[i].leading_part();
    let degree = target.degree().ok_or(Error::ZeroElement)? as usize;
    let rank = alphabet.len();
    let others: Vec<Element<Rational>> = elements
        .iter()
        .enumerate()
        .filter(|(j, e)| *j != i && !e.is_zero())
        .map(|(j, e)| Element::from_lie(&e.leading_part(), rank, j))
        .collect::<Result<_>>()?;
    if others.is_empty() {
        return Ok(None);
    }
    let layouts = Layouts::new(alphabet, degree)?;
    let closure = Closure::new(layouts, degree, others.clone(), others, false)
        .keep_all_expansions()
        .run();
    let target_packed = Element::from_lie(&target, rank, i)?.poly;
    let Some(coefficients) = closure.solve(degree, &target_packed) else {
        return Ok(None);
    };
    let mut element = LieElement::zero();
    for (idx, c) in coefficients.iter().enumerate() {
        if !Field::is_zero(c) {
            element = element.add(&realize(&closure, elements, degree, idx).scale(c));
        }
    }
    Ok(Some(Witness { element }))
}

/// Index of the first element whose leading part lies in the subalgebra
/// generated by the other leading parts, if any.
pub fn first_reducible(s: &GeneratorSet) -> Result<Option<usize>> {
    for i in 0..s.elements.len() {
        if s.elements[i].is_zero() {
            return Err(Error::ZeroElement);
        }
        if find_witness_in(&s.alphabet, &s.elements, i)?.is_some() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// `gr H` for the subalgebra `H` generated by `s`, truncated.
pub fn subalgebra_closure<F: Field>(s: &GeneratorSet, truncation: impl Into<Truncation>) -> Result<GradedSubspace<F>> {
    let truncation = truncation.into();
    let max_degree = truncation.check::<F>()?;
    let homogeneous = if s.is_homogeneous() {
        GeneratorSet::new(&s.alphabet, s.elements.iter().filter(|e| !e.is_zero()).cloned().collect())
    } else {
        let reduced = irreducible_reduce(s, Truncation::new(s.max_degree().unwrap_or(1) as usize).with_cap(usize::MAX))?;
        leading_parts(&reduced)?
    };
    let layouts = Layouts::new(&s.alphabet, max_degree)?;
    let elements = homogeneous.engine_elements::<F>()?;
    Ok(Closure::new(layouts, max_degree, elements.clone(), elements, false)
        .run()
        .finish(true))
}

/// `d(n) = dim (gr H ∩ L_n)`, cumulated.
pub fn subalgebra_growth<F: Field>(s: &GeneratorSet, truncation: impl Into<Truncation>) -> Result<GrowthTable> {
    Ok(subalgebra_closure::<F>(s, truncation)?.growth_table())
}

/// Result of completing a homogeneous irreducible set to a free basis of a
/// subalgebra containing every component from the top generator degree on.
#[derive(Clone, Debug)]
pub struct FreeComplement<F: Field = Rational> {
    /// Adjoined LS-commutators, with their degrees.
    pub added: Vec<(u32, LieElement<F>)>,
    /// Codimension of the completed subalgebra in each degree.
    pub codim: GrowthTable,
    pub space: GradedSubspace<F>,
}

impl<F: Field> FreeComplement<F> {
    pub fn added_per_degree(&self) -> Vec<usize> {
        let mut counts = vec![0; self.space.max_degree()];
        for (d, _) in &self.added {
            counts[*d as usize - 1] += 1;
        }
        counts
    }
}

/// Adjoins, in each degree `s = t, ..., N`, LS-commutators spanning a complement
/// of the subalgebra generated so far, where `t` is the top degree of `b0`.
pub fn free_complement<F: Field>(b0: &GeneratorSet, truncation: impl Into<Truncation>) -> Result<FreeComplement<F>> {
    let max_degree = truncation.into().check::<F>()?;
    if b0.is_empty() {
        return Err(Error::InvalidArgument("the initial set is empty".into()));
    }
    if !b0.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if let Some(index) = first_reducible(b0)? {
        return Err(Error::Reducible { index });
    }
    let t = b0.max_degree().expect("nonempty") as usize;
    if t > max_degree {
        return Err(Error::InvalidArgument(format!(
            "generators reach degree {t}, beyond the truncation {max_degree}"
        )));
    }
    let alphabet = &b0.alphabet;
    let layouts = Layouts::new(alphabet, max_degree)?;
    let elements = b0.engine_elements::<F>()?;
    let mut closure = Closure::new(layouts, max_degree, elements.clone(), elements, false);
    let mut added = Vec::new();
    for s in 1..=max_degree {
        closure.step();
        if s < t {
            continue;
        }
        let missing: Vec<Word> = closure.space().complement_words(s);
        for w in missing {
            let e = LieElement::<F>::from_poly_unchecked(expand_ls(&w)?);
            let origin = b0.len() + added.len();
            let engine = Element::from_lie(&e, alphabet.len(), origin)?;
            assert!(closure.adjoin(engine), "complement element is independent");
            added.push((s as u32, e));
        }
    }
    let space = closure.finish(true);
    Ok(FreeComplement {
        codim: space.cogrowth_table(),
        added,
        space,
    })
}
