//! Ideal and ℓ-subideal closures, truncated by degree, and their cogrowth.
//!
//! `id¹ S` is the ideal of `L` generated by `S`; `id^ℓ S` is the ideal of
//! `id^{ℓ-1} S` generated by `S`. Each stage is spanned by left-normed
//! brackets `[s, g_1, ..., g_k]` with `g_i` running over generators of the
//! previous stage, so intermediate stages keep a generating set around.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::counting::{divisors, fibonacci, mobius};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::space::{Closure, Element, GradedSubspace, Truncation};
use crate::subalgebra::GeneratorSet;
use crate::table::GrowthTable;
use crate::words::{for_each_ls_word, GradedAlphabet, Word};

/// The stages `id¹ S ⊇ id² S ⊇ ... ⊇ id^ℓ S`, truncated at a common degree.
#[derive(Clone, Debug)]
pub struct SubidealChain<F: Field = crate::field::Rational> {
    pub level: usize,
    /// `stages[j - 1]` is `id^j S`.
    pub stages: Vec<GradedSubspace<F>>,
    pub generators: GeneratorSet,
}

impl<F: Field> SubidealChain<F> {
    /// `id^j S` for `1 <= j <= level`.
    pub fn stage(&self, j: usize) -> &GradedSubspace<F> {
        &self.stages[j - 1]
    }

    /// `id^ℓ S`.
    pub fn closure(&self) -> &GradedSubspace<F> {
        self.stages.last().expect("a chain has at least one stage")
    }

    pub fn cogrowth_table(&self) -> GrowthTable {
        self.closure().cogrowth_table()
    }
}

fn seeds<F: Field>(s: &GeneratorSet) -> Result<Vec<Element<F>>> {
    if s.elements().iter().any(|e| e.is_zero()) {
        return Err(Error::ZeroElement);
    }
    if !s.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    s.engine_elements::<F>()
}

fn ideal_in<F: Field>(
    ambient: &GradedSubspace<F>,
    s: &GeneratorSet,
    max_degree: usize,
    extract: bool,
) -> Result<GradedSubspace<F>> {
    if s.alphabet() != ambient.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    if max_degree > ambient.max_degree() {
        return Err(Error::InvalidArgument(format!(
            "ambient is truncated at degree {}, below {max_degree}",
            ambient.max_degree()
        )));
    }
    let Some(generators) = ambient.generator_elements() else {
        return Err(Error::InvalidArgument("ambient carries no generating set".into()));
    };
    let seeds = seeds::<F>(s)?;
    for e in s.elements() {
        let degree = e.degree().expect("nonzero") as usize;
        if degree <= max_degree && !ambient.contains(&e.convert::<F>()?)? {
            return Err(Error::NotInAmbient { degree });
        }
    }
    let multipliers: Vec<Element<F>> = generators.iter().flatten().cloned().collect();
    Ok(Closure::new(ambient.layouts().clone(), max_degree, seeds, multipliers, extract)
        .run()
        .finish(false))
}

/// The ideal of `ambient` generated by `s`, up to the truncation degree.
///
/// The ambient space must carry generators: the whole algebra, a subalgebra
/// closure, or a stage produced here. The result records its own generators
/// so it can serve as the next ambient.
pub fn ideal_closure<F: Field>(
    ambient: &GradedSubspace<F>,
    s: &GeneratorSet,
    truncation: impl Into<Truncation>,
) -> Result<GradedSubspace<F>> {
    let max_degree = truncation.into().check::<F>()?;
    ideal_in(ambient, s, max_degree, true)
}

/// The chain `id¹ S ⊇ ... ⊇ id^ℓ S` in `L(X)`.
pub fn subideal_closure<F: Field>(
    s: &GeneratorSet,
    level: usize,
    truncation: impl Into<Truncation>,
) -> Result<SubidealChain<F>> {
    if level == 0 {
        return Err(Error::InvalidArgument("level must be at least 1".into()));
    }
    let max_degree = truncation.into().check::<F>()?;
    let whole = GradedSubspace::<F>::whole(s.alphabet(), max_degree)?;
    let mut stages: Vec<GradedSubspace<F>> = Vec::with_capacity(level);
    for j in 1..=level {
        let stage = ideal_in(stages.last().unwrap_or(&whole), s, max_degree, j < level)?;
        if let Some(prev) = stages.last_mut() {
            prev.forget_generators();
        }
        stages.push(stage);
    }
    Ok(SubidealChain {
        level,
        stages,
        generators: s.clone(),
    })
}

/// `d(n) = dim L_n - dim (H ∩ L_n)` for `n <= max_degree`.
pub fn cogrowth_table<F: Field>(h: &GradedSubspace<F>, max_degree: usize) -> Result<GrowthTable> {
    if max_degree > h.max_degree() {
        return Err(Error::InvalidArgument(format!(
            "subspace is truncated at degree {}, below {max_degree}",
            h.max_degree()
        )));
    }
    Ok(h.cogrowth_table().truncate(max_degree))
}

/// Cogrowth of `id²(x)` in `L(x, y)` in closed form:
/// `d(n) = (1/n) Σ_{e|n} μ(e) (Fib(n/e - 1) + Fib(n/e + 1))`.
pub fn fibonacci_cogrowth(max_degree: usize) -> GrowthTable {
    let values = (1..=max_degree as u64).map(|n| {
        let mut sum = BigInt::zero();
        for e in divisors(n) {
            let mu = mobius(e).expect("positive divisor");
            if mu == 0 {
                continue;
            }
            let m = (n / e) as usize;
            let lucas = BigInt::from(fibonacci(m - 1) + fibonacci(m + 1));
            sum += lucas * BigInt::from(mu);
        }
        debug_assert!(!sum.is_negative());
        let (q, r) = (sum.magnitude() / n, sum.magnitude() % n);
        debug_assert!(r.is_zero());
        q
    });
    GrowthTable::from_graded(1, values)
}

/// Counts LS-words over `y < x` of each degree, other than `x` itself, with no
/// factor `x^level`.
pub fn ls_avoidance_cogrowth(level: usize, max_degree: usize) -> Result<GrowthTable> {
    if level == 0 {
        return Err(Error::InvalidArgument("level must be at least 1".into()));
    }
    let alphabet = GradedAlphabet::binary();
    let x = alphabet.greatest();
    let power = Word::from_letters(std::iter::repeat_n(x, level));
    let single = Word::letter(x);
    let values = (1..=max_degree as u32).map(|n| {
        let mut count = 0u64;
        for_each_ls_word(&alphabet, n, |w| {
            if *w != single && !power.is_factor_of(w) {
                count += 1;
            }
        });
        BigUint::from(count)
    });
    Ok(GrowthTable::from_graded(1, values))
}
