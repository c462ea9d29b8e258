//! Generating data of graded alphabets: the function `F(ζ) = Σ k_i / (z - ζ)^i`,
//! Conditions G and W_z, exponential bases, the greedy base sequence and
//! Lazard elimination.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{rational_to_f64, Rational};
use crate::words::{GradedAlphabet, LetterSpec};

/// Letter-count histogram, either finite or with a constant tail.
///
/// `prefix[i-1]` is `k_i`; with a tail `c`, `k_i = c` for every `i > prefix.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesSpec {
    prefix: Vec<u64>,
    tail: u64,
}

impl SeriesSpec {
    pub fn finite(histogram: &[u64]) -> Self {
        let mut prefix = histogram.to_vec();
        while prefix.last() == Some(&0) {
            prefix.pop();
        }
        SeriesSpec { prefix, tail: 0 }
    }

    /// `k_i = prefix[i-1]` up to the prefix length, then `k_i = tail`.
    pub fn with_constant_tail(prefix: &[u64], tail: u64) -> Self {
        if tail == 0 {
            return Self::finite(prefix);
        }
        let mut prefix = prefix.to_vec();
        while prefix.last() == Some(&tail) {
            prefix.pop();
        }
        SeriesSpec { prefix, tail }
    }

    /// All `k_i = c`.
    pub fn constant(c: u64) -> Self {
        Self::with_constant_tail(&[], c)
    }

    pub fn from_alphabet(alphabet: &GradedAlphabet) -> Self {
        Self::finite(&alphabet.histogram())
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn tail(&self) -> u64 {
        self.tail
    }

    pub fn is_finite(&self) -> bool {
        self.tail == 0
    }

    /// `k_i` for `i >= 1`.
    pub fn k(&self, i: usize) -> u64 {
        assert!(i >= 1, "histogram indices start at 1");
        self.prefix.get(i - 1).copied().unwrap_or(self.tail)
    }

    /// `(k_1, ..., k_n)`.
    pub fn truncated(&self, n: usize) -> Vec<u64> {
        (1..=n).map(|i| self.k(i)).collect()
    }

    /// `F(ζ)` at parameter `z`, exactly.
    pub fn eval_f(&self, z: &Rational, zeta: &Rational) -> Result<Rational> {
        let base = z - zeta;
        if base.is_zero() {
            return Err(Error::Divergent("z - ζ = 0".into()));
        }
        if !self.is_finite() && base <= Rational::one() {
            return Err(Error::Divergent(format!(
                "constant tail needs z - ζ > 1, got {base}"
            )));
        }
        let q = base.recip();
        let mut sum = Rational::zero();
        let mut power = Rational::one();
        for &k in &self.prefix {
            power *= &q;
            if k > 0 {
                sum += &power * Rational::from_integer(BigInt::from(k));
            }
        }
        if !self.is_finite() {
            // Σ_{i > p} c q^i = c q^{p+1} / (1 - q)
            let c = Rational::from_integer(BigInt::from(self.tail));
            sum += c * &power * &q / (Rational::one() - &q);
        }
        Ok(sum)
    }

    /// `F(ζ)` in floating point, for irrational parameters.
    pub fn eval_f64(&self, z: f64, zeta: f64) -> Result<f64> {
        let base = z - zeta;
        if base == 0.0 {
            return Err(Error::Divergent("z - ζ = 0".into()));
        }
        if !self.is_finite() && base <= 1.0 {
            return Err(Error::Divergent(format!(
                "constant tail needs z - ζ > 1, got {base}"
            )));
        }
        let q = 1.0 / base;
        let mut sum = 0.0;
        let mut power = 1.0;
        for &k in &self.prefix {
            power *= q;
            sum += k as f64 * power;
        }
        if !self.is_finite() {
            sum += self.tail as f64 * power * q / (1.0 - q);
        }
        Ok(sum)
    }

    /// Condition G: either `k_2 = k_3 = ... = 0`, or `k_i > 0` implies `k_{i+1} > 0`.
    pub fn condition_g(&self) -> bool {
        let only_degree_one = self.tail == 0 && self.prefix.iter().skip(1).all(|&k| k == 0);
        if only_degree_one {
            return true;
        }
        if self.tail == 0 {
            // a finite histogram with a letter above degree 1 has a last nonzero entry
            return false;
        }
        self.prefix
            .iter()
            .chain(std::iter::once(&self.tail))
            .collect::<Vec<_>>()
            .windows(2)
            .all(|w| *w[0] == 0 || *w[1] > 0)
    }

    pub fn check_conditions(&self, z: &Rational) -> Conditions {
        let converges_near_zero = if self.is_finite() {
            !z.is_zero()
        } else {
            *z > Rational::one()
        };
        let wz = converges_near_zero
            && self
                .eval_f(z, &Rational::zero())
                .is_ok_and(|f| f <= Rational::one());
        Conditions {
            g: self.condition_g(),
            wz,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Conditions {
    pub g: bool,
    pub wz: bool,
}

pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// The exponential base `z0` of a finite histogram with its bisection certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseResult {
    pub z0: f64,
    /// `F(0) > 1` at `lo`.
    pub lo: Rational,
    /// `F(0) <= 1` at `hi`.
    pub hi: Rational,
    /// Coefficients of `z^d - k_1 z^{d-1} - ... - k_d`, leading first.
    pub poly: Vec<BigInt>,
    /// True when `hi` is the root itself.
    pub exact: bool,
}

impl BaseResult {
    /// Re-checks the sign certificate with exact evaluation of `F(0)`.
    pub fn verify(&self, histogram: &[u64]) -> bool {
        let spec = SeriesSpec::finite(histogram);
        let zero = Rational::zero();
        let one = Rational::one();
        matches!(spec.eval_f(&self.lo, &zero), Ok(f) if f > one)
            && matches!(spec.eval_f(&self.hi, &zero), Ok(f) if f <= one)
    }
}

/// `z^d - Σ k_i z^{d-i}` as integer coefficients, leading first.
pub fn base_polynomial(histogram: &[u64]) -> Vec<BigInt> {
    let spec = SeriesSpec::finite(histogram);
    std::iter::once(BigInt::one())
        .chain(spec.prefix().iter().map(|&k| -BigInt::from(k)))
        .collect()
}

fn horner(poly: &[BigInt], z: &Rational) -> Rational {
    poly.iter().fold(Rational::zero(), |acc, c| {
        acc * z + Rational::from_integer(c.clone())
    })
}

/// The unique root `z0 >= 1` of `z^d = k_1 z^{d-1} + ... + k_d`, by bisection.
///
/// For `z > 0`, `F(0) <= 1` exactly when the base polynomial is nonnegative,
/// so every comparison is an exact sign evaluation.
pub fn exponential_base(histogram: &[u64], tolerance: &Rational) -> Result<BaseResult> {
    if !tolerance.is_positive() {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let spec = SeriesSpec::finite(histogram);
    let total: u64 = spec.prefix().iter().sum();
    if total == 0 {
        return Err(Error::InvalidArgument("histogram has no letters".into()));
    }
    let poly = base_polynomial(histogram);
    let settle = |root: BigInt| {
        let hi = Rational::from_integer(root);
        BaseResult {
            z0: rational_to_f64(&hi),
            lo: &hi - tolerance,
            poly: poly.clone(),
            hi,
            exact: true,
        }
    };
    if total == 1 {
        return Ok(settle(BigInt::one()));
    }
    let mut lo = Rational::one();
    let mut hi = Rational::from_integer(BigInt::from(total));
    let two = Rational::from_integer(BigInt::from(2));
    while &hi - &lo > *tolerance {
        let mid = (&lo + &hi) / &two;
        if horner(&poly, &mid).is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // A rational root of a monic integer polynomial is an integer.
    for candidate in [hi.floor().to_integer(), hi.ceil().to_integer()] {
        let c = Rational::from_integer(candidate.clone());
        if c >= lo && c <= hi && horner(&poly, &c).is_zero() {
            return Ok(settle(candidate));
        }
    }
    let z0 = rational_to_f64(&((&lo + &hi) / &two));
    Ok(BaseResult {
        z0,
        lo,
        hi,
        poly,
        exact: false,
    })
}

/// The greedy 0/1 sequence with `Σ k_i / m0^i = 1`, and its remainders.
#[derive(Clone, Debug, PartialEq)]
pub struct GreedySequence {
    pub k: Vec<u8>,
    /// `a_j = 1 - Σ_{i <= j} k_i / m0^i` for `j = 0..=N`.
    pub remainders: Vec<Rational>,
}

impl GreedySequence {
    pub fn last_remainder(&self) -> &Rational {
        self.remainders.last().expect("a_0 is always present")
    }
}

pub fn greedy_base_sequence(m0: &Rational, n: usize) -> Result<GreedySequence> {
    let one = Rational::one();
    if *m0 <= one || *m0 > Rational::from_integer(BigInt::from(2)) {
        return Err(Error::InvalidArgument(format!("m0 = {m0} is outside (1, 2]")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("sequence length must be positive".into()));
    }
    let step = m0.recip();
    let mut a = one.clone();
    let mut power = one;
    let mut k = Vec::with_capacity(n);
    let mut remainders = vec![a.clone()];
    for _ in 0..n {
        power *= &step;
        if a < power {
            k.push(0);
        } else {
            k.push(1);
            a -= &power;
        }
        remainders.push(a.clone());
    }
    Ok(GreedySequence { k, remainders })
}

/// Result of eliminating the minimal letter of an alphabet.
#[derive(Clone, Debug)]
pub struct LazardResult {
    /// Letters `[y,x,...,x]` up to the truncation degree.
    pub alphabet: GradedAlphabet,
    /// Name of the eliminated letter `x`.
    pub eliminated: String,
    /// The untruncated histogram when it has a constant tail (`x` of degree 1).
    pub series: Option<SeriesSpec>,
}

/// Lazard elimination of the minimal letter among those of minimal degree.
///
/// The kernel of the projection killing every letter but `x` is free on the
/// commutators `[y, x, ..., x]`; they are listed by number of `x`s, then by the
/// order of `y`.
pub fn lazard_transform(alphabet: &GradedAlphabet, max_degree: u32) -> Result<LazardResult> {
    if alphabet.len() < 2 {
        return Err(Error::InvalidArgument(
            "Lazard elimination needs at least two letters".into(),
        ));
    }
    let s = alphabet.min_degree();
    let specs = alphabet.specs();
    let x = specs
        .iter()
        .position(|l| l.degree == s)
        .expect("some letter has the minimal degree");
    let survivors: Vec<&LetterSpec> = specs
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != x)
        .map(|(_, l)| l)
        .collect();
    let x_name = &specs[x].name;
    let mut letters = Vec::new();
    for t in 0.. {
        let mut any_fits = false;
        for y in &survivors {
            let degree = y.degree + t * s;
            if degree > max_degree {
                continue;
            }
            any_fits = true;
            let name = if t == 0 {
                y.name.clone()
            } else {
                let xs = vec![x_name.as_str(); t as usize].join(",");
                format!("[{},{}]", y.name, xs)
            };
            letters.push(LetterSpec { name, degree });
        }
        if !any_fits {
            break;
        }
    }
    if letters.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "no commutator letters of degree <= {max_degree}"
        )));
    }
    let series = (s == 1).then(|| {
        let top = survivors.iter().map(|l| l.degree).max().unwrap_or(1) as usize;
        let prefix: Vec<u64> = (1..=top)
            .map(|j| survivors.iter().filter(|l| l.degree as usize <= j).count() as u64)
            .collect();
        SeriesSpec::with_constant_tail(&prefix, survivors.len() as u64)
    });
    Ok(LazardResult {
        alphabet: GradedAlphabet::new(letters)?,
        eliminated: x_name.clone(),
        series,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_rational;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn eval_examples() {
        let zero = Rational::zero();
        assert_eq!(SeriesSpec::finite(&[2]).eval_f(&q("2"), &zero).unwrap(), q("1"));
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let f = SeriesSpec::finite(&[1, 1]).eval_f64(phi, 0.0).unwrap();
        assert!((f - 1.0).abs() < 1e-12);
        assert_eq!(SeriesSpec::constant(1).eval_f(&q("2"), &zero).unwrap(), q("1"));
        assert!(SeriesSpec::constant(1).eval_f(&q("1"), &zero).is_err());
        assert!(SeriesSpec::constant(1).eval_f(&q("0.5"), &zero).is_err());
        assert!(SeriesSpec::finite(&[1]).eval_f(&q("2"), &q("2")).is_err());
    }

    #[test]
    fn tail_closed_form_matches_partial_sums() {
        let spec = SeriesSpec::with_constant_tail(&[0, 3, 1], 2);
        let z = q("5/2");
        let closed = spec.eval_f(&z, &q("1/3")).unwrap();
        let base = &z - q("1/3");
        let mut partial = Rational::zero();
        for i in 1..200 {
            partial += Rational::from_integer(spec.k(i).into()) / num_traits::pow(base.clone(), i);
        }
        assert!(rational_to_f64(&(closed - partial)).abs() < 1e-30);
    }

    #[test]
    fn condition_examples() {
        assert_eq!(
            SeriesSpec::finite(&[2]).check_conditions(&q("2")),
            Conditions { g: true, wz: true }
        );
        assert!(!SeriesSpec::finite(&[1, 0, 1]).check_conditions(&q("2")).g);
        assert_eq!(
            SeriesSpec::constant(1).check_conditions(&q("2")),
            Conditions { g: true, wz: true }
        );
        assert!(!SeriesSpec::finite(&[1, 1]).check_conditions(&q("3/2")).wz);
        assert!(SeriesSpec::with_constant_tail(&[0, 1], 1).condition_g());
        assert!(!SeriesSpec::with_constant_tail(&[1, 0], 1).condition_g());
    }

    #[test]
    fn base_examples() {
        let tol = q("1e-12");
        let golden = exponential_base(&[1, 1], &tol).unwrap();
        assert!((golden.z0 - 1.618_033_988_749_895).abs() < 1e-9);
        assert!(golden.verify(&[1, 1]));
        assert!(!golden.exact);
        assert!(&golden.hi - &golden.lo <= tol);
        let two = exponential_base(&[2], &tol).unwrap();
        assert!(two.exact);
        assert_eq!(two.hi, q("2"));
        assert!(two.verify(&[2]));
        let five = exponential_base(&[5, 0], &tol).unwrap();
        assert_eq!(five.hi, q("5"));
        let plastic = exponential_base(&[0, 1, 1], &tol).unwrap();
        assert!((plastic.z0 - 1.324717957244746).abs() < 1e-9);
        assert_eq!(
            plastic.poly,
            vec![1, 0, -1, -1].into_iter().map(BigInt::from).collect::<Vec<_>>()
        );
        let one = exponential_base(&[1], &tol).unwrap();
        assert_eq!(one.hi, q("1"));
        assert!(one.verify(&[1]));
        assert!(exponential_base(&[0, 0], &tol).is_err());
    }

    #[test]
    fn greedy_examples() {
        let s = greedy_base_sequence(&q("2"), 5).unwrap();
        assert_eq!(s.k, vec![1, 1, 1, 1, 1]);
        let s = greedy_base_sequence(&q("1.5"), 3).unwrap();
        assert_eq!(s.k, vec![1, 0, 1]);
        assert!(greedy_base_sequence(&q("2.5"), 3).is_err());
        assert!(greedy_base_sequence(&q("1"), 3).is_err());
    }

    #[test]
    fn greedy_remainders_stay_in_range() {
        for m0 in ["1.01", "1.2", "1.5", "1.9", "1.999"] {
            let m0 = q(m0);
            let s = greedy_base_sequence(&m0, 40).unwrap();
            let mut bound = Rational::one();
            for a in s.remainders.iter().skip(1) {
                bound /= &m0;
                assert!(!a.is_negative() && *a < bound);
            }
        }
    }

    #[test]
    fn lazard_examples() {
        let r = lazard_transform(&GradedAlphabet::binary(), 4).unwrap();
        assert_eq!(r.alphabet.histogram(), vec![1, 1, 1, 1]);
        assert_eq!(r.eliminated, "y");
        assert_eq!(r.alphabet.specs()[2].name, "[x,y,y]");
        let r = lazard_transform(&GradedAlphabet::uniform(3).unwrap(), 3).unwrap();
        assert_eq!(r.alphabet.histogram(), vec![2, 2, 2]);
        let spec = lazard_transform(&GradedAlphabet::binary(), 4).unwrap().series.unwrap();
        assert_eq!(spec, SeriesSpec::constant(1));
        assert_eq!(spec.eval_f(&q("2"), &Rational::zero()).unwrap(), q("1"));
        assert!(lazard_transform(&GradedAlphabet::parse("x:1").unwrap(), 4).is_err());
    }

    #[test]
    fn lazard_with_higher_degree_minimum() {
        let a = GradedAlphabet::parse("u:2,v:2,w:3").unwrap();
        let r = lazard_transform(&a, 7).unwrap();
        // survivors v:2, w:3 spawn [v,u^t] at 2,4,6 and [w,u^t] at 3,5,7
        assert_eq!(r.alphabet.histogram(), vec![0, 1, 1, 1, 1, 1, 1]);
        assert!(r.series.is_none());
    }
}
