//! Exact counting: Möbius function, Witt dimensions, graded word counts,
//! dimensions of free Lie algebras on graded sets, and words avoiding a factor.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::table::GrowthTable;
use crate::words::{GradedAlphabet, Word};

pub fn mobius(d: u64) -> Result<i8> {
    if d == 0 {
        return Err(Error::InvalidArgument("the Möbius function is defined for d >= 1".into()));
    }
    let mut n = d;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    Ok(sign)
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Dimension of the degree-`n` component of the free Lie algebra of rank `m`.
pub fn witt_dimension(m: u64, n: u64) -> BigUint {
    assert!(n >= 1, "degree must be positive");
    let base = BigInt::from(m);
    let sum: BigInt = divisors(n)
        .into_iter()
        .map(|d| {
            let mu = mobius(d).expect("d >= 1");
            BigInt::from(mu) * num_traits::pow(base.clone(), (n / d) as usize)
        })
        .sum();
    let (q, r) = sum.div_rem(&BigInt::from(n));
    debug_assert!(r.is_zero());
    q.to_biguint().expect("Witt dimensions are nonnegative")
}

pub fn witt_table(m: u64, max_degree: usize) -> GrowthTable {
    GrowthTable::from_graded(1, (1..=max_degree as u64).map(|n| witt_dimension(m, n)))
}

/// Greatest common divisor of the degrees that carry letters.
pub fn degree_gcd(histogram: &[u64]) -> u64 {
    histogram
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .fold(0u64, |g, (i, _)| g.gcd(&(i as u64 + 1)))
}

/// Number of words of each degree `0..=max_degree`, via `d(n) = Σ k_i d(n-i)`.
pub fn word_count_histogram(histogram: &[u64], max_degree: usize) -> GrowthTable {
    GrowthTable::from_graded(0, word_counts(histogram, max_degree))
}

pub fn word_count(alphabet: &GradedAlphabet, max_degree: usize) -> GrowthTable {
    word_count_histogram(&alphabet.histogram(), max_degree)
}

fn word_counts(histogram: &[u64], max_degree: usize) -> Vec<BigUint> {
    let mut d = vec![BigUint::one()];
    for n in 1..=max_degree {
        let mut v = BigUint::zero();
        for (i, &k) in histogram.iter().enumerate().take(n) {
            if k > 0 {
                v += &d[n - i - 1] * k;
            }
        }
        d.push(v);
    }
    d
}

/// Dimensions of the homogeneous components of the free Lie algebra on a
/// graded set with the given histogram (`histogram[i-1]` letters of degree `i`).
///
/// Takes the logarithm of `A(t) = 1 / (1 - Σ k_i t^i)` and inverts
/// `m·b_m = Σ_{n | m} n·ℓ_n` by Möbius inversion.
pub fn graded_lie_dimension(histogram: &[u64], max_degree: usize) -> Result<GrowthTable> {
    let a: Vec<BigInt> = word_counts(histogram, max_degree)
        .into_iter()
        .map(BigInt::from)
        .collect();
    // c[m] = m * b_m where b_m are the coefficients of log A(t).
    let mut c = vec![BigInt::zero(); max_degree + 1];
    for m in 1..=max_degree {
        let mut v = BigInt::from(m) * &a[m];
        for j in 1..m {
            v -= &c[j] * &a[m - j];
        }
        c[m] = v;
    }
    let mut dims = Vec::with_capacity(max_degree);
    for n in 1..=max_degree as u64 {
        let s: BigInt = divisors(n)
            .into_iter()
            .map(|d| BigInt::from(mobius(n / d).expect("n/d >= 1")) * &c[d as usize])
            .sum();
        let (q, r) = s.div_rem(&BigInt::from(n));
        if !r.is_zero() || q.is_negative() {
            return Err(Error::Consistency(format!(
                "Lie dimension at degree {n} is {s}/{n}, not a nonnegative integer"
            )));
        }
        dims.push(q.to_biguint().expect("nonnegative"));
    }
    Ok(GrowthTable::from_graded(1, dims))
}

/// Failure-function automaton recognising words that contain a forbidden factor.
///
/// States `0..m` record the length of the longest suffix that is a prefix of
/// the forbidden word; state `m` (full match) is dead and absorbing.
#[derive(Clone, Debug)]
pub struct AvoidanceAutomaton {
    forbidden: Word,
    next: Vec<Vec<usize>>,
    letter_degrees: Vec<u32>,
}

impl AvoidanceAutomaton {
    pub fn new(alphabet: &GradedAlphabet, forbidden: &Word) -> Result<Self> {
        if forbidden.is_empty() {
            return Err(Error::EmptyWord);
        }
        if !alphabet.owns_word(forbidden) {
            return Err(Error::AlphabetMismatch);
        }
        let u: Vec<usize> = forbidden.letters().iter().map(|l| l.index() as usize).collect();
        let m = u.len();
        let r = alphabet.len();
        let mut next = vec![vec![0usize; r]; m + 1];
        next[0][u[0]] = 1;
        let mut fallback = 0;
        for s in 1..m {
            for a in 0..r {
                next[s][a] = if u[s] == a { s + 1 } else { next[fallback][a] };
            }
            fallback = next[fallback][u[s]];
        }
        next[m] = vec![m; r];
        Ok(AvoidanceAutomaton {
            forbidden: forbidden.clone(),
            next,
            letter_degrees: alphabet.letters().map(|l| l.degree()).collect(),
        })
    }

    pub fn forbidden(&self) -> &Word {
        &self.forbidden
    }

    /// Number of states including the dead one.
    pub fn state_count(&self) -> usize {
        self.next.len()
    }

    pub fn dead_state(&self) -> usize {
        self.next.len() - 1
    }

    pub fn step(&self, state: usize, letter: usize) -> usize {
        self.next[state][letter]
    }

    fn max_letter_degree(&self) -> usize {
        self.letter_degrees.iter().copied().max().unwrap_or(1) as usize
    }

    /// `T[s][t]` = number of letters of degree `degree` moving state `s` to `t`,
    /// over all states including the dead one.
    pub fn transfer_matrix(&self, degree: u32) -> Vec<Vec<u64>> {
        let k = self.state_count();
        let mut t = vec![vec![0u64; k]; k];
        for (s, row) in self.next.iter().enumerate() {
            for (a, &to) in row.iter().enumerate() {
                if self.letter_degrees[a] == degree {
                    t[s][to] += 1;
                }
            }
        }
        t
    }

    /// Number of words of each degree `0..=max_degree` avoiding the forbidden factor.
    pub fn count(&self, max_degree: usize) -> GrowthTable {
        let live = self.dead_state();
        let mut f: Vec<Vec<BigUint>> = Vec::with_capacity(max_degree + 1);
        let mut start = vec![BigUint::zero(); live];
        start[0] = BigUint::one();
        f.push(start);
        for n in 1..=max_degree {
            let mut cur = vec![BigUint::zero(); live];
            for (a, &deg) in self.letter_degrees.iter().enumerate() {
                let deg = deg as usize;
                if deg > n {
                    continue;
                }
                for (s, count) in f[n - deg].iter().enumerate() {
                    let to = self.next[s][a];
                    if to < live && !count.is_zero() {
                        cur[to] += count;
                    }
                }
            }
            f.push(cur);
        }
        GrowthTable::from_graded(0, f.into_iter().map(|row| row.into_iter().sum::<BigUint>()))
    }

    /// Perron root of the degree-step transfer system, by power iteration.
    pub fn growth_rate(&self) -> Result<f64> {
        const TOLERANCE: f64 = 1e-9;
        const MAX_ITERATIONS: usize = 100_000;
        let live = self.dead_state();
        let lag = self.max_letter_degree();
        let dim = live * lag;
        // Companion matrix on (f_n, f_{n-1}, ..., f_{n-lag+1}), shifted by the identity
        // so that periodic systems still converge.
        let mut c = vec![vec![0f64; dim]; dim];
        for (s, row) in self.next.iter().enumerate().take(live) {
            for (a, &to) in row.iter().enumerate() {
                if to < live {
                    let block = self.letter_degrees[a] as usize - 1;
                    c[to][block * live + s] += 1.0;
                }
            }
        }
        for b in 1..lag {
            for s in 0..live {
                c[b * live + s][(b - 1) * live + s] = 1.0;
            }
        }
        for (i, row) in c.iter_mut().enumerate() {
            row[i] += 1.0;
        }
        // Sum-norm estimates on a nonnegative vector; demand several quiet steps in a row
        // because the estimate can pause briefly before the dominant direction takes over.
        const QUIET_STEPS: usize = 8;
        let mut v = vec![1f64 / dim as f64; dim];
        let mut estimate = f64::NAN;
        let mut quiet = 0;
        for _ in 0..MAX_ITERATIONS {
            let w: Vec<f64> = c
                .iter()
                .map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum())
                .collect();
            let next: f64 = w.iter().sum();
            v = w.into_iter().map(|x| x / next).collect();
            if (next - estimate).abs() <= TOLERANCE * next {
                quiet += 1;
                if quiet == QUIET_STEPS {
                    return Ok(next - 1.0);
                }
            } else {
                quiet = 0;
            }
            estimate = next;
        }
        Err(Error::NoConvergence(MAX_ITERATIONS))
    }
}

/// `f_u(n)`: number of words of each degree without factor `u`.
pub fn count_avoiding(alphabet: &GradedAlphabet, u: &Word, max_degree: usize) -> Result<GrowthTable> {
    Ok(AvoidanceAutomaton::new(alphabet, u)?.count(max_degree))
}

pub fn avoidance_growth_rate(alphabet: &GradedAlphabet, u: &Word) -> Result<f64> {
    if alphabet.len() < 2 {
        return Err(Error::InvalidArgument("growth rate needs at least two letters".into()));
    }
    AvoidanceAutomaton::new(alphabet, u)?.growth_rate()
}

/// Fibonacci numbers with `fib(0) = 0`, `fib(1) = 1`.
pub fn fibonacci(n: usize) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..n {
        let c = &a + &b;
        a = b;
        b = c;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::generate_ls_words;
    use num_traits::ToPrimitive;

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(12).unwrap(), 0);
        assert_eq!(mobius(30).unwrap(), -1);
        assert_eq!(mobius(7).unwrap(), -1);
        assert_eq!(mobius(6).unwrap(), 1);
        assert!(mobius(0).is_err());
    }

    #[test]
    fn witt_values() {
        assert_eq!(witt_dimension(2, 1), BigUint::from(2u32));
        assert_eq!(witt_dimension(2, 6), BigUint::from(9u32));
        assert_eq!(witt_dimension(2, 20), BigUint::from(52377u32));
        assert_eq!(witt_table(2, 6).cumulative_u64().last(), Some(&23));
    }

    #[test]
    fn witt_matches_enumeration() {
        for m in [2usize, 3] {
            let alphabet = GradedAlphabet::uniform(m).unwrap();
            let top = if m == 2 { 16 } else { 10 };
            for n in 1..=top {
                let count = generate_ls_words(&alphabet, n).len();
                assert_eq!(witt_dimension(m as u64, n as u64), BigUint::from(count), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn word_count_examples() {
        assert_eq!(word_count_histogram(&[2], 3).graded_u64(), vec![1, 2, 4, 8]);
        assert_eq!(word_count_histogram(&[1, 1], 4).graded_u64(), vec![1, 1, 2, 3, 5]);
        let sparse = word_count_histogram(&[0, 4], 4);
        assert_eq!(sparse.g(4).unwrap(), &BigUint::from(21u32));
        assert_eq!(21, (2u64.pow(6) - 1) / (2u64.pow(2) - 1));
    }

    #[test]
    fn graded_lie_examples() {
        let t = graded_lie_dimension(&[2], 20).unwrap();
        for n in 1..=20 {
            assert_eq!(t.d(n).unwrap(), &witt_dimension(2, n as u64));
        }
        let t = graded_lie_dimension(&[1, 1], 5).unwrap();
        assert_eq!(t.d(5).unwrap(), &BigUint::from(2u32));
        let t = graded_lie_dimension(&[1], 8).unwrap();
        assert_eq!(t.graded_u64(), vec![1, 0, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn graded_lie_matches_ls_enumeration() {
        let alphabet = GradedAlphabet::parse("u:2,y:1,x:1").unwrap();
        let t = graded_lie_dimension(&alphabet.histogram(), 10).unwrap();
        for n in 1..=10u32 {
            let count = generate_ls_words(&alphabet, n).len();
            assert_eq!(t.d(n as usize).unwrap(), &BigUint::from(count), "degree {n}");
        }
    }

    #[test]
    fn lie_dimensions_rebuild_the_word_series() {
        // Π (1 - t^n)^{-ℓ_n} = 1 / (1 - Σ k_i t^i) up to the truncation degree.
        let n_max = 14;
        for hist in [vec![2u64], vec![1, 1], vec![0, 1, 1], vec![3, 0, 2]] {
            let dims = graded_lie_dimension(&hist, n_max).unwrap().graded_u64();
            let mut series = vec![BigUint::zero(); n_max + 1];
            series[0] = BigUint::one();
            for (i, &l) in dims.iter().enumerate() {
                let n = i + 1;
                // multiply by (1 - t^n)^{-1}, l times
                for _ in 0..l {
                    for j in n..=n_max {
                        let add = series[j - n].clone();
                        series[j] += add;
                    }
                }
            }
            assert_eq!(series, word_counts(&hist, n_max), "histogram {hist:?}");
        }
    }

    #[test]
    fn delta_is_gcd_of_occupied_degrees() {
        assert_eq!(degree_gcd(&[0, 2, 0, 1]), 2);
        assert_eq!(degree_gcd(&[1, 1]), 1);
        assert_eq!(degree_gcd(&[0, 0, 5]), 3);
    }

    fn bin() -> GradedAlphabet {
        GradedAlphabet::binary()
    }

    #[test]
    fn avoidance_examples() {
        let a = bin();
        let u = |s: &str| a.parse_word(s).unwrap();
        assert_eq!(count_avoiding(&a, &u("xx"), 2).unwrap().d(2).unwrap(), &BigUint::from(3u32));
        assert_eq!(count_avoiding(&a, &u("x"), 7).unwrap().d(7).unwrap(), &BigUint::one());
        assert_eq!(count_avoiding(&a, &u("xy"), 3).unwrap().d(3).unwrap(), &BigUint::from(4u32));
        assert!(count_avoiding(&a, &Word::empty(), 3).is_err());
    }

    #[test]
    fn automaton_matches_enumeration() {
        let a = bin();
        for len in 1..=4u32 {
            for u in a.words_of_degree(len) {
                let table = count_avoiding(&a, &u, 12).unwrap();
                for n in 0..=12u32 {
                    let brute = a.words_of_degree(n).iter().filter(|w| !u.is_factor_of(w)).count();
                    assert_eq!(table.d(n as usize).unwrap(), &BigUint::from(brute), "u={u:?} n={n}");
                }
            }
        }
    }

    #[test]
    fn long_forbidden_word_does_not_bite() {
        let a = GradedAlphabet::parse("u:2,x:1").unwrap();
        let u = a.parse_word("xuxxu").unwrap();
        let free = word_count(&a, 6);
        assert_eq!(count_avoiding(&a, &u, 6).unwrap(), free);
    }

    #[test]
    fn transfer_rows_reproduce_histogram() {
        let a = GradedAlphabet::parse("u:2,y:1,x:1").unwrap();
        let automaton = AvoidanceAutomaton::new(&a, &a.parse_word("xux").unwrap()).unwrap();
        let hist = a.histogram();
        for (i, &k) in hist.iter().enumerate() {
            let t = automaton.transfer_matrix(i as u32 + 1);
            for row in &t {
                assert_eq!(row.iter().sum::<u64>(), k);
            }
            let dead = automaton.dead_state();
            assert_eq!(t[dead][dead], k);
        }
    }

    #[test]
    fn growth_rate_examples() {
        let a = bin();
        let u = |s: &str| a.parse_word(s).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((avoidance_growth_rate(&a, &u("xx")).unwrap() - phi).abs() < 1e-6);
        assert!((avoidance_growth_rate(&a, &u("x")).unwrap() - 1.0).abs() < 1e-6);
        assert!((avoidance_growth_rate(&a, &u("xxx")).unwrap() - 1.839286755214161).abs() < 1e-6);
        let single = GradedAlphabet::parse("x:1").unwrap();
        assert!(avoidance_growth_rate(&single, &single.parse_word("x").unwrap()).is_err());
    }

    #[test]
    fn graded_growth_rate_handles_periodic_systems() {
        // Only even degrees occur; the companion system is periodic.
        let a = GradedAlphabet::parse("u:2,v:2").unwrap();
        let rate = avoidance_growth_rate(&a, &a.parse_word("uu").unwrap()).unwrap();
        // f(2n) = Fib(n+2): per unit of degree the rate is sqrt(phi).
        let phi: f64 = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((rate - phi.sqrt()).abs() < 1e-6, "{rate}");
    }

    #[test]
    fn fibonacci_numbers() {
        let f: Vec<u64> = (0..8).map(|n| fibonacci(n).to_u64().unwrap()).collect();
        assert_eq!(f, vec![0, 1, 1, 2, 3, 5, 8, 13]);
    }
}
