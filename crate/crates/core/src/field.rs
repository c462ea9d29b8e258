//! Coefficient fields.
//!
//! Everything in this crate is generic over [`Field`]. Two fields are
//! provided: exact rationals over big integers ([`Rational`]) and the prime
//! field of order 2^61 - 1 ([`Fp`]), used to push rank computations into
//! degrees where rational arithmetic gets slow.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Short name used in diagnostics and reports.
    const NAME: &'static str;
    /// Default degree cap for the linear-algebra engines.
    const DEGREE_CAP: usize;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn from_i64(v: i64) -> Self;
    fn from_rational(q: &Rational) -> Result<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    /// `self -= a * b`
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.sub(&a.mul(b));
    }

    /// `self += a * b`
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.add(&a.mul(b));
    }
}

impl Field for Rational {
    const NAME: &'static str = "rational";
    const DEGREE_CAP: usize = 12;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_rational(q: &Rational) -> Result<Self> {
        Ok(q.clone())
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

/// Element of the prime field of order `2^61 - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp(u64);

impl Fp {
    pub const MODULUS: u64 = (1 << 61) - 1;

    pub fn new(v: u64) -> Self {
        Fp(v % Self::MODULUS)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn reduce128(x: u128) -> u64 {
        let p = Self::MODULUS as u128;
        let folded = (x & p) + (x >> 61);
        let folded = (folded & p) + (folded >> 61);
        let mut r = folded as u64;
        if r >= Self::MODULUS {
            r -= Self::MODULUS;
        }
        r
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = Field::mul(&acc, &base);
            }
            base = Field::mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn from_bigint(v: &BigInt) -> Self {
        let m = BigInt::from(Self::MODULUS);
        let r = v.mod_floor(&m);
        Fp(r.to_u64().expect("reduced value fits in u64"))
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fp({})", self.0)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for Fp {
    const NAME: &'static str = "prime";
    const DEGREE_CAP: usize = 20;

    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        let s = self.0 + other.0;
        Fp(if s >= Self::MODULUS { s - Self::MODULUS } else { s })
    }
    fn sub(&self, other: &Self) -> Self {
        if self.0 >= other.0 {
            Fp(self.0 - other.0)
        } else {
            Fp(self.0 + Self::MODULUS - other.0)
        }
    }
    fn mul(&self, other: &Self) -> Self {
        Fp(Self::reduce128(self.0 as u128 * other.0 as u128))
    }
    fn neg(&self) -> Self {
        if self.0 == 0 {
            *self
        } else {
            Fp(Self::MODULUS - self.0)
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(Self::MODULUS - 2))
        }
    }
    fn from_i64(v: i64) -> Self {
        if v >= 0 {
            Fp::new(v as u64)
        } else {
            Fp::new(v.unsigned_abs()).neg()
        }
    }
    fn from_rational(q: &Rational) -> Result<Self> {
        let den = Fp::from_bigint(q.denom());
        let inv = den
            .inv()
            .ok_or_else(|| Error::NotRepresentable(q.to_string()))?;
        Ok(Field::mul(&Fp::from_bigint(q.numer()), &inv))
    }
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = Field::sub(self, &Field::mul(a, b));
    }
}

/// Parses a decimal, scientific or fractional literal into an exact rational.
///
/// Accepts `3`, `-2.5`, `1e-12`, `1.25E3` and `7/4`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidArgument(format!("not a number: `{text}`"));
    let s = text.trim();
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..].parse().map_err(|_| bad())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("{int_part}{frac_part}0").parse::<BigInt>().map_err(|_| bad())? / 10;
    let scale = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let mut q = if scale >= 0 {
        Rational::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        q = -q;
    }
    Ok(q)
}

/// Rounds a rational to the nearest `f64`.
pub fn rational_to_f64(q: &Rational) -> f64 {
    // Scale so both parts fit comfortably in f64 before dividing.
    let n = q.numer();
    let d = q.denom();
    let shift = (n.bits().max(d.bits()) as i64 - 900).max(0) as usize;
    let n = (n.abs() >> shift).to_f64().unwrap_or(f64::INFINITY);
    let d = (d >> shift).to_f64().unwrap_or(f64::INFINITY);
    let v = n / d;
    if q.is_negative() {
        -v
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let a = Fp::from_i64(-3);
        let b = Fp::from_i64(5);
        assert_eq!(Field::add(&a, &b), Fp::from_i64(2));
        assert_eq!(Field::mul(&a, &b), Fp::from_i64(-15));
        let inv = b.inv().unwrap();
        assert_eq!(Field::mul(&inv, &b), Fp::one());
        assert!(Fp::zero().inv().is_none());
        let half = Fp::from_rational(&Rational::new(1.into(), 2.into())).unwrap();
        assert_eq!(Field::add(&half, &half), Fp::one());
    }

    #[test]
    fn big_products_reduce() {
        let m = Fp::new(Fp::MODULUS - 1);
        assert_eq!(Field::mul(&m, &m), Fp::one());
    }

    #[test]
    fn parses_decimal_literals() {
        let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
        assert_eq!(parse_rational("1.5").unwrap(), r(3, 2));
        assert_eq!(parse_rational("-2.25").unwrap(), r(-9, 4));
        assert_eq!(parse_rational("1e-3").unwrap(), r(1, 1000));
        assert_eq!(parse_rational("2.5E2").unwrap(), r(250, 1));
        assert_eq!(parse_rational("7/4").unwrap(), r(7, 4));
        assert_eq!(parse_rational(".5").unwrap(), r(1, 2));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn converts_to_float() {
        let q = parse_rational("1.618033988749895").unwrap();
        assert!((rational_to_f64(&q) - 1.618033988749895).abs() < 1e-15);
    }
}
