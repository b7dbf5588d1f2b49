//! Exact scalar fields: prime fields GF(p) and the rationals.
//!
//! Every computation in this crate is exact. A [`Field`] is a small runtime
//! context (the modulus, or nothing for the rationals) and its elements carry
//! enough information to do arithmetic through the ordinary operator traits.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use thiserror::Error;

/// Element of an exact field.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn is_zero(&self) -> bool;
    fn inverse(&self) -> Option<Self>;

    fn is_one(&self) -> bool;
}

pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Scalar;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn characteristic(&self) -> u64;
    fn name(&self) -> String;

    /// Every element of the field, when it is finite.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    /// Number of elements, `None` for infinite fields.
    fn order(&self) -> Option<u64>;

    /// Uniform sample for finite fields; an integer in `[-bound, bound]`
    /// for infinite ones.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bound: u64) -> Self::Elem;

    /// Some `x` with `x^degree = -1`, if the field has one.
    fn root_of_minus_one(&self, degree: u32) -> Option<Self::Elem>;

    fn pow(&self, base: &Self::Elem, exp: u32) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..exp {
            acc = acc * base.clone();
        }
        acc
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} is too large")]
    TooLarge(u64),
    #[error("unknown field `{0}` (expected gf2, gf3, gf5, gf<p> or Q)")]
    Unknown(String),
}

/// The prime field GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p >= 1 << 62 {
            return Err(FieldError::TooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, value: u64) -> Fp {
        Fp { value: value % self.p, modulus: self.p }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Residue class modulo a prime. The modulus travels with the value.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn pow_u64(self, mut exp: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp { value: 1 % self.modulus, modulus: self.modulus };
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = (self.value as u128 + rhs.value as u128) % self.modulus as u128;
        Fp { value: s as u64, modulus: self.modulus }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = (self.value as u128 * rhs.value as u128) % self.modulus as u128;
        Fp { value: s as u64, modulus: self.modulus }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        let value = if self.value == 0 { 0 } else { self.modulus - self.value };
        Fp { value, modulus: self.modulus }
    }
}

impl Scalar for Fp {
    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn inverse(&self) -> Option<Fp> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow_u64(self.modulus - 2))
        }
    }

    fn is_one(&self) -> bool {
        self.value == 1 % self.modulus
    }
}

impl Field for PrimeField {
    type Elem = Fp;

    fn zero(&self) -> Fp {
        self.elem(0)
    }

    fn one(&self) -> Fp {
        self.elem(1)
    }

    fn from_int(&self, n: i64) -> Fp {
        let r = n.rem_euclid(self.p as i64);
        self.elem(r as u64)
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn name(&self) -> String {
        format!("GF({})", self.p)
    }

    fn elements(&self) -> Option<Vec<Fp>> {
        Some((0..self.p).map(|v| self.elem(v)).collect())
    }

    fn order(&self) -> Option<u64> {
        Some(self.p)
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, _bound: u64) -> Fp {
        self.elem(rng.gen_range(0..self.p))
    }

    fn root_of_minus_one(&self, degree: u32) -> Option<Fp> {
        let minus_one = -self.one();
        (0..self.p)
            .map(|v| self.elem(v))
            .find(|x| x.pow_u64(degree as u64) == minus_one)
    }
}

impl Scalar for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn inverse(&self) -> Option<BigRational> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

/// The field of rational numbers with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn name(&self) -> String {
        "Q".to_string()
    }

    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bound: u64) -> BigRational {
        let b = bound.min(i64::MAX as u64) as i64;
        self.from_int(rng.gen_range(-b..=b))
    }

    fn root_of_minus_one(&self, degree: u32) -> Option<BigRational> {
        // x^m = -1 has the rational solution -1 exactly when m is odd.
        if degree % 2 == 1 {
            Some(-self.one())
        } else {
            None
        }
    }
}

/// Runtime choice of field, as named on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Prime(u64),
    Rationals,
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rationals => 0,
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, FieldError> {
        let lower = s.trim().to_ascii_lowercase();
        if matches!(lower.as_str(), "q" | "rationals" | "qq") {
            return Ok(FieldSpec::Rationals);
        }
        let digits = lower
            .strip_prefix("gf")
            .or_else(|| lower.strip_prefix("f"))
            .ok_or_else(|| FieldError::Unknown(s.to_string()))?;
        let digits = digits.trim_start_matches('(').trim_end_matches(')');
        let p: u64 = digits.parse().map_err(|_| FieldError::Unknown(s.to_string()))?;
        PrimeField::new(p)?;
        Ok(FieldSpec::Prime(p))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

/// Smallest positive integer `d` such that `d * x` is integral for every `x`.
pub fn common_denominator(values: &[BigRational]) -> BigInt {
    use num_integer::Integer;
    values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
        .abs()
}
