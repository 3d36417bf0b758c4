//! Exact coefficient fields: a large prime field and the rationals.
//!
//! Everything downstream is generic over [`Field`]. Elements are plain values
//! and the field object carries whatever context the arithmetic needs (the
//! modulus for `F_p`, nothing for `Q`).

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, DenseMatrix};

/// Default modulus, the Mersenne prime 2^31 - 1.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Random sampling needs a field much larger than the configurations we draw.
pub const MIN_PRIME: u64 = 1_000_000;

/// Moduli are kept below 2^32 so primality can be settled by trial division.
pub const MAX_PRIME: u64 = u32::MAX as u64;

/// Half-width of the integer box used for random rational coordinates.
pub const RATIONAL_SAMPLE_BOUND: i64 = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is outside the supported range ({MIN_PRIME}, {MAX_PRIME}]")]
    PrimeOutOfRange(u64),
    #[error("cannot parse scalar {0:?}")]
    BadScalar(String),
    #[error("division by zero while parsing {0:?}")]
    ZeroDenominator(String),
}

/// Serializable description of a coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum FieldSpec {
    #[serde(rename = "fp")]
    PrimeField { p: u64 },
    #[serde(rename = "q")]
    Rationals,
}

impl FieldSpec {
    pub fn validate(&self) -> Result<(), FieldError> {
        match *self {
            FieldSpec::PrimeField { p } => PrimeField::new(p).map(|_| ()),
            FieldSpec::Rationals => Ok(()),
        }
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::PrimeField { p: DEFAULT_PRIME }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Arithmetic of an exact field. Implementations must be exact: no rounding,
/// no overflow.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn spec(&self) -> FieldSpec;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Parses a decimal integer or a fraction `"p/q"`.
    fn parse(&self, s: &str) -> Result<Self::Elem, FieldError>;
    /// Canonical decimal rendering, accepted back by [`Field::parse`].
    fn format(&self, a: &Self::Elem) -> String;

    /// Coordinate sampler used by the random scheme generators: uniform for
    /// a prime field, small integers for the rationals.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Reduced row-echelon form together with the pivot columns.
    fn rref(&self, m: &DenseMatrix<Self::Elem>) -> (DenseMatrix<Self::Elem>, Vec<usize>) {
        linalg::gauss_jordan(self, m)
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

fn split_fraction(s: &str) -> Result<(BigInt, BigInt), FieldError> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| FieldError::BadScalar(s.to_string()))?;
    let den: BigInt = den.parse().map_err(|_| FieldError::BadScalar(s.to_string()))?;
    if den.is_zero() {
        return Err(FieldError::ZeroDenominator(s.to_string()));
    }
    Ok((num, den))
}

/// The prime field `Z/pZ`, elements stored as canonical residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p <= MIN_PRIME || p > MAX_PRIME {
            return Err(FieldError::PrimeOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_big(&self, v: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = ((v % &p) + &p) % &p;
        r.to_u64().expect("residue fits in u64")
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField { p: self.p }
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }

    fn parse(&self, s: &str) -> Result<u64, FieldError> {
        let (num, den) = split_fraction(s)?;
        let d = self.reduce_big(&den);
        let di = self.inv(&d).ok_or_else(|| FieldError::ZeroDenominator(s.to_string()))?;
        Ok(self.mul(&self.reduce_big(&num), &di))
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
}

/// The rationals with arbitrary-precision numerators and denominators.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn parse(&self, s: &str) -> Result<BigRational, FieldError> {
        let (num, den) = split_fraction(s)?;
        Ok(BigRational::new(num, den))
    }

    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND))
    }

    fn rref(&self, m: &DenseMatrix<BigRational>) -> (DenseMatrix<BigRational>, Vec<usize>) {
        linalg::bareiss_rref(m)
    }
}

/// Clears denominators of a rational row, returning primitive integers.
pub(crate) fn integer_row(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    let ints: Vec<BigInt> = row.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints
        .iter()
        .fold(BigInt::zero(), |acc, x| num_integer::Integer::gcd(&acc, x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}
