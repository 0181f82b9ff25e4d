//! Exact scalar fields: the rationals and prime fields `F_p`.
//!
//! A [`Field`] is a small `Copy` handle that knows how to build constants,
//! invert, parse and enumerate its elements. Elements themselves carry the
//! usual arithmetic operators, so polynomial and matrix code can be written
//! once and instantiated for either field.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible prime modulus. Residues are kept below this so that a
/// product of two residues fits in a `u64`.
pub const MAX_PRIME: u64 = 1 << 31;

#[allow(clippy::wrong_self_convention)]
pub trait Field: Copy + Debug + PartialEq + Eq + Hash + Send + Sync + 'static {
    type Elem: Clone
        + Debug
        + Display
        + PartialEq
        + Eq
        + Ord
        + Hash
        + Send
        + Sync
        + Add<Output = Self::Elem>
        + Sub<Output = Self::Elem>
        + Mul<Output = Self::Elem>
        + Neg<Output = Self::Elem>;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, value: i64) -> Self::Elem;
    fn from_bigint(&self, value: &BigInt) -> Self::Elem;

    /// Multiplicative inverse; fails on zero.
    fn invert(&self, x: &Self::Elem) -> Result<Self::Elem>;

    /// Parse `int` or `int/int`, with an optional leading minus sign.
    fn parse(&self, text: &str) -> Result<Self::Elem>;

    /// Canonical text form; `parse(render(x)) == x`.
    fn render(&self, x: &Self::Elem) -> String {
        x.to_string()
    }

    /// All elements in canonical order, or `None` for an infinite field.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    /// Every possible root of the polynomial with the given ascending
    /// coefficients. The returned set must contain all roots in the field;
    /// it may contain non-roots.
    fn root_candidates(&self, coeffs: &[Self::Elem]) -> Vec<Self::Elem>;

    fn is_zero(&self, x: &Self::Elem) -> bool {
        *x == self.zero()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(a.clone() * self.invert(b)?)
    }
}

/// Serializable description of the working field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldSpec {
    Rationals,
    PrimeField { p: u64 },
}

impl FieldSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::PrimeField { p } => PrimeField::new(p).map(|_| ()),
        }
    }
}

impl Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField { p } => write!(f, "F_{p}"),
        }
    }
}

/// Parse a scalar for a runtime-selected field, returning its canonical text.
pub fn parse_scalar(text: &str, spec: FieldSpec) -> Result<String> {
    match spec {
        FieldSpec::Rationals => Rationals.parse(text).map(|x| Rationals.render(&x)),
        FieldSpec::PrimeField { p } => {
            let field = PrimeField::new(p)?;
            field.parse(text).map(|x| field.render(&x))
        }
    }
}

/// Split `text` into numerator and optional denominator integers.
fn parse_fraction(text: &str) -> Result<(BigInt, Option<BigInt>)> {
    let bad = || Error::MalformedScalar(text.to_string());
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (trimmed, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let numer: BigInt = num.parse().map_err(|_| bad())?;
    let denom = match den {
        None => None,
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            Some(d.parse::<BigInt>().map_err(|_| bad())?)
        }
    };
    Ok((numer, denom))
}

/// The rational numbers with arbitrary-precision numerator and denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
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

    fn from_i64(&self, value: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(value))
    }

    fn from_bigint(&self, value: &BigInt) -> BigRational {
        BigRational::from_integer(value.clone())
    }

    fn invert(&self, x: &BigRational) -> Result<BigRational> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(x.recip())
    }

    fn parse(&self, text: &str) -> Result<BigRational> {
        let (numer, denom) = parse_fraction(text)?;
        match denom {
            None => Ok(BigRational::from_integer(numer)),
            Some(d) if d.is_zero() => Err(Error::DivisionByZero),
            // Ratio::new reduces to lowest terms with a positive denominator.
            Some(d) => Ok(BigRational::new(numer, d)),
        }
    }

    fn render(&self, x: &BigRational) -> String {
        if x.denom().is_one() {
            x.numer().to_string()
        } else {
            format!("{}/{}", x.numer(), x.denom())
        }
    }

    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }

    fn root_candidates(&self, coeffs: &[BigRational]) -> Vec<BigRational> {
        rational_root_candidates(coeffs)
    }
}

/// Candidates `±a/b` with `a | c_0` and `b | c_lead` after clearing
/// denominators and content; zero is included when `c_0 = 0`.
fn rational_root_candidates(coeffs: &[BigRational]) -> Vec<BigRational> {
    if coeffs.len() < 2 {
        return Vec::new();
    }
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let ints: Vec<BigInt> = ints.iter().map(|c| c / &content).collect();

    let mut out = Vec::new();
    // Strip zero roots so the constant term is nonzero.
    let first = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if first > 0 {
        out.push(BigRational::zero());
    }
    let constant = &ints[first];
    let lead = ints.last().expect("nonempty");
    if constant.is_zero() || first + 1 == ints.len() {
        return out;
    }
    let numerators = divisors(&constant.abs());
    let denominators = divisors(&lead.abs());
    for a in &numerators {
        for b in &denominators {
            let r = BigRational::new(a.clone(), b.clone());
            out.push(r.clone());
            out.push(-r);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Positive divisors of a positive integer by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let other = n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..=MAX_PRIME).contains(&p) {
            return Err(Error::InvalidField(format!(
                "modulus {p} outside [2, 2^31]"
            )));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("modulus {p} is not prime")));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, value: u64) -> Fp {
        Fp {
            value: value % self.p,
            modulus: self.p,
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A residue modulo a prime, always reduced into `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
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

    fn pow(self, mut exp: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp {
            value: 1 % self.modulus,
            modulus: self.modulus,
        };
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

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = self.value + rhs.value;
        Fp {
            value: if s >= self.modulus {
                s - self.modulus
            } else {
                s
            },
            modulus: self.modulus,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let value = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + self.modulus - rhs.value
        };
        Fp {
            value,
            modulus: self.modulus,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp {
            value: self.value * rhs.value % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }
}

impl Field for PrimeField {
    type Elem = Fp;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField { p: self.p }
    }

    fn zero(&self) -> Fp {
        self.elem(0)
    }

    fn one(&self) -> Fp {
        self.elem(1)
    }

    fn from_i64(&self, value: i64) -> Fp {
        self.elem(value.rem_euclid(self.p as i64) as u64)
    }

    fn from_bigint(&self, value: &BigInt) -> Fp {
        let r = value.mod_floor(&BigInt::from(self.p));
        self.elem(r.to_u64().expect("residue fits in u64"))
    }

    fn invert(&self, x: &Fp) -> Result<Fp> {
        if x.value == 0 {
            return Err(Error::DivisionByZero);
        }
        // Fermat: x^(p-2) = x^-1.
        Ok(x.pow(self.p - 2))
    }

    fn parse(&self, text: &str) -> Result<Fp> {
        let (numer, denom) = parse_fraction(text)?;
        let n = self.from_bigint(&numer);
        match denom {
            None => Ok(n),
            Some(d) if d.is_zero() => Err(Error::DivisionByZero),
            Some(d) => {
                let d = self.from_bigint(&d);
                Ok(n * self.invert(&d)?)
            }
        }
    }

    fn elements(&self) -> Option<Vec<Fp>> {
        Some((0..self.p).map(|v| self.elem(v)).collect())
    }

    fn root_candidates(&self, _coeffs: &[Fp]) -> Vec<Fp> {
        (0..self.p).map(|v| self.elem(v)).collect()
    }
}
