//! Dense univariate polynomials over a [`Field`].
//!
//! Coefficients are stored in ascending degree order with no trailing
//! zeros; the zero polynomial is the empty vector and has no degree.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Poly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Self { field, coeffs }
    }

    pub fn from_i64(field: F, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: F) -> Self {
        Self {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: F) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// The monomial `t`.
    pub fn t(field: F) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    /// `t - λ`
    pub fn linear(field: F, lambda: &F::Elem) -> Self {
        Self::new(field, vec![-lambda.clone(), field.one()])
    }

    /// `(t - λ)^k`
    pub fn linear_power(field: F, lambda: &F::Elem, k: usize) -> Self {
        Self::linear(field, lambda).pow(k)
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(&self.field.one())
    }

    pub fn monic(&self) -> Result<Self> {
        let lc = self.leading().ok_or(Error::ZeroPolynomial)?;
        let inv = self.field.invert(lc)?;
        Ok(self.scale(&inv))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        Self::new(
            self.field,
            self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        )
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.field);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Quotient and remainder with `deg(rem) < deg(divisor)`.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let d = divisor.degree().ok_or(Error::DivisionByZero)?;
        let field = self.field;
        let lc_inv = field.invert(divisor.leading().expect("nonzero"))?;
        let mut rem = self.coeffs.clone();
        let Some(n) = self.degree() else {
            return Ok((Self::zero(field), Self::zero(field)));
        };
        if n < d {
            return Ok((Self::zero(field), self.clone()));
        }
        let mut quot = vec![field.zero(); n - d + 1];
        for k in (0..=n - d).rev() {
            let c = rem[k + d].clone() * lc_inv.clone();
            if field.is_zero(&c) {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            quot[k] = c;
        }
        rem.truncate(d);
        Ok((Self::new(field, quot), Self::new(field, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Exact division; fails if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(Error::AssertionFailure(format!(
                "{divisor} does not divide {self}"
            )));
        }
        Ok(q)
    }

    /// Largest `k` with `(t - λ)^k` dividing `self`.
    pub fn multiplicity_at(&self, lambda: &F::Elem) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.synthetic_div(lambda);
            if !self.field.is_zero(&r) {
                return Ok(k);
            }
            k += 1;
            cur = q;
        }
    }

    /// Division by `t - λ`: returns the quotient and `self(λ)`.
    fn synthetic_div(&self, lambda: &F::Elem) -> (Self, F::Elem) {
        let field = self.field;
        if self.coeffs.is_empty() {
            return (Self::zero(field), field.zero());
        }
        let mut out = vec![field.zero(); self.coeffs.len() - 1];
        let mut carry = field.zero();
        for i in (0..self.coeffs.len()).rev() {
            let val = self.coeffs[i].clone() + carry.clone() * lambda.clone();
            if i == 0 {
                return (Self::new(field, out), val);
            }
            out[i - 1] = val.clone();
            carry = val;
        }
        unreachable!()
    }

    /// Factor a monic polynomial into linear factors over the working field.
    ///
    /// Candidate roots come from [`Field::root_candidates`]; each root is
    /// deflated out completely. Whatever remains must be constant, otherwise
    /// `NotSplit` reports its degree.
    pub fn split_roots(&self) -> Result<RootMultiset<F>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        let mut rest = self.clone();
        let mut entries = Vec::new();
        for cand in self.field.root_candidates(&self.coeffs) {
            if rest.degree() == Some(0) {
                break;
            }
            let mut mult = 0;
            loop {
                let (q, r) = rest.synthetic_div(&cand);
                if !self.field.is_zero(&r) {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                entries.push((cand, mult));
            }
        }
        match rest.degree() {
            Some(0) => Ok(RootMultiset::new(entries)),
            Some(d) => Err(Error::NotSplit(d)),
            None => unreachable!("deflation of a nonzero polynomial"),
        }
    }

    /// Coefficients `(a_0, …, a_{n-1})` with
    /// `self = Σ a_i (t - λ)^{n-1-i}`; `a_0` multiplies the highest power.
    pub fn taylor_coeffs(&self, lambda: &F::Elem, n: usize) -> Result<Vec<F::Elem>> {
        if let Some(d) = self.degree() {
            if d + 1 > n {
                return Err(Error::DegreeTooLarge {
                    degree: d,
                    max: n.saturating_sub(1),
                });
            }
        }
        // Repeated synthetic division yields the expansion in ascending powers.
        let mut ascending = Vec::with_capacity(n);
        let mut cur = self.clone();
        for _ in 0..n {
            let (q, r) = cur.synthetic_div(lambda);
            ascending.push(r);
            cur = q;
        }
        ascending.reverse();
        Ok(ascending)
    }

    /// Extended Euclid: `(d, s, u)` with `s·self + u·other = d`, `d` the monic gcd.
    pub fn ext_gcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        let field = self.field;
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(field), Self::zero(field));
        let (mut u0, mut u1) = (Self::zero(field), Self::one(field));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let u = &u0 - &(&q * &u1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            u0 = std::mem::replace(&mut u1, u);
        }
        let inv = field.invert(r0.leading().expect("nonzero gcd"))?;
        Ok((r0.scale(&inv), s0.scale(&inv), u0.scale(&inv)))
    }

    /// Inverse of `self` modulo `modulus`; the two must be coprime.
    pub fn inverse_mod(&self, modulus: &Self) -> Result<Self> {
        let (d, s, _) = self.ext_gcd(modulus)?;
        if d.degree() != Some(0) {
            return Err(Error::AssertionFailure(format!(
                "{self} is not invertible modulo {modulus}"
            )));
        }
        s.rem(modulus)
    }

    /// Numerators `h_i` with `h / ∏(t-λ_i)^{n_i} = Σ h_i / (t-λ_i)^{n_i}` and
    /// `deg h_i < n_i`.
    ///
    /// Each `h_i` is `h · s_i mod (t-λ_i)^{n_i}`, where `s_i` inverts the
    /// cofactor `∏_{j≠i} (t-λ_j)^{n_j}`. The reconstruction
    /// `Σ h_i · cofactor_i = h` is checked before returning.
    pub fn partial_fractions(&self, denoms: &RootMultiset<F>) -> Result<Vec<Self>> {
        let field = self.field;
        let entries = denoms.entries();
        for (i, (li, _)) in entries.iter().enumerate() {
            if entries[..i].iter().any(|(lj, _)| lj == li) {
                return Err(Error::DuplicateRoot(field.render(li)));
            }
        }
        let total: usize = entries.iter().map(|(_, n)| n).sum();
        if let Some(d) = self.degree() {
            if d >= total {
                return Err(Error::DegreeTooLarge {
                    degree: d,
                    max: total.saturating_sub(1),
                });
            }
        }
        let powers: Vec<Self> = entries
            .iter()
            .map(|(l, n)| Self::linear_power(field, l, *n))
            .collect();
        let cofactors: Vec<Self> = (0..powers.len())
            .map(|i| {
                powers
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .fold(Self::one(field), |acc, (_, p)| &acc * p)
            })
            .collect();

        let mut parts = Vec::with_capacity(powers.len());
        for (power, cofactor) in powers.iter().zip(&cofactors) {
            let s = cofactor.inverse_mod(power)?;
            parts.push((self * &s).rem(power)?);
        }

        // The polynomial part of h / ∏ must vanish since deg h < Σ n_i.
        let rebuilt = parts
            .iter()
            .zip(&cofactors)
            .fold(Self::zero(field), |acc, (h, c)| &acc + &(h * c));
        if rebuilt != *self {
            return Err(Error::AssertionFailure(
                "partial fraction numerators do not reconstruct h".into(),
            ));
        }
        Ok(parts)
    }

    pub fn render_coeffs(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| self.field.render(c)).collect()
    }

    pub fn parse_coeffs(field: F, coeffs: &[String]) -> Result<Self> {
        let parsed = coeffs
            .iter()
            .map(|c| field.parse(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(field, parsed))
    }
}

impl<F: Field> PartialOrd for Poly<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree, then by coefficients from the top down.
impl<F: Field> Ord for Poly<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let c = self.field.render(c);
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{i}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            self.field,
            (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect(),
        )
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            self.field,
            (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect(),
        )
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::new(self.field, self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        let field = self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(field);
        }
        let mut out = vec![field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(field, out)
    }
}

/// Distinct roots with multiplicities.
#[derive(Clone, PartialEq, Eq)]
pub struct RootMultiset<F: Field> {
    entries: Vec<(F::Elem, usize)>,
}

impl<F: Field> RootMultiset<F> {
    /// Entries are kept in canonical scalar order.
    pub fn new(mut entries: Vec<(F::Elem, usize)>) -> Self {
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        Self { entries }
    }

    /// Keeps the caller's order; duplicates are rejected later by consumers.
    pub fn from_ordered(entries: Vec<(F::Elem, usize)>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[(F::Elem, usize)] {
        &self.entries
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn multiplicity(&self, lambda: &F::Elem) -> usize {
        self.entries
            .iter()
            .find(|(l, _)| l == lambda)
            .map_or(0, |(_, m)| *m)
    }

    /// `∏ (t - λ)^m`
    pub fn product(&self, field: F) -> Poly<F> {
        self.entries.iter().fold(Poly::one(field), |acc, (l, m)| {
            &acc * &Poly::linear_power(field, l, *m)
        })
    }
}

impl<F: Field> fmt::Debug for RootMultiset<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries.iter().map(|(l, m)| (l.to_string(), m)))
            .finish()
    }
}
