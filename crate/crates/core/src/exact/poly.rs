//! Dense univariate polynomials over a [`Domain`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::domain::{Domain, Prime};
use crate::error::{Error, Result};

/// Dense polynomial, ascending coefficients (`coeffs[i]` multiplies `x^i`).
///
/// The coefficient list never ends in a zero, so the zero polynomial has an
/// empty list and the degree is `coeffs.len() - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    domain: Domain,
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new<I, T>(domain: Domain, coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let coeffs = coeffs.into_iter().map(|c| domain.reduce(&c.into())).collect();
        let mut p = Poly { domain, coeffs };
        p.trim();
        p
    }

    pub fn zero(domain: Domain) -> Self {
        Poly { domain, coeffs: Vec::new() }
    }

    pub fn one(domain: Domain) -> Self {
        Poly::new(domain, [1])
    }

    /// `c * x^k`
    pub fn monomial(domain: Domain, k: usize, c: impl Into<BigInt>) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Poly::new(domain, coeffs)
    }

    /// Monic polynomial `x^d + lower[d-1] x^{d-1} + ... + lower[0]`.
    pub fn monic_from_lower<I, T>(domain: Domain, lower: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut coeffs: Vec<BigInt> = lower.into_iter().map(Into::into).collect();
        coeffs.push(BigInt::one());
        Poly::new(domain, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Coefficients below the leading one, `(a_0, ..., a_{d-1})`.
    pub fn lower_coeffs(&self) -> &[BigInt] {
        match self.coeffs.split_last() {
            Some((_, rest)) => rest,
            None => &[],
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.domain.check_same(&other.domain)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.domain.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        let mut p = Poly { domain: self.domain, coeffs };
        p.trim();
        Ok(p)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            domain: self.domain,
            coeffs: self.coeffs.iter().map(|c| self.domain.neg(c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        Poly::new(self.domain, self.coeffs.iter().map(|a| a * c))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.domain.check_same(&other.domain)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.domain));
        }
        let mut acc = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                acc[i + j] += a * b;
            }
        }
        Ok(Poly::new(self.domain, acc))
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.domain);
        for _ in 0..k {
            out = out.mul(self).expect("same domain");
        }
        out
    }

    /// Horner evaluation at a domain element.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let acc = self
            .coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c);
        self.domain.reduce(&acc)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.domain,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i)),
        )
    }

    /// Division with remainder; the divisor's leading coefficient must be a
    /// unit of the domain.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.domain.check_same(&divisor.domain)?;
        let lead = divisor.leading().ok_or(Error::NonUnitDivisor)?;
        let lead_inv = self.domain.inv(lead).ok_or(Error::NonUnitDivisor)?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(self.domain), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = self.domain.mul(&rem[k + dd], &lead_inv);
            if !c.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = self.domain.sub(&rem[k + j], &(&c * b));
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(self.domain, quot), Poly::new(self.domain, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Whether `divisor` divides `self` with zero remainder.
    pub fn divisible_by(&self, divisor: &Poly) -> Result<bool> {
        Ok(self.rem(divisor)?.is_zero())
    }

    /// Scales to leading coefficient one; needs an invertible leading term.
    pub fn make_monic(&self) -> Result<Poly> {
        match self.leading() {
            None => Ok(self.clone()),
            Some(lead) => {
                let inv = self.domain.inv(lead).ok_or(Error::NonUnitDivisor)?;
                Ok(self.scale(&inv))
            }
        }
    }

    /// Monic greatest common divisor over a prime field.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.domain.check_same(&other.domain)?;
        if !self.domain.is_field() {
            return Err(Error::FieldRequired(self.domain.to_string()));
        }
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Base change `Z -> F_p`.
    pub fn reduce_mod(&self, p: Prime) -> Poly {
        Poly::new(Domain::PrimeField(p), self.coeffs.iter().cloned())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c < &BigInt::zero();
            let mag = if negative { -c } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{mono}")?;
        }
        Ok(())
    }
}
