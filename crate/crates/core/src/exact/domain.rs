//! Coefficient domains: the integers and prime fields F_p.
//!
//! Elements are carried as [`BigInt`] in both cases. Prime-field elements are
//! always kept in the canonical range `0..p`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime `p < 2^31`, checked at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p < (1 << 31) && is_prime(p) {
            Ok(Prime(p as u32))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0 as u64
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.get()
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic trial division; inputs are below 2^31.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut k = 3;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 2;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    Integers,
    PrimeField(Prime),
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Integers => write!(f, "Z"),
            Domain::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

impl Domain {
    pub fn prime_field(p: u64) -> Result<Self> {
        Ok(Domain::PrimeField(Prime::new(p)?))
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            Domain::Integers => None,
            Domain::PrimeField(p) => Some(p.get()),
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, Domain::PrimeField(_))
    }

    pub(crate) fn check_same(&self, other: &Domain) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DomainMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }

    pub fn reduce(&self, a: &BigInt) -> BigInt {
        match self {
            Domain::Integers => a.clone(),
            Domain::PrimeField(p) => a.mod_floor(&BigInt::from(p.get())),
        }
    }

    pub fn from_i64(&self, a: i64) -> BigInt {
        self.reduce(&BigInt::from(a))
    }

    pub fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a + b))
    }

    pub fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a - b))
    }

    pub fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a * b))
    }

    pub fn neg(&self, a: &BigInt) -> BigInt {
        self.reduce(&-a)
    }

    pub fn is_unit(&self, a: &BigInt) -> bool {
        match self {
            Domain::Integers => a.abs().is_one(),
            Domain::PrimeField(_) => !self.reduce(a).is_zero(),
        }
    }

    /// Multiplicative inverse of a unit.
    pub fn inv(&self, a: &BigInt) -> Option<BigInt> {
        match self {
            Domain::Integers => a.abs().is_one().then(|| a.clone()),
            Domain::PrimeField(p) => {
                let a = self.reduce(a);
                if a.is_zero() {
                    return None;
                }
                let m = BigInt::from(p.get());
                Some(a.modpow(&(&m - 2u32), &m))
            }
        }
    }

    /// Exact quotient `a / b`, assuming `b` divides `a` in the domain.
    pub(crate) fn div_exact(&self, a: &BigInt, b: &BigInt) -> BigInt {
        match self {
            Domain::Integers => {
                debug_assert!((a % b).is_zero(), "inexact division {a} / {b}");
                a / b
            }
            Domain::PrimeField(_) => {
                let inv = self.inv(b).expect("division by zero in prime field");
                self.mul(a, &inv)
            }
        }
    }
}
