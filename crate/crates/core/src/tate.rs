//! Grothendieck-ring classes as Laurent polynomials in the Lefschetz class `L`.
//!
//! `[A^n] = L^n`, `[P^n] = 1 + L + ... + L^n`, the Gysin scissor relation
//! `[U] = [X] - L^c [Z]`, and the stratification recursion for
//! `[Poly_ν^{d,m}]`.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exact::LaurentPoly;
use crate::schemes::FamilySpec;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TateClass(LaurentPoly);

impl TateClass {
    pub fn zero() -> Self {
        TateClass(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        TateClass(LaurentPoly::one())
    }

    /// `L^k`
    pub fn lefschetz_pow(k: i64) -> Self {
        TateClass(LaurentPoly::monomial(k, 1))
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        TateClass(p)
    }

    pub fn as_laurent(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn add(&self, other: &TateClass) -> TateClass {
        TateClass(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &TateClass) -> TateClass {
        TateClass(self.0.sub(&other.0))
    }

    pub fn mul(&self, other: &TateClass) -> TateClass {
        TateClass(self.0.mul(&other.0))
    }

    /// Multiplies by `L^k`.
    pub fn times_lefschetz(&self, k: i64) -> TateClass {
        TateClass(self.0.shift(k))
    }

    pub fn specialize(&self, q: &BigInt) -> Result<BigInt> {
        self.0.eval(q)
    }
}

impl fmt::Display for TateClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn class_affine(n: u32) -> TateClass {
    TateClass::lefschetz_pow(n as i64)
}

pub fn class_projective(n: u32) -> TateClass {
    TateClass(LaurentPoly::from_terms((0..=n as i64).map(|k| (k, 1))))
}

/// Class of the open complement `U = X \ Z` with `Z` of codimension `codim`.
pub fn gysin_class(x: &TateClass, z: &TateClass, codim: u32) -> TateClass {
    x.sub(&z.times_lefschetz(codim as i64))
}

/// Point count realization: substitute `L = q`.
pub fn specialize(c: &TateClass, q: i64) -> Result<BigInt> {
    c.specialize(&BigInt::from(q))
}

/// `[Poly_ν^{d,m}]` from the stratification of `A^{dm}` by the maximal
/// `h` with `h^ν` dividing every entry:
///
/// `L^{dm} = Σ_{k ≥ 0, kν ≤ d} L^k · [Poly_ν^{d-kν,m}]`.
///
/// Solved bottom-up along `d mod ν, d mod ν + ν, ..., d`; for `d < ν` only
/// the `k = 0` stratum exists and the class is `L^{dm}`.
pub fn class_poly_family(spec: &FamilySpec) -> TateClass {
    family_chain(spec).pop().expect("chain contains d itself")
}

/// Classes for degrees `d mod ν, d mod ν + ν, ..., d` in that order.
fn family_chain(spec: &FamilySpec) -> Vec<TateClass> {
    let nu = spec.nu as usize;
    let m = spec.m as i64;
    let start = spec.d as usize % nu;
    let mut chain: Vec<TateClass> = Vec::new();
    for deg in (start..=spec.d as usize).step_by(nu) {
        let mut class = class_affine(0).times_lefschetz(deg as i64 * m);
        // chain[i] is degree start + i·ν, so stratum k uses chain[len - k]
        for k in 1..=chain.len() {
            let lower = &chain[chain.len() - k];
            class = class.sub(&lower.times_lefschetz(k as i64));
        }
        chain.push(class);
    }
    chain
}

/// Right-hand side `Σ_k L^k [Poly_ν^{d-kν,m}]` of the recursion, for checking
/// that it reproduces `L^{dm}`.
pub fn stratification_total(spec: &FamilySpec) -> TateClass {
    let chain = family_chain(spec);
    chain
        .iter()
        .rev()
        .enumerate()
        .fold(TateClass::zero(), |acc, (k, c)| acc.add(&c.times_lefschetz(k as i64)))
}
