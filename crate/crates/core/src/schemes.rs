//! Resultants, Bézout matrices, the membership predicates of the schemes
//! `F_d`, `C_d` and `Poly_ν^{d,m}`, and the scanning map `f ↦ (f, f + f')`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Domain, ExactMatrix, Poly, Prime};

/// Parameters `(ν, m, d)` of the family `Poly_ν^{d,m}`: `m`-tuples of monic
/// degree-`d` polynomials whose common factor has no root of multiplicity
/// `≥ ν`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawFamily")]
pub struct FamilySpec {
    pub nu: u32,
    pub m: u32,
    pub d: u32,
}

#[derive(Deserialize)]
struct RawFamily {
    nu: u32,
    m: u32,
    d: u32,
}

impl TryFrom<RawFamily> for FamilySpec {
    type Error = Error;
    fn try_from(r: RawFamily) -> Result<Self> {
        FamilySpec::new(r.nu, r.m, r.d)
    }
}

impl FamilySpec {
    pub fn new(nu: u32, m: u32, d: u32) -> Result<Self> {
        if nu == 0 || m == 0 {
            return Err(Error::Precondition(format!(
                "family needs nu >= 1 and m >= 1, got nu={nu}, m={m}"
            )));
        }
        Ok(FamilySpec { nu, m, d })
    }

    /// `F_d = Poly_1^{d,2}`: coprime pairs.
    pub fn coprime_pairs(d: u32) -> Self {
        FamilySpec { nu: 1, m: 2, d }
    }

    /// `C_d = Poly_2^{d,1}`: squarefree polynomials.
    pub fn squarefree(d: u32) -> Self {
        FamilySpec { nu: 2, m: 1, d }
    }

    /// Dimension `d·m` of the ambient affine space.
    pub fn ambient_dim(&self) -> u32 {
        self.d * self.m
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[nu={},m={},d={}]", self.nu, self.m, self.d)
    }
}

/// A validated point of `Poly_ν^{d,m}` over a prime field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemePoint {
    family: FamilySpec,
    polys: Vec<Poly>,
}

impl SchemePoint {
    pub fn new(family: FamilySpec, polys: Vec<Poly>) -> Result<Self> {
        if !in_poly(&polys, &family)? {
            return Err(Error::Precondition(format!("tuple is not a point of {family}")));
        }
        Ok(SchemePoint { family, polys })
    }

    pub fn family(&self) -> FamilySpec {
        self.family
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn coordinates(&self) -> Vec<BigInt> {
        coordinates(&self.polys)
    }
}

/// Sylvester matrix with the `f`-rows first: `deg g` shifted copies of the
/// descending coefficients of `f`, then `deg f` shifted copies of `g`.
pub fn sylvester_matrix(f: &Poly, g: &Poly) -> Result<ExactMatrix> {
    f.domain().check_same(&g.domain())?;
    let (Some(df), Some(dg)) = (f.degree(), g.degree()) else {
        return Err(Error::ZeroPolynomial);
    };
    if df == 0 && dg == 0 {
        return Err(Error::BothConstant);
    }
    let n = df + dg;
    let mut m = ExactMatrix::zeros(f.domain(), n, n);
    let mut row = 0;
    for (poly, copies) in [(f, dg), (g, df)] {
        for shift in 0..copies {
            for (k, c) in poly.coeffs().iter().rev().enumerate() {
                m.set(row, shift + k, c.clone());
            }
            row += 1;
        }
    }
    Ok(m)
}

/// Determinant of the Sylvester matrix. For monic `f` this is the product of
/// `g(α)` over the roots `α` of `f`.
pub fn resultant(f: &Poly, g: &Poly) -> Result<BigInt> {
    sylvester_matrix(f, g)?.det()
}

/// Coefficient matrix of the Cayley quotient `(f(x)g(y) - f(y)g(x)) / (x - y)`:
/// entry `(i, j)` multiplies `x^i y^j`.
pub fn bezout_matrix(f: &Poly, g: &Poly) -> Result<ExactMatrix> {
    f.domain().check_same(&g.domain())?;
    if !f.is_monic() || !g.is_monic() {
        return Err(Error::NotMonic);
    }
    let (df, dg) = (f.degree().unwrap_or(0), g.degree().unwrap_or(0));
    if df != dg {
        return Err(Error::UnequalDegrees(df, dg));
    }
    if df == 0 {
        return Err(Error::Precondition("Bézout matrix needs degree >= 1".into()));
    }
    let dom = f.domain();
    let mut acc = vec![vec![BigInt::zero(); df]; df];
    // x^a y^b - x^b y^a = (x - y) x^b y^b (x^{a-b-1} + x^{a-b-2} y + ... + y^{a-b-1})
    for a in 1..=df {
        for b in 0..a {
            let c = f.coeff(a) * g.coeff(b) - f.coeff(b) * g.coeff(a);
            if c.is_zero() {
                continue;
            }
            for t in 0..a - b {
                acc[b + t][a - 1 - t] += &c;
            }
        }
    }
    ExactMatrix::from_rows(dom, &acc)
}

fn require_monic(f: &Poly) -> Result<usize> {
    if f.is_monic() {
        Ok(f.degree().expect("monic is nonzero"))
    } else {
        Err(Error::NotMonic)
    }
}

/// The scanning map `f ↦ (f, f + f')` on monic polynomials of degree `≥ 1`.
pub fn scan(f: &Poly) -> Result<(Poly, Poly)> {
    let d = require_monic(f)?;
    if d == 0 {
        return Err(Error::Precondition("scan needs degree >= 1".into()));
    }
    let g = f.add(&f.derivative())?;
    Ok((f.clone(), g))
}

/// Affine coordinates of a tuple of monic polynomials: the non-leading
/// coefficients of each entry, concatenated in order.
pub fn coordinates(polys: &[Poly]) -> Vec<BigInt> {
    polys.iter().flat_map(|p| p.lower_coeffs().iter().cloned()).collect()
}

fn check_pair(f: &Poly, g: &Poly) -> Result<usize> {
    f.domain().check_same(&g.domain())?;
    let df = require_monic(f)?;
    let dg = require_monic(g)?;
    if df != dg {
        return Err(Error::UnequalDegrees(df, dg));
    }
    Ok(df)
}

/// Membership in `F_d`: the resultant is nonzero over a field and a unit over Z.
/// The degree-0 pair `(1, 1)` is the single point of `F_0`.
pub fn in_f(f: &Poly, g: &Poly) -> Result<bool> {
    if check_pair(f, g)? == 0 {
        return Ok(true);
    }
    Ok(f.domain().is_unit(&resultant(f, g)?))
}

/// Membership in `C_d`.
///
/// Over a prime field this is `gcd(f, f') = 1`; over Z it asks that
/// `Res(f, f')` be a unit. Neither route goes through [`scan`], which keeps
/// `in_c(f) == in_f(scan(f))` a checkable statement.
pub fn in_c(f: &Poly) -> Result<bool> {
    let d = require_monic(f)?;
    if d <= 1 {
        return Ok(true);
    }
    let df = f.derivative();
    match f.domain() {
        Domain::PrimeField(_) => Ok(f.gcd(&df)?.is_one()),
        Domain::Integers => Ok(Domain::Integers.is_unit(&resultant(f, &df)?)),
    }
}

pub const MAX_IRREDUCIBLE_PRIME: u64 = 7;
pub const MAX_IRREDUCIBLE_DEGREE: usize = 8;

/// All monic polynomials of degree `n` over `F_p`, lexicographic in
/// `(a_0, ..., a_{n-1})` with `a_0` varying fastest.
fn monic_of_degree(p: Prime, n: usize) -> impl Iterator<Item = Poly> {
    let dom = Domain::PrimeField(p);
    let q = p.get();
    (0..q.pow(n as u32)).map(move |mut idx| {
        let lower: Vec<u64> = (0..n)
            .map(|_| {
                let c = idx % q;
                idx /= q;
                c
            })
            .collect();
        Poly::monic_from_lower(dom, lower)
    })
}

/// Monic irreducibles over `F_p` of degree `1..=max_deg`, by trial division.
///
/// A reducible monic of degree `n` has a monic irreducible factor of degree
/// at most `n/2`, so only the irreducibles already found are tried as
/// divisors.
pub fn enumerate_irreducibles(p: u64, max_deg: usize) -> Result<Vec<Poly>> {
    let prime = Prime::new(p)?;
    if p > MAX_IRREDUCIBLE_PRIME || max_deg > MAX_IRREDUCIBLE_DEGREE {
        return Err(Error::Bounds(format!(
            "irreducible enumeration limited to p <= {MAX_IRREDUCIBLE_PRIME}, degree <= {MAX_IRREDUCIBLE_DEGREE}; got p={p}, degree={max_deg}"
        )));
    }
    let mut found: Vec<Poly> = Vec::new();
    for n in 1..=max_deg {
        let divisors: Vec<Poly> = found
            .iter()
            .filter(|q| q.degree().unwrap() <= n / 2)
            .cloned()
            .collect();
        for cand in monic_of_degree(prime, n) {
            let mut irreducible = true;
            for q in &divisors {
                if cand.divisible_by(q)? {
                    irreducible = false;
                    break;
                }
            }
            if irreducible {
                found.push(cand);
            }
        }
    }
    Ok(found)
}

/// Whether some irreducible `π` has `π^ν | g`; over the perfect field `F_p`
/// this is a root of multiplicity `≥ ν` in the algebraic closure.
pub fn has_mult_root(g: &Poly, nu: u32) -> Result<bool> {
    let Domain::PrimeField(p) = g.domain() else {
        return Err(Error::FieldRequired(g.domain().to_string()));
    };
    let d = require_monic(g)?;
    if nu == 0 {
        return Err(Error::Precondition("nu must be >= 1".into()));
    }
    if nu == 1 {
        return Ok(d >= 1);
    }
    let max_factor_deg = d / nu as usize;
    if max_factor_deg == 0 {
        return Ok(false);
    }
    for pi in enumerate_irreducibles(p.get(), max_factor_deg)? {
        if g.divisible_by(&pi.pow(nu))? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Membership in `Poly_ν^{d,m}` over a prime field: the gcd of the tuple has
/// no root of multiplicity `≥ ν`. For `(ν, m) = (1, 2)` this is coprimality,
/// for `(2, 1)` squarefreeness.
pub fn in_poly(tuple: &[Poly], spec: &FamilySpec) -> Result<bool> {
    if tuple.len() != spec.m as usize {
        return Err(Error::Precondition(format!(
            "expected {} polynomials, got {}",
            spec.m,
            tuple.len()
        )));
    }
    let dom = tuple[0].domain();
    if !dom.is_field() {
        return Err(Error::FieldRequired(dom.to_string()));
    }
    for f in tuple {
        dom.check_same(&f.domain())?;
        if require_monic(f)? != spec.d as usize {
            return Err(Error::Precondition(format!(
                "expected degree {}, got {}",
                spec.d,
                f.degree().unwrap()
            )));
        }
    }
    let mut h = tuple[0].clone();
    for f in &tuple[1..] {
        h = h.gcd(f)?;
    }
    Ok(!has_mult_root(&h, spec.nu)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn z(c: &[i64]) -> Poly {
        Poly::new(Domain::Integers, c.iter().copied())
    }

    fn fp(p: u64, c: &[i64]) -> Poly {
        Poly::new(Domain::prime_field(p).unwrap(), c.iter().copied())
    }

    fn rows(m: &ExactMatrix) -> Vec<Vec<i64>> {
        m.to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|c| i64::try_from(c).unwrap()).collect())
            .collect()
    }

    #[test]
    fn sylvester_layout() {
        assert_eq!(
            rows(&sylvester_matrix(&z(&[-2, 1]), &z(&[-5, 1])).unwrap()),
            vec![vec![1, -2], vec![1, -5]]
        );
        assert_eq!(
            rows(&sylvester_matrix(&z(&[1, 0, 1]), &z(&[-1, 0, 1])).unwrap()),
            vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1], vec![1, 0, -1, 0], vec![0, 1, 0, -1]]
        );
        assert_eq!(
            rows(&sylvester_matrix(&z(&[0, 0, 1]), &z(&[0, 1])).unwrap()),
            vec![vec![1, 0, 0], vec![1, 0, 0], vec![0, 1, 0]]
        );
        assert!(matches!(sylvester_matrix(&z(&[3]), &z(&[2])), Err(Error::BothConstant)));
        assert!(matches!(sylvester_matrix(&z(&[]), &z(&[0, 1])), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn resultant_examples() {
        // root products: (1-4)(1-4) and (i^2-1)((-i)^2-1)
        assert_eq!(resultant(&z(&[-1, 0, 1]), &z(&[-4, 0, 1])).unwrap(), BigInt::from(9));
        assert_eq!(resultant(&z(&[0, 1]), &z(&[0, 1])).unwrap(), BigInt::zero());
        assert_eq!(resultant(&z(&[1, 0, 1]), &z(&[-1, 0, 1])).unwrap(), BigInt::from(4));
        // constant second argument: c^{deg f}
        assert_eq!(resultant(&z(&[5, 0, 1]), &z(&[3])).unwrap(), BigInt::from(9));
    }

    #[test]
    fn bezout_examples() {
        let b = bezout_matrix(&z(&[1, 0, 1]), &z(&[-1, 0, 1])).unwrap();
        assert_eq!(rows(&b), vec![vec![0, -2], vec![-2, 0]]);
        assert_eq!(b.det().unwrap(), BigInt::from(-4));
        for (a, bb) in [(3i64, 7i64), (-2, 5), (0, 0)] {
            let m = bezout_matrix(&z(&[-a, 1]), &z(&[-bb, 1])).unwrap();
            assert_eq!(rows(&m), vec![vec![a - bb]]);
        }
        let f = z(&[2, -1, 3, 1]);
        let m = bezout_matrix(&f, &f).unwrap();
        assert!(m.to_rows().iter().flatten().all(Zero::is_zero));
        assert!(matches!(
            bezout_matrix(&z(&[1, 1]), &z(&[1, 0, 1])),
            Err(Error::UnequalDegrees(1, 2))
        ));
        assert!(matches!(bezout_matrix(&z(&[1, 2]), &z(&[1, 1])), Err(Error::NotMonic)));
    }

    #[test]
    fn bezout_is_symmetric() {
        let m = bezout_matrix(&z(&[4, -3, 2, 7, 1]), &z(&[-1, 5, 0, -2, 1])).unwrap();
        assert!(m.is_symmetric());
    }

    #[test]
    fn scan_examples() {
        let f = z(&[3, 1, 1]);
        let (a, b) = scan(&f).unwrap();
        let coords: Vec<i64> = coordinates(&[a, b]).into_iter().map(|c| i64::try_from(c).unwrap()).collect();
        assert_eq!(coords, vec![3, 1, 4, 3]);
        assert_eq!(scan(&z(&[0, 1])).unwrap(), (z(&[0, 1]), z(&[1, 1])));
        assert_eq!(scan(&fp(2, &[0, 0, 1])).unwrap(), (fp(2, &[0, 0, 1]), fp(2, &[0, 0, 1])));
        assert!(matches!(scan(&z(&[1, 2])), Err(Error::NotMonic)));
    }

    #[test]
    fn in_f_examples() {
        assert!(in_f(&fp(2, &[0, 1]), &fp(2, &[1, 1])).unwrap());
        let f = fp(5, &[1, 2, 1]);
        assert!(!in_f(&f, &f).unwrap());
        assert!(!in_f(&z(&[-2, 1]), &z(&[-5, 1])).unwrap());
        assert!(in_f(&z(&[1]), &z(&[1])).unwrap());
        assert!(matches!(in_f(&z(&[0, 1]), &z(&[0, 0, 1])), Err(Error::UnequalDegrees(1, 2))));
    }

    #[test]
    fn in_c_examples() {
        assert!(in_c(&fp(2, &[0, 1, 1])).unwrap());
        assert!(!in_c(&fp(3, &[0, 0, 1])).unwrap());
        assert!(!in_c(&z(&[0, 0, 1])).unwrap());
        assert!(in_c(&z(&[0, 1, 1])).unwrap());
        assert!(in_c(&z(&[7, 1])).unwrap());
        assert!(in_c(&z(&[1])).unwrap());
        assert!(matches!(in_c(&z(&[0, 0, 2])), Err(Error::NotMonic)));
    }

    #[test]
    fn in_c_over_integers_is_discriminant_unit() {
        // x^2 - x - 1 has discriminant 5: squarefree over Q but not a Z-point
        assert!(!in_c(&z(&[-1, -1, 1])).unwrap());
        let r = resultant(&z(&[0, 1, 1]), &z(&[1, 2])).unwrap();
        assert_eq!(r.abs(), BigInt::from(1));
    }

    #[test]
    fn irreducible_examples() {
        let got = enumerate_irreducibles(2, 2).unwrap();
        assert_eq!(got, vec![fp(2, &[0, 1]), fp(2, &[1, 1]), fp(2, &[1, 1, 1])]);
        let deg2 = enumerate_irreducibles(3, 2).unwrap().into_iter().filter(|q| q.degree() == Some(2)).count();
        assert_eq!(deg2, 3);
        assert_eq!(enumerate_irreducibles(2, 1).unwrap(), vec![fp(2, &[0, 1]), fp(2, &[1, 1])]);
        assert!(matches!(enumerate_irreducibles(11, 2), Err(Error::Bounds(_))));
        assert!(matches!(enumerate_irreducibles(2, 9), Err(Error::Bounds(_))));
        assert!(matches!(enumerate_irreducibles(4, 2), Err(Error::NotPrime(4))));
    }

    /// Necklace counts `(1/n) Σ_{k|n} μ(k) p^{n/k}`, computed independently.
    fn necklace(p: u64, n: u64) -> u64 {
        fn mobius(mut k: u64) -> i64 {
            let mut sign = 1;
            let mut f = 2;
            while f * f <= k {
                if k.is_multiple_of(f) {
                    k /= f;
                    if k.is_multiple_of(f) {
                        return 0;
                    }
                    sign = -sign;
                }
                f += 1;
            }
            if k > 1 {
                sign = -sign;
            }
            sign
        }
        let total: i64 = (1..=n)
            .filter(|k| n.is_multiple_of(*k))
            .map(|k| mobius(k) * p.pow((n / k) as u32) as i64)
            .sum();
        (total / n as i64) as u64
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        for (p, max) in [(2u64, 7usize), (3, 4), (5, 3)] {
            let all = enumerate_irreducibles(p, max).unwrap();
            for n in 1..=max {
                let count = all.iter().filter(|q| q.degree() == Some(n)).count() as u64;
                assert_eq!(count, necklace(p, n as u64), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn mult_root_examples() {
        // (x-1)^2 (x-2) over F_5
        let g = fp(5, &[-1, 1]).pow(2).mul(&fp(5, &[-2, 1])).unwrap();
        assert!(has_mult_root(&g, 2).unwrap());
        let g = fp(2, &[1, 1, 1]).pow(2);
        assert!(has_mult_root(&g, 2).unwrap());
        assert!(!has_mult_root(&fp(2, &[1, 1, 1]), 2).unwrap());
        assert!(has_mult_root(&fp(7, &[3, 1]), 1).unwrap());
        assert!(!has_mult_root(&fp(7, &[1]), 1).unwrap());
        assert!(!has_mult_root(&fp(3, &[0, 0, 1]), 3).unwrap());
        assert!(has_mult_root(&fp(3, &[0, 0, 0, 1]), 3).unwrap());
        assert!(matches!(has_mult_root(&z(&[0, 1]), 2), Err(Error::FieldRequired(_))));
    }

    #[test]
    fn in_poly_examples() {
        let spec = FamilySpec::new(1, 2, 1).unwrap();
        assert!(in_poly(&[fp(2, &[0, 1]), fp(2, &[1, 1])], &spec).unwrap());
        let spec = FamilySpec::new(2, 1, 2).unwrap();
        assert!(!in_poly(&[fp(3, &[0, 0, 1])], &spec).unwrap());
        let spec = FamilySpec::new(3, 1, 2).unwrap();
        for a0 in 0..5 {
            for a1 in 0..5 {
                assert!(in_poly(&[fp(5, &[a0, a1, 1])], &spec).unwrap());
            }
        }
    }

    #[test]
    fn in_poly_preconditions() {
        let spec = FamilySpec::new(1, 2, 1).unwrap();
        assert!(in_poly(&[fp(2, &[0, 1])], &spec).is_err());
        assert!(in_poly(&[fp(2, &[0, 1]), fp(3, &[0, 1])], &spec).is_err());
        assert!(in_poly(&[fp(2, &[0, 1]), fp(2, &[0, 0, 1])], &spec).is_err());
        assert!(in_poly(&[z(&[0, 1]), z(&[1, 1])], &spec).is_err());
        assert!(FamilySpec::new(0, 1, 1).is_err());
        assert!(FamilySpec::new(1, 0, 1).is_err());
    }

    #[test]
    fn scheme_point_validates_membership() {
        let spec = FamilySpec::coprime_pairs(1);
        let pt = SchemePoint::new(spec, vec![fp(3, &[0, 1]), fp(3, &[1, 1])]).unwrap();
        assert_eq!(pt.coordinates(), vec![BigInt::zero(), BigInt::from(1)]);
        assert!(SchemePoint::new(spec, vec![fp(3, &[0, 1]), fp(3, &[0, 1])]).is_err());
    }

    #[test]
    fn family_spec_json() {
        let s: FamilySpec = serde_json::from_str(r#"{"nu":2,"m":1,"d":3}"#).unwrap();
        assert_eq!(s, FamilySpec::squarefree(3));
        assert!(serde_json::from_str::<FamilySpec>(r#"{"nu":0,"m":1,"d":3}"#).is_err());
    }
}
