//! Exhaustive and randomized verification drivers behind `workbench verify`.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enumeration::{count_sequential, search_space, GUARD_RAIL};
use crate::error::{Error, Result};
use crate::exact::{Domain, Prime, Poly};
use crate::schemes::{bezout_matrix, in_c, in_f, resultant, scan, sylvester_matrix, FamilySpec};
use crate::tate::class_poly_family;

/// Outcome of one cell of a verification grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub checked: u64,
    pub counterexample: Option<String>,
}

impl Check {
    fn pass(label: String, checked: u64) -> Self {
        Check { label, checked, counterexample: None }
    }

    fn fail(label: String, checked: u64, why: String) -> Self {
        Check { label, checked, counterexample: Some(why) }
    }
}

/// Every monic polynomial of degree `d` over `F_p`, in lexicographic order
/// of `(a_0, ..., a_{d-1})` with `a_{d-1}` varying fastest.
pub fn monic_polys(p: Prime, d: usize) -> Result<Vec<Poly>> {
    let q = p.get();
    let total = (q as u128).checked_pow(d as u32).filter(|&n| n <= GUARD_RAIL).ok_or(
        Error::GuardRail { work: (q as u128).saturating_pow(d as u32), limit: GUARD_RAIL },
    )?;
    let dom = Domain::PrimeField(p);
    Ok((0..total)
        .map(|mut idx| {
            let mut lower = vec![0u64; d];
            for slot in lower.iter_mut().rev() {
                *slot = (idx % q as u128) as u64;
                idx /= q as u128;
            }
            Poly::monic_from_lower(dom, lower)
        })
        .collect())
}

/// `in_C(f) ⟺ in_F(scan(f))` for every monic `f` of degree `1..=max_d`.
pub fn scan_suite(max_d: u32, primes: &[u64]) -> Result<Vec<Check>> {
    for &p in primes {
        search_space(&FamilySpec::new(1, 1, max_d)?, Prime::new(p)?.get())?;
    }
    let mut out = Vec::new();
    for &p in primes {
        let prime = Prime::new(p)?;
        for d in 1..=max_d as usize {
            let label = format!("scan p={p} d={d}");
            let polys = monic_polys(prime, d)?;
            let mut bad = None;
            for f in &polys {
                let (a, b) = scan(f)?;
                if in_c(f)? != in_f(&a, &b)? {
                    bad = Some(format!("f = {f}"));
                    break;
                }
            }
            out.push(match bad {
                None => Check::pass(label, polys.len() as u64),
                Some(why) => Check::fail(label, polys.len() as u64, why),
            });
        }
    }
    Ok(out)
}

/// Class specialization at `L = p` against the brute count, over
/// `ν ∈ {1,2,3}`, `m ∈ {1,2}`, `0 ≤ d ≤ max_d`.
pub fn recursion_suite(max_d: u32, primes: &[u64]) -> Result<Vec<Check>> {
    for &p in primes {
        Prime::new(p)?;
        search_space(&FamilySpec::new(1, 2, max_d)?, p)?;
    }
    let mut out = Vec::new();
    for nu in 1..=3 {
        for m in 1..=2 {
            for d in 0..=max_d {
                let spec = FamilySpec::new(nu, m, d)?;
                for &p in primes {
                    let label = format!("{spec} p={p}");
                    let brute = count_sequential(&spec, p)?.count;
                    let class = class_poly_family(&spec);
                    let value = class.specialize(&BigInt::from(p))?;
                    out.push(if value == BigInt::from(brute) {
                        Check::pass(label, 1)
                    } else {
                        Check::fail(label, 1, format!("[{class}]({p}) = {value}, brute count {brute}"))
                    });
                }
            }
        }
    }
    Ok(out)
}

fn random_monic(rng: &mut ChaCha8Rng, degrees: std::ops::RangeInclusive<usize>) -> Poly {
    let deg = rng.gen_range(degrees);
    let lower: Vec<i64> = (0..deg).map(|_| rng.gen_range(-5..=5)).collect();
    Poly::monic_from_lower(Domain::Integers, lower)
}

/// `ε(d) = (-1)^{d(d-1)/2}`, relating the Bézout and Sylvester determinants.
pub fn bezout_sign(d: usize) -> i64 {
    if (d * d.saturating_sub(1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn collect_failures(label: String, checked: u64, failures: Vec<String>) -> Check {
    match failures.into_iter().next() {
        None => Check::pass(label, checked),
        Some(why) => Check::fail(label, checked, why),
    }
}

/// Base change to `F_2, F_3, F_5`, multiplicativity, the root-product law
/// over `F_3` and the Bézout/Sylvester sign, on `trials` random cases each.
pub fn resultant_suite(trials: u64, seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    for p in [2u64, 3, 5] {
        let prime = Prime::new(p)?;
        let dom = Domain::PrimeField(prime);
        let mut failures = Vec::new();
        for _ in 0..trials {
            let f = random_monic(&mut rng, 1..=4);
            let g = random_monic(&mut rng, 1..=4);
            let over_z = dom.reduce(&resultant(&f, &g)?);
            let over_p = resultant(&f.reduce_mod(prime), &g.reduce_mod(prime))?;
            if over_z != over_p {
                failures.push(format!("f = {f}, g = {g}: {over_z} vs {over_p}"));
            }
        }
        out.push(collect_failures(format!("base change Z -> F_{p}"), trials, failures));
    }

    let mut failures = Vec::new();
    for _ in 0..trials {
        let f = random_monic(&mut rng, 1..=3);
        let g = random_monic(&mut rng, 1..=3);
        let h = random_monic(&mut rng, 1..=3);
        let lhs = resultant(&f, &g.mul(&h)?)?;
        let rhs = resultant(&f, &g)? * resultant(&f, &h)?;
        if lhs != rhs {
            failures.push(format!("f = {f}, g = {g}, h = {h}"));
        }
    }
    out.push(collect_failures("multiplicativity".into(), trials, failures));

    let f3 = Prime::new(3)?;
    let mut failures = Vec::new();
    let mut checked = 0;
    for d in 1..=3 {
        for f in monic_polys(f3, d)? {
            checked += 1;
            let df = f.derivative();
            let lhs = resultant(&f, &f.add(&df)?)?;
            let rhs = if df.is_zero() { BigInt::from(0) } else { resultant(&f, &df)? };
            if lhs != rhs {
                failures.push(format!("f = {f}: {lhs} vs {rhs}"));
            }
        }
    }
    out.push(collect_failures("root product over F_3".into(), checked, failures));

    for d in 1..=4 {
        let mut failures = Vec::new();
        for _ in 0..trials {
            let f = random_monic(&mut rng, d..=d);
            let g = random_monic(&mut rng, d..=d);
            let bez = bezout_matrix(&f, &g)?.det()?;
            let syl = sylvester_matrix(&f, &g)?.det()?;
            if bez != syl * bezout_sign(d) {
                failures.push(format!("f = {f}, g = {g}"));
            }
        }
        out.push(collect_failures(format!("bezout sign d={d}"), trials, failures));
    }
    Ok(out)
}
