//! Exhaustive point counts of `Poly_ν^{d,m}` over prime fields.
//!
//! The coefficient space `F_p^{dm}` is walked in lexicographic order of the
//! coordinate tuple `(f_1: a_0..a_{d-1}, f_2: a_0..a_{d-1}, ...)`, first
//! coordinate most significant. Tuple number `i` is the base-`p` reading of
//! that tuple, so contiguous index ranges are well-defined blocks.

mod cache;
mod kernel;

use chrono::{DateTime, Utc};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use cache::{cache_lookup, cache_store, read_records};

use crate::error::{Error, Result};
use crate::exact::Prime;
use crate::schemes::FamilySpec;
use crate::tate::class_poly_family;
use kernel::{odometer, Kernel};

/// Largest coefficient space a single count may walk.
pub const GUARD_RAIL: u128 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountMethod {
    Brute,
    Formula,
    ClassSpecialization,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub family: FamilySpec,
    pub p: Prime,
    #[serde(with = "decimal")]
    pub count: u64,
    pub method: CountMethod,
    pub produced_at: DateTime<Utc>,
}

impl CountRecord {
    fn new(family: FamilySpec, p: Prime, count: u64, method: CountMethod) -> Self {
        CountRecord { family, p, count, method, produced_at: Utc::now() }
    }

    /// Equality ignoring `produced_at`.
    pub fn same_result(&self, other: &CountRecord) -> bool {
        self.family == other.family
            && self.p == other.p
            && self.count == other.count
            && self.method == other.method
    }
}

mod decimal {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &u64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// `p^{dm}`, rejected above [`GUARD_RAIL`].
pub fn search_space(spec: &FamilySpec, p: u64) -> Result<u128> {
    let work = (p as u128)
        .checked_pow(spec.ambient_dim())
        .filter(|&w| w <= GUARD_RAIL)
        .ok_or(Error::GuardRail {
            work: (p as u128).saturating_pow(spec.ambient_dim()),
            limit: GUARD_RAIL,
        })?;
    Ok(work)
}

fn decode(mut index: u128, p: u64, digits: &mut [u64]) {
    for slot in digits.iter_mut().rev() {
        *slot = (index % p as u128) as u64;
        index /= p as u128;
    }
}

fn count_block(kernel: &Kernel, p: u64, dim: usize, lo: u128, hi: u128) -> u64 {
    if lo >= hi {
        return 0;
    }
    let mut coords = vec![0u64; dim];
    decode(lo, p, &mut coords);
    let mut scratch = kernel.scratch();
    let mut hits = 0u64;
    for _ in lo..hi {
        if kernel.accepts(&coords, &mut scratch) {
            hits += 1;
        }
        odometer(&mut coords, p);
    }
    hits
}

/// Block `k` of `parts` is `[k·N/parts, (k+1)·N/parts)`.
fn block_bounds(total: u128, parts: u64, k: u64) -> (u128, u128) {
    let parts = parts as u128;
    let k = k as u128;
    (k * total / parts, (k + 1) * total / parts)
}

/// Count with the coefficient space cut into `parts` contiguous blocks,
/// counted in parallel and summed.
pub fn count_partitioned(spec: &FamilySpec, p: u64, parts: u64) -> Result<CountRecord> {
    let prime = Prime::new(p)?;
    if parts == 0 {
        return Err(Error::Precondition("parts must be >= 1".into()));
    }
    let total = search_space(spec, p)?;
    let kernel = Kernel::new(spec, p);
    let dim = spec.ambient_dim() as usize;
    let count = (0..parts)
        .into_par_iter()
        .map(|k| {
            let (lo, hi) = block_bounds(total, parts, k);
            count_block(&kernel, p, dim, lo, hi)
        })
        .sum();
    Ok(CountRecord::new(*spec, prime, count, CountMethod::Brute))
}

/// Exact number of `F_p`-points of `Poly_ν^{d,m}` by exhaustive iteration.
pub fn count_points(spec: &FamilySpec, p: u64) -> Result<CountRecord> {
    let parts = (rayon::current_num_threads() as u64 * 4).max(1);
    count_partitioned(spec, p, parts)
}

/// Sequential reference walk over the whole space, one block.
pub fn count_sequential(spec: &FamilySpec, p: u64) -> Result<CountRecord> {
    let prime = Prime::new(p)?;
    let total = search_space(spec, p)?;
    let kernel = Kernel::new(spec, p);
    let count = count_block(&kernel, p, spec.ambient_dim() as usize, 0, total);
    Ok(CountRecord::new(*spec, prime, count, CountMethod::Brute))
}

/// Count obtained by specializing `[Poly_ν^{d,m}]` at `L = p`.
pub fn count_by_class(spec: &FamilySpec, p: u64) -> Result<CountRecord> {
    let prime = Prime::new(p)?;
    let value = class_poly_family(spec).specialize(&num_bigint::BigInt::from(p))?;
    let count = u64::try_from(value)
        .map_err(|e| Error::Malformed(format!("class specialization out of range: {e}")))?;
    Ok(CountRecord::new(*spec, prime, count, CountMethod::ClassSpecialization))
}

/// Closed forms for the two named families: `|C_d(F_p)| = p^d - p^{d-1}`
/// for `d >= 2` and `|F_d(F_p)| = p^{2d} - p^{2d-1}` for `d >= 1`.
pub fn count_by_formula(spec: &FamilySpec, p: u64) -> Result<CountRecord> {
    let prime = Prime::new(p)?;
    let pow = |e: u32| {
        p.checked_pow(e)
            .ok_or_else(|| Error::Bounds(format!("{p}^{e} overflows u64")))
    };
    let count = match (spec.nu, spec.m, spec.d) {
        (2, 1, d) if d <= 1 => pow(d)?,
        (2, 1, d) => pow(d)? - pow(d - 1)?,
        (1, 2, 0) => 1,
        (1, 2, d) => pow(2 * d)? - pow(2 * d - 1)?,
        _ => {
            return Err(Error::Precondition(format!(
                "no closed form for {spec}; only squarefree and coprime-pair families"
            )))
        }
    };
    Ok(CountRecord::new(*spec, prime, count, CountMethod::Formula))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Domain, Poly};
    use crate::schemes::in_poly;

    fn fam(nu: u32, m: u32, d: u32) -> FamilySpec {
        FamilySpec::new(nu, m, d).unwrap()
    }

    /// Independent count through the generic polynomial predicate.
    fn reference_count(spec: &FamilySpec, p: u64) -> u64 {
        let dom = Domain::prime_field(p).unwrap();
        let d = spec.d as usize;
        let dim = spec.ambient_dim() as usize;
        let mut coords = vec![0u64; dim];
        let mut count = 0;
        loop {
            let tuple: Vec<Poly> = (0..spec.m as usize)
                .map(|i| Poly::monic_from_lower(dom, coords[i * d..(i + 1) * d].iter().copied()))
                .collect();
            if in_poly(&tuple, spec).unwrap() {
                count += 1;
            }
            if !odometer(&mut coords, p) {
                break;
            }
        }
        count
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_points(&fam(2, 1, 3), 2).unwrap().count, 4);
        assert_eq!(count_points(&fam(1, 2, 1), 3).unwrap().count, 6);
        for p in [2, 3, 5, 7] {
            assert_eq!(count_points(&fam(3, 1, 2), p).unwrap().count, p * p);
        }
    }

    #[test]
    fn kernel_matches_generic_predicate() {
        for nu in 1..=3 {
            for m in 1..=2 {
                for d in 0..=3 {
                    for p in [2u64, 3] {
                        let spec = fam(nu, m, d);
                        assert_eq!(
                            count_sequential(&spec, p).unwrap().count,
                            reference_count(&spec, p),
                            "{spec} p={p}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn partition_examples() {
        let spec = fam(2, 1, 4);
        let one = count_partitioned(&spec, 3, 1).unwrap();
        let four = count_partitioned(&spec, 3, 4).unwrap();
        assert!(one.same_result(&four));
        // 2^4 tuples split into 7 blocks; 16 - 8 coprime pairs
        assert_eq!(count_partitioned(&fam(1, 2, 2), 2, 7).unwrap().count, 8);
        // more blocks than tuples leaves empty blocks
        assert_eq!(count_partitioned(&fam(1, 2, 1), 2, 50).unwrap().count, 2);
        assert!(count_partitioned(&spec, 3, 0).is_err());
    }

    #[test]
    fn block_bounds_tile_the_space() {
        for total in [0u128, 1, 7, 16, 81] {
            for parts in [1u64, 2, 3, 8, 100] {
                let mut next = 0;
                for k in 0..parts {
                    let (lo, hi) = block_bounds(total, parts, k);
                    assert_eq!(lo, next);
                    assert!(hi >= lo);
                    next = hi;
                }
                assert_eq!(next, total);
            }
        }
    }

    #[test]
    fn guard_rail() {
        assert!(matches!(
            count_points(&fam(2, 1, 30), 2),
            Err(Error::GuardRail { .. })
        ));
        assert!(matches!(
            count_points(&fam(2, 2, 40), 2_147_483_647),
            Err(Error::GuardRail { .. })
        ));
        assert!(search_space(&fam(1, 2, 4), 10_007).unwrap_err().to_string().contains("guard"));
        assert!(matches!(count_points(&fam(2, 1, 2), 4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn larger_primes_use_the_same_kernel() {
        // squarefree monic quadratics over F_p: p^2 - p
        for p in [11u64, 101, 1009] {
            assert_eq!(count_points(&fam(2, 1, 2), p).unwrap().count, p * p - p);
        }
    }

    #[test]
    fn class_and_formula_records() {
        let spec = fam(2, 1, 4);
        let brute = count_points(&spec, 3).unwrap();
        let class = count_by_class(&spec, 3).unwrap();
        let formula = count_by_formula(&spec, 3).unwrap();
        assert_eq!(brute.count, 54);
        assert_eq!(class.count, 54);
        assert_eq!(formula.count, 54);
        assert_eq!(class.method, CountMethod::ClassSpecialization);
        assert!(count_by_formula(&fam(3, 1, 4), 3).is_err());
    }

    #[test]
    fn record_json_schema() {
        let mut rec = count_points(&fam(2, 1, 3), 2).unwrap();
        rec.produced_at = "2026-01-02T03:04:05Z".parse().unwrap();
        let s = serde_json::to_string(&rec).unwrap();
        assert_eq!(
            s,
            r#"{"family":{"nu":2,"m":1,"d":3},"p":2,"count":"4","method":"brute","produced_at":"2026-01-02T03:04:05Z"}"#
        );
        let back: CountRecord = serde_json::from_str(&s).unwrap();
        assert_eq!(back, rec);
        let bad = s.replace(r#""p":2"#, r#""p":6"#);
        assert!(serde_json::from_str::<CountRecord>(&bad).is_err());
    }

    #[test]
    fn determinism() {
        let spec = fam(2, 2, 3);
        let a = count_points(&spec, 3).unwrap();
        let b = count_points(&spec, 3).unwrap();
        assert!(a.same_result(&b));
    }
}
