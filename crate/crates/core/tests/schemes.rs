use num_bigint::BigInt;
use proptest::prelude::*;
use tate_workbench::enumeration::{count_partitioned, count_points};
use tate_workbench::exact::{Domain, Poly, Prime};
use tate_workbench::schemes::{in_c, in_f, in_poly, resultant, scan, FamilySpec};

fn monic_all(p: u64, d: usize) -> Vec<Poly> {
    let dom = Domain::prime_field(p).unwrap();
    let total = p.pow(d as u32);
    (0..total)
        .map(|mut idx| {
            let lower: Vec<u64> = (0..d)
                .map(|_| {
                    let c = idx % p;
                    idx /= p;
                    c
                })
                .collect();
            Poly::monic_from_lower(dom, lower)
        })
        .collect()
}

/// Common root in the algebraic closure, decided by searching for a shared
/// monic factor of positive degree among all monics of degree ≤ deg f.
fn share_factor(f: &Poly, g: &Poly, p: u64) -> bool {
    let d = f.degree().unwrap().min(g.degree().unwrap());
    (1..=d).any(|k| {
        monic_all(p, k)
            .iter()
            .any(|h| f.divisible_by(h).unwrap() && g.divisible_by(h).unwrap())
    })
}

#[test]
fn resultant_vanishes_iff_common_factor() {
    for p in [2u64, 3] {
        for df in 1..=3 {
            for dg in 1..=3 {
                for f in monic_all(p, df) {
                    for g in monic_all(p, dg) {
                        let r = resultant(&f, &g).unwrap();
                        assert_eq!(r == BigInt::from(0), share_factor(&f, &g, p), "f={f} g={g} p={p}");
                        assert_eq!(r == BigInt::from(0), !f.gcd(&g).unwrap().is_one());
                    }
                }
            }
        }
    }
}

#[test]
fn named_families_agree_with_direct_predicates() {
    for p in [2u64, 3] {
        for d in 1..=3u32 {
            let pairs = FamilySpec::coprime_pairs(d);
            let squarefree = FamilySpec::squarefree(d);
            let polys = monic_all(p, d as usize);
            for f in &polys {
                let df = f.derivative();
                let direct = d <= 1 || (!df.is_zero() && f.gcd(&df).unwrap().is_one());
                assert_eq!(in_poly(std::slice::from_ref(f), &squarefree).unwrap(), in_c(f).unwrap());
                assert_eq!(in_c(f).unwrap(), direct, "f={f}");
                for g in &polys {
                    let tuple = [f.clone(), g.clone()];
                    let coprime = in_poly(&tuple, &pairs).unwrap();
                    assert_eq!(coprime, in_f(f, g).unwrap(), "f={f} g={g}");
                    assert_eq!(coprime, f.gcd(g).unwrap().is_one());
                }
            }
        }
    }
}

#[test]
fn partition_invariance() {
    for (nu, m, d, p) in [(2, 1, 5, 3), (1, 2, 3, 3), (3, 2, 3, 2), (2, 2, 4, 2)] {
        let spec = FamilySpec::new(nu, m, d).unwrap();
        let reference = count_points(&spec, p).unwrap();
        for parts in [1, 2, 3, 8] {
            assert!(count_partitioned(&spec, p, parts).unwrap().same_result(&reference), "{spec} parts={parts}");
        }
    }
}

#[test]
fn scan_formula_over_integers() {
    // f = x^3 + 2x^2 - x + 5; f + f' = x^3 + 5x^2 + 3x + 4
    let f = Poly::monic_from_lower(Domain::Integers, [5, -1, 2]);
    let (_, g) = scan(&f).unwrap();
    assert_eq!(g, Poly::monic_from_lower(Domain::Integers, [4, 3, 5]));
}

fn int_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-6i64..=6, 1..=max_deg + 1)
        .prop_map(|c| Poly::new(Domain::Integers, c))
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn monic_int(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-6i64..=6, 1..=max_deg).prop_map(|c| Poly::monic_from_lower(Domain::Integers, c))
}

proptest! {
    #[test]
    fn multiplicativity_with_nonmonic_factors(f in monic_int(3), g in int_poly(3), h in int_poly(3)) {
        let lhs = resultant(&f, &g.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs, resultant(&f, &g).unwrap() * resultant(&f, &h).unwrap());
    }

    #[test]
    fn resultant_depends_on_g_mod_f(f in monic_int(3), g in int_poly(5)) {
        let r = g.rem(&f).unwrap();
        prop_assume!(!r.is_zero());
        // for monic f both sides are the product of g(α) = r(α) over the roots of f
        prop_assert_eq!(resultant(&f, &g).unwrap(), resultant(&f, &r).unwrap());
    }

    #[test]
    fn base_change(f in monic_int(4), g in monic_int(4), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let prime = Prime::new(p).unwrap();
        let dom = Domain::PrimeField(prime);
        prop_assert_eq!(
            dom.reduce(&resultant(&f, &g).unwrap()),
            resultant(&f.reduce_mod(prime), &g.reduce_mod(prime)).unwrap()
        );
    }
}
