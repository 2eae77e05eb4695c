//! Word-sized arithmetic over `F_p` for the enumeration hot loop.
//!
//! Polynomials are ascending `u64` coefficient vectors with no trailing
//! zeros. `p < 2^31`, so every product fits in a `u64`.

use crate::schemes::FamilySpec;

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "{a} not invertible mod {p}");
    t0.rem_euclid(p as i64) as u64
}

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// `a <- a mod b` for nonzero `b`.
fn rem_assign(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while a.len() > db {
        let top = a.len() - 1;
        let c = a[top] * lead_inv % p;
        if c != 0 {
            let shift = top - db;
            for (j, &bj) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + (p - c) * bj % p) % p;
            }
        }
        a.pop();
        trim(a);
    }
}

/// Monic gcd; `a` and `b` must not both be zero. Result lands in `a`.
fn gcd_assign(a: &mut Vec<u64>, b: &mut Vec<u64>, p: u64) {
    while !b.is_empty() {
        rem_assign(a, b, p);
        std::mem::swap(a, b);
    }
    if let Some(&lead) = a.last() {
        let inv = inv_mod(lead, p);
        for c in a.iter_mut() {
            *c = *c * inv % p;
        }
    }
}

fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Monic irreducibles of degree `1..=max_deg` by trial division against the
/// irreducibles of degree at most half the candidate's.
pub(crate) fn irreducibles(p: u64, max_deg: usize) -> Vec<Vec<u64>> {
    let mut found: Vec<Vec<u64>> = Vec::new();
    let mut scratch = Vec::new();
    for n in 1..=max_deg {
        let limit = found.iter().take_while(|q| q.len() - 1 <= n / 2).count();
        let mut lower = vec![0u64; n];
        loop {
            let mut cand = lower.clone();
            cand.push(1);
            let reducible = found[..limit].iter().any(|q| {
                scratch.clone_from(&cand);
                rem_assign(&mut scratch, q, p);
                scratch.is_empty()
            });
            if !reducible {
                found.push(cand);
            }
            if !odometer(&mut lower, p) {
                break;
            }
        }
    }
    found
}

/// Advances `digits` to the lexicographically next tuple, last digit fastest.
/// Returns false after wrapping around.
pub(crate) fn odometer(digits: &mut [u64], p: u64) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

/// Membership test for one family over one prime field.
pub(crate) struct Kernel {
    p: u64,
    nu: usize,
    m: usize,
    d: usize,
    /// `π^ν` for every monic irreducible `π` with `ν·deg π ≤ d`, ascending degree.
    forbidden: Vec<Vec<u64>>,
}

pub(crate) struct Scratch {
    acc: Vec<u64>,
    other: Vec<u64>,
    work: Vec<u64>,
}

impl Kernel {
    pub(crate) fn new(spec: &FamilySpec, p: u64) -> Self {
        let nu = spec.nu as usize;
        let d = spec.d as usize;
        let forbidden = if nu >= 2 && d >= nu {
            irreducibles(p, d / nu)
                .into_iter()
                .map(|pi| {
                    let mut pow = vec![1u64];
                    for _ in 0..nu {
                        pow = mul(&pow, &pi, p);
                    }
                    pow
                })
                .collect()
        } else {
            Vec::new()
        };
        Kernel { p, nu, m: spec.m as usize, d, forbidden }
    }

    pub(crate) fn scratch(&self) -> Scratch {
        Scratch {
            acc: Vec::with_capacity(self.d + 1),
            other: Vec::with_capacity(self.d + 1),
            work: Vec::with_capacity(self.d + 1),
        }
    }

    fn load(&self, dst: &mut Vec<u64>, lower: &[u64]) {
        dst.clear();
        dst.extend_from_slice(lower);
        dst.push(1);
    }

    /// `coords` holds the `m·d` non-leading coefficients, entry by entry.
    pub(crate) fn accepts(&self, coords: &[u64], s: &mut Scratch) -> bool {
        let d = self.d;
        if d < self.nu {
            return true;
        }
        self.load(&mut s.acc, &coords[..d]);
        for i in 1..self.m {
            if s.acc.len() == 1 {
                break;
            }
            self.load(&mut s.other, &coords[i * d..(i + 1) * d]);
            gcd_assign(&mut s.acc, &mut s.other, self.p);
        }
        let deg = s.acc.len() - 1;
        if self.nu == 1 {
            return deg == 0;
        }
        for pw in &self.forbidden {
            if pw.len() - 1 > deg {
                break;
            }
            s.work.clone_from(&s.acc);
            rem_assign(&mut s.work, pw, self.p);
            if s.work.is_empty() {
                return false;
            }
        }
        true
    }
}
