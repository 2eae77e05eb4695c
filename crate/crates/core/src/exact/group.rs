//! Finitely generated abelian groups in invariant-factor normal form.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `2 <= d_1 | d_2 | ... | d_k`.
///
/// The representation is unique per isomorphism class, so derived equality
/// is isomorphism.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FgAbelianGroup {
    free_rank: u32,
    torsion: Vec<u64>,
}

impl FgAbelianGroup {
    /// Normal form of `Z^free_rank ⊕ (⊕ Z/n)` over the given cyclic orders.
    /// An order of 0 is read as a copy of Z; an order of 1 is trivial.
    pub fn new(free_rank: u32, orders: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut free_rank = free_rank;
        let mut factors = Vec::new();
        for n in orders {
            match n {
                0 => free_rank += 1,
                1 => {}
                n => factors.push(n),
            }
        }
        Ok(FgAbelianGroup { free_rank, torsion: invariant_factors(factors)? })
    }

    pub fn zero() -> Self {
        FgAbelianGroup::default()
    }

    pub fn free(rank: u32) -> Self {
        FgAbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        FgAbelianGroup::new(0, [n]).expect("single factor cannot overflow")
    }

    pub fn free_rank(&self) -> u32 {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &FgAbelianGroup) -> Result<Self> {
        FgAbelianGroup::new(
            self.free_rank + other.free_rank,
            self.torsion.iter().chain(&other.torsion).copied(),
        )
    }

    /// `(A ⊗ B, Tor(A, B))`.
    ///
    /// Summand by summand: `Z ⊗ G = G`, `Z/a ⊗ Z/b = Tor(Z/a, Z/b) = Z/gcd(a, b)`,
    /// and Tor vanishes whenever one side is free.
    pub fn tensor_tor(&self, other: &FgAbelianGroup) -> (Self, Self) {
        let mut tensor_orders = Vec::new();
        let mut tor_orders = Vec::new();
        let free = self.free_rank * other.free_rank;
        for _ in 0..self.free_rank {
            tensor_orders.extend(&other.torsion);
        }
        for _ in 0..other.free_rank {
            tensor_orders.extend(&self.torsion);
        }
        for &a in &self.torsion {
            for &b in &other.torsion {
                let g = a.gcd(&b);
                tensor_orders.push(g);
                tor_orders.push(g);
            }
        }
        // every factor divides an existing invariant factor, so the
        // normal form cannot overflow
        let tensor = FgAbelianGroup::new(free, tensor_orders).expect("bounded factors");
        let tor = FgAbelianGroup::new(0, tor_orders).expect("bounded factors");
        (tensor, tor)
    }

    pub fn tensor(&self, other: &FgAbelianGroup) -> Self {
        self.tensor_tor(other).0
    }

    pub fn tor(&self, other: &FgAbelianGroup) -> Self {
        self.tensor_tor(other).1
    }
}

/// Pairwise gcd/lcm sweep. After position `i` is processed it divides every
/// later entry, and later updates only replace entries by gcds and lcms of
/// multiples of it.
fn invariant_factors(mut a: Vec<u64>) -> Result<Vec<u64>> {
    let n = a.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = a[i].gcd(&a[j]);
            let l = (a[i] / g)
                .checked_mul(a[j])
                .ok_or_else(|| Error::Bounds("invariant factor exceeds u64".into()))?;
            a[i] = g;
            a[j] = l;
        }
    }
    a.retain(|&d| d != 1);
    Ok(a)
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
