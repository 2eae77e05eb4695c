//! Split mixed Tate motives: finite direct sums `⊕ A_i(q_i)[n_i]`.
//!
//! Objects are kept in a canonical form keyed by `(degree, twist)` with one
//! finitely generated abelian group per key, so structural equality is
//! isomorphism. Degrees are homological; the weight of `A(q)[n]` is `-q`.

mod hom;
mod stability;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use hom::{hom_oracle, hom_rules, HomRule, HomVerdict};
pub use stability::{is_stable_sequence, stability_transfer, SlopeFunction, StageVerdict};

use crate::error::{Error, Result};
use crate::exact::FgAbelianGroup;
use crate::tate::TateClass;

/// One summand `A(q)[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplitSummand {
    pub group: FgAbelianGroup,
    pub twist: i64,
    pub degree: i64,
}

impl SplitSummand {
    pub fn new(group: FgAbelianGroup, twist: i64, degree: i64) -> Self {
        SplitSummand { group, twist, degree }
    }

    /// `Z(q)[n]`
    pub fn z(twist: i64, degree: i64) -> Self {
        SplitSummand::new(FgAbelianGroup::free(1), twist, degree)
    }

    pub fn weight(&self) -> i64 {
        -self.twist
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TruncSide {
    /// `t_{<d}`: degrees strictly below the cutoff.
    Below,
    /// `t_{≥d}`
    AtLeast,
}

/// Direct sum of summands, canonicalized.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SplitTateMotive {
    parts: BTreeMap<(i64, i64), FgAbelianGroup>,
}

/// Degree-indexed family of groups; zero groups are omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedGroup(BTreeMap<i64, FgAbelianGroup>);

impl SplitTateMotive {
    pub fn zero() -> Self {
        SplitTateMotive::default()
    }

    /// The unit `Z(0)[0]`.
    pub fn unit() -> Self {
        SplitTateMotive::from(SplitSummand::z(0, 0))
    }

    /// Fails only if merged torsion outgrows `u64` invariant factors.
    pub fn from_summands(summands: impl IntoIterator<Item = SplitSummand>) -> Result<Self> {
        let mut m = SplitTateMotive::zero();
        for s in summands {
            m.insert(s)?;
        }
        Ok(m)
    }

    /// Motive of projective `n`-space, `Z(0) ⊕ Z(1)[2] ⊕ ... ⊕ Z(n)[2n]`.
    pub fn projective_space(n: u32) -> Self {
        let n = n as i64;
        SplitTateMotive::from_summands((0..=n).map(|k| SplitSummand::z(k, 2 * k)))
            .expect("free summands")
    }

    fn insert(&mut self, s: SplitSummand) -> Result<()> {
        if s.group.is_zero() {
            return Ok(());
        }
        let key = (s.degree, s.twist);
        let merged = match self.parts.get(&key) {
            Some(g) => g.direct_sum(&s.group)?,
            None => s.group,
        };
        self.parts.insert(key, merged);
        Ok(())
    }

    fn insert_or_panic(&mut self, s: SplitSummand) {
        self.insert(s).expect("invariant factor overflow while merging summands");
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// Summands in canonical `(degree, twist)` order.
    pub fn summands(&self) -> impl Iterator<Item = SplitSummand> + '_ {
        self.parts
            .iter()
            .map(|(&(degree, twist), g)| SplitSummand::new(g.clone(), twist, degree))
    }

    fn filtered(&self, keep: impl Fn(i64, i64) -> bool) -> Self {
        SplitTateMotive {
            parts: self
                .parts
                .iter()
                .filter(|(&(deg, tw), _)| keep(deg, tw))
                .map(|(k, g)| (*k, g.clone()))
                .collect(),
        }
    }

    fn remapped(&self, f: impl Fn(i64, i64) -> (i64, i64)) -> Self {
        SplitTateMotive {
            parts: self
                .parts
                .iter()
                .map(|(&(deg, tw), g)| (f(deg, tw), g.clone()))
                .collect(),
        }
    }

    /// Direct sum.
    ///
    /// # Panics
    /// If a merged torsion factor exceeds `u64`.
    pub fn sum(&self, other: &SplitTateMotive) -> Self {
        let mut out = self.clone();
        for s in other.summands() {
            out.insert_or_panic(s);
        }
        out
    }

    /// `M[k]`
    pub fn shift(&self, k: i64) -> Self {
        self.remapped(|deg, tw| (deg + k, tw))
    }

    /// `M(k)`
    pub fn twist(&self, k: i64) -> Self {
        self.remapped(|deg, tw| (deg, tw + k))
    }

    /// Bilinear extension of
    /// `A(q)[n] ⊗ B(q')[n'] = (A ⊗ B)(q+q')[n+n'] ⊕ Tor(A, B)(q+q')[n+n'+1]`.
    ///
    /// # Panics
    /// If a merged torsion factor exceeds `u64`.
    pub fn tensor(&self, other: &SplitTateMotive) -> Self {
        let mut out = SplitTateMotive::zero();
        for a in self.summands() {
            for b in other.summands() {
                let (t, tor) = a.group.tensor_tor(&b.group);
                let twist = a.twist + b.twist;
                let degree = a.degree + b.degree;
                out.insert_or_panic(SplitSummand::new(t, twist, degree));
                out.insert_or_panic(SplitSummand::new(tor, twist, degree + 1));
            }
        }
        out
    }

    /// `W_{≤n}`: summands of weight `-q ≤ n`.
    pub fn weight_truncate(&self, n: i64) -> Self {
        self.filtered(|_, tw| -tw <= n)
    }

    /// `gr^W_n`: summands of weight exactly `n`.
    pub fn weight_graded(&self, n: i64) -> Self {
        self.filtered(|_, tw| -tw == n)
    }

    /// Smallest and largest weight present, `None` for the zero object.
    pub fn weight_range(&self) -> Option<(i64, i64)> {
        let weights = self.parts.keys().map(|&(_, tw)| -tw);
        let lo = weights.clone().min()?;
        let hi = weights.max()?;
        Some((lo, hi))
    }

    /// `t_{<d}` or `t_{≥d}`. A split object's homology sits exactly in its
    /// summand degrees, so truncation is selection.
    pub fn t_truncate(&self, d: i64, side: TruncSide) -> Self {
        match side {
            TruncSide::Below => self.filtered(|deg, _| deg < d),
            TruncSide::AtLeast => self.filtered(|deg, _| deg >= d),
        }
    }

    /// Betti realization: `A(q)[n]` contributes `A` in degree `n`.
    pub fn betti_realize(&self) -> GradedGroup {
        let mut out: BTreeMap<i64, FgAbelianGroup> = BTreeMap::new();
        for (&(deg, _), g) in &self.parts {
            let slot = out.entry(deg).or_default();
            *slot = slot.direct_sum(g).expect("invariant factor overflow in realization");
        }
        GradedGroup(out)
    }

    /// `Σ (-1)^n · rank(A) · L^q` over summands `A(q)[n]`.
    pub fn euler_class(&self) -> TateClass {
        self.parts
            .iter()
            .filter(|(_, g)| g.free_rank() > 0)
            .fold(TateClass::zero(), |acc, (&(deg, tw), g)| {
                let sign = if deg.rem_euclid(2) == 0 { 1 } else { -1 };
                let term = TateClass::from_laurent(crate::exact::LaurentPoly::monomial(
                    tw,
                    sign * g.free_rank() as i64,
                ));
                acc.add(&term)
            })
    }
}

impl From<SplitSummand> for SplitTateMotive {
    fn from(s: SplitSummand) -> Self {
        let mut m = SplitTateMotive::zero();
        m.insert_or_panic(s);
        m
    }
}

impl fmt::Display for SplitTateMotive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|(&(deg, tw), g)| {
                let g = g.to_string();
                let g = if g.contains(' ') { format!("({g})") } else { g };
                format!("{g}({tw})[{deg}]")
            })
            .collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

impl GradedGroup {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, degree: i64) -> FgAbelianGroup {
        self.0.get(&degree).cloned().unwrap_or_default()
    }

    /// Nonzero degrees, ascending.
    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &FgAbelianGroup)> {
        self.0.iter().map(|(&d, g)| (d, g))
    }

    /// Künneth for complexes over Z with the given homology:
    /// `⊕_{i+j=n} H_i ⊗ H'_j ⊕ ⊕_{i+j=n-1} Tor(H_i, H'_j)`.
    pub fn derived_tensor(&self, other: &GradedGroup) -> GradedGroup {
        let mut out: BTreeMap<i64, FgAbelianGroup> = BTreeMap::new();
        let mut put = |deg: i64, g: FgAbelianGroup| {
            if !g.is_zero() {
                let slot = out.entry(deg).or_default();
                *slot = slot.direct_sum(&g).expect("invariant factor overflow");
            }
        };
        for (&i, a) in &self.0 {
            for (&j, b) in &other.0 {
                let (t, tor) = a.tensor_tor(b);
                put(i + j, t);
                put(i + j + 1, tor);
            }
        }
        GradedGroup(out)
    }
}

impl FromIterator<(i64, FgAbelianGroup)> for GradedGroup {
    fn from_iter<I: IntoIterator<Item = (i64, FgAbelianGroup)>>(iter: I) -> Self {
        let mut out: BTreeMap<i64, FgAbelianGroup> = BTreeMap::new();
        for (d, g) in iter {
            if g.is_zero() {
                continue;
            }
            let slot = out.entry(d).or_default();
            *slot = slot.direct_sum(&g).expect("invariant factor overflow");
        }
        GradedGroup(out)
    }
}

impl fmt::Display for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(d, g)| format!("H_{d} = {g}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SummandRepr {
    rank: u32,
    #[serde(default)]
    torsion: Vec<u64>,
    twist: i64,
    degree: i64,
}

/// JSON list of `{"rank", "torsion", "twist", "degree"}` in canonical order.
impl Serialize for SplitTateMotive {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let reprs: Vec<SummandRepr> = self
            .summands()
            .map(|sm| SummandRepr {
                rank: sm.group.free_rank(),
                torsion: sm.group.torsion().to_vec(),
                twist: sm.twist,
                degree: sm.degree,
            })
            .collect();
        reprs.serialize(s)
    }
}

/// Accepts summands in any order and with any cyclic orders in `torsion`.
impl<'de> Deserialize<'de> for SplitTateMotive {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let reprs = Vec::<SummandRepr>::deserialize(d)?;
        let summands = reprs
            .into_iter()
            .map(|r| {
                FgAbelianGroup::new(r.rank, r.torsion)
                    .map(|g| SplitSummand::new(g, r.twist, r.degree))
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        SplitTateMotive::from_summands(summands).map_err(D::Error::custom)
    }
}

/// Parses a JSON motive, mapping failures to [`Error::Malformed`].
pub fn motive_from_json(text: &str) -> Result<SplitTateMotive> {
    serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
}
