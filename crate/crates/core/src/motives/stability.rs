//! Homological stability with a slope: `t_{<l(d)} M_d ≅ t_{<l(d)} M_{d+1}`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{SplitTateMotive, TruncSide};
use crate::error::{Error, Result};

/// `l: N → N`, either `min(d, ⌊d/2⌋ + 2)` or an explicit finite table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SlopeFunction {
    Default,
    Table(BTreeMap<u64, u64>),
}

impl SlopeFunction {
    /// A table must be nonempty and nondecreasing in `d`.
    pub fn table(entries: BTreeMap<u64, u64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Precondition("slope table is empty".into()));
        }
        let values: Vec<(u64, u64)> = entries.iter().map(|(&d, &l)| (d, l)).collect();
        if let Some(w) = values.windows(2).find(|w| w[1].1 < w[0].1) {
            return Err(Error::Precondition(format!(
                "slope table decreases between d={} and d={}",
                w[0].0, w[1].0
            )));
        }
        Ok(SlopeFunction::Table(entries))
    }

    /// Parses a JSON array (indexed from `d = 0`) or an object `{"d": l}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let malformed = |why: String| Error::Malformed(format!("slope table: {why}"));
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
        let entries: BTreeMap<u64, u64> = match value {
            serde_json::Value::Array(_) => serde_json::from_value::<Vec<u64>>(value)
                .map_err(|e| malformed(e.to_string()))?
                .into_iter()
                .enumerate()
                .map(|(d, l)| (d as u64, l))
                .collect(),
            serde_json::Value::Object(_) => {
                serde_json::from_value(value).map_err(|e| malformed(e.to_string()))?
            }
            _ => return Err(malformed("expected an array or an object".into())),
        };
        SlopeFunction::table(entries)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        SlopeFunction::from_json(&std::fs::read_to_string(path)?)
    }

    /// `l(d)`, or `None` outside a table's domain.
    pub fn eval(&self, d: u64) -> Option<u64> {
        match self {
            SlopeFunction::Default => Some(d.min(d / 2 + 2)),
            SlopeFunction::Table(t) => t.get(&d).copied(),
        }
    }

    fn require(&self, d: u64) -> Result<u64> {
        self.eval(d)
            .ok_or_else(|| Error::Bounds(format!("slope undefined at d={d}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageVerdict {
    pub d: u64,
    pub cutoff: u64,
    pub stable: bool,
}

/// One verdict per consecutive pair `(M_d, M_{d+1})`, with `seq[0] = M_0`.
pub fn is_stable_sequence(
    seq: &[SplitTateMotive],
    slope: &SlopeFunction,
) -> Result<Vec<StageVerdict>> {
    if seq.len() < 2 {
        return Err(Error::Precondition("stability needs at least two objects".into()));
    }
    seq.windows(2)
        .enumerate()
        .map(|(d, pair)| {
            let d = d as u64;
            let cutoff = slope.require(d)?;
            let c = i64::try_from(cutoff).map_err(|_| Error::Bounds(format!("slope {cutoff}")))?;
            let stable = pair[0].t_truncate(c, TruncSide::Below)
                == pair[1].t_truncate(c, TruncSide::Below);
            Ok(StageVerdict { d, cutoff, stable })
        })
        .collect()
}

/// Given stability of slope `l` and per-`d` verdicts for slope `m`, the
/// sequence is stable with slope `min(l, m)` on the verdicts' range.
pub fn stability_transfer(
    verdicts_m: &[(u64, bool)],
    slope_l: &SlopeFunction,
    slope_m: &SlopeFunction,
) -> Result<SlopeFunction> {
    let mut out = BTreeMap::new();
    for &(d, ok) in verdicts_m {
        if !ok {
            return Err(Error::TransferFailed(d));
        }
        out.insert(d, slope_l.require(d)?.min(slope_m.require(d)?));
    }
    SlopeFunction::table(out)
}
