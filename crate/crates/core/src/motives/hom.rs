//! What is known about `Hom(Z(i)[m], Z(j)[n])` in mixed Tate motives over Z.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HomVerdict {
    KnownZero,
    KnownZ,
    Unknown,
}

/// The individual vanishing and computation rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HomRule {
    /// `j < i`: zero.
    TwistDecreases,
    /// `i = j`, `m ≠ n`: zero.
    EqualTwistShifted,
    /// `i = j`, `m = n`: Z.
    EqualTwistDiagonal,
    /// `i = m = 0` and either `j ≥ 0, n < 0` or `j > 0, n ≤ 0`: zero.
    BeilinsonSoule,
}

/// Every rule whose domain contains `(i, m, j, n)`, with its verdict.
pub fn hom_rules(i: i64, m: i64, j: i64, n: i64) -> Vec<(HomRule, HomVerdict)> {
    let mut out = Vec::new();
    if j < i {
        out.push((HomRule::TwistDecreases, HomVerdict::KnownZero));
    }
    if i == j && m != n {
        out.push((HomRule::EqualTwistShifted, HomVerdict::KnownZero));
    }
    if i == j && m == n {
        out.push((HomRule::EqualTwistDiagonal, HomVerdict::KnownZ));
    }
    if i == 0 && m == 0 && ((j >= 0 && n < 0) || (j > 0 && n <= 0)) {
        out.push((HomRule::BeilinsonSoule, HomVerdict::KnownZero));
    }
    out
}

/// Verdict for `Hom(Z(i)[m], Z(j)[n])`; `Unknown` when no rule applies.
pub fn hom_oracle(i: i64, m: i64, j: i64, n: i64) -> HomVerdict {
    hom_rules(i, m, j, n)
        .first()
        .map_or(HomVerdict::Unknown, |&(_, v)| v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(hom_oracle(1, 3, 0, 0), HomVerdict::KnownZero);
        assert_eq!(hom_oracle(2, 1, 2, 1), HomVerdict::KnownZ);
        assert_eq!(hom_oracle(0, 0, 1, 0), HomVerdict::KnownZero);
        assert_eq!(hom_oracle(0, 0, 1, 1), HomVerdict::Unknown);
        assert_eq!(hom_oracle(0, 0, 0, 0), HomVerdict::KnownZ);
        assert_eq!(hom_oracle(0, 0, 0, -1), HomVerdict::KnownZero);
    }

    #[test]
    fn rules_never_disagree() {
        for i in -3..=3 {
            for m in -3..=3 {
                for j in -3..=3 {
                    for n in -3..=3 {
                        let rules = hom_rules(i, m, j, n);
                        if let Some(&(_, first)) = rules.first() {
                            assert!(
                                rules.iter().all(|&(_, v)| v == first),
                                "({i},{m},{j},{n}): {rules:?}"
                            );
                        }
                    }
                }
            }
        }
    }
}
