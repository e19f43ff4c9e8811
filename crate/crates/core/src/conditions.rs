//! Sufficient conditions for `Ax − |x| = b` to have exactly one solution for
//! every `b`.
//!
//! | id                   | statistic           | holds when |
//! |----------------------|---------------------|------------|
//! | `SigmaPlus`          | `σ_min(A + I)`      | `> 2`      |
//! | `NormPlus`           | `2‖(A + I)⁻¹‖₂`     | `< 1`      |
//! | `SigmaMinus`         | `σ_min(A − I)`      | `> 2`      |
//! | `NormMinus`          | `2‖(A − I)⁻¹‖₂`     | `< 1`      |
//! | `WuPlusIncorrect`    | `½‖(A + I)⁻¹‖₂`     | `< 1`      |
//! | `WuMinusIncorrect`   | `½‖(A − I)⁻¹‖₂`     | `< 1`      |
//!
//! The last two are known to be unsound (`A = 0` satisfies both while
//! `−|x| = b` has two solutions or none) and are kept for comparison only.
//!
//! Inverse norms are evaluated as `1 / σ_min(A ± I)`.

use std::fmt;

use crate::error::Result;
use crate::matrix::{det_sign, singular_stats, DenseMatrix};

/// Width of the band around the threshold reported as `Marginal`.
pub const MARGINAL_BAND: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConditionId {
    SigmaPlus,
    NormPlus,
    SigmaMinus,
    NormMinus,
    WuPlusIncorrect,
    WuMinusIncorrect,
}

impl ConditionId {
    pub const ALL: [ConditionId; 6] = [
        Self::SigmaPlus,
        Self::NormPlus,
        Self::SigmaMinus,
        Self::NormMinus,
        Self::WuPlusIncorrect,
        Self::WuMinusIncorrect,
    ];

    pub const VALID: [ConditionId; 4] = [
        Self::SigmaPlus,
        Self::NormPlus,
        Self::SigmaMinus,
        Self::NormMinus,
    ];

    /// Snake-case name, as used in CSV headers and CLI output.
    pub fn name(self) -> &'static str {
        match self {
            Self::SigmaPlus => "sigma_plus",
            Self::NormPlus => "norm_plus",
            Self::SigmaMinus => "sigma_minus",
            Self::NormMinus => "norm_minus",
            Self::WuPlusIncorrect => "wu_plus",
            Self::WuMinusIncorrect => "wu_minus",
        }
    }

    /// Human-readable statement of the condition.
    pub fn statement(self) -> &'static str {
        match self {
            Self::SigmaPlus => "sigma_min(A+I) > 2",
            Self::NormPlus => "2*||(A+I)^-1||_2 < 1",
            Self::SigmaMinus => "sigma_min(A-I) > 2",
            Self::NormMinus => "2*||(A-I)^-1||_2 < 1",
            Self::WuPlusIncorrect => "(1/2)*||(A+I)^-1||_2 < 1",
            Self::WuMinusIncorrect => "(1/2)*||(A-I)^-1||_2 < 1",
        }
    }

    /// `+1` for conditions on `A + I`, `−1` for `A − I`.
    pub fn shift(self) -> f64 {
        match self {
            Self::SigmaPlus | Self::NormPlus | Self::WuPlusIncorrect => 1.0,
            Self::SigmaMinus | Self::NormMinus | Self::WuMinusIncorrect => -1.0,
        }
    }

    pub fn soundness(self) -> Soundness {
        match self {
            Self::WuPlusIncorrect | Self::WuMinusIncorrect => Soundness::KnownIncorrect,
            _ => Soundness::Valid,
        }
    }

    pub fn threshold(self) -> f64 {
        match self {
            Self::SigmaPlus | Self::SigmaMinus => 2.0,
            _ => 1.0,
        }
    }

    /// True when the condition requires `statistic > threshold`.
    fn lower_bound(self) -> bool {
        matches!(self, Self::SigmaPlus | Self::SigmaMinus)
    }

    /// The statistic as a function of `σ_min(A ± I)`.
    fn statistic(self, sigma_min: f64, invertible: bool) -> f64 {
        match self {
            Self::SigmaPlus | Self::SigmaMinus => sigma_min,
            _ if !invertible => f64::INFINITY,
            Self::NormPlus | Self::NormMinus => 2.0 / sigma_min,
            Self::WuPlusIncorrect | Self::WuMinusIncorrect => 0.5 / sigma_min,
        }
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Holds,
    Fails,
    /// Within `MARGINAL_BAND` of the threshold; never counts as holding.
    Marginal,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Holds => "HOLDS",
            Self::Fails => "FAILS",
            Self::Marginal => "MARGINAL",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Soundness {
    Valid,
    KnownIncorrect,
}

impl fmt::Display for Soundness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Valid => "VALID",
            Self::KnownIncorrect => "KNOWN-INCORRECT",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConditionVerdict {
    pub id: ConditionId,
    /// `f64::INFINITY` when an inverse norm is requested of a singular matrix.
    pub statistic: f64,
    pub threshold: f64,
    pub outcome: Outcome,
    pub soundness: Soundness,
}

impl ConditionVerdict {
    pub fn holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }

    fn from_sigma(id: ConditionId, sigma_min: f64, invertible: bool) -> Self {
        let statistic = id.statistic(sigma_min, invertible);
        let threshold = id.threshold();
        let outcome = if (statistic - threshold).abs() <= MARGINAL_BAND {
            Outcome::Marginal
        } else if (statistic > threshold) == id.lower_bound() {
            Outcome::Holds
        } else {
            Outcome::Fails
        };
        Self {
            id,
            statistic,
            threshold,
            outcome,
            soundness: id.soundness(),
        }
    }
}

impl fmt::Display for ConditionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let relation = if self.id.lower_bound() { ">" } else { "<" };
        write!(
            f,
            "{:<12} {:<26} statistic {} {relation} {} {} {}",
            self.id.name(),
            self.id.statement(),
            self.statistic,
            self.threshold,
            self.outcome,
            self.soundness
        )
    }
}

/// `σ_min(A + shift·I)` and whether `A + shift·I` is invertible.
fn shifted_sigma(a: &DenseMatrix, shift: f64) -> Result<(f64, bool)> {
    let m = a.shifted(shift);
    let sigma_min = singular_stats(&m)?.sigma_min;
    let invertible = sigma_min > 0.0 && !det_sign(&m).is_singular();
    Ok((sigma_min, invertible))
}

pub fn check_condition(id: ConditionId, a: &DenseMatrix) -> Result<ConditionVerdict> {
    let (sigma_min, invertible) = shifted_sigma(a, id.shift())?;
    Ok(ConditionVerdict::from_sigma(id, sigma_min, invertible))
}

/// All six verdicts in `ConditionId::ALL` order.
pub fn check_all(a: &DenseMatrix) -> Result<Vec<ConditionVerdict>> {
    let plus = shifted_sigma(a, 1.0)?;
    let minus = shifted_sigma(a, -1.0)?;
    Ok(ConditionId::ALL
        .iter()
        .map(|&id| {
            let (sigma_min, invertible) = if id.shift() > 0.0 { plus } else { minus };
            ConditionVerdict::from_sigma(id, sigma_min, invertible)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wu_plus_on_zero_scalar() {
        let v = check_condition(ConditionId::WuPlusIncorrect, &DenseMatrix::zeros(1)).unwrap();
        assert_eq!(v.statistic, 0.5);
        assert_eq!(v.outcome, Outcome::Holds);
        assert_eq!(v.soundness, Soundness::KnownIncorrect);
    }

    #[test]
    fn sigma_plus_examples() {
        let v = check_condition(ConditionId::SigmaPlus, &DenseMatrix::zeros(1)).unwrap();
        assert_eq!((v.statistic, v.outcome), (1.0, Outcome::Fails));
        let v = check_condition(
            ConditionId::SigmaPlus,
            &DenseMatrix::identity(2).scaled(3.0),
        )
        .unwrap();
        assert_eq!((v.statistic, v.outcome), (4.0, Outcome::Holds));
    }

    #[test]
    fn norm_plus_marginal_at_threshold() {
        let a = DenseMatrix::diagonal(&[3.0, -3.0]).unwrap();
        let v = check_condition(ConditionId::NormPlus, &a).unwrap();
        assert_eq!(v.statistic, 1.0);
        assert_eq!(v.outcome, Outcome::Marginal);
    }

    #[test]
    fn check_all_zero_scalar() {
        let all = check_all(&DenseMatrix::zeros(1)).unwrap();
        let ids: Vec<ConditionId> = all.iter().map(|v| v.id).collect();
        assert_eq!(ids, ConditionId::ALL);
        for v in &all {
            match v.soundness {
                Soundness::KnownIncorrect => assert!(v.holds()),
                Soundness::Valid => assert_eq!(v.outcome, Outcome::Fails),
            }
        }
    }

    #[test]
    fn check_all_three_identity() {
        let all = check_all(&DenseMatrix::identity(2).scaled(3.0)).unwrap();
        assert!(all[0].holds() && all[1].holds());
        // A − I = 2I sits on the boundary of the MINUS pair.
        assert_eq!(all[2].outcome, Outcome::Marginal);
        assert_eq!(all[3].outcome, Outcome::Marginal);
    }

    #[test]
    fn check_all_diag_three_minus_three_is_all_boundary() {
        let all = check_all(&DenseMatrix::diagonal(&[3.0, -3.0]).unwrap()).unwrap();
        for v in &all[..4] {
            assert!(!v.holds());
            assert_eq!(v.outcome, Outcome::Marginal);
        }
    }

    #[test]
    fn singular_shift_fails_with_infinite_statistic() {
        let a = DenseMatrix::identity(2).scaled(-1.0);
        let v = check_condition(ConditionId::NormPlus, &a).unwrap();
        assert_eq!(v.statistic, f64::INFINITY);
        assert_eq!(v.outcome, Outcome::Fails);
        let v = check_condition(ConditionId::WuPlusIncorrect, &a).unwrap();
        assert_eq!((v.statistic, v.outcome), (f64::INFINITY, Outcome::Fails));
        let v = check_condition(ConditionId::SigmaPlus, &a).unwrap();
        assert_eq!((v.statistic, v.outcome), (0.0, Outcome::Fails));
    }

    #[test]
    fn scaled_identity_sigma_plus_is_exact() {
        for c in [1.5, 2.0, 7.25, 100.0] {
            let v = check_condition(ConditionId::SigmaPlus, &DenseMatrix::identity(4).scaled(c))
                .unwrap();
            assert!((v.statistic - (c + 1.0)).abs() <= 1e-12);
        }
    }

    #[test]
    fn display_mentions_tags() {
        let v = check_condition(ConditionId::WuMinusIncorrect, &DenseMatrix::zeros(1)).unwrap();
        let line = v.to_string();
        assert!(line.starts_with("wu_minus"));
        assert!(line.contains("statistic 0.5 < 1 HOLDS KNOWN-INCORRECT"));
    }
}
