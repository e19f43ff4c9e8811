//! Seeded random-matrix campaigns that score every condition against the
//! exact oracle.
//!
//! Sample `i` of a spec with seed `s` is drawn from a fresh xoshiro256++
//! generator seeded with `s ^ i` through `seed_from_u64` (SplitMix64
//! expansion of the 64-bit seed into the 256-bit state). Uniform variates are
//! `(next_u64() >> 11) · 2⁻⁵³`; normal variates come in Box–Muller pairs
//! `√(−2 ln(1 − u₁))·cos(2πu₂)`, `√(−2 ln(1 − u₁))·sin(2πu₂)`. Entries are
//! filled row-major.

use std::fmt;
use std::io;
use std::path::Path;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;

use crate::conditions::{check_all, ConditionId, Outcome, Soundness};
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::oracle::{certify_uniqueness, CertificateStatus, DEFAULT_CAP};
use crate::problem_file;

/// Exact CSV header written by [`write_report`].
pub const CSV_HEADER: &str =
    "sample_id,n,sigma_plus,norm_plus,sigma_minus,norm_minus,wu_plus,wu_minus,oracle,all_valid_sound";

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EnsembleKind {
    /// I.i.d. standard normal entries.
    Gaussian,
    /// Gaussian plus `shift · I`.
    ShiftedGaussian { shift: f64 },
    /// Uniform `[−1, 1]` entries with each diagonal replaced by the row's
    /// absolute sum plus 3.
    DiagonalDominant,
    /// The built-in matrices of [`fixture_matrices`], in order.
    Fixture,
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Gaussian => f.write_str("gaussian"),
            Self::ShiftedGaussian { shift } => write!(f, "shifted-gaussian(c={shift})"),
            Self::DiagonalDominant => f.write_str("diagonal-dominant"),
            Self::Fixture => f.write_str("fixture"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
}

impl EnsembleSpec {
    pub fn new(kind: EnsembleKind, n: usize, samples: usize, seed: u64) -> Self {
        Self {
            kind,
            n,
            samples,
            seed,
        }
    }

    /// The fixture ensemble; `n` is the largest fixture order.
    pub fn fixture() -> Self {
        let fixtures = fixture_matrices();
        Self {
            kind: EnsembleKind::Fixture,
            n: fixtures.iter().map(DenseMatrix::order).max().unwrap_or(1),
            samples: fixtures.len(),
            seed: 0,
        }
    }
}

/// Hand-picked matrices: `[0]` (both known-incorrect conditions hold, no
/// unique solvability), `diag(3, −3)` (uniquely solvable with every valid
/// condition exactly on its boundary), the swap matrix (singular vertex) and
/// `3I`.
pub fn fixture_matrices() -> Vec<DenseMatrix> {
    vec![
        DenseMatrix::zeros(1),
        DenseMatrix::diagonal(&[3.0, -3.0]).expect("finite"),
        DenseMatrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).expect("finite"),
        DenseMatrix::identity(2).scaled(3.0),
    ]
}

struct SampleRng(Xoshiro256PlusPlus);

impl SampleRng {
    fn new(seed: u64, index: usize) -> Self {
        Self(Xoshiro256PlusPlus::seed_from_u64(seed ^ index as u64))
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    fn uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn normal_pair(&mut self) -> (f64, f64) {
        let u1 = self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * (1.0 - u1).ln()).sqrt();
        let theta = std::f64::consts::TAU * u2;
        (r * theta.cos(), r * theta.sin())
    }

    fn normals(&mut self, count: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(count + 1);
        while out.len() < count {
            let (z0, z1) = self.normal_pair();
            out.push(z0);
            out.push(z1);
        }
        out.truncate(count);
        out
    }
}

/// Sample `index` of `spec`: a pure function of `(kind, n, seed, index)`.
///
/// # Panics
/// If `index >= spec.samples` or `spec.n == 0`.
pub fn generate(spec: &EnsembleSpec, index: usize) -> DenseMatrix {
    assert!(index < spec.samples, "sample index out of range");
    let n = spec.n;
    let mut rng = SampleRng::new(spec.seed, index);
    match spec.kind {
        EnsembleKind::Gaussian => {
            DenseMatrix::from_row_major(n, rng.normals(n * n)).expect("finite normals")
        }
        EnsembleKind::ShiftedGaussian { shift } => {
            DenseMatrix::from_row_major(n, rng.normals(n * n))
                .expect("finite normals")
                .shifted(shift)
        }
        EnsembleKind::DiagonalDominant => {
            let mut data: Vec<f64> = (0..n * n).map(|_| 2.0 * rng.uniform() - 1.0).collect();
            for i in 0..n {
                let row_sum: f64 = data[i * n..(i + 1) * n].iter().map(|v| v.abs()).sum();
                data[i * n + i] = row_sum + 3.0;
            }
            DenseMatrix::from_row_major(n, data).expect("finite uniforms")
        }
        EnsembleKind::Fixture => fixture_matrices().swap_remove(index),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CampaignRow {
    pub sample_id: usize,
    pub n: usize,
    /// One outcome per condition, in `ConditionId::ALL` order.
    pub verdicts: [Outcome; 6],
    pub oracle: CertificateStatus,
    /// Per valid condition (`ConditionId::VALID` order): holding implies the
    /// oracle certified unique solvability.
    pub sound: [bool; 4],
}

impl CampaignRow {
    pub fn outcome(&self, id: ConditionId) -> Outcome {
        self.verdicts[ConditionId::ALL
            .iter()
            .position(|&c| c == id)
            .expect("known id")]
    }

    pub fn all_valid_sound(&self) -> bool {
        self.sound.iter().all(|&s| s)
    }

    /// A known-incorrect condition holds on a matrix without unique solvability.
    pub fn known_incorrect_false_positive(&self) -> bool {
        self.oracle == CertificateStatus::NotUnique
            && ConditionId::ALL
                .iter()
                .zip(&self.verdicts)
                .any(|(id, &o)| id.soundness() == Soundness::KnownIncorrect && o == Outcome::Holds)
    }

    pub fn to_csv_line(&self) -> String {
        let mut cells = vec![self.sample_id.to_string(), self.n.to_string()];
        cells.extend(self.verdicts.iter().map(ToString::to_string));
        cells.push(self.oracle.label().to_string());
        cells.push(self.all_valid_sound().to_string());
        cells.join(",")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConditionTally {
    pub id: ConditionId,
    pub fired: usize,
    /// Fired on a matrix the oracle certified as uniquely solvable.
    pub sound_fired: usize,
    pub marginal: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CampaignSummary {
    pub samples: usize,
    pub per_condition: Vec<ConditionTally>,
    pub oracle_unique: usize,
    pub oracle_not_unique: usize,
    /// Rows where a known-incorrect condition holds but the oracle says
    /// `NOT_UNIQUE`.
    pub known_incorrect_false_positives: usize,
}

impl CampaignSummary {
    pub fn from_rows(rows: &[CampaignRow]) -> Self {
        let per_condition = ConditionId::ALL
            .iter()
            .enumerate()
            .map(|(i, &id)| {
                let fired = rows.iter().filter(|r| r.verdicts[i] == Outcome::Holds);
                ConditionTally {
                    id,
                    fired: fired.clone().count(),
                    sound_fired: fired
                        .filter(|r| r.oracle == CertificateStatus::UniqueForAllB)
                        .count(),
                    marginal: rows
                        .iter()
                        .filter(|r| r.verdicts[i] == Outcome::Marginal)
                        .count(),
                }
            })
            .collect();
        let status_count = |s| rows.iter().filter(|r| r.oracle == s).count();
        Self {
            samples: rows.len(),
            per_condition,
            oracle_unique: status_count(CertificateStatus::UniqueForAllB),
            oracle_not_unique: status_count(CertificateStatus::NotUnique),
            known_incorrect_false_positives: rows
                .iter()
                .filter(|r| r.known_incorrect_false_positive())
                .count(),
        }
    }

    pub fn tally(&self, id: ConditionId) -> &ConditionTally {
        self.per_condition
            .iter()
            .find(|t| t.id == id)
            .expect("every condition is tallied")
    }
}

impl fmt::Display for CampaignSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "samples: {}  oracle unique: {}  oracle not unique: {}",
            self.samples, self.oracle_unique, self.oracle_not_unique
        )?;
        for t in &self.per_condition {
            writeln!(
                f,
                "{:<12} {:<15} fired {:>6}  sound {:>6}  marginal {:>6}",
                t.id.name(),
                t.id.soundness().to_string(),
                t.fired,
                t.sound_fired,
                t.marginal
            )?;
        }
        write!(
            f,
            "known-incorrect false positives: {}",
            self.known_incorrect_false_positives
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Campaign {
    pub spec: EnsembleSpec,
    pub rows: Vec<CampaignRow>,
    pub summary: CampaignSummary,
}

/// Scores one matrix.
pub fn evaluate(sample_id: usize, a: &DenseMatrix, cap: usize) -> Result<CampaignRow> {
    let verdicts = check_all(a)?;
    let oracle = certify_uniqueness(a, cap)?.status();
    let mut outcomes = [Outcome::Fails; 6];
    for (slot, v) in outcomes.iter_mut().zip(&verdicts) {
        *slot = v.outcome;
    }
    let mut sound = [true; 4];
    for (slot, v) in sound.iter_mut().zip(&verdicts[..4]) {
        *slot = !v.holds() || oracle == CertificateStatus::UniqueForAllB;
    }
    Ok(CampaignRow {
        sample_id,
        n: a.order(),
        verdicts: outcomes,
        oracle,
        sound,
    })
}

pub fn run_campaign(spec: &EnsembleSpec) -> Result<Campaign> {
    run_campaign_with_cap(spec, DEFAULT_CAP)
}

/// Runs every sample of `spec` against the oracle.
///
/// Fails with `SoundnessViolation` (carrying the offending matrix) the first
/// time, by sample id, a valid condition holds on a matrix the oracle does
/// not certify.
pub fn run_campaign_with_cap(spec: &EnsembleSpec, cap: usize) -> Result<Campaign> {
    if spec.n > cap {
        return Err(Error::CapExceeded { n: spec.n, cap });
    }
    let rows = (0..spec.samples)
        .into_par_iter()
        .map(|i| evaluate(i, &generate(spec, i), cap))
        .collect::<Result<Vec<_>>>()?;

    if let Some(row) = rows.iter().find(|r| !r.all_valid_sound()) {
        let idx = row.sound.iter().position(|&s| !s).expect("unsound row");
        return Err(Error::SoundnessViolation {
            sample_id: row.sample_id,
            condition: ConditionId::VALID[idx].name().to_string(),
            oracle: row.oracle.to_string(),
            reproducer: problem_file::emit(&generate(spec, row.sample_id), None),
        });
    }
    let summary = CampaignSummary::from_rows(&rows);
    Ok(Campaign {
        spec: *spec,
        rows,
        summary,
    })
}

/// CSV text: the header plus one line per row, `\n` terminated.
pub fn render_csv(rows: &[CampaignRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv_line());
        out.push('\n');
    }
    out
}

pub fn write_report(campaign: &Campaign, path: &Path) -> io::Result<()> {
    std::fs::write(path, render_csv(&campaign.rows))
}
