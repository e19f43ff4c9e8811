//! Exact unique-solvability certification by vertex enumeration, and full
//! solution-set enumeration for a fixed right-hand side.
//!
//! `Ax − |x| = b` is uniquely solvable for every `b` when every matrix
//! `A + diag(t)` with `t ∈ [−1, 1]ⁿ` is invertible. `det(A + diag(t))` is
//! affine in each `tᵢ`, so it keeps one sign on the whole box exactly when
//! it keeps one nonzero sign on the `2ⁿ` vertices `t ∈ {±1}ⁿ`.
//!
//! The converse (a singular member of the box implies some `b` without a
//! unique solution) is taken from the surrounding literature rather than
//! proved here, so `NotUnique` rests on that result.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{det_sign, least_squares, DenseMatrix, DetSign, LuFactors, Vector};
use crate::solvers::{residual, AveProblem};

/// Default maximum order for enumeration (65 536 vertices).
pub const DEFAULT_CAP: usize = 16;
/// No cap above this is accepted.
pub const HARD_MAX_CAP: usize = 24;

/// Sign tolerance for accepting a pattern solution: `sᵢxᵢ ≥ −1e-12·(1+‖x‖∞)`.
pub const SIGN_TOLERANCE: f64 = 1e-12;
/// Two solutions closer than `1e-8·(1+‖x‖∞)` in ∞-distance are the same.
pub const DEDUPE_TOLERANCE: f64 = 1e-8;
/// Residual bound relative to `1 + ‖b‖∞` for listed solutions and for the
/// consistency test on singular pattern systems.
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;

/// A vector in `{−1, +1}ⁿ`.
///
/// Patterns are ordered lexicographically with `−1 < +1`; pattern index `k`
/// reads coordinate 0 from the most significant of `n` bits, bit 0 meaning
/// `−1`, so index order and lexicographic order coincide.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignPattern(Vec<i8>);

impl SignPattern {
    pub fn new(signs: Vec<i8>) -> Option<Self> {
        if signs.is_empty() || signs.iter().any(|&s| s != 1 && s != -1) {
            return None;
        }
        Some(Self(signs))
    }

    /// # Panics
    /// If `n == 0`, `n > 63`, or `index >= 2ⁿ`.
    pub fn from_index(n: usize, index: u64) -> Self {
        assert!((1..64).contains(&n), "pattern length must lie in 1..64");
        assert!(index < 1u64 << n, "pattern index out of range");
        Self(
            (0..n)
                .map(|i| if index >> (n - 1 - i) & 1 == 1 { 1 } else { -1 })
                .collect(),
        )
    }

    pub fn index(&self) -> u64 {
        self.0
            .iter()
            .fold(0u64, |acc, &s| (acc << 1) | u64::from(s == 1))
    }

    /// Signs of `x` with `sign(0) = +1`.
    pub fn of(x: &[f64]) -> Self {
        Self(x.iter().map(|&v| if v < 0.0 { -1 } else { 1 }).collect())
    }

    /// All `2ⁿ` patterns in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = SignPattern> {
        (0..1u64 << n).map(move |k| SignPattern::from_index(n, k))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|&s| f64::from(s)).collect()
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self
            .0
            .iter()
            .map(|&s| if s > 0 { "+1" } else { "-1" })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CertificateStatus {
    UniqueForAllB,
    NotUnique,
    CapExceeded,
}

impl CertificateStatus {
    /// Short label used in reports: `UNIQUE`, `NOT_UNIQUE` or `CAP`.
    pub fn label(self) -> &'static str {
        match self {
            Self::UniqueForAllB => "UNIQUE",
            Self::NotUnique => "NOT_UNIQUE",
            Self::CapExceeded => "CAP",
        }
    }
}

impl fmt::Display for CertificateStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::UniqueForAllB => "UNIQUE_FOR_ALL_B",
            Self::NotUnique => "NOT_UNIQUE",
            Self::CapExceeded => "CAP_EXCEEDED",
        })
    }
}

/// Evidence that some member of the box `A + diag(t)` is singular.
#[derive(Clone, Debug, PartialEq)]
pub enum NotUniqueWitness {
    /// `A + diag(t)` is numerically singular at this vertex.
    SingularVertex(SignPattern),
    /// Two vertices whose determinants have opposite signs; by continuity
    /// the box contains a singular matrix between them.
    OppositeSigns {
        positive: SignPattern,
        negative: SignPattern,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum UniquenessCertificate {
    UniqueForAllB {
        /// Common determinant sign of all vertices.
        sign: i8,
        /// Vertex with the smallest `ln|det|`, ties broken lexicographically.
        weakest_vertex: SignPattern,
        min_log_abs_det: f64,
    },
    NotUnique(NotUniqueWitness),
    CapExceeded {
        n: usize,
        cap: usize,
    },
}

impl UniquenessCertificate {
    pub fn status(&self) -> CertificateStatus {
        match self {
            Self::UniqueForAllB { .. } => CertificateStatus::UniqueForAllB,
            Self::NotUnique(_) => CertificateStatus::NotUnique,
            Self::CapExceeded { .. } => CertificateStatus::CapExceeded,
        }
    }

    pub fn is_unique(&self) -> bool {
        matches!(self, Self::UniqueForAllB { .. })
    }

    /// Re-checks the witness against `a` with fresh determinant evaluations.
    pub fn verify(&self, a: &DenseMatrix) -> bool {
        let sign_at = |t: &SignPattern| {
            (t.len() == a.order()).then(|| det_sign(&a.plus_diagonal(&t.to_f64())).sign)
        };
        match self {
            Self::UniqueForAllB {
                sign,
                weakest_vertex,
                ..
            } => sign_at(weakest_vertex) == Some(*sign),
            Self::NotUnique(NotUniqueWitness::SingularVertex(t)) => sign_at(t) == Some(0),
            Self::NotUnique(NotUniqueWitness::OppositeSigns { positive, negative }) => {
                sign_at(positive) == Some(1) && sign_at(negative) == Some(-1)
            }
            Self::CapExceeded { n, cap } => *n == a.order() && n > cap,
        }
    }
}

impl fmt::Display for UniquenessCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "status: {}", self.status())?;
        match self {
            Self::UniqueForAllB {
                sign,
                weakest_vertex,
                min_log_abs_det,
            } => {
                writeln!(f, "common determinant sign: {sign:+}")?;
                write!(
                    f,
                    "weakest vertex: t = {weakest_vertex} (ln|det| = {min_log_abs_det})"
                )
            }
            Self::NotUnique(NotUniqueWitness::SingularVertex(t)) => {
                write!(f, "witness: singular vertex t = {t}")
            }
            Self::NotUnique(NotUniqueWitness::OppositeSigns { positive, negative }) => {
                write!(
                    f,
                    "witness: det > 0 at t = {positive}, det < 0 at t = {negative}"
                )
            }
            Self::CapExceeded { n, cap } => write!(f, "order {n} exceeds cap {cap}"),
        }
    }
}

/// Partial aggregate of vertex determinant signs.
///
/// `merge` is commutative and associative, so any partition and order of
/// the vertex set yields the same summary.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexSummary {
    n: usize,
    first_singular: Option<u64>,
    first_positive: Option<u64>,
    first_negative: Option<u64>,
    weakest: Option<(f64, u64)>,
}

impl VertexSummary {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            first_singular: None,
            first_positive: None,
            first_negative: None,
            weakest: None,
        }
    }

    pub fn observe(mut self, index: u64, det: DetSign) -> Self {
        let slot = match det.sign {
            0 => &mut self.first_singular,
            1 => &mut self.first_positive,
            _ => &mut self.first_negative,
        };
        *slot = min_option(*slot, Some(index));
        if det.sign != 0 {
            self.weakest = min_weakest(self.weakest, Some((det.log_abs_det, index)));
        }
        self
    }

    pub fn merge(self, other: Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            first_singular: min_option(self.first_singular, other.first_singular),
            first_positive: min_option(self.first_positive, other.first_positive),
            first_negative: min_option(self.first_negative, other.first_negative),
            weakest: min_weakest(self.weakest, other.weakest),
        }
    }

    /// Final certificate, assuming every vertex has been observed.
    pub fn into_certificate(self) -> UniquenessCertificate {
        let pattern = |k| SignPattern::from_index(self.n, k);
        if let Some(k) = self.first_singular {
            return UniquenessCertificate::NotUnique(NotUniqueWitness::SingularVertex(pattern(k)));
        }
        match (self.first_positive, self.first_negative) {
            (Some(p), Some(q)) => {
                UniquenessCertificate::NotUnique(NotUniqueWitness::OppositeSigns {
                    positive: pattern(p),
                    negative: pattern(q),
                })
            }
            (pos, _) => {
                let (log, k) = self.weakest.expect("at least one vertex observed");
                UniquenessCertificate::UniqueForAllB {
                    sign: if pos.is_some() { 1 } else { -1 },
                    weakest_vertex: pattern(k),
                    min_log_abs_det: log,
                }
            }
        }
    }
}

fn min_option(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn min_weakest(a: Option<(f64, u64)>, b: Option<(f64, u64)>) -> Option<(f64, u64)> {
    match (a, b) {
        (Some(x), Some(y)) => {
            let ord = x.0.total_cmp(&y.0).then(x.1.cmp(&y.1));
            Some(if ord.is_le() { x } else { y })
        }
        (x, None) => x,
        (None, y) => y,
    }
}

/// Determinant sign of the vertex matrix `A + diag(t)` for pattern index `k`.
pub fn vertex_det_sign(a: &DenseMatrix, index: u64) -> DetSign {
    let t = SignPattern::from_index(a.order(), index).to_f64();
    det_sign(&a.plus_diagonal(&t))
}

fn check_cap(cap: usize) -> Result<()> {
    if cap == 0 || cap > HARD_MAX_CAP {
        return Err(Error::InvalidCap(cap));
    }
    Ok(())
}

/// Certifies whether `Ax − |x| = b` has exactly one solution for every `b`.
///
/// Returns `CapExceeded` without enumerating when `n > cap`.
pub fn certify_uniqueness(a: &DenseMatrix, cap: usize) -> Result<UniquenessCertificate> {
    check_cap(cap)?;
    let n = a.order();
    if n > cap {
        return Ok(UniquenessCertificate::CapExceeded { n, cap });
    }
    let summary = (0..1u64 << n)
        .into_par_iter()
        .fold(
            || VertexSummary::empty(n),
            |acc, k| acc.observe(k, vertex_det_sign(a, k)),
        )
        .reduce(|| VertexSummary::empty(n), VertexSummary::merge);
    Ok(summary.into_certificate())
}

/// Every solution of one AVE instance, found orthant by orthant.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionSet {
    /// Isolated solutions with the first pattern (lexicographically) that
    /// produced them.
    pub solutions: Vec<(Vector, SignPattern)>,
    /// Set when some pattern system `(A − diag(s))x = b` is singular yet
    /// consistent, so a continuum of solutions may exist.
    pub degenerate: bool,
    /// Patterns whose systems were singular and consistent.
    pub degenerate_patterns: Vec<SignPattern>,
}

impl SolutionSet {
    pub fn count(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = &Vector> {
        self.solutions.iter().map(|(x, _)| x)
    }
}

impl fmt::Display for SolutionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "count: {}", self.count())?;
        write!(f, "degenerate: {}", self.degenerate)?;
        for (x, s) in &self.solutions {
            let xs: Vec<String> = x.iter().map(|v| format!("{v}")).collect();
            write!(f, "\nx = [{}] pattern {s}", xs.join(", "))?;
        }
        for s in &self.degenerate_patterns {
            write!(f, "\nsingular consistent pattern {s}")?;
        }
        Ok(())
    }
}

enum PatternOutcome {
    Solution(Vector),
    Degenerate,
    Nothing,
}

fn solve_pattern(problem: &AveProblem, index: u64) -> Result<PatternOutcome> {
    let a = problem.matrix();
    let b = problem.rhs();
    let s = SignPattern::from_index(a.order(), index);
    let neg_s: Vec<f64> = s.signs().iter().map(|&v| -f64::from(v)).collect();
    let m = a.plus_diagonal(&neg_s);
    let tol_b = RESIDUAL_TOLERANCE * (1.0 + b.norm_inf());

    let lu = LuFactors::new(&m);
    if lu.is_singular() {
        let x = least_squares(&m, b)?;
        let r = m.mul_slice(&x);
        let consistent = r
            .iter()
            .zip(b.iter())
            .all(|(ri, bi)| (ri - bi).abs() <= tol_b);
        return Ok(if consistent {
            PatternOutcome::Degenerate
        } else {
            PatternOutcome::Nothing
        });
    }
    let x = lu.solve(b)?;
    let floor = -SIGN_TOLERANCE * (1.0 + x.norm_inf());
    let sign_ok = x
        .iter()
        .zip(s.signs())
        .all(|(&xi, &si)| f64::from(si) * xi >= floor);
    if sign_ok && residual(problem, &x) <= tol_b {
        Ok(PatternOutcome::Solution(x))
    } else {
        Ok(PatternOutcome::Nothing)
    }
}

/// Enumerates all solutions with the default cap.
pub fn enumerate_solutions(problem: &AveProblem) -> Result<SolutionSet> {
    enumerate_solutions_with_cap(problem, DEFAULT_CAP)
}

/// Solves `(A − diag(s))x = b` for each `s ∈ {±1}ⁿ` and keeps the
/// sign-consistent solutions, deduplicated across orthant boundaries.
pub fn enumerate_solutions_with_cap(problem: &AveProblem, cap: usize) -> Result<SolutionSet> {
    check_cap(cap)?;
    let n = problem.order();
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let outcomes: Vec<Result<PatternOutcome>> = (0..1u64 << n)
        .into_par_iter()
        .map(|k| solve_pattern(problem, k))
        .collect();

    let mut set = SolutionSet {
        solutions: Vec::new(),
        degenerate: false,
        degenerate_patterns: Vec::new(),
    };
    for (k, outcome) in outcomes.into_iter().enumerate() {
        match outcome? {
            PatternOutcome::Solution(x) => {
                let dup = set.solutions.iter().any(|(y, _)| {
                    x.dist_inf(y) <= DEDUPE_TOLERANCE * (1.0 + x.norm_inf().max(y.norm_inf()))
                });
                if !dup {
                    set.solutions
                        .push((x, SignPattern::from_index(n, k as u64)));
                }
            }
            PatternOutcome::Degenerate => {
                set.degenerate = true;
                set.degenerate_patterns
                    .push(SignPattern::from_index(n, k as u64));
            }
            PatternOutcome::Nothing => {}
        }
    }
    Ok(set)
}
