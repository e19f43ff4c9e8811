//! Iterative solvers for `Ax − |x| = b`.
//!
//! The two Picard schemes rewrite the equation as a fixed point of
//!
//! * `x ← (A + I)⁻¹ (b + x + |x|)`
//! * `x ← (A − I)⁻¹ (b + |x| − x)`
//!
//! Both `x ↦ x + |x|` and `x ↦ |x| − x` are 2-Lipschitz, so the maps
//! contract with factor `q = 2‖(A ± I)⁻¹‖₂` whenever `q < 1`. That factor is
//! reported as `contraction_estimate`; the solvers still run when `q ≥ 1`.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{singular_stats, DenseMatrix, LuFactors, Vector};
use crate::oracle::SignPattern;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 1000;

/// One instance of `Ax − |x| = b`.
#[derive(Clone, Debug, PartialEq)]
pub struct AveProblem {
    a: DenseMatrix,
    b: Vector,
}

impl AveProblem {
    pub fn new(a: DenseMatrix, b: Vector) -> Result<Self> {
        if b.len() != a.order() {
            return Err(Error::DimensionMismatch {
                expected: a.order(),
                actual: b.len(),
            });
        }
        Ok(Self { a, b })
    }

    pub fn order(&self) -> usize {
        self.a.order()
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.a
    }

    pub fn rhs(&self) -> &Vector {
        &self.b
    }
}

/// `‖Ax − |x| − b‖∞`.
///
/// # Panics
/// If `x` does not match the problem order.
pub fn residual(problem: &AveProblem, x: &[f64]) -> f64 {
    problem
        .a
        .mul_slice(x)
        .iter()
        .zip(x)
        .zip(problem.b.iter())
        .map(|((ax, xi), bi)| (ax - xi.abs() - bi).abs())
        .fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    PicardPlus,
    PicardMinus,
    Newton,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::PicardPlus => "picard-plus",
            Self::PicardMinus => "picard-minus",
            Self::Newton => "newton",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StopReason {
    Converged,
    MaxIterations,
    /// Newton revisited a sign pattern.
    Cycle,
    /// Newton hit a singular `A − diag(s)`.
    SingularPattern,
    /// An iterate overflowed; `x` holds the last finite iterate.
    Diverged,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveResult {
    pub x: Vector,
    /// `‖Ax − |x| − b‖∞` at `x`.
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    pub method: Method,
    /// `2‖(A ± I)⁻¹‖₂` for the Picard schemes.
    pub contraction_estimate: Option<f64>,
    pub stop: StopReason,
    pub singular_pattern: Option<SignPattern>,
}

impl fmt::Display for SolveResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<String> = self.x.iter().map(|v| format!("{v}")).collect();
        writeln!(f, "method: {}", self.method)?;
        writeln!(f, "x: [{}]", xs.join(", "))?;
        writeln!(f, "residual: {}", self.residual)?;
        writeln!(f, "iterations: {}", self.iterations)?;
        match self.contraction_estimate {
            Some(q) => writeln!(f, "contraction_estimate: {q}")?,
            None => writeln!(f, "contraction_estimate: n/a")?,
        }
        if let Some(s) = &self.singular_pattern {
            writeln!(f, "singular pattern: {s}")?;
        }
        write!(f, "converged: {} ({:?})", self.converged, self.stop)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PicardBranch {
    /// Iterates with `(A + I)⁻¹`.
    Plus,
    /// Iterates with `(A − I)⁻¹`.
    Minus,
}

/// A factored Picard map for one problem.
pub struct PicardIteration<'a> {
    problem: &'a AveProblem,
    branch: PicardBranch,
    lu: LuFactors,
    contraction_estimate: f64,
}

impl<'a> PicardIteration<'a> {
    pub fn new(problem: &'a AveProblem, branch: PicardBranch) -> Result<Self> {
        let shift = match branch {
            PicardBranch::Plus => 1.0,
            PicardBranch::Minus => -1.0,
        };
        let m = problem.a.shifted(shift);
        let lu = LuFactors::new(&m);
        if lu.is_singular() {
            // Surface the pivot details through the solve error.
            lu.solve(&vec![0.0; m.order()])?;
        }
        let sigma_min = singular_stats(&m)?.sigma_min;
        Ok(Self {
            problem,
            branch,
            lu,
            contraction_estimate: 2.0 / sigma_min,
        })
    }

    pub fn contraction_estimate(&self) -> f64 {
        self.contraction_estimate
    }

    /// One application of the fixed-point map.
    pub fn step(&self, x: &[f64]) -> Result<Vector> {
        let rhs: Vec<f64> = x
            .iter()
            .zip(self.problem.b.iter())
            .map(|(&xi, &bi)| match self.branch {
                PicardBranch::Plus => bi + xi + xi.abs(),
                PicardBranch::Minus => bi + xi.abs() - xi,
            })
            .collect();
        self.lu.solve(&rhs)
    }

    pub fn run(&self, x0: &Vector, tol: f64, max_iter: usize) -> Result<SolveResult> {
        check_start(self.problem, x0)?;
        let method = match self.branch {
            PicardBranch::Plus => Method::PicardPlus,
            PicardBranch::Minus => Method::PicardMinus,
        };
        let mut x = x0.clone();
        let mut res = residual(self.problem, &x);
        let mut iterations = 0;
        let mut stop = StopReason::MaxIterations;
        if res <= tol {
            stop = StopReason::Converged;
        }
        while stop != StopReason::Converged && iterations < max_iter {
            let next = match self.step(&x) {
                Ok(next) => next,
                Err(Error::NonFinite { .. }) => {
                    stop = StopReason::Diverged;
                    break;
                }
                Err(e) => return Err(e),
            };
            let next_res = residual(self.problem, &next);
            if !next_res.is_finite() {
                stop = StopReason::Diverged;
                break;
            }
            x = next;
            res = next_res;
            iterations += 1;
            if res <= tol {
                stop = StopReason::Converged;
            }
        }
        Ok(SolveResult {
            x,
            residual: res,
            iterations,
            converged: stop == StopReason::Converged,
            method,
            contraction_estimate: Some(self.contraction_estimate),
            stop,
            singular_pattern: None,
        })
    }
}

fn check_start(problem: &AveProblem, x0: &Vector) -> Result<()> {
    if x0.len() != problem.order() {
        return Err(Error::DimensionMismatch {
            expected: problem.order(),
            actual: x0.len(),
        });
    }
    Ok(())
}

/// Fixed-point iteration `x ← (A + I)⁻¹ (b + x + |x|)`.
///
/// Errors when `A + I` is singular.
pub fn picard_plus(
    problem: &AveProblem,
    x0: &Vector,
    tol: f64,
    max_iter: usize,
) -> Result<SolveResult> {
    PicardIteration::new(problem, PicardBranch::Plus)?.run(x0, tol, max_iter)
}

/// Fixed-point iteration `x ← (A − I)⁻¹ (b + |x| − x)`.
///
/// Errors when `A − I` is singular.
pub fn picard_minus(
    problem: &AveProblem,
    x0: &Vector,
    tol: f64,
    max_iter: usize,
) -> Result<SolveResult> {
    PicardIteration::new(problem, PicardBranch::Minus)?.run(x0, tol, max_iter)
}

/// Generalized Newton: `x ← (A − diag(sign(x)))⁻¹ b` with `sign(0) = +1`.
///
/// Stops on a small residual, a revisited sign pattern, a singular iteration
/// matrix, or `max_iter`. Only a dimension mismatch is an error.
pub fn generalized_newton(
    problem: &AveProblem,
    x0: &Vector,
    tol: f64,
    max_iter: usize,
) -> Result<SolveResult> {
    check_start(problem, x0)?;
    let mut x = x0.clone();
    let mut res = residual(problem, &x);
    let mut iterations = 0;
    let mut singular_pattern = None;
    let mut visited = HashSet::new();
    let mut pattern = SignPattern::of(&x);
    visited.insert(pattern.clone());

    // The residual test follows each solve, so at least one step is taken
    // whenever max_iter > 0, even from an exact solution.
    let mut stop = if max_iter == 0 && res <= tol {
        StopReason::Converged
    } else {
        StopReason::MaxIterations
    };
    while stop == StopReason::MaxIterations && iterations < max_iter {
        let neg_s: Vec<f64> = pattern.signs().iter().map(|&s| -f64::from(s)).collect();
        let lu = LuFactors::new(&problem.a.plus_diagonal(&neg_s));
        if lu.is_singular() {
            stop = StopReason::SingularPattern;
            singular_pattern = Some(pattern);
            break;
        }
        x = lu.solve(&problem.b)?;
        res = residual(problem, &x);
        iterations += 1;
        if res <= tol {
            stop = StopReason::Converged;
            break;
        }
        pattern = SignPattern::of(&x);
        if !visited.insert(pattern.clone()) {
            stop = StopReason::Cycle;
            break;
        }
    }
    Ok(SolveResult {
        x,
        residual: res,
        iterations,
        converged: stop == StopReason::Converged,
        method: Method::Newton,
        contraction_estimate: None,
        stop,
        singular_pattern,
    })
}
