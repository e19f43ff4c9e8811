//! Dense square matrices and the handful of factorizations the rest of the
//! crate needs: singular values (one-sided Jacobi), pivoted LU for linear
//! solves and determinant signs, and a minimum-norm least-squares solve.
//!
//! Every routine shares one notion of numerical singularity: an LU pivot `p`
//! is treated as zero when `|p| <= 1e-12 * n * max|m_ij|`.

use std::fmt;
use std::ops::{Deref, Index};

use crate::error::{Error, Result};

/// Relative pivot threshold, scaled by `n * max|m_ij|`.
pub const PIVOT_RELATIVE_THRESHOLD: f64 = 1e-12;

const MAX_JACOBI_SWEEPS: usize = 100;

/// A finite real vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if let Some(index) = entries.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self(entries))
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub(crate) fn from_raw(entries: Vec<f64>) -> Self {
        debug_assert!(entries.iter().all(|v| v.is_finite()));
        Self(entries)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn norm_inf(&self) -> f64 {
        norm_inf(&self.0)
    }

    pub fn norm2(&self) -> f64 {
        norm2(&self.0)
    }

    /// `‖self − other‖∞`.
    pub fn dist_inf(&self, other: &Vector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// `‖self − other‖₂`.
    pub fn dist2(&self, other: &Vector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

impl Deref for Vector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for Vector {
    type Error = Error;

    fn try_from(entries: Vec<f64>) -> Result<Self> {
        Self::new(entries)
    }
}

pub(crate) fn norm_inf(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub(crate) fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// A dense `n × n` real matrix stored row-major. All entries are finite and
/// `n >= 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                actual: data.len(),
            });
        }
        if let Some(index) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { n, data })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::from_row_major(n, data)
    }

    /// # Panics
    /// If `n == 0`.
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "matrix order must be at least 1");
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// The `n × n` identity.
    ///
    /// # Panics
    /// If `n == 0`.
    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![1.0; n]).expect("identity has finite entries")
    }

    pub fn diagonal(diag: &[f64]) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut data = vec![0.0; n * n];
        for (i, &d) in diag.iter().enumerate() {
            data[i * n + i] = d;
        }
        Self::from_row_major(n, data)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn as_row_major(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.n)
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        norm_inf(&self.data)
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        Self { n, data }
    }

    /// `self + shift · I`.
    pub fn shifted(&self, shift: f64) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            out.data[i * self.n + i] += shift;
        }
        out
    }

    /// `self + diag(d)`.
    pub fn plus_diagonal(&self, d: &[f64]) -> Self {
        assert_eq!(d.len(), self.n, "diagonal length must match matrix order");
        let mut out = self.clone();
        for (i, &di) in d.iter().enumerate() {
            out.data[i * self.n + i] += di;
        }
        out
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn try_add(&self, other: &DenseMatrix) -> Result<Self> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: other.n,
            });
        }
        Ok(Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// `M v` on raw slices; `v.len()` must equal the order.
    pub fn mul_slice(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.n, "vector length must match matrix order");
        self.rows()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul_vec(&self, v: &Vector) -> Vector {
        Vector::from_raw(self.mul_slice(v))
    }

    /// The pivot magnitude at or below which a matrix is declared singular.
    pub fn singularity_threshold(&self) -> f64 {
        PIVOT_RELATIVE_THRESHOLD * self.n as f64 * self.max_abs()
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// The `n × n` identity matrix.
pub fn identity(n: usize) -> DenseMatrix {
    DenseMatrix::identity(n)
}

/// `m + shift · I`.
pub fn shifted(m: &DenseMatrix, shift: f64) -> DenseMatrix {
    m.shifted(shift)
}

/// Extreme singular values. `sigma_max` is the spectral norm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingularStats {
    pub sigma_min: f64,
    pub sigma_max: f64,
}

impl SingularStats {
    pub fn spectral_norm(&self) -> f64 {
        self.sigma_max
    }
}

/// Singular value decomposition `M = U Σ Vᵀ` with column-major `u` and `v`.
/// Columns of `u` belonging to zero singular values are left zero.
pub(crate) struct Svd {
    n: usize,
    u: Vec<f64>,
    sigma: Vec<f64>,
    v: Vec<f64>,
}

/// One-sided (Hestenes) Jacobi SVD.
pub(crate) fn jacobi_svd(m: &DenseMatrix) -> Result<Svd> {
    let n = m.n;
    let scale = m.max_abs();
    if scale == 0.0 {
        return Ok(Svd {
            n,
            u: vec![0.0; n * n],
            sigma: vec![0.0; n],
            v: identity(n).transpose().data,
        });
    }
    // Column-major working copy of M / scale.
    let mut w = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            w[j * n + i] = m.data[i * n + j] / scale;
        }
    }
    let mut v = identity(n).data;
    // Orthogonality test must sit above the rounding floor of an n-term dot product.
    let tol = n as f64 * f64::EPSILON;
    // Rotations preserve the Frobenius norm. A column below tol of it is zero
    // to working precision and would otherwise shrink forever without ever
    // passing the relative test.
    let negligible = tol * tol * w.iter().map(|x| x * x).sum::<f64>();

    let mut converged = n == 1;
    for _ in 0..MAX_JACOBI_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let (alpha, beta, gamma) = {
                    let cp = &w[p * n..(p + 1) * n];
                    let cq = &w[q * n..(q + 1) * n];
                    let mut a = 0.0;
                    let mut b = 0.0;
                    let mut g = 0.0;
                    for k in 0..n {
                        a += cp[k] * cp[k];
                        b += cq[k] * cq[k];
                        g += cp[k] * cq[k];
                    }
                    (a, b, g)
                };
                if alpha <= negligible || beta <= negligible {
                    continue;
                }
                if gamma.abs() <= tol * alpha.sqrt() * beta.sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate_columns(&mut w, n, p, q, c, s);
                rotate_columns(&mut v, n, p, q, c, s);
            }
        }
        if !rotated {
            converged = true;
        }
    }
    if !converged {
        return Err(Error::NumericalFailure(format!(
            "Jacobi SVD did not converge within {MAX_JACOBI_SWEEPS} sweeps"
        )));
    }

    let mut sigma = vec![0.0; n];
    let mut u = vec![0.0; n * n];
    for j in 0..n {
        let col = &w[j * n..(j + 1) * n];
        let norm = norm2(col);
        sigma[j] = norm * scale;
        if norm > 0.0 {
            for k in 0..n {
                u[j * n + k] = col[k] / norm;
            }
        }
    }
    Ok(Svd { n, u, sigma, v })
}

fn rotate_columns(a: &mut [f64], n: usize, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..n {
        let ap = a[p * n + k];
        let aq = a[q * n + k];
        a[p * n + k] = c * ap - s * aq;
        a[q * n + k] = s * ap + c * aq;
    }
}

/// Smallest and largest singular values of `m`.
pub fn singular_stats(m: &DenseMatrix) -> Result<SingularStats> {
    let svd = jacobi_svd(m)?;
    let sigma_min = svd.sigma.iter().copied().fold(f64::INFINITY, f64::min);
    let sigma_max = svd.sigma.iter().copied().fold(0.0, f64::max);
    Ok(SingularStats {
        sigma_min,
        sigma_max,
    })
}

/// All singular values of `m` in descending order.
pub fn singular_values(m: &DenseMatrix) -> Result<Vec<f64>> {
    let mut sigma = jacobi_svd(m)?.sigma;
    sigma.sort_by(|a, b| b.total_cmp(a));
    Ok(sigma)
}

/// Minimum-norm least-squares solution of `m x ≈ rhs`. Singular values at or
/// below `1e-12 · n · σ_max` are treated as zero.
pub fn least_squares(m: &DenseMatrix, rhs: &[f64]) -> Result<Vector> {
    check_len(m, rhs.len())?;
    let svd = jacobi_svd(m)?;
    let n = svd.n;
    let sigma_max = svd.sigma.iter().copied().fold(0.0, f64::max);
    let cutoff = PIVOT_RELATIVE_THRESHOLD * n as f64 * sigma_max;
    let mut x = vec![0.0; n];
    for j in 0..n {
        let s = svd.sigma[j];
        if s <= cutoff || s == 0.0 {
            continue;
        }
        let uj = &svd.u[j * n..(j + 1) * n];
        let coeff = uj.iter().zip(rhs).map(|(a, b)| a * b).sum::<f64>() / s;
        let vj = &svd.v[j * n..(j + 1) * n];
        for k in 0..n {
            x[k] += coeff * vj[k];
        }
    }
    Ok(Vector::from_raw(x))
}

/// Row-pivoted LU factorization `P M = L U`, packed in one buffer.
#[derive(Clone, Debug)]
pub struct LuFactors {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
    odd_permutation: bool,
    singular: Option<(usize, f64)>,
}

impl LuFactors {
    /// Factorizes `m`, stopping at the first pivot at or below the
    /// singularity threshold.
    pub fn new(m: &DenseMatrix) -> Self {
        let n = m.n;
        let threshold = m.singularity_threshold();
        let mut lu = m.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut odd_permutation = false;
        let mut singular = None;

        for k in 0..n {
            let (pivot_row, pivot_abs) =
                (k..n)
                    .map(|i| (i, lu[i * n + k].abs()))
                    .fold(
                        (k, -1.0),
                        |best, cur| if cur.1 > best.1 { cur } else { best },
                    );
            if pivot_abs <= threshold {
                singular = Some((k, lu[pivot_row * n + k]));
                break;
            }
            if pivot_row != k {
                for j in 0..n {
                    lu.swap(k * n + j, pivot_row * n + j);
                }
                perm.swap(k, pivot_row);
                odd_permutation = !odd_permutation;
            }
            let pivot = lu[k * n + k];
            for i in k + 1..n {
                let factor = lu[i * n + k] / pivot;
                lu[i * n + k] = factor;
                if factor != 0.0 {
                    for j in k + 1..n {
                        lu[i * n + j] -= factor * lu[k * n + j];
                    }
                }
            }
        }
        Self {
            n,
            lu,
            perm,
            odd_permutation,
            singular,
        }
    }

    pub fn is_singular(&self) -> bool {
        self.singular.is_some()
    }

    pub fn det_sign(&self) -> DetSign {
        if self.singular.is_some() {
            return DetSign::singular();
        }
        let mut negative = self.odd_permutation;
        let mut log_abs_det = 0.0;
        for k in 0..self.n {
            let p = self.lu[k * self.n + k];
            if p < 0.0 {
                negative = !negative;
            }
            log_abs_det += p.abs().ln();
        }
        DetSign {
            sign: if negative { -1 } else { 1 },
            log_abs_det,
        }
    }

    pub fn solve(&self, rhs: &[f64]) -> Result<Vector> {
        if rhs.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: rhs.len(),
            });
        }
        if let Some((step, pivot)) = self.singular {
            return Err(Error::Singular { step, pivot });
        }
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| rhs[p]).collect();
        for i in 0..n {
            let row = &self.lu[i * n..i * n + i];
            x[i] -= row.iter().zip(&x[..i]).map(|(l, v)| l * v).sum::<f64>();
        }
        for i in (0..n).rev() {
            let row = &self.lu[i * n + i + 1..(i + 1) * n];
            let acc = x[i] - row.iter().zip(&x[i + 1..]).map(|(u, v)| u * v).sum::<f64>();
            x[i] = acc / self.lu[i * n + i];
        }
        if let Some(index) = x.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Vector::from_raw(x))
    }
}

fn check_len(m: &DenseMatrix, len: usize) -> Result<()> {
    if len != m.n {
        return Err(Error::DimensionMismatch {
            expected: m.n,
            actual: len,
        });
    }
    Ok(())
}

/// Solves `m x = rhs` with partial pivoting.
pub fn solve_linear(m: &DenseMatrix, rhs: &Vector) -> Result<Vector> {
    check_len(m, rhs.len())?;
    LuFactors::new(m).solve(rhs)
}

/// Sign of a determinant together with `ln|det|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DetSign {
    /// `+1`, `-1`, or `0` when the matrix was declared singular.
    pub sign: i8,
    /// `f64::NEG_INFINITY` when `sign == 0`.
    pub log_abs_det: f64,
}

impl DetSign {
    pub fn singular() -> Self {
        Self {
            sign: 0,
            log_abs_det: f64::NEG_INFINITY,
        }
    }

    pub fn is_singular(&self) -> bool {
        self.sign == 0
    }
}

/// Determinant sign from LU pivots and permutation parity.
pub fn det_sign(m: &DenseMatrix) -> DetSign {
    LuFactors::new(m).det_sign()
}
