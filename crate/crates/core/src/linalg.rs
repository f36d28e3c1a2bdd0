//! Dense complex linear algebra for small matrices (d <= 64).
//!
//! Self-contained on purpose: a row-major complex matrix type, a cyclic
//! Jacobi eigensolver for Hermitian matrices, operator norm, numerical
//! radius and numerical range sampling, PSD square roots, and the
//! Kronecker/vectorization pair used for the Hilbert-Schmidt lifting.

use num_complex::Complex64;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::error::{Error, Result};

/// Relative Hermiticity tolerance: inputs this close to self-adjoint are
/// symmetrized as (M + M*)/2 before eigensolving.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Default off-diagonal convergence threshold for the Jacobi sweep,
/// relative to the Frobenius norm of the input.
pub const EIGEN_TOL: f64 = 1e-13;

const MAX_JACOBI_SWEEPS: usize = 100;

/// Controls for the numerical radius sweep.
#[derive(Debug, Clone, Copy)]
pub struct RadiusOptions {
    /// Number of coarse angles on [0, 2pi).
    pub coarse_grid: usize,
    /// Angle-interval width at which golden-section refinement stops.
    pub refine_tolerance: f64,
    /// Off-diagonal convergence threshold passed to the eigensolver.
    pub eigen_tolerance: f64,
}

impl Default for RadiusOptions {
    fn default() -> Self {
        RadiusOptions {
            coarse_grid: 1024,
            refine_tolerance: 1e-12,
            eigen_tolerance: EIGEN_TOL,
        }
    }
}

impl RadiusOptions {
    pub fn validate(&self) -> Result<()> {
        if self.coarse_grid < 8 {
            return Err(Error::InvalidOptions(format!(
                "coarse_grid must be at least 8, got {}",
                self.coarse_grid
            )));
        }
        let positive = |t: f64| t.is_finite() && t > 0.0;
        if !positive(self.refine_tolerance) || !positive(self.eigen_tolerance) {
            return Err(Error::InvalidOptions(
                "tolerances must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major data. Panics if the length is wrong;
    /// use [`ComplexMatrix::from_rows`] for untrusted input.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), rows * cols, "row-major data length mismatch");
        ComplexMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    /// Validates shape and finiteness of nested row data.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::ShapeMismatch("matrix has no rows".into()));
        }
        let cols = rows[0].len();
        if cols == 0 {
            return Err(Error::ShapeMismatch("matrix has empty rows".into()));
        }
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    cols
                )));
            }
            data.extend_from_slice(row);
        }
        let m = ComplexMatrix {
            rows: rows.len(),
            cols,
            data,
        };
        m.validate_finite()?;
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    pub fn diag(entries: &[Complex64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn diag_re(entries: &[f64]) -> Self {
        Self::diag(&entries.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn validate_finite(&self) -> Result<()> {
        if self.data.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
            Ok(())
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|c| c.conj()).collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|c| c * s).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        debug_assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise difference to another matrix of the same shape.
    pub fn max_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entry modulus of M - M*.
    pub fn hermitian_deviation(&self) -> f64 {
        debug_assert!(self.is_square());
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermitian_deviation() <= tol * (1.0 + self.max_abs())
    }

    /// Hermitian part (M + M*)/2.
    pub fn hermitize(&self) -> Self {
        debug_assert!(self.is_square());
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * 0.5
        })
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols, "matvec dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).map(|(a, b)| a * b).sum()
            })
            .collect()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "matmul dimension mismatch");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(l, j)];
                }
            }
        }
        out
    }
}

/// Inner product <u|v> with conjugation on the left argument.
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    assert_eq!(u.len(), v.len());
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Rank-one operator |u><v|.
pub fn outer(u: &[Complex64], v: &[Complex64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
}

/// Lie product AB - BA.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    &(a * b) - &(b * a)
}

/// Jordan product AB + BA.
pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    &(a * b) + &(b * a)
}

/// Kronecker product A (x) B.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for ia in 0..a.rows() {
        for ja in 0..a.cols() {
            let s = a[(ia, ja)];
            if s == Complex64::ZERO {
                continue;
            }
            for ib in 0..b.rows() {
                for jb in 0..b.cols() {
                    out[(ia * b.rows() + ib, ja * b.cols() + jb)] = s * b[(ib, jb)];
                }
            }
        }
    }
    out
}

/// Row-major vectorization: vec(M)[i*cols + j] = M[i][j].
///
/// Under this convention vec(A T) = kron(A, I) vec(T), so left
/// multiplication on the Hilbert-Schmidt space is A (x) I.
pub fn vec_row_major(m: &ComplexMatrix) -> Vec<Complex64> {
    m.data().to_vec()
}

/// Eigendecomposition of a Hermitian matrix: ascending values and the
/// matching eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// Eigenvector column for the largest eigenvalue.
    pub fn top_vector(&self) -> Vec<Complex64> {
        let n = self.vectors.rows();
        (0..n).map(|i| self.vectors[(i, n - 1)]).collect()
    }
}

/// All eigenvalues of a Hermitian matrix in ascending order.
///
/// `tol` is the relative Hermiticity tolerance; inputs within it are
/// symmetrized before the Jacobi sweep.
pub fn hermitian_eigenvalues(m: &ComplexMatrix, tol: f64) -> Result<Vec<f64>> {
    Ok(jacobi(m, tol, EIGEN_TOL, false)?.values)
}

pub fn hermitian_eigen(m: &ComplexMatrix, tol: f64) -> Result<HermitianEigen> {
    jacobi(m, tol, EIGEN_TOL, true)
}

/// Cyclic Jacobi with complex plane rotations.
fn jacobi(
    m: &ComplexMatrix,
    herm_tol: f64,
    conv_tol: f64,
    want_vectors: bool,
) -> Result<HermitianEigen> {
    m.require_square()?;
    m.validate_finite()?;
    let n = m.rows();
    let dev = m.hermitian_deviation();
    let scale = 1.0 + m.max_abs();
    if dev > herm_tol * scale {
        return Err(Error::NotHermitian {
            deviation: dev,
            tolerance: herm_tol * scale,
        });
    }
    let mut a = m.hermitize();
    let mut v = ComplexMatrix::identity(n);
    let fro = a.frobenius_norm();

    if n > 1 {
        let mut converged = false;
        for _ in 0..MAX_JACOBI_SWEEPS {
            if off_diagonal_norm(&a) <= conv_tol * fro.max(f64::MIN_POSITIVE) {
                converged = true;
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    rotate(&mut a, &mut v, p, q, want_vectors);
                }
            }
        }
        if !converged && off_diagonal_norm(&a) > conv_tol * fro.max(f64::MIN_POSITIVE) {
            return Err(Error::NoConvergence {
                sweeps: MAX_JACOBI_SWEEPS,
            });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = if want_vectors {
        ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])])
    } else {
        ComplexMatrix::zeros(0, 0)
    };
    Ok(HermitianEigen { values, vectors })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One complex Jacobi rotation zeroing the (p, q) entry of the Hermitian
/// matrix `a`, accumulated into `v`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, want_vectors: bool) {
    let apq = a[(p, q)];
    let beta = apq.norm();
    if beta < f64::MIN_POSITIVE {
        return;
    }
    let phase = apq / beta;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * beta);
    let t = if tau == 0.0 {
        1.0
    } else if tau.abs() > 1e150 {
        // Avoids overflow in tau^2; rotation angle is ~1/(2 tau).
        1.0 / (2.0 * tau)
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // U[p][p] = c, U[p][q] = s*phase, U[q][p] = -s*conj(phase), U[q][q] = c.
    let sp = s * phase;
    let spc = s * phase.conj();
    let n = a.rows();

    // Row update B = U† A.
    for j in 0..n {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = c * apj - sp * aqj;
        a[(q, j)] = spc * apj + c * aqj;
    }
    // Column update A' = B U.
    for i in 0..n {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = c * aip - spc * aiq;
        a[(i, q)] = sp * aip + c * aiq;
    }
    a[(p, q)] = Complex64::ZERO;
    a[(q, p)] = Complex64::ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    if want_vectors {
        for i in 0..n {
            let vip = v[(i, p)];
            let viq = v[(i, q)];
            v[(i, p)] = c * vip - spc * viq;
            v[(i, q)] = sp * vip + c * viq;
        }
    }
}

/// Operator norm: the largest singular value, sqrt(lambda_max(M* M)).
pub fn operator_norm(m: &ComplexMatrix) -> Result<f64> {
    m.validate_finite()?;
    let gram = &m.adjoint() * m;
    let values = hermitian_eigenvalues(&gram, 1e-8)?;
    Ok(values.last().copied().unwrap_or(0.0).max(0.0).sqrt())
}

/// All singular values in descending order.
///
/// One-sided Jacobi on the columns, which resolves tiny singular values far
/// below the sqrt(eps) floor of the Gram-matrix route.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    m.validate_finite()?;
    let mut a = if m.rows() >= m.cols() {
        m.clone()
    } else {
        m.adjoint()
    };
    let n = a.cols();
    let rows = a.rows();
    for _ in 0..MAX_JACOBI_SWEEPS {
        let mut converged = true;
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = Complex64::ZERO;
                for i in 0..rows {
                    app += a[(i, p)].norm_sqr();
                    aqq += a[(i, q)].norm_sqr();
                    apq += a[(i, p)].conj() * a[(i, q)];
                }
                if apq.norm() <= 1e-15 * (app * aqq).sqrt() {
                    continue;
                }
                converged = false;
                let beta = apq.norm();
                let phase = apq / beta;
                let tau = (aqq - app) / (2.0 * beta);
                let t = if tau == 0.0 {
                    1.0
                } else if tau.abs() > 1e150 {
                    1.0 / (2.0 * tau)
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let sp = s * phase;
                let spc = s * phase.conj();
                for i in 0..rows {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = c * aip - spc * aiq;
                    a[(i, q)] = sp * aip + c * aiq;
                }
            }
        }
        if converged {
            break;
        }
    }
    let mut values: Vec<f64> = (0..n)
        .map(|j| (0..rows).map(|i| a[(i, j)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(values)
}

fn rotated_top_eigenvalue(m: &ComplexMatrix, theta: f64, conv_tol: f64) -> Result<f64> {
    let rotated = m.scale(Complex64::from_polar(1.0, -theta));
    let h = rotated.hermitize();
    let values = jacobi(&h, 1.0, conv_tol, false)?.values;
    Ok(*values.last().expect("nonempty spectrum"))
}

/// Numerical radius w(M) = max over theta of lambda_max(Re(e^{-i theta} M)).
///
/// Coarse grid over [0, 2pi), then golden-section refinement inside the best
/// cell and its two neighbours, stopping at `refine_tolerance` interval width.
pub fn numerical_radius_sweep(m: &ComplexMatrix, opts: &RadiusOptions) -> Result<f64> {
    m.require_square()?;
    m.validate_finite()?;
    opts.validate()?;
    if m.max_abs() == 0.0 {
        return Ok(0.0);
    }

    let n = opts.coarse_grid;
    let h = std::f64::consts::TAU / n as f64;
    let mut best = f64::NEG_INFINITY;
    let mut best_theta = 0.0;
    for i in 0..n {
        let theta = i as f64 * h;
        let g = rotated_top_eigenvalue(m, theta, opts.eigen_tolerance)?;
        if g > best {
            best = g;
            best_theta = theta;
        }
    }

    // Golden-section maximization on the bracketing interval.
    let ratio = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut a = best_theta - h;
    let mut b = best_theta + h;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let mut fc = rotated_top_eigenvalue(m, c, opts.eigen_tolerance)?;
    let mut fd = rotated_top_eigenvalue(m, d, opts.eigen_tolerance)?;
    best = best.max(fc).max(fd);
    while b - a > opts.refine_tolerance {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = rotated_top_eigenvalue(m, c, opts.eigen_tolerance)?;
            best = best.max(fc);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = rotated_top_eigenvalue(m, d, opts.eigen_tolerance)?;
            best = best.max(fd);
        }
    }
    Ok(best.max(0.0))
}

/// Boundary points of the numerical range: <v|M|v> for v the top eigenvector
/// of Re(e^{-i theta} M), over a uniform n-grid of angles.
pub fn numerical_range_boundary(m: &ComplexMatrix, n: usize) -> Result<Vec<Complex64>> {
    m.require_square()?;
    m.validate_finite()?;
    if n < 3 {
        return Err(Error::InvalidOptions(format!(
            "need at least 3 boundary angles, got {n}"
        )));
    }
    let mut points = Vec::with_capacity(n);
    for i in 0..n {
        let theta = std::f64::consts::TAU * i as f64 / n as f64;
        let rotated = m.scale(Complex64::from_polar(1.0, -theta));
        let eig = jacobi(&rotated.hermitize(), 1.0, EIGEN_TOL, true)?;
        let v = eig.top_vector();
        points.push(inner(&v, &m.matvec(&v)));
    }
    Ok(points)
}

/// Hermitian PSD square root. Eigenvalues in [-tol, 0) are clipped to zero;
/// anything below -tol is rejected.
pub fn psd_sqrt(m: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    m.require_square()?;
    let eig = hermitian_eigen(m, HERMITICITY_TOL)?;
    let min = eig.values.first().copied().unwrap_or(0.0);
    if min < -tol {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
        });
    }
    let n = m.rows();
    let roots: Vec<f64> = eig.values.iter().map(|&l| l.max(0.0).sqrt()).collect();
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = roots
                .iter()
                .enumerate()
                .map(|(l, &root)| eig.vectors[(i, l)] * root * eig.vectors[(j, l)].conj())
                .sum();
        }
    }
    Ok(out.hermitize())
}
