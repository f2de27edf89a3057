//! Dense complex matrices, density matrices, and the handful of linear
//! algebra primitives the rest of the crate needs.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting bad shapes and
    /// non-finite values.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                rows,
                cols,
                found: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            data.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// `tr(self · other)` without forming the product.
    pub fn trace_of_product(&self, other: &Self) -> Result<Complex64> {
        if self.cols != other.rows || self.rows != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.rows {
            for k in 0..self.cols {
                acc += self[(i, k)] * other[(k, i)];
            }
        }
        Ok(acc)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `‖A - A†‖_max`; infinite for non-square input.
    pub fn hermitian_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn frobenius_norm_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in elementwise op"
        );
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    /// Panics on shape mismatch.
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    /// Panics on shape mismatch.
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    /// Panics on shape mismatch; use [`ComplexMatrix::matmul`] for a checked
    /// product.
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("shape mismatch in matrix product")
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = ComplexMatrix::zeros(rows, cols);
    for ai in 0..a.rows {
        for aj in 0..a.cols {
            let x = a[(ai, aj)];
            for bi in 0..b.rows {
                for bj in 0..b.cols {
                    out[(ai * b.rows + bi, aj * b.cols + bj)] = x * b[(bi, bj)];
                }
            }
        }
    }
    out
}

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// The `n×n` Hermitian `H = A + iB` is embedded as the real symmetric
/// `[[A, -B], [B, A]]`, whose spectrum is that of `H` with every value
/// doubled. The embedding is diagonalized by cyclic Jacobi rotations and
/// every second sorted value is kept.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Vec<f64>> {
    hermitian_eigenvalues_with(a, &Tolerances::default())
}

pub fn hermitian_eigenvalues_with(a: &ComplexMatrix, tol: &Tolerances) -> Result<Vec<f64>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let residual = a.hermitian_residual();
    if residual > tol.hermitian {
        return Err(Error::NotHermitian { residual });
    }
    let n = a.rows;
    let m = 2 * n;
    let mut s = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            // symmetrize so round-off in the input cannot break the embedding
            let z = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            s[i * m + j] = z.re;
            s[(i + n) * m + (j + n)] = z.re;
            s[i * m + (j + n)] = -z.im;
            s[(i + n) * m + j] = z.im;
        }
    }
    let mut doubled = jacobi_symmetric_eigenvalues(&mut s, m);
    doubled.sort_by(f64::total_cmp);
    Ok(doubled.into_iter().step_by(2).collect())
}

/// Cyclic Jacobi on a dense real symmetric matrix stored row-major in `s`.
/// Destroys `s`; returns the unsorted diagonal.
fn jacobi_symmetric_eigenvalues(s: &mut [f64], n: usize) -> Vec<f64> {
    const MAX_SWEEPS: usize = 100;
    let total: f64 = s.iter().map(|x| x * x).sum();
    if total == 0.0 {
        return vec![0.0; n];
    }
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += s[p * n + q] * s[p * n + q];
            }
        }
        if off <= f64::EPSILON * f64::EPSILON * total * 1e-4 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = s[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = s[p * n + p];
                let aqq = s[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                for k in 0..n {
                    let akp = s[k * n + p];
                    let akq = s[k * n + q];
                    s[k * n + p] = c * akp - sn * akq;
                    s[k * n + q] = sn * akp + c * akq;
                }
                for k in 0..n {
                    let apk = s[p * n + k];
                    let aqk = s[q * n + k];
                    s[p * n + k] = c * apk - sn * aqk;
                    s[q * n + k] = sn * apk + c * aqk;
                }
                s[p * n + q] = 0.0;
                s[q * n + p] = 0.0;
            }
        }
    }
    (0..n).map(|i| s[i * n + i]).collect()
}

/// A validated `2^N × 2^N` density operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    n_qubits: usize,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity with the default
    /// tolerances.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::new_with(matrix, &Tolerances::default())
    }

    pub fn new_with(matrix: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let dm = Self::structural(matrix)?;
        dm.validate_with(tol)?;
        Ok(dm)
    }

    /// Skips the eigenvalue check; used where positivity holds by
    /// construction and is verified separately.
    pub(crate) fn new_unchecked_positivity(matrix: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let dm = Self::structural(matrix)?;
        dm.check_hermitian_and_trace(tol)?;
        Ok(dm)
    }

    fn structural(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let dim = matrix.rows();
        if !dim.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(dim));
        }
        Ok(Self {
            n_qubits: dim.trailing_zeros() as usize,
            matrix,
        })
    }

    /// `I / 2^n`.
    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        Self {
            matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
            n_qubits,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.matrix)
    }

    /// Re-runs every invariant check.
    pub fn validate_with(&self, tol: &Tolerances) -> Result<()> {
        self.check_hermitian_and_trace(tol)?;
        let eig = hermitian_eigenvalues_with(&self.matrix, tol)?;
        let min = eig.first().copied().unwrap_or(0.0);
        if min < tol.psd {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
        Ok(())
    }

    fn check_hermitian_and_trace(&self, tol: &Tolerances) -> Result<()> {
        let residual = self.matrix.hermitian_residual();
        if residual > tol.hermitian {
            return Err(Error::NotHermitian { residual });
        }
        let tr = self.matrix.trace();
        if (tr.re - 1.0).abs() > tol.trace || tr.im.abs() > tol.trace {
            return Err(Error::BadTrace {
                trace_re: tr.re,
                trace_im: tr.im,
            });
        }
        Ok(())
    }
}

/// `Re tr(ρ·O)` for a Hermitian observable.
pub fn expectation(rho: &DensityMatrix, obs: &ComplexMatrix) -> Result<f64> {
    expectation_with(rho, obs, &Tolerances::default())
}

pub fn expectation_with(rho: &DensityMatrix, obs: &ComplexMatrix, tol: &Tolerances) -> Result<f64> {
    if obs.rows() != rho.dim() || obs.cols() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: obs.rows(),
        });
    }
    let residual = obs.hermitian_residual();
    if residual > tol.hermitian {
        return Err(Error::NotHermitian { residual });
    }
    let value = rho.matrix().trace_of_product(obs)?;
    if value.im.abs() > tol.expectation_imag {
        return Err(Error::ComplexExpectation { imag: value.im });
    }
    Ok(value.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sigma_z() -> ComplexMatrix {
        ComplexMatrix::diag(&[1.0, -1.0])
    }

    #[test]
    fn kron_identity() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_sigma_z_pair_is_diagonal() {
        let zz = kron(&sigma_z(), &sigma_z());
        assert_eq!(zz, ComplexMatrix::diag(&[1.0, -1.0, -1.0, 1.0]));
    }

    #[test]
    fn kron_three_factors_is_eight_by_eight() {
        let a = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        let b = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let m = kron(&kron(&a, &b), &a);
        assert_eq!((m.rows(), m.cols()), (8, 8));
    }

    #[test]
    fn kron_is_associative_on_integers() {
        let a = ComplexMatrix::new(2, 2, vec![c(1., 2.), c(0., -1.), c(3., 0.), c(-2., 1.)]).unwrap();
        let b = ComplexMatrix::from_real(2, 3, &[1., 0., 2., -1., 4., 5.]).unwrap();
        let d = ComplexMatrix::new(1, 2, vec![c(0., 1.), c(7., -3.)]).unwrap();
        assert_eq!(kron(&kron(&a, &b), &d), kron(&a, &kron(&b, &d)));
    }

    #[test]
    fn rejects_bad_shapes_and_nan() {
        assert!(matches!(
            ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 3.0]),
            Err(Error::ShapeMismatch { .. })
        ));
        assert_eq!(
            ComplexMatrix::from_real(1, 1, &[f64::NAN]),
            Err(Error::NonFinite)
        );
    }

    #[test]
    fn eigenvalues_of_simple_matrices() {
        let ev = hermitian_eigenvalues(&sigma_z()).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);

        let half = ComplexMatrix::identity(2).scale_real(0.5);
        let ev = hermitian_eigenvalues(&half).unwrap();
        assert!(ev.iter().all(|v| (v - 0.5).abs() < 1e-14));

        let sy = ComplexMatrix::new(2, 2, vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]).unwrap();
        let ev = hermitian_eigenvalues(&sy).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-13 && (ev[1] - 1.0).abs() < 1e-13);
    }

    #[test]
    fn ghz_projector_spectrum() {
        let mut p = ComplexMatrix::zeros(8, 8);
        for &(i, j) in &[(0, 0), (0, 7), (7, 0), (7, 7)] {
            p[(i, j)] = c(0.5, 0.0);
        }
        let ev = hermitian_eigenvalues(&p).unwrap();
        for v in &ev[..7] {
            assert!(v.abs() < 1e-12, "{v}");
        }
        assert!((ev[7] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigenvalues_reject_non_hermitian() {
        let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn expectation_checks() {
        let rho = DensityMatrix::maximally_mixed(1);
        assert!((expectation(&rho, &ComplexMatrix::identity(2)).unwrap() - 1.0).abs() < 1e-15);
        assert!(expectation(&rho, &sigma_z()).unwrap().abs() < 1e-15);
        assert!(matches!(
            expectation(&rho, &ComplexMatrix::identity(4)),
            Err(Error::DimensionMismatch { .. })
        ));
        let skew = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, -1.0, 0.0]).unwrap();
        assert!(matches!(
            expectation(&rho, &skew),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn density_validation() {
        assert!(DensityMatrix::new(ComplexMatrix::diag(&[0.5, 0.5])).is_ok());
        assert!(matches!(
            DensityMatrix::new(ComplexMatrix::diag(&[0.5, 0.6])),
            Err(Error::BadTrace { .. })
        ));
        assert!(matches!(
            DensityMatrix::new(ComplexMatrix::diag(&[1.5, -0.5])),
            Err(Error::NotPositive { .. })
        ));
        assert!(matches!(
            DensityMatrix::new(ComplexMatrix::diag(&[0.5, 0.25, 0.25])),
            Err(Error::NotPowerOfTwo(3))
        ));
    }
}
