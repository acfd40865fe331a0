//! Dense complex matrices with the tensor calculus used by the Choi-matrix
//! machinery: Kronecker products, column-stacking vec/unvec, partial traces
//! over either tensor factor, and the Hilbert-Schmidt norm.
//!
//! Index conventions (all indices zero-based):
//!
//! * `kron(A, B)` places `A[i, j] * B` at block `(i, j)`, so the composite
//!   row index is `i * B.rows + k`.
//! * `vec` stacks columns: component `j * rows + i` of `vec(A)` is `A[i, j]`.
//!   Under this pairing `kron(M, N) * vec(C) == vec(N * C * M^T)`.
//! * A square matrix of side `m * n` is read as an element of the tensor
//!   product with the `m`-dimensional factor as the slow (block) index.
//!   `partial_trace_first` contracts that factor and returns an `n x n`
//!   matrix; `partial_trace_second` contracts the fast factor.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense rectangular complex matrix, row-major storage.
///
/// Entries are required to be finite; constructors assert this so that NaN
/// or infinity never propagates silently into a spectral routine.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major data.
    ///
    /// Panics if the data length does not match `rows * cols`, if either
    /// dimension is zero, or if any entry is non-finite.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        assert_eq!(data.len(), rows * cols, "data length must match dimensions");
        assert!(
            data.iter().all(|z| z.re.is_finite() && z.im.is_finite()),
            "matrix entries must be finite"
        );
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::ONE);
        }
        m
    }

    /// Square matrix with the given real diagonal.
    pub fn diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, Complex64::new(d, 0.0));
        }
        m
    }

    /// Builds from rows of real entries; handy for literal fixtures.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        assert!(r >= 1, "need at least one row");
        let c = rows[0].len();
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Self::new(r, c, data)
    }

    /// The standard matrix unit: `d x d`, one at `(i, j)`, zero elsewhere.
    /// Indices are zero-based.
    pub fn matrix_unit(d: usize, i: usize, j: usize) -> Result<Self> {
        if i >= d || j >= d {
            return Err(Error::IndexOutOfRange {
                dim: d,
                row: i,
                col: j,
            });
        }
        let mut m = Self::zeros(d, d);
        m.set(i, j, Complex64::ONE);
        Ok(m)
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

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        debug_assert!(row < self.rows && col < self.cols);
        self.data[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        debug_assert!(row < self.rows && col < self.cols);
        self.data[row * self.cols + col] = value;
    }

    #[inline]
    pub fn add_assign_at(&mut self, row: usize, col: usize, value: Complex64) {
        debug_assert!(row < self.rows && col < self.cols);
        self.data[row * self.cols + col] += value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace requires a square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
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

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "inner dimensions must agree in matmul"
        );
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == Complex64::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.add_assign_at(i, j, aik * other.get(k, j));
                }
            }
        }
        out
    }

    /// Kronecker product: block `(i, j)` equals `self[i, j] * other`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let aij = self.get(i, j);
                if aij == Complex64::ZERO {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, aij * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Column-stacking: component `j * rows + i` is `self[i, j]`.
    pub fn vec(&self) -> Vec<Complex64> {
        let mut v = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                v.push(self.get(i, j));
            }
        }
        v
    }

    /// Inverse of [`ComplexMatrix::vec`]: rebuilds an `n x m` matrix.
    pub fn unvec(v: &[Complex64], n: usize, m: usize) -> Result<Self> {
        if v.len() != n * m {
            return Err(Error::DimensionMismatch {
                context: "unvec",
                expected: format!("vector of length {}", n * m),
                found: format!("length {}", v.len()),
            });
        }
        let mut out = Self::zeros(n, m);
        for j in 0..m {
            for i in 0..n {
                out.set(i, j, v[j * n + i]);
            }
        }
        Ok(out)
    }

    /// Rank-one matrix `u v*`.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        let mut out = Self::zeros(u.len(), v.len());
        for (i, &ui) in u.iter().enumerate() {
            for (j, &vj) in v.iter().enumerate() {
                out.set(i, j, ui * vj.conj());
            }
        }
        out
    }

    /// Contracts the slow `m`-dimensional factor of an `mn x mn` matrix;
    /// satisfies `tr_first(A (x) B) == tr(A) * B`.
    pub fn partial_trace_first(&self, m: usize, n: usize) -> Result<Self> {
        self.check_tensor_square(m, n, "partial_trace_first")?;
        let mut out = Self::zeros(n, n);
        for k in 0..n {
            for l in 0..n {
                let mut sum = Complex64::ZERO;
                for j in 0..m {
                    sum += self.get(j * n + k, j * n + l);
                }
                out.set(k, l, sum);
            }
        }
        Ok(out)
    }

    /// Contracts the fast `n`-dimensional factor of an `mn x mn` matrix;
    /// satisfies `tr_second(A (x) B) == tr(B) * A`.
    pub fn partial_trace_second(&self, m: usize, n: usize) -> Result<Self> {
        self.check_tensor_square(m, n, "partial_trace_second")?;
        let mut out = Self::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                let mut sum = Complex64::ZERO;
                for k in 0..n {
                    sum += self.get(i * n + k, j * n + k);
                }
                out.set(i, j, sum);
            }
        }
        Ok(out)
    }

    fn check_tensor_square(&self, m: usize, n: usize, context: &'static str) -> Result<()> {
        if !self.is_square() || self.rows != m * n {
            return Err(Error::DimensionMismatch {
                context,
                expected: format!("square matrix of side {}", m * n),
                found: format!("{}x{}", self.rows, self.cols),
            });
        }
        Ok(())
    }

    /// Hilbert-Schmidt (Frobenius) norm, `sqrt(tr(M* M))`.
    pub fn hs_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max absolute row sum; cheap upper bound for the spectral radius of a
    /// Hermitian matrix.
    pub fn inf_norm(&self) -> f64 {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// `max |M - M*|` over entries; zero for exactly Hermitian matrices.
    pub fn max_asymmetry(&self) -> f64 {
        assert!(self.is_square(), "asymmetry requires a square matrix");
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// `(M + M*) / 2`; used to scrub round-off asymmetry before spectral work.
    pub fn symmetrize(&self) -> Self {
        assert!(self.is_square(), "symmetrize requires a square matrix");
        let mut out = Self::zeros(self.rows, self.cols);
        let half = Complex64::new(0.5, 0.0);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, (self.get(i, j) + self.get(j, i).conj()) * half);
            }
        }
        out
    }

    /// Largest entry magnitude of `self - other`; panics on shape mismatch.
    pub fn max_diff(&self, other: &Self) -> f64 {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "max_diff requires equal shapes"
        );
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Entrywise comparison within `tol` (max-entry metric).
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols) && self.max_diff(other) <= tol
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self.get(i, j);
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in addition"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in subtraction"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, other: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn matrix_unit_placement() {
        let e11 = ComplexMatrix::matrix_unit(2, 0, 0).unwrap();
        assert_eq!(e11, ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]));
        let e12 = ComplexMatrix::matrix_unit(2, 0, 1).unwrap();
        assert_eq!(e12, ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]));
    }

    #[test]
    fn matrix_units_resolve_identity() {
        let mut sum = ComplexMatrix::zeros(2, 2);
        for i in 0..2 {
            sum = &sum + &ComplexMatrix::matrix_unit(2, i, i).unwrap();
        }
        assert_eq!(sum, ComplexMatrix::identity(2));
    }

    #[test]
    fn matrix_unit_rejects_out_of_range() {
        assert!(matches!(
            ComplexMatrix::matrix_unit(2, 2, 0),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn kron_of_identities() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(i2.kron(&i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_swap_assembly() {
        // sum of E_ij (x) E_ji is the swap operator
        let mut swap = ComplexMatrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                let eij = ComplexMatrix::matrix_unit(2, i, j).unwrap();
                let eji = ComplexMatrix::matrix_unit(2, j, i).unwrap();
                swap = &swap + &eij.kron(&eji);
            }
        }
        let expected = ComplexMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
        ]);
        assert_eq!(swap, expected);
    }

    #[test]
    fn kron_scalar_block_structure() {
        let a = ComplexMatrix::diagonal(&[1.0, 2.0]);
        let b = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let k = a.kron(&b);
        assert_eq!(k.get(0, 1), c(1.0, 0.0));
        assert_eq!(k.get(2, 3), c(2.0, 0.0));
        assert_eq!(k.hs_norm(), 5.0f64.sqrt());
    }

    #[test]
    fn vec_is_column_stacking() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(i2.vec(), vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let e12 = ComplexMatrix::matrix_unit(2, 0, 1).unwrap();
        assert_eq!(e12.vec(), vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn unvec_inverts_vec() {
        let m = ComplexMatrix::new(
            2,
            3,
            vec![c(1.0, 2.0), c(3.0, -1.0), c(0.5, 0.0), c(0.0, 1.0), c(-2.0, 0.25), c(4.0, 4.0)],
        );
        let round = ComplexMatrix::unvec(&m.vec(), 2, 3).unwrap();
        assert_eq!(m, round);
    }

    #[test]
    fn unvec_of_eigenvector_columns() {
        let s = 1.0 / 2.0f64.sqrt();
        let u1 = vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)];
        let a1 = ComplexMatrix::unvec(&u1, 2, 2).unwrap();
        assert!(a1.approx_eq(&ComplexMatrix::identity(2).scale(c(s, 0.0)), 1e-15));

        // Column stacking puts the second component in the (1, 0) slot, so
        // this vector unstacks to [[0, -s], [s, 0]]; its negative is the
        // equally valid eigenvector choice [[0, s], [-s, 0]].
        let u4 = vec![c(0.0, 0.0), c(s, 0.0), c(-s, 0.0), c(0.0, 0.0)];
        let a4 = ComplexMatrix::unvec(&u4, 2, 2).unwrap();
        let reference = ComplexMatrix::from_real_rows(&[&[0.0, s], &[-s, 0.0]]);
        assert!(a4.approx_eq(&reference.scale(c(-1.0, 0.0)), 1e-15));
    }

    #[test]
    fn unvec_rejects_bad_length() {
        assert!(matches!(
            ComplexMatrix::unvec(&[Complex64::ZERO; 3], 2, 2),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn partial_trace_first_of_kron() {
        let a = ComplexMatrix::diagonal(&[1.0, 2.0]);
        let b = ComplexMatrix::new(2, 2, vec![c(0.3, 0.1), c(-1.0, 0.0), c(0.0, 2.0), c(0.7, 0.0)]);
        let pt = a.kron(&b).partial_trace_first(2, 2).unwrap();
        assert!(pt.approx_eq(&b.scale(c(3.0, 0.0)), 1e-14));
    }

    #[test]
    fn partial_trace_first_of_identity() {
        let pt = ComplexMatrix::identity(4).partial_trace_first(2, 2).unwrap();
        assert!(pt.approx_eq(&ComplexMatrix::identity(2).scale(c(2.0, 0.0)), 1e-15));
    }

    #[test]
    fn partial_trace_second_of_kron() {
        let a = ComplexMatrix::new(2, 2, vec![c(0.3, 0.1), c(-1.0, 0.0), c(0.0, 2.0), c(0.7, 0.0)]);
        let b = ComplexMatrix::diagonal(&[1.0, 2.0]);
        let pt = a.kron(&b).partial_trace_second(2, 2).unwrap();
        assert!(pt.approx_eq(&a.scale(c(3.0, 0.0)), 1e-14));
    }

    #[test]
    fn partial_trace_second_of_swap_is_identity() {
        let mut swap = ComplexMatrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                let eij = ComplexMatrix::matrix_unit(2, i, j).unwrap();
                let eji = ComplexMatrix::matrix_unit(2, j, i).unwrap();
                swap = &swap + &eij.kron(&eji);
            }
        }
        // oracle: elementwise summation straight from the definition
        let mut oracle = ComplexMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                let mut sum = Complex64::ZERO;
                for k in 0..2 {
                    sum += swap.get(i * 2 + k, j * 2 + k);
                }
                oracle.set(i, j, sum);
            }
        }
        let pt = swap.partial_trace_second(2, 2).unwrap();
        assert_eq!(pt, oracle);
        assert!(pt.approx_eq(&ComplexMatrix::identity(2), 1e-15));
    }

    #[test]
    fn traceless_factor_annihilates() {
        let a = ComplexMatrix::new(2, 2, vec![c(1.0, 1.0), c(2.0, 0.0), c(0.0, 3.0), c(-1.0, 0.0)]);
        let b = ComplexMatrix::diagonal(&[1.0, -1.0]);
        let pt = a.kron(&b).partial_trace_second(2, 2).unwrap();
        assert!(pt.approx_eq(&ComplexMatrix::zeros(2, 2), 1e-15));
    }

    #[test]
    fn partial_trace_rejects_bad_shape() {
        let m = ComplexMatrix::zeros(3, 3);
        assert!(m.partial_trace_first(2, 2).is_err());
    }

    #[test]
    fn hs_norm_values() {
        assert_eq!(ComplexMatrix::zeros(3, 2).hs_norm(), 0.0);
        let k_i4 = ComplexMatrix::identity(4).scale(c(-1.0, 0.0));
        assert!((k_i4.hs_norm() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn asymmetry_and_symmetrize() {
        let m = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0), c(2.0, 1.0), c(2.0, -1.0), c(3.0, 0.0)]);
        assert_eq!(m.max_asymmetry(), 0.0);
        let skew = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0), c(2.0, 1.0), c(0.0, 0.0), c(3.0, 0.0)]);
        assert!(skew.max_asymmetry() > 2.0);
        assert_eq!(skew.symmetrize().max_asymmetry(), 0.0);
    }

    #[test]
    #[should_panic(expected = "finite")]
    fn non_finite_entries_rejected() {
        ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]);
    }
}
