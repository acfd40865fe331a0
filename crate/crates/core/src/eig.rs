//! Hermitian eigendecomposition via cyclic complex Jacobi rotations.
//!
//! Jacobi is the right tool here: the matrices are dense and small (side a
//! few hundred at most), the input is exactly Hermitian after
//! symmetrization, and the rotations deliver eigenvectors that are
//! orthonormal to machine precision without any re-orthogonalization pass.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::tol::ToleranceConfig;

const MAX_SWEEPS: usize = 64;

/// Spectral decomposition of a Hermitian matrix.
///
/// Eigenvalues are real and sorted descending; `eigenvectors` holds the
/// matching eigenvectors as columns of a unitary matrix. `zero_tol` is the
/// magnitude below which an eigenvalue is classified as zero (it enters
/// rank counts and the positive/negative splits downstream).
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
    zero_tol: f64,
}

impl SpectralDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Column `i` of the eigenvector unitary.
    pub fn eigenvector(&self, i: usize) -> Vec<Complex64> {
        (0..self.eigenvectors.rows())
            .map(|r| self.eigenvectors.get(r, i))
            .collect()
    }

    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn zero_tol(&self) -> f64 {
        self.zero_tol
    }

    /// Number of eigenvalues with magnitude above `zero_tol`.
    pub fn rank(&self) -> usize {
        self.eigenvalues
            .iter()
            .filter(|l| l.abs() > self.zero_tol)
            .count()
    }

    /// Smallest eigenvalue (last in descending order).
    pub fn lambda_min(&self) -> f64 {
        *self.eigenvalues.last().expect("nonempty spectrum")
    }

    /// Sum of `lambda_i * u_i u_i*` restricted to eigenvalues selected by
    /// `keep`, with the eigenvalue already mapped through `weight`.
    pub fn weighted_sum(&self, keep: impl Fn(f64) -> bool, weight: impl Fn(f64) -> f64) -> ComplexMatrix {
        let d = self.dim();
        let mut out = ComplexMatrix::zeros(d, d);
        for (i, &l) in self.eigenvalues.iter().enumerate() {
            if !keep(l) {
                continue;
            }
            let u = self.eigenvector(i);
            let w = Complex64::new(weight(l), 0.0);
            for r in 0..d {
                let ur = u[r] * w;
                for (c, uc) in u.iter().enumerate() {
                    out.add_assign_at(r, c, ur * uc.conj());
                }
            }
        }
        out
    }

    /// Rebuilds the input matrix from the spectral data.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.weighted_sum(|_| true, |l| l)
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// The input must be Hermitian within `tol.recon` (scaled by the matrix
/// magnitude); it is replaced by `(H + H*) / 2` before factorization so that
/// round-off asymmetry cannot leak into the spectrum. Eigenvalues within a
/// degenerate cluster come with an arbitrary orthonormal basis; only
/// basis-independent quantities (eigenvalues, ranks, cluster projections)
/// should be relied on.
pub fn hermitian_eig(h: &ComplexMatrix, tol: &ToleranceConfig) -> Result<SpectralDecomposition> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch {
            context: "hermitian_eig",
            expected: "square matrix".into(),
            found: format!("{}x{}", h.rows(), h.cols()),
        });
    }
    let asym = h.max_asymmetry();
    let herm_tol = tol.recon_for(h);
    if asym > herm_tol {
        return Err(Error::NotHermitian {
            max_asymmetry: asym,
            tolerance: herm_tol,
        });
    }

    let d = h.rows();
    // Flat row-major buffers for the rotation kernel.
    let sym = h.symmetrize();
    let mut a: Vec<Complex64> = sym.entries().to_vec();
    let mut v: Vec<Complex64> = ComplexMatrix::identity(d).entries().to_vec();
    let scale = f64::max(1.0, sym.inf_norm());
    let stop = f64::EPSILON * scale;

    let mut sweeps = 0;
    loop {
        let mut largest = 0.0f64;
        for p in 0..d {
            for q in (p + 1)..d {
                largest = largest.max(a[p * d + q].norm());
            }
        }
        if largest <= stop {
            break;
        }
        if sweeps >= MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                offdiag: largest,
            });
        }
        for p in 0..d {
            for q in (p + 1)..d {
                rotate(&mut a, &mut v, d, p, q, stop);
            }
        }
        sweeps += 1;
    }

    // Diagonal entries are the eigenvalues; imaginary residue is round-off.
    let mut order: Vec<usize> = (0..d).collect();
    let raw: Vec<f64> = (0..d).map(|i| a[i * d + i].re).collect();
    order.sort_by(|&i, &j| raw[j].partial_cmp(&raw[i]).expect("finite eigenvalues"));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| raw[i]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(d, d);
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..d {
            eigenvectors.set(r, new_col, v[r * d + old_col]);
        }
    }

    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
        zero_tol: tol.eig_zero_for(h),
    })
}

/// One two-sided Jacobi rotation zeroing the `(p, q)` entry of the flat
/// row-major buffer `a`, with the rotation accumulated into `v`.
fn rotate(a: &mut [Complex64], v: &mut [Complex64], d: usize, p: usize, q: usize, skip_below: f64) {
    let apq = a[p * d + q];
    let r = apq.norm();
    if r <= skip_below * 1e-2 {
        return;
    }
    let u = apq / r; // unit phase of the pivot entry
    let app = a[p * d + p].re;
    let aqq = a[q * d + q].re;

    // tan(2 theta) = 2 r / (app - aqq); pick the smaller-angle root.
    let tau = (app - aqq) / (2.0 * r);
    let t = if tau == 0.0 {
        1.0
    } else {
        tau.signum() / (tau.abs() + (tau * tau + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let cs = Complex64::new(c, 0.0);
    let su = u.scale(s);
    let su_conj = u.conj().scale(s);

    // Left multiply by R*: mixes rows p and q.
    {
        let (head, tail) = a.split_at_mut(q * d);
        let row_p = &mut head[p * d..p * d + d];
        let row_q = &mut tail[..d];
        for j in 0..d {
            let apj = row_p[j];
            let aqj = row_q[j];
            row_p[j] = cs * apj + su * aqj;
            row_q[j] = -su_conj * apj + cs * aqj;
        }
    }
    // Right multiply by R: mixes columns p and q.
    for i in 0..d {
        let aip = a[i * d + p];
        let aiq = a[i * d + q];
        a[i * d + p] = cs * aip + su_conj * aiq;
        a[i * d + q] = -su * aip + cs * aiq;
    }
    // The pivot pair is zero in exact arithmetic; pin it.
    a[p * d + q] = Complex64::ZERO;
    a[q * d + p] = Complex64::ZERO;
    a[p * d + p] = Complex64::new(a[p * d + p].re, 0.0);
    a[q * d + q] = Complex64::new(a[q * d + q].re, 0.0);

    // Accumulate eigenvectors: V <- V R.
    for i in 0..d {
        let vip = v[i * d + p];
        let viq = v[i * d + q];
        v[i * d + p] = cs * vip + su_conj * viq;
        v[i * d + q] = -su * vip + cs * viq;
    }
}
