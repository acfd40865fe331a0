//! The Choi matrix representation of linear maps `M_m -> M_n` and the
//! isomorphism between maps and matrices built on it.
//!
//! The Choi matrix is assembled as the block matrix whose `(i, j)` block of
//! size `n x n` is the image of the matrix unit `E_ij`; equivalently
//! `C = sum_ij E_ij (x) Phi(E_ij)`. The map is recovered by contracting the
//! slow factor: `Phi(X) = tr_first[(X^T (x) I_n) C]`, which reduces to the
//! entry formula `Phi(X)[k, l] = sum_pq X[p, q] * C[p n + k, q n + l]`.

use num_complex::Complex64;

use crate::eig::hermitian_eig;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::tol::ToleranceConfig;

/// A linear map given by its images of the matrix units of `M_m`.
///
/// `images[i * m + j]` is the `n x n` image of `E_ij`.
#[derive(Debug, Clone)]
pub struct MapAction {
    m: usize,
    n: usize,
    images: Vec<ComplexMatrix>,
}

impl MapAction {
    pub fn new(m: usize, n: usize, images: Vec<ComplexMatrix>) -> Result<Self> {
        if images.len() != m * m {
            return Err(Error::DimensionMismatch {
                context: "MapAction::new",
                expected: format!("{} images", m * m),
                found: format!("{}", images.len()),
            });
        }
        for (idx, img) in images.iter().enumerate() {
            if img.rows() != n || img.cols() != n {
                return Err(Error::DimensionMismatch {
                    context: "MapAction::new",
                    expected: format!("{n}x{n} image"),
                    found: format!("{}x{} at index {}", img.rows(), img.cols(), idx),
                });
            }
        }
        Ok(Self { m, n, images })
    }

    /// Evaluates `f` on every matrix unit of `M_m`.
    pub fn from_fn(m: usize, n: usize, f: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> Result<Self> {
        let mut images = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                images.push(f(&ComplexMatrix::matrix_unit(m, i, j)?));
            }
        }
        Self::new(m, n, images)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Image of `E_ij`.
    pub fn image(&self, i: usize, j: usize) -> &ComplexMatrix {
        &self.images[i * self.m + j]
    }

    /// Action on an arbitrary matrix by linearity over the matrix units.
    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if x.rows() != self.m || x.cols() != self.m {
            return Err(Error::DimensionMismatch {
                context: "MapAction::apply",
                expected: format!("{}x{}", self.m, self.m),
                found: format!("{}x{}", x.rows(), x.cols()),
            });
        }
        let mut out = ComplexMatrix::zeros(self.n, self.n);
        for i in 0..self.m {
            for j in 0..self.m {
                let xij = x.get(i, j);
                if xij == Complex64::ZERO {
                    continue;
                }
                out = &out + &self.image(i, j).scale(xij);
            }
        }
        Ok(out)
    }
}

/// A linear map `M_m -> M_n` carried by its Choi matrix.
///
/// Construction never requires the map to be Hermitian-preserving (the
/// isomorphism is general); decomposition and extension routines check
/// Hermiticity of the Choi matrix and reject violations.
#[derive(Debug, Clone)]
pub struct HermitianMapSpec {
    m: usize,
    n: usize,
    choi: ComplexMatrix,
}

impl HermitianMapSpec {
    pub fn from_choi(m: usize, n: usize, choi: ComplexMatrix) -> Result<Self> {
        if !choi.is_square() || choi.rows() != m * n {
            return Err(Error::DimensionMismatch {
                context: "HermitianMapSpec::from_choi",
                expected: format!("square Choi matrix of side {}", m * n),
                found: format!("{}x{}", choi.rows(), choi.cols()),
            });
        }
        Ok(Self { m, n, choi })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn choi(&self) -> &ComplexMatrix {
        &self.choi
    }

    /// Max deviation of the Choi matrix from Hermiticity.
    pub fn max_asymmetry(&self) -> f64 {
        self.choi.max_asymmetry()
    }

    /// Errors with the offending asymmetry when the Choi matrix is not
    /// Hermitian within tolerance.
    pub fn ensure_hermitian(&self, tol: &ToleranceConfig) -> Result<()> {
        let asym = self.max_asymmetry();
        let budget = tol.recon_for(&self.choi);
        if asym > budget {
            return Err(Error::NotHermitianPreserving {
                max_asymmetry: asym,
                tolerance: budget,
            });
        }
        Ok(())
    }
}

/// Assembles the Choi matrix `sum_ij E_ij (x) Phi(E_ij)` of an action.
pub fn choi_from_action(action: &MapAction) -> HermitianMapSpec {
    let (m, n) = (action.m(), action.n());
    let mut choi = ComplexMatrix::zeros(m * n, m * n);
    for i in 0..m {
        for j in 0..m {
            let img = action.image(i, j);
            for k in 0..n {
                for l in 0..n {
                    choi.set(i * n + k, j * n + l, img.get(k, l));
                }
            }
        }
    }
    HermitianMapSpec::from_choi(m, n, choi).expect("assembled Choi matrix has the right side")
}

/// Applies the map to `x` through its Choi matrix.
pub fn apply_via_choi(spec: &HermitianMapSpec, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (m, n) = (spec.m(), spec.n());
    if x.rows() != m || x.cols() != m {
        return Err(Error::DimensionMismatch {
            context: "apply_via_choi",
            expected: format!("{m}x{m}"),
            found: format!("{}x{}", x.rows(), x.cols()),
        });
    }
    let choi = spec.choi();
    let mut out = ComplexMatrix::zeros(n, n);
    for p in 0..m {
        for q in 0..m {
            let xpq = x.get(p, q);
            if xpq == Complex64::ZERO {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    out.add_assign_at(k, l, xpq * choi.get(p * n + k, q * n + l));
                }
            }
        }
    }
    Ok(out)
}

/// True when the Choi matrix is Hermitian within `tol.recon`, i.e. the map
/// is Hermitian-preserving. The raw asymmetry is available from
/// [`HermitianMapSpec::max_asymmetry`].
pub fn is_hermitian_preserving(spec: &HermitianMapSpec, tol: &ToleranceConfig) -> bool {
    spec.max_asymmetry() <= tol.recon_for(spec.choi())
}

/// Complete positivity test: the map is CP exactly when its Choi matrix is
/// positive semi-definite. Returns the verdict together with the smallest
/// Choi eigenvalue.
pub fn is_cp(spec: &HermitianMapSpec, tol: &ToleranceConfig) -> Result<(bool, f64)> {
    spec.ensure_hermitian(tol)?;
    let eig = hermitian_eig(spec.choi(), tol)?;
    let lambda_min = eig.lambda_min();
    Ok((lambda_min >= -tol.psd_slack_for(spec.choi()), lambda_min))
}

/// Hilbert-Schmidt norm of the map, i.e. of its Choi matrix.
pub fn hs_norm_of_map(spec: &HermitianMapSpec) -> f64 {
    spec.choi().hs_norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn transpose_choi_is_swap() {
        let action = MapAction::from_fn(2, 2, |e| e.transpose()).unwrap();
        let spec = choi_from_action(&action);
        let swap = ComplexMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
        ]);
        assert_eq!(spec.choi(), &swap);
    }

    #[test]
    fn symmetrizer_choi_matches_fixture() {
        let action = MapAction::from_fn(2, 2, |e| e + &e.transpose()).unwrap();
        let spec = choi_from_action(&action);
        let expected = ComplexMatrix::from_real_rows(&[
            &[2.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[1.0, 0.0, 0.0, 2.0],
        ]);
        assert_eq!(spec.choi(), &expected);
    }

    #[test]
    fn scaled_trace_choi_is_scalar() {
        let spec = builtins::scaled_trace(2, -1.0);
        assert_eq!(spec.choi(), &ComplexMatrix::identity(4).scale(c(-1.0, 0.0)));
    }

    #[test]
    fn transpose_moves_matrix_units() {
        let spec = builtins::transpose(2);
        let e12 = ComplexMatrix::matrix_unit(2, 0, 1).unwrap();
        let img = apply_via_choi(&spec, &e12).unwrap();
        assert!(img.approx_eq(&ComplexMatrix::matrix_unit(2, 1, 0).unwrap(), 1e-15));
    }

    #[test]
    fn scaled_trace_on_identity() {
        let spec = builtins::scaled_trace(2, -1.0);
        let img = apply_via_choi(&spec, &ComplexMatrix::identity(2)).unwrap();
        assert!(img.approx_eq(&ComplexMatrix::identity(2).scale(c(-2.0, 0.0)), 1e-15));
    }

    #[test]
    fn apply_matches_recovery_formula() {
        // Phi(X) = sum_jk X[j, k] Phi(E_jk), evaluated independently.
        let pad = |e: &ComplexMatrix, row0: usize, col0: usize, f: Complex64| {
            let mut img = ComplexMatrix::zeros(3, 3);
            for i in 0..2 {
                for j in 0..2 {
                    img.set(row0 + i, col0 + j, e.get(i, j) * f);
                }
            }
            img
        };
        let action = MapAction::from_fn(2, 3, |e| {
            &pad(e, 0, 0, c(0.5, 0.25)) + &pad(&e.transpose(), 1, 1, c(-1.0, 0.5))
        })
        .unwrap();
        let spec = choi_from_action(&action);
        let x = ComplexMatrix::new(
            2,
            2,
            vec![c(0.3, -0.2), c(1.5, 0.0), c(0.0, 1.0), c(-0.7, 0.4)],
        );
        let via_choi = apply_via_choi(&spec, &x).unwrap();
        let direct = action.apply(&x).unwrap();
        assert!(via_choi.approx_eq(&direct, 1e-13));
    }

    #[test]
    fn hermiticity_checks() {
        assert!(is_hermitian_preserving(&builtins::transpose(2), &tol()));
        assert!(is_hermitian_preserving(&builtins::antihermitize(2), &tol()));

        // Phi(E_11) = E_12, everything else zero: not Hermitian-preserving.
        let action = MapAction::from_fn(2, 2, |e| {
            if e.get(0, 0) == Complex64::ONE {
                ComplexMatrix::matrix_unit(2, 0, 1).unwrap()
            } else {
                ComplexMatrix::zeros(2, 2)
            }
        })
        .unwrap();
        let spec = choi_from_action(&action);
        assert!(!is_hermitian_preserving(&spec, &tol()));
        assert!(spec.ensure_hermitian(&tol()).is_err());
    }

    #[test]
    fn cp_verdicts() {
        let (cp, lmin) = is_cp(&builtins::transpose(2), &tol()).unwrap();
        assert!(!cp);
        assert!((lmin + 1.0).abs() < 1e-12);

        let (cp, lmin) = is_cp(&builtins::scaled_trace(2, -1.0), &tol()).unwrap();
        assert!(!cp);
        assert!((lmin + 1.0).abs() < 1e-12);

        // Single-Kraus conjugation map is CP.
        let v = ComplexMatrix::new(
            2,
            2,
            vec![c(0.4, 0.1), c(-0.3, 0.9), c(1.1, 0.0), c(0.2, -0.6)],
        );
        let action = MapAction::from_fn(2, 2, |e| v.matmul(e).matmul(&v.adjoint())).unwrap();
        let (cp, lmin) = is_cp(&choi_from_action(&action), &tol()).unwrap();
        assert!(cp, "conjugation map must be CP, lambda_min = {lmin}");
        assert!(lmin >= -1e-12);
    }

    #[test]
    fn map_norms() {
        // Phi(A) = tr(A) I_2 has Choi norm 2.
        let spec = builtins::scaled_trace(2, 1.0);
        assert!((hs_norm_of_map(&spec) - 2.0).abs() < 1e-15);
        assert!((hs_norm_of_map(&builtins::transpose(2)) - 2.0).abs() < 1e-15);
        let zero = HermitianMapSpec::from_choi(2, 2, ComplexMatrix::zeros(4, 4)).unwrap();
        assert_eq!(hs_norm_of_map(&zero), 0.0);
    }

    #[test]
    fn rejects_wrong_input_side() {
        let spec = builtins::transpose(2);
        assert!(apply_via_choi(&spec, &ComplexMatrix::identity(3)).is_err());
    }
}
