//! Numerical tolerances used across the crate.

use crate::matrix::ComplexMatrix;

/// Tolerance knobs for the floating-point versions of exact-arithmetic
/// statements.
///
/// The stored values are base tolerances; operations scale them by the
/// magnitude of the matrix at hand:
///
/// * eigenvalues are treated as zero below `eig_zero * max(1, ||H||_inf)`,
/// * a matrix counts as positive semi-definite when its smallest eigenvalue
///   is above `-psd_slack * (1 + ||H||_inf)`,
/// * reconstruction identities and Hermiticity checks use
///   `recon * (1 + ||H||_inf)` as the max-entry budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Eigenvalue magnitude below which it is classified as zero.
    pub eig_zero: f64,
    /// Allowed negative eigenvalue magnitude when asserting positive
    /// semi-definiteness.
    pub psd_slack: f64,
    /// Max-entry error allowed in reconstruction identities.
    pub recon: f64,
}

impl ToleranceConfig {
    pub fn new(eig_zero: f64, psd_slack: f64, recon: f64) -> Self {
        assert!(
            eig_zero >= 0.0 && psd_slack >= 0.0 && recon >= 0.0,
            "tolerances must be nonnegative"
        );
        Self {
            eig_zero,
            psd_slack,
            recon,
        }
    }

    /// Same value for all three knobs.
    pub fn uniform(tol: f64) -> Self {
        Self::new(tol, tol, tol)
    }

    /// Effective zero threshold for eigenvalues of `h`.
    pub fn eig_zero_for(&self, h: &ComplexMatrix) -> f64 {
        self.eig_zero * f64::max(1.0, h.inf_norm())
    }

    /// Effective PSD slack for eigenvalues of `h`.
    pub fn psd_slack_for(&self, h: &ComplexMatrix) -> f64 {
        self.psd_slack * (1.0 + h.inf_norm())
    }

    /// Effective max-entry budget for reconstruction identities on `h`.
    pub fn recon_for(&self, h: &ComplexMatrix) -> f64 {
        self.recon * (1.0 + h.inf_norm())
    }
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self::new(1e-9, 1e-9, 1e-9)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_nonnegative() {
        let tol = ToleranceConfig::default();
        assert!(tol.eig_zero > 0.0 && tol.psd_slack > 0.0 && tol.recon > 0.0);
    }

    #[test]
    #[should_panic(expected = "nonnegative")]
    fn negative_tolerance_rejected() {
        ToleranceConfig::new(-1.0, 0.0, 0.0);
    }

    #[test]
    fn scaling_uses_inf_norm() {
        let tol = ToleranceConfig::uniform(1e-9);
        let m = ComplexMatrix::identity(3).scale(10.0.into());
        assert_eq!(tol.eig_zero_for(&m), 1e-9 * 10.0);
        assert_eq!(tol.psd_slack_for(&m), 1e-9 * 11.0);
    }
}
