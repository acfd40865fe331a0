//! Jordan split of a Hermitian-preserving map into a difference of CP maps,
//! the distance to the CP cone, the sharp norm bound on the negative part,
//! the nearest CP map in Hilbert-Schmidt norm, and an auditor for arbitrary
//! CP decompositions.
//!
//! Everything rests on the spectral split of the Choi matrix: collecting
//! the positive eigenvalues yields `c_plus`, the flipped negative ones
//! yield `c_minus`, and `C = c_plus - c_minus` with `c_plus * c_minus = 0`.
//! The negative part is the Loewner-minimal PSD matrix whose addition makes
//! the Choi matrix PSD, which is what makes `c_plus` the nearest CP map and
//! produces the `sqrt(k) * dcp` floor on any other decomposition's negative
//! component.

use crate::choi::HermitianMapSpec;
use crate::eig::hermitian_eig;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::tol::ToleranceConfig;

/// Positive and negative CP parts of a Hermitian-preserving map.
#[derive(Debug, Clone)]
pub struct JordanParts {
    /// PSD Choi matrix of the positive part.
    pub c_plus: ComplexMatrix,
    /// PSD Choi matrix of the negative part; `c_plus - c_minus` rebuilds the
    /// original Choi matrix and the two parts annihilate each other.
    pub c_minus: ComplexMatrix,
    /// Distance to the CP cone: `max(0, -lambda_min)`, with eigenvalues
    /// inside the zero tolerance treated as zero.
    pub dcp: f64,
    /// Dimension of the `lambda_min` eigenspace; `None` when the map is CP.
    pub multiplicity_k: Option<usize>,
    /// `sqrt(k) * dcp`, the floor for the HS norm of the negative component
    /// in any CP decomposition; zero for CP maps.
    pub bound: f64,
    /// HS norm of `c_minus`; always `>= bound`.
    pub hs_minus: f64,
}

/// Verdict on a claimed decomposition `Phi = Phi1 - Phi2` into CP maps.
#[derive(Debug, Clone)]
pub struct DecompositionAudit {
    /// Structural validity: both matrices PSD and their difference equal to
    /// the Choi matrix.
    pub valid: bool,
    /// Violated structural conditions, empty when `valid`.
    pub reasons: Vec<String>,
    /// HS norm of the claimed negative component.
    pub hs_c2: f64,
    /// `sqrt(k) * dcp` of the audited map.
    pub bound: f64,
    /// Whether `hs_c2 >= bound - recon`.
    pub satisfied: bool,
    /// `hs_c2 - bound`.
    pub gap: f64,
    /// Whether `c2` dominates the Jordan negative part in the Loewner
    /// order; checked only for structurally valid decompositions. A `false`
    /// here on a valid decomposition indicates a numerical defect, since
    /// the minimality is a theorem.
    pub lowner_minimal: Option<bool>,
}

/// Splits the map into its positive and negative CP parts.
///
/// Eigenvalues with magnitude inside the zero tolerance contribute to
/// neither part.
pub fn decompose(spec: &HermitianMapSpec, tol: &ToleranceConfig) -> Result<JordanParts> {
    spec.ensure_hermitian(tol)?;
    let eig = hermitian_eig(spec.choi(), tol)?;
    let zero = eig.zero_tol();

    let c_plus = eig.weighted_sum(|l| l > zero, |l| l);
    let c_minus = eig.weighted_sum(|l| l < -zero, |l| -l);

    let lambda_min = eig.lambda_min();
    let dcp = if lambda_min < -zero { -lambda_min } else { 0.0 };
    let multiplicity_k = if dcp > 0.0 {
        let cluster = tol.eig_zero * (1.0 + lambda_min.abs());
        Some(
            eig.eigenvalues()
                .iter()
                .filter(|l| (**l - lambda_min).abs() <= cluster)
                .count(),
        )
    } else {
        None
    };
    let bound = multiplicity_k.map_or(0.0, |k| (k as f64).sqrt() * dcp);
    let hs_minus = c_minus.hs_norm();

    Ok(JordanParts {
        c_plus,
        c_minus,
        dcp,
        multiplicity_k,
        bound,
        hs_minus,
    })
}

/// `max(0, -lambda_min)` of the Choi matrix; zero exactly when the map is CP.
pub fn cp_distance(spec: &HermitianMapSpec, tol: &ToleranceConfig) -> Result<f64> {
    Ok(decompose(spec, tol)?.dcp)
}

/// Dimension of the smallest-eigenvalue eigenspace. Errors on CP maps,
/// where no negative eigenvalue exists and the count is undefined.
pub fn lambda_min_multiplicity(spec: &HermitianMapSpec, tol: &ToleranceConfig) -> Result<usize> {
    decompose(spec, tol)?
        .multiplicity_k
        .ok_or(Error::MultiplicityUndefined)
}

/// `sqrt(k) * dcp`; zero for CP maps.
pub fn negative_part_bound(spec: &HermitianMapSpec, tol: &ToleranceConfig) -> Result<f64> {
    Ok(decompose(spec, tol)?.bound)
}

/// The CP map closest to `spec` in Hilbert-Schmidt norm, together with the
/// attained distance `||c_minus||_HS`.
///
/// The minimizer is the positive Jordan part; any CP competitor is at least
/// as far away.
pub fn best_cp_approximation(
    spec: &HermitianMapSpec,
    tol: &ToleranceConfig,
) -> Result<(HermitianMapSpec, f64)> {
    let parts = decompose(spec, tol)?;
    let approx = HermitianMapSpec::from_choi(spec.m(), spec.n(), parts.c_plus)?;
    Ok((approx, parts.hs_minus))
}

/// Audits a claimed CP decomposition `(c1, c2)` of the map.
///
/// Structural validity requires `c1` and `c2` PSD and `c1 - c2` equal to the
/// Choi matrix within tolerance. Valid decompositions are additionally
/// checked against the Loewner minimality of the Jordan negative part and
/// the `sqrt(k) * dcp` norm floor.
pub fn audit_decomposition(
    spec: &HermitianMapSpec,
    c1: &ComplexMatrix,
    c2: &ComplexMatrix,
    tol: &ToleranceConfig,
) -> Result<DecompositionAudit> {
    let side = spec.m() * spec.n();
    for (name, c) in [("c1", c1), ("c2", c2)] {
        if !c.is_square() || c.rows() != side {
            return Err(Error::DimensionMismatch {
                context: "audit_decomposition",
                expected: format!("{name} square of side {side}"),
                found: format!("{}x{}", c.rows(), c.cols()),
            });
        }
    }
    let parts = decompose(spec, tol)?;

    let mut reasons = Vec::new();
    for (name, c) in [("c1", c1), ("c2", c2)] {
        match hermitian_eig(c, tol) {
            Ok(eig) => {
                let lmin = eig.lambda_min();
                if lmin < -tol.psd_slack_for(c) {
                    reasons.push(format!("{name} not PSD (lambda_min = {lmin:.6e})"));
                }
            }
            Err(e) => reasons.push(format!("{name} not Hermitian ({e})")),
        }
    }
    let diff = &(c1 - c2) - spec.choi();
    let diff_err = diff.max_abs();
    if diff_err > tol.recon_for(spec.choi()) {
        reasons.push(format!(
            "c1 - c2 does not reproduce the Choi matrix (max error {diff_err:.6e})"
        ));
    }
    let valid = reasons.is_empty();

    let lowner_minimal = if valid {
        let slack = tol.psd_slack_for(c2);
        let gap_matrix = c2 - &parts.c_minus;
        let lmin = hermitian_eig(&gap_matrix.symmetrize(), tol)?.lambda_min();
        Some(lmin >= -slack)
    } else {
        None
    };

    let hs_c2 = c2.hs_norm();
    let bound = parts.bound;
    Ok(DecompositionAudit {
        valid,
        reasons,
        hs_c2,
        bound,
        satisfied: hs_c2 >= bound - tol.recon,
        gap: hs_c2 - bound,
        lowner_minimal,
    })
}
