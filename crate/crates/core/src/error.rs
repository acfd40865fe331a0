//! Error type shared by all modules.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An index passed to a constructor is outside the matrix dimension.
    #[error("index ({row}, {col}) out of range for dimension {dim}")]
    IndexOutOfRange { dim: usize, row: usize, col: usize },

    /// Shapes of the operands do not line up.
    #[error("dimension mismatch in {context}: expected {expected}, got {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: String,
        found: String,
    },

    /// A matrix required to be Hermitian is not, beyond tolerance.
    #[error(
        "matrix is not Hermitian: max asymmetry {max_asymmetry:.3e} exceeds tolerance {tolerance:.3e}"
    )]
    NotHermitian { max_asymmetry: f64, tolerance: f64 },

    /// A map required to be Hermitian-preserving has a non-Hermitian Choi matrix.
    #[error(
        "map is not Hermitian-preserving: Choi asymmetry {max_asymmetry:.3e} exceeds tolerance {tolerance:.3e}"
    )]
    NotHermitianPreserving { max_asymmetry: f64, tolerance: f64 },

    /// The smallest-eigenvalue multiplicity is undefined for CP maps.
    #[error("map is CP; multiplicity undefined")]
    MultiplicityUndefined,

    /// The zero map admits no Kraus term and no extension.
    #[error("Choi matrix has rank 0; extension undefined")]
    ZeroRank,

    /// The Choi matrix couples two blocks that a partition claims are independent.
    #[error(
        "Choi matrix is not block-diagonal for the partition: blocks ({row_block}, {col_block}) couple with magnitude {magnitude:.3e}"
    )]
    BlockCoupling {
        row_block: usize,
        col_block: usize,
        magnitude: f64,
    },

    /// Partition sizes do not add up to the map dimensions.
    #[error("invalid block partition: {context}")]
    PartitionMismatch { context: String },

    /// The Jacobi eigensolver did not converge (should not happen for
    /// Hermitian input; indicates corrupted data).
    #[error("eigensolver failed to converge after {sweeps} sweeps (off-diagonal norm {offdiag:.3e})")]
    NoConvergence { sweeps: usize, offdiag: f64 },
}
