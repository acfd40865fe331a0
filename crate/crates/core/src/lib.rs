//! Analysis of Hermitian-preserving linear maps between complex matrix
//! algebras.
//!
//! A linear map `Φ: M_m -> M_n` is stored through its Choi matrix, the
//! `mn x mn` block matrix whose `(i, j)` block is the image of the matrix
//! unit `E_ij`. On top of that representation the crate provides:
//!
//! * complete-positivity tests (`choi`),
//! * the Jordan split of a map into a difference of CP maps, the distance
//!   to the CP cone, and the nearest CP map in the Hilbert-Schmidt norm
//!   (`jordan`),
//! * weighted Kraus forms and CP extensions on an auxiliary space,
//!   including a block-diagonal reduction of the auxiliary dimension
//!   (`extend`),
//! * the dense complex-matrix kernel the rest is built on (`matrix`,
//!   `eig`).

pub mod builtins;
pub mod choi;
pub mod eig;
pub mod error;
pub mod extend;
pub mod jordan;
pub mod matrix;
pub mod tol;

pub use choi::{HermitianMapSpec, MapAction};
pub use eig::SpectralDecomposition;
pub use error::{Error, Result};
pub use extend::{BlockPartition, CpExtension, ExtensionTerm, KrausTerm};
pub use jordan::{DecompositionAudit, JordanParts};
pub use matrix::ComplexMatrix;
pub use tol::ToleranceConfig;
