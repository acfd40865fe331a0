//! Machine-readable reports, one JSON object per invocation.

use serde::Serialize;

use crate::document::MatrixJson;

/// Everything the spectrum of the Choi matrix determines at a glance.
#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    /// Descending real eigenvalues of the Choi matrix.
    pub eigenvalues: Vec<f64>,
    pub dcp: f64,
    /// `null` for CP maps, where no negative eigenvalue exists.
    pub multiplicity_k: Option<usize>,
    pub bound: f64,
    pub hs_norm: f64,
    pub hs_minus: f64,
    pub is_cp: bool,
    pub is_hermitian: bool,
}

#[derive(Debug, Serialize)]
pub struct ChoiReport {
    pub m: usize,
    pub n: usize,
    pub choi: MatrixJson,
}

#[derive(Debug, Serialize)]
pub struct JordanReport {
    pub c_plus: MatrixJson,
    pub c_minus: MatrixJson,
    pub dcp: f64,
    pub multiplicity_k: Option<usize>,
    pub bound: f64,
    pub hs_minus: f64,
}

/// Best CP approximation: a reusable map document plus the attained distance.
#[derive(Debug, Serialize)]
pub struct ApproxReport {
    pub m: usize,
    pub n: usize,
    pub choi: MatrixJson,
    pub distance: f64,
}

#[derive(Debug, Serialize)]
pub struct KrausReport {
    pub count: usize,
    pub terms: Vec<KrausTermJson>,
}

#[derive(Debug, Serialize)]
pub struct KrausTermJson {
    pub weight: f64,
    pub operator: MatrixJson,
}

#[derive(Debug, Serialize)]
pub struct ExtendReport {
    pub m: usize,
    pub n: usize,
    /// Auxiliary dimension.
    pub k: usize,
    pub q_diag: Vec<i8>,
    pub terms: Vec<ExtensionTermJson>,
}

#[derive(Debug, Serialize)]
pub struct ExtensionTermJson {
    pub magnitude: f64,
    pub sign: i8,
    /// Zero-based index into `q_diag`.
    pub aux_index: usize,
    pub operator: MatrixJson,
}

#[derive(Debug, Serialize)]
pub struct ReduceReport {
    pub input_sizes: Vec<usize>,
    pub output_sizes: Vec<usize>,
    pub block_ranks: Vec<usize>,
    pub total_rank: usize,
    pub k: usize,
    pub q_diag: Vec<i8>,
    pub terms: Vec<ExtensionTermJson>,
}

#[derive(Debug, Serialize)]
pub struct AuditReport {
    pub valid: bool,
    pub reasons: Vec<String>,
    pub hs_c2: f64,
    pub bound: f64,
    pub satisfied: bool,
    pub gap: f64,
    pub lowner_minimal: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub samples: usize,
    pub seed: u64,
    /// Auxiliary dimension of the extension under test.
    pub k: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub ok: bool,
}
