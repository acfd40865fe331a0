//! JSON interchange: the map document schema, matrix encoding, tolerance
//! overrides, and the registry of built-in maps.
//!
//! A map document carries the dimensions plus exactly one of:
//!
//! * `"choi"`: the literal Choi matrix as separate row-major `re`/`im`
//!   arrays (both required, even when zero), side `m * n`;
//! * `"builtin"`: a named constructor from [`builtin_registry`] with its
//!   parameters.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use hermap::{ComplexMatrix, HermitianMapSpec, ToleranceConfig};

use crate::CliError;

/// Dense complex matrix as parallel real/imaginary row-major arrays.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let re = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m.get(i, j).re).collect())
            .collect();
        let im = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m.get(i, j).im).collect())
            .collect();
        Self { re, im }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix, CliError> {
        let rows = self.re.len();
        if rows == 0 {
            return Err(CliError::input("matrix: \"re\" must have at least one row"));
        }
        if self.im.len() != rows {
            return Err(CliError::input(format!(
                "matrix: \"re\" has {rows} rows but \"im\" has {}",
                self.im.len()
            )));
        }
        let cols = self.re[0].len();
        if cols == 0 {
            return Err(CliError::input("matrix: rows must be nonempty"));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            if self.re[i].len() != cols || self.im[i].len() != cols {
                return Err(CliError::input(format!(
                    "matrix: row {i} is ragged (expected {cols} columns)"
                )));
            }
            for j in 0..cols {
                let z = Complex64::new(self.re[i][j], self.im[i][j]);
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(CliError::input(format!(
                        "matrix: non-finite entry at ({i}, {j})"
                    )));
                }
                data.push(z);
            }
        }
        Ok(ComplexMatrix::new(rows, cols, data))
    }
}

/// Built-in constructor reference inside a map document.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuiltinJson {
    pub name: String,
    /// Scale parameter (used by `scaled_trace`).
    #[serde(default)]
    pub k: Option<f64>,
    /// Dimension parameter; defaults to the document's `m`.
    #[serde(default)]
    pub d: Option<usize>,
}

/// Optional per-document tolerance overrides.
#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TolJson {
    #[serde(default)]
    pub eig_zero: Option<f64>,
    #[serde(default)]
    pub psd_slack: Option<f64>,
    #[serde(default)]
    pub recon: Option<f64>,
}

/// Top-level input schema.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub m: usize,
    pub n: usize,
    #[serde(default)]
    pub choi: Option<MatrixJson>,
    #[serde(default)]
    pub builtin: Option<BuiltinJson>,
    #[serde(default)]
    pub tol: Option<TolJson>,
}

impl MapDocument {
    /// Parses and validates a document, reporting the JSON path on schema
    /// violations.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut de = serde_json::Deserializer::from_str(text);
        let doc: MapDocument = serde_path_to_error::deserialize(&mut de).map_err(|e| {
            CliError::parse(format!("at {}: {}", e.path(), e.inner()))
        })?;
        if doc.m == 0 || doc.n == 0 {
            return Err(CliError::input("dimensions m and n must be positive"));
        }
        match (&doc.choi, &doc.builtin) {
            (Some(_), Some(_)) => Err(CliError::input(
                "exactly one of \"choi\" and \"builtin\" may be present, got both",
            )),
            (None, None) => Err(CliError::input(
                "exactly one of \"choi\" and \"builtin\" must be present",
            )),
            _ => Ok(doc),
        }
    }

    /// Materializes the map this document describes.
    pub fn to_spec(&self) -> Result<HermitianMapSpec, CliError> {
        if let Some(mx) = &self.choi {
            let matrix = mx.to_matrix()?;
            let side = self.m * self.n;
            if matrix.rows() != side || matrix.cols() != side {
                return Err(CliError::input(format!(
                    "choi matrix must be {side}x{side} for m = {}, n = {}, got {}x{}",
                    self.m,
                    self.n,
                    matrix.rows(),
                    matrix.cols()
                )));
            }
            return HermitianMapSpec::from_choi(self.m, self.n, matrix)
                .map_err(CliError::Core);
        }
        let builtin = self.builtin.as_ref().expect("validated in parse");
        resolve_builtin(builtin, self.m, self.n)
    }

    /// Tolerances: defaults, overridden by the document's `tol` block.
    pub fn tolerances(&self) -> ToleranceConfig {
        let mut t = ToleranceConfig::default();
        if let Some(over) = self.tol {
            if let Some(v) = over.eig_zero {
                t.eig_zero = v;
            }
            if let Some(v) = over.psd_slack {
                t.psd_slack = v;
            }
            if let Some(v) = over.recon {
                t.recon = v;
            }
        }
        t
    }
}

/// One registry entry: the constructor name, its parameters, and what the
/// map does.
pub struct BuiltinInfo {
    pub name: &'static str,
    pub params: &'static str,
    pub summary: &'static str,
}

impl fmt::Display for BuiltinInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{} - {}", self.name, self.params, self.summary)
    }
}

/// The built-in map constructors accepted in `"builtin"` blocks.
pub fn builtin_registry() -> Vec<BuiltinInfo> {
    vec![
        BuiltinInfo {
            name: "transpose",
            params: "(d = m)",
            summary: "X -> X^T; Choi matrix is the swap operator",
        },
        BuiltinInfo {
            name: "highmult",
            params: " (2x2 only)",
            summary: "doubled diagonal with sign-flipped transposed off-diagonal",
        },
        BuiltinInfo {
            name: "scaled_trace",
            params: "(k, d = m)",
            summary: "X -> k tr(X) I_d; negative k gives a negative-definite Choi matrix",
        },
        BuiltinInfo {
            name: "hermitize",
            params: "(d = m)",
            summary: "X -> X + X^T",
        },
        BuiltinInfo {
            name: "antihermitize",
            params: "(d = m)",
            summary: "X -> X - X^T",
        },
        BuiltinInfo {
            name: "block_example",
            params: " (4x4 only)",
            summary: "hermitize(2) (+) antihermitize(2), block-diagonal Choi matrix",
        },
    ]
}

fn resolve_builtin(b: &BuiltinJson, m: usize, n: usize) -> Result<HermitianMapSpec, CliError> {
    use hermap::builtins;

    let square_dim = |what: &str| -> Result<usize, CliError> {
        let d = b.d.unwrap_or(m);
        if m != n || d != m {
            return Err(CliError::input(format!(
                "builtin \"{what}\" acts on square spaces: need m = n = d, got m = {m}, n = {n}, d = {d}"
            )));
        }
        Ok(d)
    };

    match b.name.as_str() {
        "transpose" => Ok(builtins::transpose(square_dim("transpose")?)),
        "highmult" => {
            if (m, n) != (2, 2) {
                return Err(CliError::input(format!(
                    "builtin \"highmult\" is a 2x2 map, got m = {m}, n = {n}"
                )));
            }
            Ok(builtins::highmult())
        }
        "scaled_trace" => {
            let k = b.k.ok_or_else(|| {
                CliError::input("builtin \"scaled_trace\" requires the parameter \"k\"")
            })?;
            if !k.is_finite() {
                return Err(CliError::input("parameter \"k\" must be finite"));
            }
            Ok(builtins::scaled_trace(square_dim("scaled_trace")?, k))
        }
        "hermitize" => Ok(builtins::hermitize(square_dim("hermitize")?)),
        "antihermitize" => Ok(builtins::antihermitize(square_dim("antihermitize")?)),
        "block_example" => {
            if (m, n) != (4, 4) {
                return Err(CliError::input(format!(
                    "builtin \"block_example\" is a 4x4 map, got m = {m}, n = {n}"
                )));
            }
            Ok(builtins::block_example())
        }
        other => {
            let names: Vec<&str> = builtin_registry().iter().map(|b| b.name).collect();
            Err(CliError::input(format!(
                "unknown builtin \"{other}\"; available: {}",
                names.join(", ")
            )))
        }
    }
}
