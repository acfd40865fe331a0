//! One function per subcommand, each returning the JSON value to print and
//! the process exit code.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde_json::Value;

use hermap::choi::{hs_norm_of_map, is_cp, is_hermitian_preserving};
use hermap::eig::hermitian_eig;
use hermap::extend::{
    apply_extension, block_reduce, build_extension, detect_block_partition, kraus_terms,
    BlockPartition, CpExtension,
};
use hermap::{jordan, ComplexMatrix, ToleranceConfig};

use crate::document::{MapDocument, MatrixJson};
use crate::report::*;
use crate::CliError;

fn json<T: serde::Serialize>(value: &T) -> Result<Value, CliError> {
    serde_json::to_value(value).map_err(|e| CliError::input(format!("serialization: {e}")))
}

pub fn choi(doc: &MapDocument, _tol: &ToleranceConfig) -> Result<(Value, i32), CliError> {
    let spec = doc.to_spec()?;
    let report = ChoiReport {
        m: spec.m(),
        n: spec.n(),
        choi: MatrixJson::from_matrix(spec.choi()),
    };
    Ok((json(&report)?, 0))
}

pub fn analyze(doc: &MapDocument, tol: &ToleranceConfig) -> Result<(Value, i32), CliError> {
    let spec = doc.to_spec()?;
    let eig = hermitian_eig(spec.choi(), tol).map_err(CliError::Core)?;
    let parts = jordan::decompose(&spec, tol).map_err(CliError::Core)?;
    let (cp, _) = is_cp(&spec, tol).map_err(CliError::Core)?;
    let report = AnalysisReport {
        eigenvalues: eig.eigenvalues().to_vec(),
        dcp: parts.dcp,
        multiplicity_k: parts.multiplicity_k,
        bound: parts.bound,
        hs_norm: hs_norm_of_map(&spec),
        hs_minus: parts.hs_minus,
        is_cp: cp,
        is_hermitian: is_hermitian_preserving(&spec, tol),
    };
    Ok((json(&report)?, 0))
}

pub fn jordan_split(doc: &MapDocument, tol: &ToleranceConfig) -> Result<(Value, i32), CliError> {
    let spec = doc.to_spec()?;
    let parts = jordan::decompose(&spec, tol).map_err(CliError::Core)?;
    let report = JordanReport {
        c_plus: MatrixJson::from_matrix(&parts.c_plus),
        c_minus: MatrixJson::from_matrix(&parts.c_minus),
        dcp: parts.dcp,
        multiplicity_k: parts.multiplicity_k,
        bound: parts.bound,
        hs_minus: parts.hs_minus,
    };
    Ok((json(&report)?, 0))
}

pub fn approx(doc: &MapDocument, tol: &ToleranceConfig) -> Result<(Value, i32), CliError> {
    let spec = doc.to_spec()?;
    let (best, distance) = jordan::best_cp_approximation(&spec, tol).map_err(CliError::Core)?;
    let report = ApproxReport {
        m: best.m(),
        n: best.n(),
        choi: MatrixJson::from_matrix(best.choi()),
        distance,
    };
    Ok((json(&report)?, 0))
}

pub fn kraus(doc: &MapDocument, tol: &ToleranceConfig) -> Result<(Value, i32), CliError> {
    let spec = doc.to_spec()?;
    let terms = kraus_terms(&spec, tol).map_err(CliError::Core)?;
    let report = KrausReport {
        count: terms.len(),
        terms: terms
            .iter()
            .map(|t| KrausTermJson {
                weight: t.weight,
                operator: MatrixJson::from_matrix(&t.operator),
            })
            .collect(),
    };
    Ok((json(&report)?, 0))
}

fn extension_terms(ext: &CpExtension) -> Vec<ExtensionTermJson> {
    ext.terms()
        .iter()
        .map(|t| ExtensionTermJson {
            magnitude: t.magnitude,
            sign: t.sign,
            aux_index: t.aux_index,
            operator: MatrixJson::from_matrix(&t.operator),
        })
        .collect()
}

pub fn extend(doc: &MapDocument, tol: &ToleranceConfig) -> Result<(Value, i32), CliError> {
    let spec = doc.to_spec()?;
    let ext = build_extension(&spec, tol).map_err(CliError::Core)?;
    let report = ExtendReport {
        m: ext.m(),
        n: ext.n(),
        k: ext.aux_dim(),
        q_diag: ext.q_diag(),
        terms: extension_terms(&ext),
    };
    Ok((json(&report)?, 0))
}

pub fn reduce(
    doc: &MapDocument,
    tol: &ToleranceConfig,
    partition: Option<&str>,
) -> Result<(Value, i32), CliError> {
    let spec = doc.to_spec()?;
    let partition = match partition {
        Some(text) => parse_partition(text)?,
        None => detect_block_partition(&spec, tol),
    };
    partition
        .validate_for(spec.m(), spec.n())
        .map_err(CliError::Core)?;

    let block_ranks =
        hermap::extend::block_ranks(&spec, &partition, tol).map_err(CliError::Core)?;
    let total_rank = hermitian_eig(spec.choi(), tol).map_err(CliError::Core)?.rank();

    let ext = block_reduce(&spec, &partition, tol).map_err(CliError::Core)?;
    let report = ReduceReport {
        input_sizes: partition.input_sizes.clone(),
        output_sizes: partition.output_sizes.clone(),
        block_ranks,
        total_rank,
        k: ext.aux_dim(),
        q_diag: ext.q_diag(),
        terms: extension_terms(&ext),
    };
    Ok((json(&report)?, 0))
}

pub fn audit(
    doc: &MapDocument,
    tol: &ToleranceConfig,
    c1_text: &str,
    c2_text: &str,
) -> Result<(Value, i32), CliError> {
    let spec = doc.to_spec()?;
    let c1 = parse_matrix_file(c1_text, "c1")?;
    let c2 = parse_matrix_file(c2_text, "c2")?;
    let audit = jordan::audit_decomposition(&spec, &c1, &c2, tol).map_err(CliError::Core)?;
    let report = AuditReport {
        valid: audit.valid,
        reasons: audit.reasons,
        hs_c2: audit.hs_c2,
        bound: audit.bound,
        satisfied: audit.satisfied,
        gap: audit.gap,
        lowner_minimal: audit.lowner_minimal,
    };
    Ok((json(&report)?, 0))
}

pub fn verify(
    doc: &MapDocument,
    tol: &ToleranceConfig,
    samples: usize,
    seed: u64,
) -> Result<(Value, i32), CliError> {
    let spec = doc.to_spec()?;
    let ext = build_extension(&spec, tol).map_err(CliError::Core)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut max_error = 0.0f64;
    for _ in 0..samples {
        let x = random_matrix(&mut rng, spec.m());
        let via_ext = apply_extension(&ext, &x).map_err(CliError::Core)?;
        let via_choi = hermap::choi::apply_via_choi(&spec, &x).map_err(CliError::Core)?;
        max_error = max_error.max(via_ext.max_diff(&via_choi));
    }
    let tolerance = tol.recon_for(spec.choi());
    let ok = max_error <= tolerance;
    let report = VerifyReport {
        samples,
        seed,
        k: ext.aux_dim(),
        max_error,
        tolerance,
        ok,
    };
    Ok((json(&report)?, if ok { 0 } else { 3 }))
}

fn random_matrix(rng: &mut ChaCha20Rng, side: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(side, side);
    for i in 0..side {
        for j in 0..side {
            m.set(
                i,
                j,
                Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            );
        }
    }
    m
}

/// Partition flag syntax: `m1,m2,.../n1,n2,...`.
fn parse_partition(text: &str) -> Result<BlockPartition, CliError> {
    let (inputs, outputs) = text.split_once('/').ok_or_else(|| {
        CliError::input(format!(
            "partition must look like \"m1,m2,.../n1,n2,...\", got \"{text}\""
        ))
    })?;
    let parse_sizes = |side: &str, what: &str| -> Result<Vec<usize>, CliError> {
        side.split(',')
            .map(|s| {
                s.trim().parse::<usize>().map_err(|_| {
                    CliError::input(format!("partition: bad {what} block size \"{s}\""))
                })
            })
            .collect()
    };
    BlockPartition::new(parse_sizes(inputs, "input")?, parse_sizes(outputs, "output")?)
        .map_err(CliError::Core)
}

/// A bare matrix file: `{"re": [[...]], "im": [[...]]}`.
fn parse_matrix_file(text: &str, what: &str) -> Result<ComplexMatrix, CliError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let mx: MatrixJson = serde_path_to_error::deserialize(&mut de)
        .map_err(|e| CliError::parse(format!("{what}: at {}: {}", e.path(), e.inner())))?;
    mx.to_matrix()
}

