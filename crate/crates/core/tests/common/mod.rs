//! Shared helpers for the integration suites: seeded random matrices, maps,
//! and spectra.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;

use hermap::{ComplexMatrix, HermitianMapSpec};

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut ChaCha20Rng, rows: usize, cols: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(
                i,
                j,
                Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            );
        }
    }
    m
}

pub fn random_hermitian(rng: &mut ChaCha20Rng, side: usize) -> ComplexMatrix {
    random_matrix(rng, side, side).symmetrize()
}

/// Random Hermitian-preserving map as a Hermitian Choi matrix.
pub fn random_hermitian_spec(rng: &mut ChaCha20Rng, m: usize, n: usize) -> HermitianMapSpec {
    HermitianMapSpec::from_choi(m, n, random_hermitian(rng, m * n)).expect("side matches")
}

/// Random PSD matrix `R* R`, entries of moderate size.
pub fn random_psd(rng: &mut ChaCha20Rng, side: usize) -> ComplexMatrix {
    let r = random_matrix(rng, side, side).scale(Complex64::new(0.5, 0.0));
    r.adjoint().matmul(&r)
}

/// Random CP map on the same spaces: Choi matrix assembled from a few
/// Kraus operators, PSD by construction.
pub fn random_cp_choi(rng: &mut ChaCha20Rng, m: usize, n: usize, terms: usize) -> ComplexMatrix {
    let mut choi = ComplexMatrix::zeros(m * n, m * n);
    for _ in 0..terms {
        let v = random_matrix(rng, n, m).scale(Complex64::new(0.6, 0.0));
        let vec_v = v.vec();
        choi = &choi + &ComplexMatrix::outer(&vec_v, &vec_v);
    }
    choi
}
