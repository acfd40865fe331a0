//! Small zoo of built-in maps used by the CLI, the test suites, and as
//! worked examples of every analysis in the crate.

use num_complex::Complex64;

use crate::choi::{choi_from_action, HermitianMapSpec, MapAction};
use crate::extend::direct_sum;
use crate::matrix::ComplexMatrix;

/// Transposition on `M_d`: `X -> X^T`. Its Choi matrix is the swap operator;
/// the canonical positive-but-not-CP map.
pub fn transpose(d: usize) -> HermitianMapSpec {
    let action = MapAction::from_fn(d, d, |e| e.transpose()).expect("valid action");
    choi_from_action(&action)
}

/// The map `A -> [[2 a00, -a10], [-a01, 2 a11]]` on `M_2`: doubled diagonal
/// with transposed, sign-flipped off-diagonal part. Its Choi matrix is
///
/// ```text
/// [ 2  0  0  0 ]
/// [ 0  0 -1  0 ]
/// [ 0 -1  0  0 ]
/// [ 0  0  0  2 ]
/// ```
pub fn highmult() -> HermitianMapSpec {
    let action = MapAction::from_fn(2, 2, |e| {
        let mut img = ComplexMatrix::zeros(2, 2);
        img.set(0, 0, e.get(0, 0) * Complex64::new(2.0, 0.0));
        img.set(1, 1, e.get(1, 1) * Complex64::new(2.0, 0.0));
        img.set(0, 1, -e.get(1, 0));
        img.set(1, 0, -e.get(0, 1));
        img
    })
    .expect("valid action");
    choi_from_action(&action)
}

/// `A -> k tr(A) I_d`; for negative `k` the Choi matrix `k I` is negative
/// definite, making the zero map its best CP approximation.
pub fn scaled_trace(d: usize, k: f64) -> HermitianMapSpec {
    let action = MapAction::from_fn(d, d, |e| {
        ComplexMatrix::identity(d).scale(e.trace() * Complex64::new(k, 0.0))
    })
    .expect("valid action");
    choi_from_action(&action)
}

/// Symmetrizer `X -> X + X^T` on `M_d` (images of matrix units are
/// `E_ij + E_ji`). On real inputs this is `X + X*`.
pub fn hermitize(d: usize) -> HermitianMapSpec {
    let action = MapAction::from_fn(d, d, |e| e + &e.transpose()).expect("valid action");
    choi_from_action(&action)
}

/// Antisymmetrizer `X -> X - X^T` on `M_d` (images of matrix units are
/// `E_ij - E_ji`). On real inputs this is `X - X*`.
pub fn antihermitize(d: usize) -> HermitianMapSpec {
    let action = MapAction::from_fn(d, d, |e| e - &e.transpose()).expect("valid action");
    choi_from_action(&action)
}

/// Direct sum of `hermitize(2)` and `antihermitize(2)` on `M_4`: the
/// standard block-diagonal specimen for the auxiliary-space reduction.
pub fn block_example() -> HermitianMapSpec {
    direct_sum(&[hermitize(2), antihermitize(2)]).expect("both parts are 2x2 maps")
}
