//! Property-based checks of the algebraic identities the crate is built on.

mod common;

use num_complex::Complex64;
use proptest::prelude::*;

use hermap::choi::{apply_via_choi, choi_from_action, is_cp, is_hermitian_preserving, MapAction};
use hermap::eig::hermitian_eig;
use hermap::extend::{build_extension, detect_block_partition, direct_sum, kraus_terms};
use hermap::jordan;
use hermap::{ComplexMatrix, HermitianMapSpec, ToleranceConfig};

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn complex_entry() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec(complex_entry(), rows * cols)
        .prop_map(move |data| ComplexMatrix::new(rows, cols, data))
}

fn shape() -> impl Strategy<Value = (usize, usize)> {
    (1usize..5, 1usize..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn vec_unvec_round_trip((n, m) in shape(), data in proptest::collection::vec(complex_entry(), 16)) {
        let a = ComplexMatrix::new(n, m, data[..n * m].to_vec());
        let round = ComplexMatrix::unvec(&a.vec(), n, m).unwrap();
        prop_assert_eq!(a, round);
    }

    #[test]
    fn kron_vec_identity(
        mm in matrix(2, 2),
        nn in matrix(2, 2),
        cc in matrix(2, 2),
    ) {
        // (M (x) N) vec(C) == vec(N C M^T), all sixteen components expanded
        // straight from the definitions as the oracle.
        let left = {
            let k = mm.kron(&nn);
            let v = cc.vec();
            let mut out = vec![Complex64::ZERO; 4];
            for (row, entry) in out.iter_mut().enumerate() {
                for (col, vc) in v.iter().enumerate() {
                    *entry += k.get(row, col) * vc;
                }
            }
            out
        };
        let mut oracle = [Complex64::ZERO; 4];
        for i_m in 0..2 {
            for i_n in 0..2 {
                let mut sum = Complex64::ZERO;
                for j_m in 0..2 {
                    for j_n in 0..2 {
                        sum += mm.get(i_m, j_m) * nn.get(i_n, j_n) * cc.get(j_n, j_m);
                    }
                }
                oracle[i_m * 2 + i_n] = sum;
            }
        }
        let right = nn.matmul(&cc).matmul(&mm.transpose()).vec();
        for i in 0..4 {
            prop_assert!((left[i] - oracle[i]).norm() < 1e-12);
            prop_assert!((right[i] - oracle[i]).norm() < 1e-12);
        }
    }

    #[test]
    fn first_partial_trace_contracts_column_factor(
        b in matrix(3, 2),
        c in matrix(3, 2),
    ) {
        // tr over the slow m-dimensional factor of vec(B) vec(C)* is B C*.
        let rank_one = ComplexMatrix::outer(&b.vec(), &c.vec());
        let traced = rank_one.partial_trace_first(2, 3).unwrap();
        let expected = b.matmul(&c.adjoint());
        prop_assert!(traced.approx_eq(&expected, 1e-12));
    }

    #[test]
    fn partial_traces_preserve_trace(x in matrix(6, 6)) {
        let t1 = x.partial_trace_first(2, 3).unwrap().trace();
        let t2 = x.partial_trace_second(2, 3).unwrap().trace();
        let t = x.trace();
        prop_assert!((t1 - t).norm() < 1e-12);
        prop_assert!((t2 - t).norm() < 1e-12);
    }

    #[test]
    fn hs_norm_squared_is_gram_trace(m in matrix(3, 4)) {
        let direct = m.hs_norm().powi(2);
        let gram = m.adjoint().matmul(&m).trace();
        prop_assert!(gram.im.abs() < 1e-12);
        prop_assert!((direct - gram.re).abs() <= 1e-12 * (1.0 + direct));
    }

    #[test]
    fn eigendecomposition_invariants(raw in matrix(5, 5)) {
        let h = raw.symmetrize();
        let eig = hermitian_eig(&h, &tol()).unwrap();
        let budget = 5.0 * 1e-13 * (1.0 + h.inf_norm());
        prop_assert!(eig.reconstruct().max_diff(&h) <= budget);
        let v = eig.eigenvectors();
        prop_assert!(v.adjoint().matmul(v).max_diff(&ComplexMatrix::identity(5)) <= budget);
        for w in eig.eigenvalues().windows(2) {
            prop_assert!(w[0] >= w[1]);
        }
    }

    #[test]
    fn choi_isomorphism_round_trip(images in proptest::collection::vec(matrix(3, 3), 4)) {
        let action = MapAction::new(2, 3, images).unwrap();
        let spec = choi_from_action(&action);
        // the isomorphism reproduces the action on every matrix unit
        for i in 0..2 {
            for j in 0..2 {
                let unit = ComplexMatrix::matrix_unit(2, i, j).unwrap();
                let via_choi = apply_via_choi(&spec, &unit).unwrap();
                prop_assert!(via_choi.approx_eq(action.image(i, j), 1e-12));
            }
        }
    }

    #[test]
    fn apply_is_linear(
        images in proptest::collection::vec(matrix(2, 2), 4),
        x in matrix(2, 2),
        y in matrix(2, 2),
        alpha in complex_entry(),
        beta in complex_entry(),
    ) {
        let spec = choi_from_action(&MapAction::new(2, 2, images).unwrap());
        let combo = &x.scale(alpha) + &y.scale(beta);
        let lhs = apply_via_choi(&spec, &combo).unwrap();
        let rhs = &apply_via_choi(&spec, &x).unwrap().scale(alpha)
            + &apply_via_choi(&spec, &y).unwrap().scale(beta);
        prop_assert!(lhs.approx_eq(&rhs, 1e-12));
    }

    #[test]
    fn kraus_built_maps_are_hermitian_preserving(
        a1 in matrix(2, 2),
        a2 in matrix(2, 2),
        w1 in -2.0..2.0f64,
        w2 in -2.0..2.0f64,
    ) {
        // X -> w1 A1 X A1* + w2 A2 X A2* with real weights
        let action = MapAction::from_fn(2, 2, |e| {
            let t1 = a1.matmul(e).matmul(&a1.adjoint()).scale(Complex64::new(w1, 0.0));
            let t2 = a2.matmul(e).matmul(&a2.adjoint()).scale(Complex64::new(w2, 0.0));
            &t1 + &t2
        }).unwrap();
        let spec = choi_from_action(&action);
        prop_assert!(is_hermitian_preserving(&spec, &tol()));
    }

    #[test]
    fn kraus_sums_are_cp(
        a1 in matrix(3, 2),
        a2 in matrix(3, 2),
    ) {
        let action = MapAction::from_fn(2, 3, |e| {
            let t1 = a1.matmul(e).matmul(&a1.adjoint());
            let t2 = a2.matmul(e).matmul(&a2.adjoint());
            &t1 + &t2
        }).unwrap();
        let spec = choi_from_action(&action);
        let (cp, lambda_min) = is_cp(&spec, &tol()).unwrap();
        prop_assert!(cp, "lambda_min = {}", lambda_min);
    }
}

#[test]
fn jordan_split_invariants_on_seeded_maps() {
    let mut rng = common::rng(41);
    for _ in 0..40 {
        let spec = common::random_hermitian_spec(&mut rng, 2, 2);
        let parts = jordan::decompose(&spec, &tol()).unwrap();
        assert!((&parts.c_plus - &parts.c_minus).approx_eq(spec.choi(), 1e-11));
        assert!(parts.c_plus.matmul(&parts.c_minus).max_abs() < 1e-11);
        assert!(parts.hs_minus >= parts.bound - 1e-11);

        // negative-part norm from the spectrum, computed independently
        let eig = hermitian_eig(spec.choi(), &tol()).unwrap();
        let from_spectrum: f64 = eig
            .eigenvalues()
            .iter()
            .filter(|l| **l < -eig.zero_tol())
            .map(|l| l * l)
            .sum();
        assert!((parts.hs_minus.powi(2) - from_spectrum).abs() < 1e-10);
    }
}

#[test]
fn extension_fidelity_on_seeded_maps() {
    let mut rng = common::rng(97);
    for trial in 0..30 {
        let spec = common::random_hermitian_spec(&mut rng, 2, 2);
        let ext = build_extension(&spec, &tol()).unwrap();
        assert!(ext.sign_consistent());
        let x = common::random_matrix(&mut rng, 2, 2);
        let via_ext = hermap::extend::apply_extension(&ext, &x).unwrap();
        let via_choi = apply_via_choi(&spec, &x).unwrap();
        assert!(
            via_ext.approx_eq(&via_choi, 1e-11),
            "extension mismatch at trial {trial}"
        );
        let fast = ext.apply_kraus_sum(&x).unwrap();
        assert!(via_ext.approx_eq(&fast, 1e-11));
    }
}

#[test]
fn kraus_completeness_on_non_hermitian_inputs() {
    let mut rng = common::rng(1234);
    for _ in 0..20 {
        let spec = common::random_hermitian_spec(&mut rng, 3, 2);
        let terms = kraus_terms(&spec, &tol()).unwrap();
        let x = common::random_matrix(&mut rng, 3, 3);
        let mut sum = ComplexMatrix::zeros(2, 2);
        for t in &terms {
            let axa = t.operator.matmul(&x).matmul(&t.operator.adjoint());
            sum = &sum + &axa.scale(Complex64::new(t.weight, 0.0));
        }
        let expected = apply_via_choi(&spec, &x).unwrap();
        assert!(sum.approx_eq(&expected, 1e-11));
    }
}

#[test]
fn block_reduction_on_seeded_direct_sums() {
    let mut rng = common::rng(555);
    for trial in 0..15 {
        let part_a = common::random_hermitian_spec(&mut rng, 2, 2);
        let part_b = common::random_hermitian_spec(&mut rng, 2, 2);
        let spec = direct_sum(&[part_a, part_b]).unwrap();

        let detected = detect_block_partition(&spec, &tol());
        // random dense blocks do not decompose further
        assert_eq!(detected.input_sizes, vec![2, 2], "trial {trial}");
        assert_eq!(detected.output_sizes, vec![2, 2]);

        let ext = hermap::extend::block_reduce(&spec, &detected, &tol()).unwrap();
        let full_rank = hermitian_eig(spec.choi(), &tol()).unwrap().rank();
        assert!(ext.aux_dim() <= full_rank);
        assert!(ext.sign_consistent());

        let x = common::random_matrix(&mut rng, 4, 4);
        let err = hermap::extend::reconstruction_error(&ext, &spec, &x).unwrap();
        assert!(err < 1e-11, "reconstruction error {err} at trial {trial}");
    }
}

#[test]
fn lowner_minimality_of_negative_part() {
    let mut rng = common::rng(777);
    for _ in 0..25 {
        let spec = common::random_hermitian_spec(&mut rng, 2, 2);
        let parts = jordan::decompose(&spec, &tol()).unwrap();

        // Any PSD B with C + B PSD dominates the negative part.
        let b = &parts.c_minus + &common::random_psd(&mut rng, 4);
        let shifted = spec.choi() + &b;
        assert!(hermitian_eig(&shifted.symmetrize(), &tol()).unwrap().lambda_min() > -1e-11);
        let gap = &b - &parts.c_minus;
        assert!(hermitian_eig(&gap.symmetrize(), &tol()).unwrap().lambda_min() >= -1e-11);
    }
}

#[test]
fn best_cp_beats_random_cp_competitors() {
    let mut rng = common::rng(31337);
    for _ in 0..25 {
        let spec = common::random_hermitian_spec(&mut rng, 2, 2);
        let (best, distance) = jordan::best_cp_approximation(&spec, &tol()).unwrap();
        let (cp, _) = is_cp(&best, &tol()).unwrap();
        assert!(cp);
        let competitor = common::random_cp_choi(&mut rng, 2, 2, 3);
        let competitor_distance = (spec.choi() - &competitor).hs_norm();
        assert!(competitor_distance >= distance - 1e-11);
    }
}

#[test]
fn zero_map_conventions() {
    let zero = HermitianMapSpec::from_choi(2, 2, ComplexMatrix::zeros(4, 4)).unwrap();
    assert!(kraus_terms(&zero, &tol()).unwrap().is_empty());
    let partition = detect_block_partition(&zero, &tol());
    assert_eq!(partition.input_sizes, vec![1, 1]);
    assert_eq!(partition.output_sizes, vec![1, 1]);
}
