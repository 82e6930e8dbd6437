mod common;

use common::*;
use ibfgs_core::linalg::{
    aggregate_inverse_update, bfgs_update, dense_sum_invert, is_positive_definite, solve_apply,
    Ldlt, DEFAULT_EPS_DENOMINATOR,
};
use ibfgs_core::{LinalgError, SymMatrix};
use proptest::prelude::*;

const EPS: f64 = DEFAULT_EPS_DENOMINATOR;

fn e(n: usize, i: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[i] = 1.0;
    v
}

#[test]
fn bfgs_noop_when_secant_already_holds() {
    let b = bfgs_update(&SymMatrix::identity(2), &e(2, 0), &e(2, 0), EPS).unwrap();
    assert_eq!(b, SymMatrix::identity(2));
}

#[test]
fn bfgs_doubles_first_axis() {
    let b = bfgs_update(&SymMatrix::identity(2), &e(2, 0), &[2.0, 0.0], EPS).unwrap();
    assert_eq!(b, SymMatrix::from_diag(&[2.0, 1.0]));
}

#[test]
fn bfgs_matches_naive_formula() {
    let mut r = rng(1);
    for _ in 0..50 {
        let b = random_spd(&mut r, 4, 0.5);
        let (s, y) = curvature_pair(&mut r, 4);
        let got = bfgs_update(&from_dense(&b), &s, &y, EPS).unwrap();
        let want = naive_bfgs(&b, &s, &y);
        assert!(frob_dist(&dense(&got), &want) <= 1e-12 * (1.0 + frob_dist(&want, &vec![vec![0.0; 4]; 4])));
        let secant = matvec(&dense(&got), &s);
        let err: Vec<f64> = secant.iter().zip(&y).map(|(a, b)| a - b).collect();
        assert!(vnorm(&err) <= 1e-10 * (1.0 + vnorm(&y)));
    }
}

#[test]
fn bfgs_rejects_nonpositive_curvature() {
    let b = SymMatrix::identity(2);
    let err = bfgs_update(&b, &e(2, 0), &[-1.0, 0.0], EPS).unwrap_err();
    assert!(matches!(err, LinalgError::DegenerateDenominator { .. }));
    let err = bfgs_update(&b, &[0.0, 0.0], &[1.0, 0.0], EPS).unwrap_err();
    assert!(matches!(err, LinalgError::DegenerateDenominator { .. }));
}

#[test]
fn aggregate_single_component_noop() {
    let binv = aggregate_inverse_update(
        &SymMatrix::identity(2),
        &SymMatrix::identity(2),
        &e(2, 0),
        &e(2, 0),
        EPS,
    )
    .unwrap();
    assert!(frob_dist(&dense(&binv), &identity(2)) <= 1e-15);
}

#[test]
fn aggregate_matches_brute_force_after_one_update() {
    let mut r = rng(2);
    for _ in 0..20 {
        let comps: Vec<Dense> = (0..3).map(|_| random_spd(&mut r, 3, 0.5)).collect();
        let mut sum = comps[0].clone();
        for c in &comps[1..] {
            sum = add_scaled(&sum, 1.0, c);
        }
        let binv = from_dense(&gauss_jordan_inverse(&sum));
        let (s, y) = curvature_pair(&mut r, 3);
        let updated = aggregate_inverse_update(&binv, &from_dense(&comps[1]), &s, &y, EPS).unwrap();
        let new_sum = add_scaled(&add_scaled(&sum, -1.0, &comps[1]), 1.0, &naive_bfgs(&comps[1], &s, &y));
        let want = gauss_jordan_inverse(&new_sum);
        assert!(frob_dist(&dense(&updated), &want) <= 1e-8);
    }
}

/// Runs `updates` cyclic accepted updates and returns `|Binv * sum B - I|_F`.
fn chain_drift(seed: u64, m: usize, n: usize, updates: usize) -> f64 {
    let mut r = rng(seed);
    let mut comps: Vec<SymMatrix> = (0..m).map(|_| SymMatrix::identity(n)).collect();
    let mut binv = dense_sum_invert(&comps).unwrap();
    for k in 0..updates {
        let i = k % m;
        let (s, y) = curvature_pair(&mut r, n);
        let b_new = bfgs_update(&comps[i], &s, &y, EPS).unwrap();
        binv = match aggregate_inverse_update(&binv, &comps[i], &s, &y, EPS) {
            Ok(b) => b,
            Err(LinalgError::DegenerateDenominator { .. }) => {
                comps[i] = b_new.clone();
                dense_sum_invert(&comps).unwrap()
            }
            Err(e) => panic!("{e}"),
        };
        comps[i] = b_new;
    }
    let mut sum = vec![vec![0.0; n]; n];
    for c in &comps {
        sum = add_scaled(&sum, 1.0, &dense(c));
    }
    frob_dist(&matmul(&dense(&binv), &sum), &identity(n))
}

#[test]
fn aggregate_chain_drift_is_small() {
    assert!(chain_drift(3, 5, 4, 50) <= 1e-6);
}

#[test]
fn solve_apply_examples() {
    let v = vec![3.0, -1.0];
    assert_eq!(*solve_apply(&SymMatrix::identity(2), &v), v);
    assert_eq!(*solve_apply(&SymMatrix::from_diag(&[2.0, 4.0]), &[1.0, 1.0]), vec![2.0, 4.0]);
    let mut r = rng(4);
    let a = random_spd(&mut r, 6, 0.0);
    let x = random_vec(&mut r, 6, 1.0);
    let got = solve_apply(&from_dense(&a), &x);
    for (g, w) in got.iter().zip(matvec(&a, &x)) {
        assert!((g - w).abs() <= 1e-14 * (1.0 + w.abs()));
    }
}

#[test]
fn dense_sum_invert_examples() {
    let copies = vec![SymMatrix::identity(3); 4];
    assert!(frob_dist(&dense(&dense_sum_invert(&copies).unwrap()), &dense(&SymMatrix::scaled_identity(3, 0.25))) <= 1e-15);
    let pair = [SymMatrix::from_diag(&[1.0, 2.0]), SymMatrix::from_diag(&[3.0, 2.0])];
    let inv = dense_sum_invert(&pair).unwrap();
    assert!((inv.get(0, 0) - 0.25).abs() < 1e-15 && (inv.get(1, 1) - 0.25).abs() < 1e-15);
    assert_eq!(inv.get(1, 0), 0.0);

    let mut r = rng(5);
    let comps: Vec<Dense> = (0..5).map(|_| random_spd(&mut r, 4, 0.1)).collect();
    let mut sum = vec![vec![0.0; 4]; 4];
    for c in &comps {
        sum = add_scaled(&sum, 1.0, c);
    }
    let inv = dense_sum_invert(comps.iter().map(from_dense).collect::<Vec<_>>().iter()).unwrap();
    assert!(frob_dist(&matmul(&dense(&inv), &sum), &identity(4)) <= 1e-10);
}

#[test]
fn singular_sum_is_reported() {
    let z = [SymMatrix::zeros(2)];
    assert!(matches!(dense_sum_invert(&z), Err(LinalgError::SingularMatrix { .. })));
}

#[test]
fn pd_probe_agrees_with_cholesky() {
    let mut r = rng(6);
    for _ in 0..100 {
        let a = random_spd(&mut r, 5, -1.5);
        assert_eq!(is_positive_definite(&from_dense(&a)), cholesky(&a).is_some());
    }
    let ldlt = Ldlt::factor(&from_dense(&random_spd(&mut r, 5, 0.5))).unwrap();
    assert!(ldlt.pivots().iter().all(|&p| p > 0.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn accepted_updates_keep_secant_symmetry_and_pd(seed in any::<u64>(), n in 1usize..8) {
        let mut r = rng(seed);
        let b = random_spd(&mut r, n, 0.5);
        let (s, y) = curvature_pair(&mut r, n);
        let up = bfgs_update(&from_dense(&b), &s, &y, EPS).unwrap();
        let d = dense(&up);
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(d[i][j].to_bits(), d[j][i].to_bits());
            }
        }
        let bs = matvec(&d, &s);
        let err: Vec<f64> = bs.iter().zip(&y).map(|(a, b)| a - b).collect();
        prop_assert!(vnorm(&err) <= 1e-10 * (1.0 + vnorm(&y)));
        prop_assert!(cholesky(&d).is_some());
    }

    #[test]
    fn aggregate_inverse_tracks_sum(seed in any::<u64>(), m in 1usize..=8, n in 1usize..=8) {
        prop_assert!(chain_drift(seed, m, n, 50) <= 1e-6);
    }

    #[test]
    fn aggregate_inverse_stays_symmetric(seed in any::<u64>()) {
        let mut r = rng(seed);
        let b = SymMatrix::identity(4);
        let binv = SymMatrix::scaled_identity(4, 0.5);
        let (s, y) = curvature_pair(&mut r, 4);
        let out = dense(&aggregate_inverse_update(&binv, &b, &s, &y, EPS).unwrap());
        for i in 0..4 {
            for j in 0..4 {
                prop_assert_eq!(out[i][j].to_bits(), out[j][i].to_bits());
            }
        }
    }
}
