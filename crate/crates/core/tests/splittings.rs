mod common;

use innerit::gen;
use innerit::linalg::dense::{diag, from_rows, general_eigenvalues, max_abs, symmetrize};
use innerit::linalg::{dense_mv, DenseMatrix};
use innerit::splittings::{materialize_dense, Side, Splitting, SplittingKind};
use proptest::prelude::*;

use common::*;

const DIRECT_KINDS: [SplittingKind; 3] = [SplittingKind::Richardson, SplittingKind::Jor, SplittingKind::Ssor];
const NE_KINDS: [SplittingKind; 3] = [SplittingKind::RichardsonNe, SplittingKind::CimminoNe, SplittingKind::NeSsor];

fn omega_for(kind: SplittingKind, raw: f64) -> f64 {
    if kind.is_ssor_family() && (raw - 2.0).abs() < 1e-3 {
        raw + 0.01
    } else {
        raw
    }
}

fn power(h: &DenseMatrix, k: usize) -> DenseMatrix {
    let mut out = DenseMatrix::identity(h.nrows(), h.ncols());
    for _ in 0..k {
        out = h * out;
    }
    out
}

#[test]
fn jor_inverse_on_rank_one() {
    let a = from_rows(&[&[1.0, 1.0], &[1.0, 1.0]]);
    let s = Splitting::direct(SplittingKind::Jor, 0.5, sparse(&a)).unwrap();
    let z = s.apply_m_inv(&[2.0, 2.0]).unwrap();
    assert_eq!(z, vec![1.0, 1.0]);
}

#[test]
fn ssor_inverse_matches_dense_m() {
    let a = from_rows(&[&[2.0, -1.0], &[-1.0, 2.0]]);
    let s = Splitting::direct(SplittingKind::Ssor, 1.0, sparse(&a)).unwrap();
    // (D + L) D⁻¹ (D + Lᵀ) with D = 2I, L = [[0,0],[-1,0]]
    let m = from_rows(&[&[2.0, -1.0], &[-1.0, 2.5]]);
    let r = [0.3, -1.7];
    let expect = dense_mv(&m.clone().try_inverse().unwrap(), &r);
    let got = s.apply_m_inv(&r).unwrap();
    assert!(diff_norm(&got, &expect) <= 1e-12);
    assert!(max_abs(&(s.splitting_matrix_dense().unwrap() - m)) <= 1e-15);
}

#[test]
fn divergent_example_series() {
    let p = direct(&diag(&[1.0, -1.0]), SplittingKind::Richardson, 1.0, 2).unwrap();
    let mat = materialize_dense(&p).unwrap();
    assert_eq!(mat.h, diag(&[0.0, 2.0]));
    assert_eq!(mat.c, diag(&[1.0, 3.0]));
    assert_eq!(c_from_sweeps(&p), diag(&[1.0, 3.0]));
}

#[test]
fn sweeps_match_dense_series_ssor() {
    let mut rng = gen::rng(6);
    let a = gen::symmetric_random(6, 0.6, false, &mut rng);
    let p = direct(&a, SplittingKind::Ssor, 1.2, 3).unwrap();
    let mat = materialize_dense(&p).unwrap();
    let r = gen::gaussian_vector(6, &mut rng);
    let got = p.apply_inner(&r).unwrap();
    let expect = dense_mv(&mat.c, &r);
    assert!(diff_norm(&got, &expect) <= 1e-10 * norm(&expect));
}

#[test]
fn construction_errors() {
    let a = sparse(&diag(&[1.0, 0.0]));
    assert!(Splitting::direct(SplittingKind::Jor, 1.0, a.clone()).is_err());
    assert!(Splitting::direct(SplittingKind::Richardson, 0.0, a.clone()).is_err());
    let b = sparse(&diag(&[1.0, 2.0]));
    assert!(Splitting::direct(SplittingKind::Ssor, 2.0, b.clone()).is_err());
    assert!(Splitting::direct(SplittingKind::Ssor, 0.0, b.clone()).is_err());
    assert!(Splitting::direct(SplittingKind::NeSsor, 1.0, b.clone()).is_err());
    let zero_col = sparse(&from_rows(&[&[1.0, 0.0], &[1.0, 0.0]]));
    assert!(Splitting::new(SplittingKind::CimminoNe, 1.0, zero_col.clone(), Side::NormalLeft).is_err());
    assert!(Splitting::new(SplittingKind::CimminoNe, 1.0, zero_col, Side::NormalRight).is_ok());
    assert!(direct(&diag(&[1.0, 2.0]), SplittingKind::Jor, 1.0, 0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn c_is_symmetric(n in 2usize..25, k in 0usize..3, omega in 0.1f64..1.9, ell in 1usize..6, seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let a = gen::symmetric_random(n, 0.8, seed % 2 == 0, &mut rng);
        let p = direct(&a, DIRECT_KINDS[k], omega, ell).unwrap();
        let c = c_from_sweeps(&p);
        prop_assert!(max_abs(&(&c - c.transpose())) <= 1e-10 * max_abs(&c).max(1.0));
    }

    #[test]
    fn preconditioned_identity(n in 2usize..50, k in 0usize..3, omega in 0.1f64..1.9, ell in 1usize..6, seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let a = gen::symmetric_random(n, 0.5, false, &mut rng);
        let p = direct(&a, DIRECT_KINDS[k], omega_for(DIRECT_KINDS[k], omega), ell).unwrap();
        let mat = materialize_dense(&p).unwrap();
        let hl = power(&mat.h, ell);
        let lhs = c_from_sweeps(&p) * &a;
        let err = max_abs(&(lhs - (DenseMatrix::identity(n, n) - &hl)));
        prop_assert!(err <= 1e-10 * max_abs(&hl).max(1.0), "err {err:e}");
    }

    #[test]
    fn even_ell_factorization(n in 2usize..20, k in 0usize..3, omega in -2.5f64..2.5, half in 1usize..3, seed in any::<u64>()) {
        prop_assume!(omega.abs() > 0.05);
        let ell = 2 * half;
        let mut rng = gen::rng(seed);
        let a = gen::symmetric_random(n, 0.7, true, &mut rng);
        let Ok(p) = direct(&a, DIRECT_KINDS[k], omega_for(DIRECT_KINDS[k], omega), ell) else {
            return Ok(());
        };
        let mat = materialize_dense(&p).unwrap();
        let h2 = &mat.h * &mat.h;
        let mut series = DenseMatrix::zeros(n, n);
        let mut term = DenseMatrix::identity(n, n);
        for _ in 0..half {
            series += &term;
            term = &h2 * term;
        }
        let lhs = &mat.m * &mat.c * &mat.m;
        let rhs = mat.m_plus_n() * series;
        prop_assert!(max_abs(&(&lhs - &rhs)) <= 1e-8 * max_abs(&rhs).max(1.0));
    }

    #[test]
    fn definite_m_gives_real_spectrum(n in 2usize..20, k in 0usize..3, omega in 0.1f64..1.9, seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let a = gen::symmetric_random(n, 1.2, seed % 3 == 0, &mut rng);
        let kind = DIRECT_KINDS[k];
        let Ok(p) = direct(&a, kind, omega, 1) else { return Ok(()) };
        let mat = materialize_dense(&p).unwrap();
        let m_ev = innerit::linalg::dense::sym_eigenvalues(&symmetrize(&mat.m)).unwrap();
        prop_assume!(m_ev[0] > 0.0 || m_ev[n - 1] < 0.0);
        for z in general_eigenvalues(&mat.h).unwrap() {
            prop_assert!(z.im.abs() <= 1e-8, "complex eigenvalue {z}");
        }
    }

    #[test]
    fn normal_equations_match_explicit(m in 2usize..30, n in 2usize..30, k in 0usize..3, ell in 1usize..4, left in any::<bool>(), seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let a = gen::gaussian_matrix(m, n, &mut rng);
        let sa = sparse(&a);
        let (side, gram) = if left {
            (Side::NormalLeft, symmetrize(&(a.transpose() * &a)))
        } else {
            (Side::NormalRight, symmetrize(&(&a * a.transpose())))
        };
        let kind = NE_KINDS[k];
        let lam = gram.diagonal().sum();
        let omega = if kind == SplittingKind::RichardsonNe { 1.0 / lam } else { 1.0 };
        let p_ne = normal(&sa, kind, omega, side, ell).unwrap();
        let p_dir = direct(&gram, kind.counterpart(), omega, ell).unwrap();
        let r = gen::gaussian_vector(gram.nrows(), &mut rng);
        let x = p_ne.apply_inner(&r).unwrap();
        let y = p_dir.apply_inner(&r).unwrap();
        prop_assert!(diff_norm(&x, &y) <= 1e-10 * norm(&y).max(1.0));
    }
}
