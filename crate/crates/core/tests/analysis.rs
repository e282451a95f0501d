mod common;

use innerit::analysis::{
    cg_bound_curve, cg_curve_from_kappa, check_definiteness, classify, kappa_ell, kappa_report, mr_bound_curve,
    omega_interval_shifted, solution_form_oracle, spectral_summary, ssor_omega_intervals, Subject, Verdict,
};
use innerit::gen;
use innerit::krylov::{pcg, SolverConfig};
use innerit::linalg::dense::{diag, from_rows, norm2, pinv_sym, sqrt_sym_pd, sym_eigenvalues, symmetrize};
use innerit::linalg::{dot, DenseMatrix};
use innerit::splittings::{materialize_dense, SplittingKind};
use proptest::prelude::*;

use common::*;

const DIRECT_KINDS: [SplittingKind; 3] = [SplittingKind::Richardson, SplittingKind::Jor, SplittingKind::Ssor];

fn rank_one() -> DenseMatrix {
    from_rows(&[&[1.0, 1.0], &[1.0, 1.0]])
}

#[test]
fn divergent_example_is_definite() {
    let p = direct(&diag(&[1.0, -1.0]), SplittingKind::Richardson, 1.0, 1).unwrap();
    let d = check_definiteness(&p).unwrap();
    assert_eq!(d.m.verdict, Verdict::Spd);
    assert_eq!(d.m_plus_n.verdict, Verdict::Spd);
    assert_eq!(d.c_ell.verdict, Verdict::Spd);
    let s = spectral_summary(&p).unwrap();
    assert!(!s.semiconvergent);
    assert!((s.nu - 2.0).abs() < 1e-12);
}

#[test]
fn overrelaxed_ssor_m_not_spd() {
    let a = from_rows(&[&[2.0, -1.0], &[-1.0, 2.0]]);
    let p = direct(&a, SplittingKind::Ssor, 2.5, 1).unwrap();
    let d = check_definiteness(&p).unwrap();
    // ω⁻¹(2 − ω)⁻¹ < 0 for ω = 2.5
    assert_eq!(d.m.verdict, Verdict::Snd);
    assert_eq!(d.c_ell.verdict, Verdict::Snd);
}

#[test]
fn shifted_interval_examples() {
    let r = omega_interval_shifted(&diag(&[1.0, -1.0]), &DenseMatrix::identity(2, 2)).unwrap();
    assert_eq!(r.intervals.len(), 1);
    assert!((r.intervals[0].lo, r.intervals[0].hi) == (0.0, 2.0));

    let r = omega_interval_shifted(&(-DenseMatrix::identity(3, 3)), &DenseMatrix::identity(3, 3)).unwrap();
    let pairs: Vec<(f64, f64)> = r.intervals.iter().map(|i| (i.lo, i.hi)).collect();
    assert_eq!(pairs, vec![(f64::NEG_INFINITY, -2.0), (0.0, f64::INFINITY)]);
    let json = serde_json::to_string(&r.intervals).unwrap();
    assert_eq!(json, r#"[["-inf",-2.0],[0.0,"inf"]]"#);
}

#[test]
fn ssor_tridiagonal_two() {
    let s = ssor_omega_intervals(&from_rows(&[&[2.0, -1.0], &[-1.0, 2.0]])).unwrap();
    assert!((s.mu - 0.5).abs() < 1e-12);
    assert!((s.rho_s - 2.0).abs() < 1e-12);
    assert!(s.even_ell.intervals.iter().any(|i| i.lo <= 0.0 && i.hi >= 2.0));
    assert_eq!(s.odd_ell.intervals.len(), 1);
    assert_eq!((s.odd_ell.intervals[0].lo, s.odd_ell.intervals[0].hi), (0.0, 2.0));
}

#[test]
fn jor_on_rank_one_is_exact() {
    let p = direct(&rank_one(), SplittingKind::Jor, 0.5, 1).unwrap();
    let s = spectral_summary(&p).unwrap();
    assert_eq!(s.nu, 0.0);
    assert!(s.semiconvergent);
    assert_eq!(s.unit_multiplicity, 1);
    assert!((kappa_ell(&p).unwrap() - 1.0).abs() < 1e-12);
    let curve = mr_bound_curve(&p, 5).unwrap();
    assert_eq!(curve.value(0), Some(1.0));
    assert!((1..=5).all(|k| curve.value(k) == Some(0.0)));
}

#[test]
fn cg_curve_arithmetic() {
    let c = cg_curve_from_kappa(9.0, 1, 3);
    assert!((c.value(3).unwrap() - 0.25).abs() < 1e-15);
    assert_eq!(c.value(0), Some(1.0));
}

#[test]
fn kappa_matches_pseudo_inverse_oracle() {
    let mut rng = gen::rng(2020);
    let a = gen::spsd(20, 14, 0.5, 4.0, &mut rng);
    let p = direct(&a, SplittingKind::Ssor, 1.0, 2).unwrap();
    let c = symmetrize(&materialize_dense(&p).unwrap().c);
    let half = sqrt_sym_pd(&c).unwrap();
    let hat = symmetrize(&(&half * &a * &half));
    let oracle = norm2(&hat) * norm2(&pinv_sym(&hat, 1e-10).unwrap());
    let k = kappa_report(&p).unwrap();
    assert!((k.kappa - oracle).abs() <= 1e-8 * oracle, "{} vs {oracle}", k.kappa);
    assert_eq!(k.ell, 2);
}

#[test]
fn oracle_examples() {
    let x = solution_form_oracle(&diag(&[1.0, -1.0, 0.0]), &DenseMatrix::identity(3, 3), &[1.0, 1.0, 0.0], &[0.0; 3]).unwrap();
    assert!(diff_norm(&x, &[1.0, -1.0, 0.0]) < 1e-14);
    let x = solution_form_oracle(&rank_one(), &(DenseMatrix::identity(2, 2) * 0.5), &[2.0, 2.0], &[0.0; 2]).unwrap();
    assert!(diff_norm(&x, &[1.0, 1.0]) < 1e-14);
    assert!(solution_form_oracle(&rank_one(), &DenseMatrix::identity(2, 2), &[1.0, 0.0], &[0.0; 2]).is_err());
}

#[test]
fn cg_bound_holds_empirically() {
    let mut rng = gen::rng(77);
    for trial in 0..10 {
        let n = 25;
        let eigs: Vec<f64> = (0..n).map(|_| 0.5 + 5.0 * (trial as f64 + 1.0) * rand::Rng::random::<f64>(&mut rng)).collect();
        let a = gen::symmetric_with_spectrum(&eigs, &mut rng);
        let p = direct(&a, SplittingKind::Ssor, 1.3, 2).unwrap();
        let x_star = gen::gaussian_vector(n, &mut rng);
        let b = mv(&a, &x_star);
        let cfg = SolverConfig::default().with_tol(1e-12).recording_iterates();
        let res = pcg(sparse(&a).as_ref(), &p, &b, &vec![0.0; n], &cfg).unwrap();
        let curve = cg_bound_curve(&p, res.iterations).unwrap();
        let a_norm = |x: &[f64]| {
            let e: Vec<f64> = x.iter().zip(&x_star).map(|(u, v)| u - v).collect();
            dot(&e, &mv(&a, &e)).sqrt()
        };
        let e0 = a_norm(&vec![0.0; n]);
        for (k, x) in res.history.iterates.as_ref().unwrap().iter().enumerate() {
            assert!(a_norm(x) / e0 <= curve.value(k).unwrap() + 1e-10, "trial {trial} k {k}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn definiteness_follows_governing_matrix(n in 2usize..30, k in 0usize..3, omega in -3.0f64..3.0, ell in 1usize..6, mixed in any::<bool>(), seed in any::<u64>()) {
        prop_assume!(omega.abs() > 1e-3 && (omega - 2.0).abs() > 1e-3);
        let mut rng = gen::rng(seed);
        let a = gen::symmetric_random(n, 0.8, mixed, &mut rng);
        let Ok(p) = direct(&a, DIRECT_KINDS[k], omega, ell) else { return Ok(()) };
        let mat = materialize_dense(&p).unwrap();
        let gov = if ell % 2 == 1 { mat.m.clone() } else { mat.m_plus_n() };
        prop_assume!(relative_gap(&gov) >= 1e-8 && relative_gap(&mat.c) >= 1e-8);
        let predicted = classify(&symmetrize(&gov), Subject::Other).unwrap().verdict;
        let actual = classify(&symmetrize(&mat.c), Subject::CEll).unwrap().verdict;
        prop_assert_eq!(predicted == Verdict::Spd, actual == Verdict::Spd);
        prop_assert_eq!(predicted == Verdict::Snd, actual == Verdict::Snd);
        let check = check_definiteness(&p).unwrap();
        prop_assert_eq!(check.governing_report().verdict, predicted);
    }

    #[test]
    fn semiconvergence_matches_spectrum(n in 3usize..30, zeros in 0usize..4, negatives in 0usize..3, k in 0usize..3, t in 0.05f64..1.95, seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let mut eigs: Vec<f64> = (0..n).map(|_| 0.2 + 2.8 * rand::Rng::random::<f64>(&mut rng)).collect();
        for e in eigs.iter_mut().take(zeros.min(n - 1)) {
            *e = 0.0;
        }
        for e in eigs.iter_mut().rev().take(negatives) {
            *e = -0.1 - rand::Rng::random::<f64>(&mut rng);
        }
        let a = gen::symmetric_with_spectrum(&eigs, &mut rng);
        let kind = DIRECT_KINDS[k];
        let lam_max = eigs.iter().copied().fold(0.2, f64::max);
        let omega = if kind == SplittingKind::Richardson { t / lam_max } else { t };
        let Ok(p) = direct(&a, kind, omega, 1) else { return Ok(()) };
        let mat = materialize_dense(&p).unwrap();
        let mpn = mat.m_plus_n();
        prop_assume!(classify(&mat.m, Subject::M).unwrap().verdict.is_definite());
        prop_assume!(classify(&mpn, Subject::MPlusN).unwrap().verdict == Verdict::Spd);
        prop_assume!(relative_gap(&mat.m) >= 1e-8 && relative_gap(&mpn) >= 1e-8);
        let s = spectral_summary(&p).unwrap();
        prop_assume!((s.nu - 1.0).abs() >= 1e-8);
        prop_assert_eq!(s.semiconvergent, negatives == 0);
        prop_assert_eq!(s.semiconvergent, s.nu < 1.0 && s.unit_eigs_simple);
        prop_assert!(s.nu >= 0.0);
    }

    #[test]
    fn shifted_interval_boundaries(n in 2usize..20, lo in -3.0f64..1.0, width in 0.3f64..4.0, use_diag in any::<bool>(), seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let (a, b) = if use_diag {
            let a = gen::symmetric_random(n, 0.9, false, &mut rng);
            let d: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
            (a, diag(&d))
        } else {
            let eigs: Vec<f64> = (0..n).map(|i| lo + width * i as f64 / (n - 1) as f64).collect();
            (gen::symmetric_with_spectrum(&eigs, &mut rng), DenseMatrix::identity(n, n))
        };
        let r = omega_interval_shifted(&a, &b).unwrap();
        for w in r.intervals.windows(2) {
            prop_assert!(w[0].hi <= w[1].lo);
        }
        for e in r.intervals.iter().flat_map(|i| [i.lo, i.hi]).filter(|e| e.is_finite()) {
            let mut flips = Vec::new();
            for omega in [e - 1e-3, e + 1e-3] {
                let shifted = symmetrize(&(&b * (2.0 / omega) - &a));
                let spd = sym_eigenvalues(&shifted).unwrap()[0] > 0.0;
                prop_assert_eq!(spd, r.contains(omega));
                flips.push(spd);
            }
            prop_assert_ne!(flips[0], flips[1]);
        }
    }

    #[test]
    fn mr_bound_shape(n in 3usize..25, rank_frac in 0.3f64..1.0, omega in 0.2f64..1.8, ell in 1usize..5, seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let rank = ((n as f64 * rank_frac) as usize).max(1);
        let a = gen::spsd(n, rank, 0.5, 3.0, &mut rng);
        let p = direct(&a, SplittingKind::Ssor, omega, ell).unwrap();
        let Ok(curve) = mr_bound_curve(&p, 30) else { return Ok(()) };
        prop_assert_eq!(curve.value(0), Some(1.0));
        for w in curve.points.windows(2) {
            prop_assert!(w[1].value <= w[0].value);
        }
    }

    #[test]
    fn verdict_matches_extremes(n in 1usize..20, seed in any::<u64>()) {
        let g = gen::gaussian_matrix(n, n, &mut gen::rng(seed));
        let r = classify(&symmetrize(&g), Subject::Other).unwrap();
        prop_assert_eq!(r.verdict, Verdict::from_extremes(r.min_eig, r.max_eig));
    }
}
