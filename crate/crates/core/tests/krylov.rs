mod common;

use innerit::analysis::{mr_bound_curve, solution_form_oracle};
use innerit::gen;
use innerit::krylov::{
    pcg, pminres, symmetry_defect, IdentityPreconditioner, LinearOperator, NormalOperator, SolverConfig, Termination,
};
use innerit::linalg::dense::{diag, from_rows, numerical_rank, sqrt_sym_pd, symmetrize};
use innerit::linalg::{dot, DenseMatrix};
use innerit::splittings::{materialize_dense, SplittingKind};
use proptest::prelude::*;

use common::*;

fn residual(a: &DenseMatrix, b: &[f64], x: &[f64]) -> Vec<f64> {
    b.iter().zip(mv(a, x)).map(|(u, v)| u - v).collect()
}

#[test]
fn cg_rank_one_single_step() {
    let a = from_rows(&[&[1.0, 1.0], &[1.0, 1.0]]);
    let p = direct(&a, SplittingKind::Jor, 0.5, 1).unwrap();
    let res = pcg(sparse(&a).as_ref(), &p, &[2.0, 2.0], &[0.0; 2], &SolverConfig::default()).unwrap();
    assert_eq!(res.termination, Termination::Converged);
    assert_eq!(res.iterations, 1);
    assert!(diff_norm(&res.x, &[1.0, 1.0]) < 1e-15);
    assert_eq!(res.history.len(), 2);
}

#[test]
fn cg_singular_ssor_matches_oracle() {
    let mut rng = gen::rng(40);
    let a = gen::spsd(40, 30, 1.0, 10.0, &mut rng);
    let b = mv(&a, &gen::gaussian_vector(40, &mut rng));
    let p = direct(&a, SplittingKind::Ssor, 1.5, 3).unwrap();
    let res = pcg(sparse(&a).as_ref(), &p, &b, &[0.0; 40], &SolverConfig::default()).unwrap();
    assert!(res.converged());
    let c = symmetrize(&materialize_dense(&p).unwrap().c);
    let oracle = solution_form_oracle(&a, &c, &b, &[0.0; 40]).unwrap();
    assert!(diff_norm(&res.x, &oracle) <= 1e-6 * norm(&oracle));
}

#[test]
fn minres_indefinite_examples() {
    let cfg = SolverConfig::default();
    let a = diag(&[1.0, -1.0]);
    let p = direct(&a, SplittingKind::Richardson, 1.0, 1).unwrap();
    let res = pminres(sparse(&a).as_ref(), &p, &[1.0, 1.0], &[0.0; 2], &cfg).unwrap();
    assert!(res.converged() && res.iterations <= 2);
    assert!(diff_norm(&res.x, &[1.0, -1.0]) < 1e-14);
    let norms = p.stationary_norms(&[1.0, 1.0], 50).unwrap();
    assert!(norms[49] > 1e6);

    let a = diag(&[1.0, -1.0, 0.0]);
    let res = pminres(sparse(&a).as_ref(), &IdentityPreconditioner(3), &[1.0, 1.0, 0.0], &[0.0; 3], &cfg).unwrap();
    assert!(res.converged());
    assert!(diff_norm(&res.x, &[1.0, -1.0, 0.0]) < 1e-14);
}

#[test]
fn history_csv_header_and_precision() {
    let a = diag(&[2.0, 3.0]);
    let res = pcg(sparse(&a).as_ref(), &IdentityPreconditioner(2), &[1.0, 1.0], &[0.0; 2], &SolverConfig::default()).unwrap();
    let csv = res.history.to_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("k,res_norm,aux"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "0");
    assert_eq!(first[1].parse::<f64>().unwrap(), 2f64.sqrt());
    assert_eq!(res.history.len(), res.iterations + 1);
}

#[test]
fn invalid_config_rejected() {
    let a = diag(&[1.0]);
    let bad = SolverConfig::default().with_tol(0.0);
    assert!(pcg(sparse(&a).as_ref(), &IdentityPreconditioner(1), &[1.0], &[0.0], &bad).is_err());
    let bad = SolverConfig::default().with_max_outer(0);
    assert!(pminres(sparse(&a).as_ref(), &IdentityPreconditioner(1), &[1.0], &[0.0], &bad).is_err());
    assert!(pcg(sparse(&a).as_ref(), &IdentityPreconditioner(1), &[1.0, 2.0], &[0.0], &SolverConfig::default()).is_err());
}

fn spsd_instance(n: usize, rank_frac: f64, seed: u64) -> (DenseMatrix, Vec<f64>) {
    let mut rng = gen::rng(seed);
    let rank = ((n as f64 * rank_frac) as usize).max(1);
    let a = gen::spsd(n, rank, 0.5, 5.0, &mut rng);
    let b = mv(&a, &gen::gaussian_vector(n, &mut rng));
    (a, b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn minres_preconditioned_residual_nonincreasing(n in 3usize..30, rank_frac in 0.3f64..1.0, omega in 0.2f64..1.8, ell in 1usize..4, seed in any::<u64>()) {
        let (a, b) = spsd_instance(n, rank_frac, seed);
        let p = direct(&a, SplittingKind::Ssor, omega, ell).unwrap();
        let cfg = SolverConfig::default().with_tol(1e-12).with_max_outer(4 * n).recording_iterates();
        let res = pminres(sparse(&a).as_ref(), &p, &b, &vec![0.0; n], &cfg).unwrap();
        let c = symmetrize(&materialize_dense(&p).unwrap().c);
        let Ok(half) = sqrt_sym_pd(&c) else { return Ok(()) };
        let measured: Vec<f64> = res.history.iterates.as_ref().unwrap().iter().map(|x| norm(&mv(&half, &residual(&a, &b, x)))).collect();
        let r0 = measured[0];
        for w in measured.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-10 * r0);
        }
    }

    #[test]
    fn cg_energy_error_nonincreasing(n in 3usize..30, rank_frac in 0.3f64..1.0, omega in 0.2f64..1.8, ell in 1usize..4, seed in any::<u64>()) {
        let (a, b) = spsd_instance(n, rank_frac, seed);
        let p = direct(&a, SplittingKind::Ssor, omega, ell).unwrap();
        let c = symmetrize(&materialize_dense(&p).unwrap().c);
        prop_assume!(sqrt_sym_pd(&c).is_ok());
        let cfg = SolverConfig::default().with_tol(1e-12).with_max_outer(4 * n).recording_iterates();
        let res = pcg(sparse(&a).as_ref(), &p, &b, &vec![0.0; n], &cfg).unwrap();
        let x_star = solution_form_oracle(&a, &c, &b, &vec![0.0; n]).unwrap();
        let energy = |x: &[f64]| {
            let e: Vec<f64> = x.iter().zip(&x_star).map(|(u, v)| u - v).collect();
            dot(&e, &mv(&a, &e)).max(0.0).sqrt()
        };
        let errs: Vec<f64> = res.history.iterates.as_ref().unwrap().iter().map(|x| energy(x)).collect();
        for w in errs.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-9 * errs[0]);
        }
    }

    #[test]
    fn finite_termination(n in 3usize..40, rank_frac in 0.3f64..1.0, omega in 0.3f64..1.7, ell in 1usize..4, use_cg in any::<bool>(), seed in any::<u64>()) {
        let (a, b) = spsd_instance(n, rank_frac, seed);
        let p = direct(&a, SplittingKind::Ssor, omega, ell).unwrap();
        let c = symmetrize(&materialize_dense(&p).unwrap().c);
        prop_assume!(sqrt_sym_pd(&c).is_ok());
        let rank = numerical_rank(&(&c * &a), 1e-10);
        let cfg = SolverConfig::default().with_max_outer(2 * (rank + 1));
        let sa = sparse(&a);
        let res = if use_cg {
            pcg(sa.as_ref(), &p, &b, &vec![0.0; n], &cfg).unwrap()
        } else {
            pminres(sa.as_ref(), &p, &b, &vec![0.0; n], &cfg).unwrap()
        };
        prop_assert!(res.converged(), "{:?} after {} (rank {rank})", res.termination, res.iterations);
        prop_assert!(res.final_residual_norm <= 1e-10 * res.initial_residual_norm);
    }

    #[test]
    fn mr_bound_compliance(n in 3usize..30, rank_frac in 0.3f64..1.0, k in 0usize..3, t in 0.1f64..1.9, ell in 1usize..4, seed in any::<u64>()) {
        let (a, b) = spsd_instance(n, rank_frac, seed);
        let kind = [SplittingKind::Richardson, SplittingKind::Jor, SplittingKind::Ssor][k];
        let omega = if kind == SplittingKind::Richardson { t / 5.0 } else { t };
        let p = direct(&a, kind, omega, ell).unwrap();
        let cfg = SolverConfig::default().with_tol(1e-12).with_max_outer(3 * n).recording_iterates();
        let res = pminres(sparse(&a).as_ref(), &p, &b, &vec![0.0; n], &cfg).unwrap();
        let Ok(curve) = mr_bound_curve(&p, res.iterations) else { return Ok(()) };
        let half = sqrt_sym_pd(&symmetrize(&materialize_dense(&p).unwrap().c)).unwrap();
        let iterates = res.history.iterates.as_ref().unwrap();
        let r0 = norm(&mv(&half, &b));
        for (k, x) in iterates.iter().enumerate() {
            let ratio = norm(&mv(&half, &residual(&a, &b, x))) / r0;
            prop_assert!(ratio <= curve.value(k).unwrap() + 1e-8, "k {k}: {ratio} > {}", curve.value(k).unwrap());
        }
    }

    #[test]
    fn operators_are_symmetric(m in 1usize..30, n in 1usize..30, seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let a = gen::gaussian_matrix(m, n, &mut rng);
        let sa = sparse(&a);
        let pairs_n: Vec<(Vec<f64>, Vec<f64>)> = (0..4).map(|_| (gen::gaussian_vector(n, &mut rng), gen::gaussian_vector(n, &mut rng))).collect();
        let pairs_m: Vec<(Vec<f64>, Vec<f64>)> = (0..4).map(|_| (gen::gaussian_vector(m, &mut rng), gen::gaussian_vector(m, &mut rng))).collect();
        let left = NormalOperator::left(&sa);
        let right = NormalOperator::right(&sa);
        prop_assert_eq!(left.dim(), n);
        prop_assert_eq!(right.dim(), m);
        prop_assert!(symmetry_defect(&left, &pairs_n).unwrap() <= 1e-10);
        prop_assert!(symmetry_defect(&right, &pairs_m).unwrap() <= 1e-10);
        let s = symmetrize(&gen::gaussian_matrix(n, n, &mut rng));
        prop_assert!(symmetry_defect(sparse(&s).as_ref(), &pairs_n).unwrap() <= 1e-10);
    }

    #[test]
    fn converged_means_true_residual(n in 2usize..30, seed in any::<u64>()) {
        let (a, b) = spsd_instance(n, 0.7, seed);
        let p = direct(&a, SplittingKind::Jor, 0.8, 2).unwrap();
        let cfg = SolverConfig::default().with_tol(1e-9);
        for res in [
            pcg(sparse(&a).as_ref(), &p, &b, &vec![0.0; n], &cfg).unwrap(),
            pminres(sparse(&a).as_ref(), &p, &b, &vec![0.0; n], &cfg).unwrap(),
        ] {
            if res.converged() {
                prop_assert!(norm(&residual(&a, &b, &res.x)) <= 1e-9 * norm(&b) * (1.0 + 1e-6));
            }
            prop_assert_eq!(res.history.len(), res.iterations + 1);
        }
    }
}
