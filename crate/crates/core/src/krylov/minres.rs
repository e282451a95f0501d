use crate::error::Result;
use crate::linalg::{axpy, dot, norm2};

use super::cg::{check_inputs, precondition, residual};
use super::operator::{LinearOperator, Preconditioner};
use super::types::{ConvergenceHistory, SolveResult, SolverConfig, Termination};

/// MINRES preconditioned by `C`: Lanczos in the `C` inner product followed
/// by a Givens QR of the tridiagonal.
///
/// Minimizes `‖C^{1/2}(b − A x_k)‖₂` over the preconditioned Krylov space.
/// `A w_k` is carried alongside each direction so the unpreconditioned
/// residual is available without extra products; it is refreshed from
/// scratch every `replace_every` iterations.
pub fn pminres<O, P>(op: &O, precond: &P, b: &[f64], x0: &[f64], cfg: &SolverConfig) -> Result<SolveResult>
where
    O: LinearOperator + ?Sized,
    P: Preconditioner + ?Sized,
{
    check_inputs(op, precond, b, x0, cfg)?;
    let n = op.dim();
    let neg = cfg.negate_preconditioner;
    let mut x = x0.to_vec();
    let mut r_true = vec![0.0; n];
    residual(op, b, &x, &mut r_true);
    let r0n = norm2(&r_true);
    let target = cfg.tol * r0n;

    let mut history = ConvergenceHistory::new(cfg.record_iterates);
    let finish = |x: Vec<f64>, iterations, termination, history| {
        let mut r = vec![0.0; n];
        residual(op, b, &x, &mut r);
        SolveResult {
            final_residual_norm: norm2(&r),
            x,
            iterations,
            termination,
            history,
            initial_residual_norm: r0n,
        }
    };

    if r0n == 0.0 {
        history.push(0, 0.0, 0.0, &x);
        return Ok(finish(x, 0, Termination::Converged, history));
    }

    let mut y = vec![0.0; n];
    precondition(precond, neg, &r_true, &mut y);
    let beta1_sq = dot(&r_true, &y);
    if beta1_sq <= cfg.breakdown_tol * r0n * norm2(&y) {
        history.push(0, r0n, beta1_sq.max(0.0).sqrt(), &x);
        return Ok(finish(x, 0, Termination::BreakdownIndefinitePreconditioner, history));
    }
    let beta1 = beta1_sq.sqrt();

    let mut r1 = r_true.clone();
    let mut r2 = r_true.clone();
    let mut v = vec![0.0; n];
    let mut av = vec![0.0; n];
    let mut w = vec![0.0; n];
    let mut w1 = vec![0.0; n];
    let mut w2 = vec![0.0; n];
    let mut aw = vec![0.0; n];
    let mut aw1 = vec![0.0; n];
    let mut aw2 = vec![0.0; n];

    let mut oldb = 0.0;
    let mut beta = beta1;
    let mut dbar = 0.0;
    let mut epsln = 0.0;
    let mut phibar = beta1;
    let mut cs = -1.0;
    let mut sn = 0.0;

    if cfg.record_history {
        history.push(0, r0n, phibar, &x);
    }

    for itn in 1..=cfg.max_outer {
        // Lanczos step: v_k = z_k / β_k, three-term recurrence on A v_k.
        let s = 1.0 / beta;
        for (vi, yi) in v.iter_mut().zip(&y) {
            *vi = s * yi;
        }
        op.apply(&v, &mut av);
        y.copy_from_slice(&av);
        if itn >= 2 {
            axpy(-beta / oldb, &r1, &mut y);
        }
        let alfa = dot(&v, &y);
        axpy(-alfa / beta, &r2, &mut y);
        std::mem::swap(&mut r1, &mut r2);
        r2.copy_from_slice(&y);
        precondition(precond, neg, &r2, &mut y);
        oldb = beta;
        let beta_sq = dot(&r2, &y);
        if beta_sq < -cfg.breakdown_tol * norm2(&r2) * norm2(&y) {
            return Ok(finish(x, itn - 1, Termination::BreakdownIndefinitePreconditioner, history));
        }
        beta = beta_sq.max(0.0).sqrt();

        // Apply the previous rotation, then build the new one.
        let oldeps = epsln;
        let delta = cs * dbar + sn * alfa;
        let gbar = sn * dbar - cs * alfa;
        epsln = sn * beta;
        dbar = -cs * beta;
        let gamma = gbar.hypot(beta).max(f64::EPSILON);
        cs = gbar / gamma;
        sn = beta / gamma;
        let phi = cs * phibar;
        phibar *= sn;

        // w_k = (v_k − ε_k w_{k−2} − δ_k w_{k−1}) / γ_k, and the same for A w_k.
        std::mem::swap(&mut w1, &mut w2);
        std::mem::swap(&mut w2, &mut w);
        std::mem::swap(&mut aw1, &mut aw2);
        std::mem::swap(&mut aw2, &mut aw);
        let inv = 1.0 / gamma;
        for i in 0..n {
            w[i] = (v[i] - oldeps * w1[i] - delta * w2[i]) * inv;
            aw[i] = (av[i] - oldeps * aw1[i] - delta * aw2[i]) * inv;
        }
        axpy(phi, &w, &mut x);
        axpy(-phi, &aw, &mut r_true);

        if itn % cfg.replace_every == 0 {
            residual(op, b, &x, &mut r_true);
        }
        let mut rn = norm2(&r_true);
        let mut converged = false;
        if rn <= target {
            let mut fresh = vec![0.0; n];
            residual(op, b, &x, &mut fresh);
            rn = norm2(&fresh);
            converged = rn <= target;
            r_true = fresh;
        }
        if cfg.record_history {
            history.push(itn, rn, phibar.abs(), &x);
        }
        if converged {
            return Ok(finish(x, itn, Termination::Converged, history));
        }
        if beta == 0.0 {
            // Invariant subspace reached: the Krylov space cannot grow.
            return Ok(finish(x, itn, Termination::MaxIterations, history));
        }
    }
    Ok(finish(x, cfg.max_outer, Termination::MaxIterations, history))
}
