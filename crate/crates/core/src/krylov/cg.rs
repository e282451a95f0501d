use crate::error::{Error, Result};
use crate::linalg::{axpy, dot, norm2};

use super::operator::{LinearOperator, Preconditioner};
use super::types::{ConvergenceHistory, SolveResult, SolverConfig, Termination};

pub(crate) fn check_inputs<O, P>(op: &O, precond: &P, b: &[f64], x0: &[f64], cfg: &SolverConfig) -> Result<()>
where
    O: LinearOperator + ?Sized,
    P: Preconditioner + ?Sized,
{
    cfg.validate()?;
    let n = op.dim();
    if precond.dim() != n {
        return Err(Error::Dimension(format!(
            "preconditioner has dimension {}, operator {n}",
            precond.dim()
        )));
    }
    if b.len() != n || x0.len() != n {
        return Err(Error::Dimension(format!(
            "operator dimension {n}, b has {}, x0 has {}",
            b.len(),
            x0.len()
        )));
    }
    Ok(())
}

pub(crate) fn residual<O: LinearOperator + ?Sized>(op: &O, b: &[f64], x: &[f64], out: &mut [f64]) {
    op.apply(x, out);
    for (o, bi) in out.iter_mut().zip(b) {
        *o = bi - *o;
    }
}

pub(crate) fn precondition<P: Preconditioner + ?Sized>(precond: &P, negate: bool, r: &[f64], z: &mut [f64]) {
    precond.apply(r, z);
    if negate {
        z.iter_mut().for_each(|v| *v = -*v);
    }
}

/// Conjugate gradients preconditioned by `C`.
///
/// `α_k = (r_k, z_k) / (A p_k, p_k)`, `β_k = (r_{k+1}, z_{k+1}) / (r_k, z_k)`.
/// Stops when `‖b − A x_k‖₂ ≤ tol ‖b − A x₀‖₂`, checked on the true residual.
pub fn pcg<O, P>(op: &O, precond: &P, b: &[f64], x0: &[f64], cfg: &SolverConfig) -> Result<SolveResult>
where
    O: LinearOperator + ?Sized,
    P: Preconditioner + ?Sized,
{
    check_inputs(op, precond, b, x0, cfg)?;
    let n = op.dim();
    let mut x = x0.to_vec();
    let mut r = vec![0.0; n];
    residual(op, b, &x, &mut r);
    let r0n = norm2(&r);
    let target = cfg.tol * r0n;

    let mut history = ConvergenceHistory::new(cfg.record_iterates);
    let mut z = vec![0.0; n];
    let mut ap = vec![0.0; n];
    let mut scratch = vec![0.0; n];

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

    precondition(precond, cfg.negate_preconditioner, &r, &mut z);
    let mut rz = dot(&r, &z);
    if cfg.record_history {
        history.push(0, r0n, rz, &x);
    }
    if rz <= cfg.breakdown_tol * r0n * norm2(&z) {
        return Ok(finish(x, 0, Termination::BreakdownIndefinitePreconditioner, history));
    }
    let mut p = z.clone();

    for k in 0..cfg.max_outer {
        op.apply(&p, &mut ap);
        let pap = dot(&ap, &p);
        if !(pap > 0.0) {
            return Ok(finish(x, k, Termination::BreakdownZeroCurvature, history));
        }
        let alpha = rz / pap;
        axpy(alpha, &p, &mut x);
        axpy(-alpha, &ap, &mut r);
        let iterations = k + 1;

        if iterations % cfg.replace_every == 0 {
            residual(op, b, &x, &mut r);
        }
        let mut rn = norm2(&r);
        let mut converged = false;
        if rn <= target {
            residual(op, b, &x, &mut scratch);
            let true_rn = norm2(&scratch);
            if true_rn <= target {
                converged = true;
            } else {
                r.copy_from_slice(&scratch);
            }
            rn = true_rn;
        }

        precondition(precond, cfg.negate_preconditioner, &r, &mut z);
        let rz_next = dot(&r, &z);
        if cfg.record_history {
            history.push(iterations, rn, rz_next, &x);
        }
        if converged {
            return Ok(finish(x, iterations, Termination::Converged, history));
        }
        if rz_next <= cfg.breakdown_tol * rn * norm2(&z) {
            return Ok(finish(x, iterations, Termination::BreakdownIndefinitePreconditioner, history));
        }
        let beta = rz_next / rz;
        rz = rz_next;
        for (pi, zi) in p.iter_mut().zip(&z) {
            *pi = zi + beta * *pi;
        }
    }
    Ok(finish(x, cfg.max_outer, Termination::MaxIterations, history))
}
