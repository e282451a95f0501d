//! Least-squares and minimum-norm solvers built on the Krylov kernels.
//!
//! CGLS and LSMR run CG and MINRES on `AᵀA x = Aᵀb`; CGNE and MRNE run them
//! on `AAᵀ u = b` and return `x = Aᵀu`. The normal matrices are never
//! formed.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::krylov::{pcg, pminres, NormalOperator, SolveResult, SolverConfig};
use crate::linalg::{norm2, sub, SparseMatrix};
use crate::splittings::{InnerPreconditioner, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LsqKind {
    /// `min ‖b − Ax‖₂`.
    LeastSquares,
    /// `min ‖x‖₂` subject to `Ax = b`.
    MinNorm,
}

#[derive(Debug, Clone)]
pub struct LsqProblem {
    pub a: Arc<SparseMatrix>,
    pub b: Vec<f64>,
    pub kind: LsqKind,
}

impl LsqProblem {
    pub fn new(a: Arc<SparseMatrix>, b: Vec<f64>, kind: LsqKind) -> Result<Self> {
        if b.len() != a.nrows() {
            return Err(Error::Dimension(format!(
                "A has {} rows, b has length {}",
                a.nrows(),
                b.len()
            )));
        }
        Ok(Self { a, b, kind })
    }
}

#[derive(Debug, Clone)]
pub struct LsqResult {
    pub x: Vec<f64>,
    /// `‖b − Ax‖₂`.
    pub ls_residual_norm: f64,
    /// `‖Aᵀ(b − Ax)‖₂`.
    pub normal_residual_norm: f64,
    /// The inner Krylov solve. For CGNE/MRNE its iterate is `u`, not `x`.
    pub inner: SolveResult,
}

impl LsqResult {
    fn assemble(a: &SparseMatrix, b: &[f64], x: Vec<f64>, inner: SolveResult) -> Self {
        let ax = mul(a, &x);
        let r = sub(b, &ax);
        let atr = mul_t(a, &r);
        Self {
            ls_residual_norm: norm2(&r),
            normal_residual_norm: norm2(&atr),
            x,
            inner,
        }
    }
}

fn mul(a: &SparseMatrix, x: &[f64]) -> Vec<f64> {
    let mut y = vec![0.0; a.nrows()];
    a.spmv_into(x, &mut y);
    y
}

fn mul_t(a: &SparseMatrix, y: &[f64]) -> Vec<f64> {
    let mut x = vec![0.0; a.ncols()];
    a.spmv_t_into(y, &mut x);
    x
}

fn check_precond(prob: &LsqProblem, precond: &InnerPreconditioner, side: Side) -> Result<()> {
    let s = precond.splitting();
    if s.side() != side {
        return Err(Error::InvalidSplitting(format!(
            "expected a {side:?} preconditioner, got {:?}",
            s.side()
        )));
    }
    if !Arc::ptr_eq(s.operand(), &prob.a) && **s.operand() != *prob.a {
        return Err(Error::InvalidSplitting(
            "preconditioner was built on a different matrix".into(),
        ));
    }
    Ok(())
}

fn check_start(v: &[f64], n: usize, what: &str) -> Result<()> {
    if v.len() != n {
        return Err(Error::Dimension(format!("{what} must have length {n}, got {}", v.len())));
    }
    Ok(())
}

/// CG on `AᵀA x = Aᵀb` with a `NormalLeft` inner preconditioner.
pub fn cgls(prob: &LsqProblem, precond: &InnerPreconditioner, x0: &[f64], cfg: &SolverConfig) -> Result<LsqResult> {
    check_precond(prob, precond, Side::NormalLeft)?;
    check_start(x0, prob.a.ncols(), "x0")?;
    let atb = mul_t(&prob.a, &prob.b);
    let inner = pcg(&NormalOperator::left(&prob.a), precond, &atb, x0, cfg)?;
    Ok(LsqResult::assemble(&prob.a, &prob.b, inner.x.clone(), inner))
}

/// MINRES on `AᵀA x = Aᵀb` with a `NormalLeft` inner preconditioner.
pub fn lsmr(prob: &LsqProblem, precond: &InnerPreconditioner, x0: &[f64], cfg: &SolverConfig) -> Result<LsqResult> {
    check_precond(prob, precond, Side::NormalLeft)?;
    check_start(x0, prob.a.ncols(), "x0")?;
    let atb = mul_t(&prob.a, &prob.b);
    let inner = pminres(&NormalOperator::left(&prob.a), precond, &atb, x0, cfg)?;
    Ok(LsqResult::assemble(&prob.a, &prob.b, inner.x.clone(), inner))
}

/// CG on `AAᵀ u = b`, `x = Aᵀu`, with a `NormalRight` inner preconditioner.
pub fn cgne(prob: &LsqProblem, precond: &InnerPreconditioner, u0: &[f64], cfg: &SolverConfig) -> Result<LsqResult> {
    check_precond(prob, precond, Side::NormalRight)?;
    check_start(u0, prob.a.nrows(), "u0")?;
    let inner = pcg(&NormalOperator::right(&prob.a), precond, &prob.b, u0, cfg)?;
    let x = mul_t(&prob.a, &inner.x);
    Ok(LsqResult::assemble(&prob.a, &prob.b, x, inner))
}

/// MINRES on `AAᵀ u = b`, `x = Aᵀu`, with a `NormalRight` inner preconditioner.
pub fn mrne(prob: &LsqProblem, precond: &InnerPreconditioner, u0: &[f64], cfg: &SolverConfig) -> Result<LsqResult> {
    check_precond(prob, precond, Side::NormalRight)?;
    check_start(u0, prob.a.nrows(), "u0")?;
    let inner = pminres(&NormalOperator::right(&prob.a), precond, &prob.b, u0, cfg)?;
    let x = mul_t(&prob.a, &inner.x);
    Ok(LsqResult::assemble(&prob.a, &prob.b, x, inner))
}
