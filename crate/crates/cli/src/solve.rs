use std::sync::Arc;

use innerit::analysis::{check_definiteness, Verdict};
use innerit::krylov::{pcg, pminres, SolveResult, SolverConfig, Termination};
use innerit::linalg::dense::check_cap;
use innerit::lsq::{cgls, cgne, lsmr, mrne, LsqKind, LsqProblem};
use innerit::{Error, InnerPreconditioner, Side, SparseMatrix, Splitting};
use serde::Serialize;

use crate::args::{Format, InnerArgs, Method, PrecondSign, SolveArgs};
use crate::error::{CliError, CliResult, BREAKDOWN, MAX_ITERATIONS};
use crate::io::{emit, load_matrix, load_rhs, write_atomic, Cell, Table};

pub fn side_for(method: Method, args: &InnerArgs) -> CliResult<Side> {
    let ne = args.inner.is_normal_equations();
    let (side, wants_ne) = match method {
        Method::Cg | Method::Minres => (Side::Direct, false),
        Method::Cgls | Method::Lsqr | Method::Lsmr => (Side::NormalLeft, true),
        Method::Cgne | Method::Mrne => (Side::NormalRight, true),
    };
    if ne != wants_ne {
        let expected = if wants_ne { "richardson-ne, cimmino-ne or ne-ssor" } else { "richardson, jor or ssor" };
        return Err(CliError::usage(format!(
            "method {} needs an inner splitting among {expected}, got {}",
            method.name(),
            args.inner
        )));
    }
    Ok(side)
}

pub fn build(a: &Arc<SparseMatrix>, side: Side, args: &InnerArgs) -> CliResult<InnerPreconditioner> {
    let s = Splitting::new(args.inner, args.omega, a.clone(), side)?;
    Ok(InnerPreconditioner::new(s, args.inner_steps)?)
}

/// Whether to negate `C`: explicit, or from the dense verdict of `C^(ℓ)`
/// when the problem is small enough to analyse.
fn negate(p: &InnerPreconditioner, sign: PrecondSign) -> bool {
    match sign {
        PrecondSign::Pos => false,
        PrecondSign::Neg => true,
        PrecondSign::Auto => {
            if check_cap(p.dim()).is_err() {
                return false;
            }
            matches!(check_definiteness(p), Ok(d) if d.c_ell.verdict == Verdict::Snd)
        }
    }
}

#[derive(Serialize)]
struct SolveReport {
    method: &'static str,
    inner: String,
    omega: f64,
    inner_steps: usize,
    rows: usize,
    cols: usize,
    precond_sign: &'static str,
    termination: Termination,
    converged: bool,
    iterations: usize,
    initial_residual_norm: f64,
    final_residual_norm: f64,
    relative_residual: f64,
    ls_residual_norm: Option<f64>,
    normal_residual_norm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<Vec<f64>>,
}

impl SolveReport {
    fn to_table(&self) -> Table {
        let opt = |v: Option<f64>| v.map_or(Cell::Empty, Cell::Num);
        Table {
            header: vec![
                "method",
                "inner",
                "omega",
                "inner_steps",
                "rows",
                "cols",
                "precond_sign",
                "termination",
                "iterations",
                "initial_residual_norm",
                "final_residual_norm",
                "relative_residual",
                "ls_residual_norm",
                "normal_residual_norm",
            ],
            rows: vec![vec![
                Cell::Text(self.method.into()),
                Cell::Text(self.inner.clone()),
                Cell::Num(self.omega),
                Cell::Int(self.inner_steps),
                Cell::Int(self.rows),
                Cell::Int(self.cols),
                Cell::Text(self.precond_sign.into()),
                Cell::Text(self.termination.as_str().into()),
                Cell::Int(self.iterations),
                Cell::Num(self.initial_residual_norm),
                Cell::Num(self.final_residual_norm),
                Cell::Num(self.relative_residual),
                opt(self.ls_residual_norm),
                opt(self.normal_residual_norm),
            ]],
        }
    }
}

pub fn exit_code(t: Termination) -> i32 {
    match t {
        Termination::Converged => 0,
        Termination::MaxIterations => MAX_ITERATIONS,
        _ => BREAKDOWN,
    }
}

pub fn run(args: &SolveArgs) -> CliResult<i32> {
    if args.method == Method::Lsqr {
        eprintln!("note: --method lsqr is deprecated and runs cgls");
    }
    let side = side_for(args.method, &args.inner)?;
    let a = Arc::new(load_matrix(&args.matrix)?);
    let b = load_rhs(args.rhs.as_deref(), &a)?;
    if b.len() != a.nrows() {
        return Err(Error::Dimension(format!("A is {}x{} but b has length {}", a.nrows(), a.ncols(), b.len())).into());
    }
    let p = build(&a, side, &args.inner)?;
    let negated = negate(&p, args.precond_sign);
    let cfg = SolverConfig {
        tol: args.tol,
        max_outer: args.max_outer.unwrap_or(10 * p.dim()),
        negate_preconditioner: negated,
        ..SolverConfig::default()
    };

    let (x, inner, ls, normal): (Vec<f64>, SolveResult, Option<f64>, Option<f64>) = match args.method {
        Method::Cg | Method::Minres => {
            let x0 = vec![0.0; a.ncols()];
            let r = if args.method == Method::Cg {
                pcg(a.as_ref(), &p, &b, &x0, &cfg)?
            } else {
                pminres(a.as_ref(), &p, &b, &x0, &cfg)?
            };
            (r.x.clone(), r, None, None)
        }
        m => {
            let kind = if side == Side::NormalLeft { LsqKind::LeastSquares } else { LsqKind::MinNorm };
            let prob = LsqProblem::new(a.clone(), b, kind)?;
            let r = match m {
                Method::Cgls | Method::Lsqr => cgls(&prob, &p, &vec![0.0; a.ncols()], &cfg)?,
                Method::Lsmr => lsmr(&prob, &p, &vec![0.0; a.ncols()], &cfg)?,
                Method::Cgne => cgne(&prob, &p, &vec![0.0; a.nrows()], &cfg)?,
                _ => mrne(&prob, &p, &vec![0.0; a.nrows()], &cfg)?,
            };
            (r.x, r.inner, Some(r.ls_residual_norm), Some(r.normal_residual_norm))
        }
    };

    if let Some(path) = &args.history {
        write_atomic(path, &inner.history.to_csv())?;
    }
    let report = SolveReport {
        method: args.method.name(),
        inner: args.inner.inner.to_string(),
        omega: args.inner.omega,
        inner_steps: args.inner.inner_steps,
        rows: a.nrows(),
        cols: a.ncols(),
        precond_sign: if negated { "neg" } else { "pos" },
        termination: inner.termination,
        converged: inner.converged(),
        iterations: inner.iterations,
        initial_residual_norm: inner.initial_residual_norm,
        final_residual_norm: inner.final_residual_norm,
        relative_residual: inner.relative_residual(),
        ls_residual_norm: ls,
        normal_residual_norm: normal,
        x: args.include_x.then_some(x),
    };
    let text = match args.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report)?;
            s.push('\n');
            s
        }
        Format::Csv => report.to_table().to_csv(),
    };
    emit(args.output.as_deref(), &text)?;
    if !inner.converged() {
        eprintln!(
            "{} after {} iterations (relative residual {:.3e})",
            inner.termination.as_str(),
            inner.iterations,
            inner.relative_residual()
        );
    }
    Ok(exit_code(inner.termination))
}
