use std::sync::Arc;

use innerit::analysis::{mr_bound_curve, solution_form_oracle};
use innerit::krylov::{pminres, SolverConfig};
use innerit::linalg::dense::{check_cap, sqrt_sym_pd, symmetrize};
use innerit::linalg::{dense_mv, norm2, sub};
use innerit::splittings::materialize_dense;
use innerit::{Error, Side};

use crate::args::{BoundArgs, Format};
use crate::error::{CliError, CliResult, BOUND_VIOLATION};
use crate::io::{emit, load_matrix, load_rhs, Cell, Table};
use crate::solve::{build, exit_code};

const SLACK: f64 = 1e-8;

fn hypothesis(e: Error) -> CliError {
    match e {
        Error::Dimension(_) | Error::InvalidOmega { .. } | Error::ZeroDiagonal(_) | Error::InvalidSplitting(_) => e.into(),
        Error::SizeCap { .. } => e.into(),
        other => CliError::hypothesis(format!("bound hypothesis failed: {other}")),
    }
}

pub fn run(args: &BoundArgs) -> CliResult<i32> {
    if args.inner.inner.is_normal_equations() {
        return Err(CliError::usage("bound works on the square system; use richardson, jor or ssor"));
    }
    let a = Arc::new(load_matrix(&args.matrix)?);
    check_cap(a.nrows())?;
    let b = load_rhs(args.rhs.as_deref(), &a)?;
    if b.len() != a.nrows() {
        return Err(Error::Dimension(format!("A is {}x{} but b has length {}", a.nrows(), a.ncols(), b.len())).into());
    }
    let p = build(&a, Side::Direct, &args.inner)?;
    mr_bound_curve(&p, 0).map_err(hypothesis)?;

    let n = a.nrows();
    let mat = materialize_dense(&p)?;
    let c = symmetrize(&mat.c);
    solution_form_oracle(&mat.induced, &c, &b, &vec![0.0; n]).map_err(hypothesis)?;

    let cfg = SolverConfig {
        tol: args.tol,
        max_outer: args.max_outer.unwrap_or(10 * n),
        ..SolverConfig::default()
    }
    .recording_iterates();
    let res = pminres(a.as_ref(), &p, &b, &vec![0.0; n], &cfg)?;
    let curve = mr_bound_curve(&p, res.iterations).map_err(hypothesis)?;
    let half = sqrt_sym_pd(&c).map_err(hypothesis)?;
    let q = {
        let s = curve.kappa.sqrt();
        (s - 1.0) / (s + 1.0)
    };

    let iterates = res.history.iterates.as_deref().unwrap_or_default();
    let r0 = norm2(&dense_mv(&half, &b));
    let mut rows = Vec::with_capacity(iterates.len());
    let mut violations = Vec::new();
    for (k, x) in iterates.iter().enumerate() {
        let r = sub(&b, &a.spmv(x)?);
        let measured = if r0 > 0.0 { norm2(&dense_mv(&half, &r)) / r0 } else { 0.0 };
        let bound_nu = curve.nu.map(|nu| nu.powi((k * p.ell()) as i32));
        let bound_kappa = 2.0 * q.powi(k as i32);
        let bound_min = curve.value(k).unwrap_or(f64::NAN);
        if measured > bound_min + SLACK {
            violations.push(k);
        }
        rows.push(vec![
            Cell::Int(k),
            Cell::Num(measured),
            bound_nu.map_or(Cell::Empty, Cell::Num),
            Cell::Num(bound_kappa),
            Cell::Num(bound_min),
        ]);
    }
    let table = Table {
        header: vec!["k", "measured", "bound_nu", "bound_kappa", "bound_min"],
        rows,
    };
    let text = match args.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json()?,
    };
    emit(args.output.as_deref(), &text)?;

    if !violations.is_empty() {
        eprintln!("bound violated at k = {violations:?}");
        return Ok(BOUND_VIOLATION);
    }
    Ok(exit_code(res.termination))
}
