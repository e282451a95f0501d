use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use clap::ValueEnum;
use innerit::gen;
use innerit::krylov::SolverConfig;
use innerit::linalg::dense_mv;
use innerit::lsq::{cgls, cgne, lsmr, mrne, LsqKind, LsqProblem};
use innerit::{InnerPreconditioner, Side, SparseMatrix, Splitting};

use crate::args::{BenchArgs, Format, Method};
use crate::error::{CliError, CliResult};
use crate::io::{emit, Cell, Table};

struct Problem {
    m: usize,
    n: usize,
    rank: usize,
    a: Arc<SparseMatrix>,
    b_ls: Vec<f64>,
    b_mn: Vec<f64>,
}

fn parse_list<T: FromStr>(s: &str, what: &str) -> CliResult<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::usage(format!("invalid {what} '{t}'"))))
        .collect()
}

fn parse_methods(s: &str) -> CliResult<Vec<Method>> {
    let mut out = Vec::new();
    for t in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let m = Method::from_str(t, true).map_err(|_| CliError::usage(format!("invalid method '{t}'")))?;
        if matches!(m, Method::Cg | Method::Minres) {
            return Err(CliError::usage(format!("bench problems are rectangular; method {t} is not available")));
        }
        out.push(m);
    }
    Ok(out)
}

fn problems(seed: u64, shape_grid: bool) -> CliResult<Vec<Problem>> {
    let mut shapes = vec![(60, 40, 25)];
    if shape_grid {
        shapes.extend([(40, 20, 20), (40, 20, 12), (20, 40, 20), (20, 40, 12)]);
    }
    let mut rng = gen::rng(seed);
    shapes
        .into_iter()
        .map(|(m, n, rank)| {
            let a = gen::rank_deficient(m, n, rank, 1.0, 10.0, &mut rng);
            let b_ls = gen::gaussian_vector(m, &mut rng);
            let b_mn = dense_mv(&a, &gen::gaussian_vector(n, &mut rng));
            Ok(Problem { m, n, rank, a: Arc::new(SparseMatrix::from_dense(&a)?), b_ls, b_mn })
        })
        .collect()
}

pub fn run(args: &BenchArgs) -> CliResult<i32> {
    let methods = parse_methods(&args.methods)?;
    let omegas: Vec<f64> = parse_list(&args.omegas, "omega")?;
    let steps: Vec<usize> = parse_list(&args.steps, "inner step count")?;
    if methods.is_empty() || omegas.is_empty() || steps.is_empty() {
        return Err(CliError::usage("empty parameter grid"));
    }
    if methods.contains(&Method::Lsqr) {
        eprintln!("note: lsqr is deprecated and runs cgls");
    }
    let kind = if args.inner.is_normal_equations() { args.inner } else { args.inner.counterpart() };

    let mut header = vec![
        "problem",
        "m",
        "n",
        "rank",
        "method",
        "inner",
        "omega",
        "inner_steps",
        "iterations",
        "termination",
        "relative_residual",
        "ls_residual_norm",
        "normal_residual_norm",
    ];
    if args.timing {
        header.push("wall_ms");
    }
    let mut rows = Vec::new();
    for (id, prob) in problems(args.seed, args.shape_grid)?.iter().enumerate() {
        for &method in &methods {
            let (side, lsq_kind, b) = match method {
                Method::Cgne | Method::Mrne => (Side::NormalRight, LsqKind::MinNorm, &prob.b_mn),
                _ => (Side::NormalLeft, LsqKind::LeastSquares, &prob.b_ls),
            };
            let lp = LsqProblem::new(prob.a.clone(), b.clone(), lsq_kind)?;
            let dim = if side == Side::NormalLeft { prob.n } else { prob.m };
            let cfg = SolverConfig {
                tol: args.tol,
                max_outer: args.max_outer.unwrap_or(10 * dim),
                record_history: false,
                ..SolverConfig::default()
            };
            let start0 = vec![0.0; dim];
            for &omega in &omegas {
                for &ell in &steps {
                    let p = InnerPreconditioner::new(Splitting::new(kind, omega, prob.a.clone(), side)?, ell)?;
                    let start = Instant::now();
                    let r = match method {
                        Method::Cgls | Method::Lsqr => cgls(&lp, &p, &start0, &cfg)?,
                        Method::Lsmr => lsmr(&lp, &p, &start0, &cfg)?,
                        Method::Cgne => cgne(&lp, &p, &start0, &cfg)?,
                        _ => mrne(&lp, &p, &start0, &cfg)?,
                    };
                    let wall = start.elapsed().as_secs_f64() * 1e3;
                    let rel = r.inner.relative_residual();
                    let mut row = vec![
                        Cell::Int(id),
                        Cell::Int(prob.m),
                        Cell::Int(prob.n),
                        Cell::Int(prob.rank),
                        Cell::Text(method.name().into()),
                        Cell::Text(kind.to_string()),
                        Cell::Num(omega),
                        Cell::Int(ell),
                        Cell::Int(r.inner.iterations),
                        Cell::Text(r.inner.termination.as_str().into()),
                        Cell::Num(rel),
                        Cell::Num(r.ls_residual_norm),
                        Cell::Num(r.normal_residual_norm),
                    ];
                    if args.timing {
                        row.push(Cell::Num(wall));
                    }
                    rows.push(row);
                }
            }
        }
    }
    let table = Table { header, rows };
    let text = match args.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json()?,
    };
    emit(args.output.as_deref(), &text)?;
    Ok(0)
}
