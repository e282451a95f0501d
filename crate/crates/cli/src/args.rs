use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use innerit::SplittingKind;

#[derive(Debug, Parser)]
#[command(name = "innerit", version, about = "Krylov solvers with stationary inner-iteration preconditioning")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a symmetric, least-squares or minimum-norm problem.
    Solve(SolveArgs),
    /// Definiteness, spectral and relaxation-parameter report (dense, n <= 2000).
    Analyze(AnalyzeArgs),
    /// Measured MINRES residuals against the convergence bound.
    Bound(BoundArgs),
    /// Parameter sweep over generated rank-deficient problems.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Cg,
    Minres,
    Cgls,
    /// Alias for cgls.
    Lsqr,
    Lsmr,
    Cgne,
    Mrne,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Cg => "cg",
            Method::Minres => "minres",
            Method::Cgls | Method::Lsqr => "cgls",
            Method::Lsmr => "lsmr",
            Method::Cgne => "cgne",
            Method::Mrne => "mrne",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PrecondSign {
    Pos,
    Neg,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Args)]
pub struct InnerArgs {
    /// richardson, jor, ssor, richardson-ne, cimmino-ne or ne-ssor.
    #[arg(long, default_value = "ssor")]
    pub inner: SplittingKind,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub omega: f64,
    /// Number of inner steps per outer iteration.
    #[arg(long = "inner-steps", default_value_t = 1)]
    pub inner_steps: usize,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Matrix Market file with A.
    #[arg(long)]
    pub matrix: PathBuf,
    /// Right-hand side (Matrix Market or one value per line). Defaults to A times the ones vector.
    #[arg(long)]
    pub rhs: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub method: Method,
    #[command(flatten)]
    pub inner: InnerArgs,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Defaults to 10 times the operator dimension.
    #[arg(long = "max-outer")]
    pub max_outer: Option<usize>,
    /// Result file; stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Convergence history CSV.
    #[arg(long)]
    pub history: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long = "precond-sign", value_enum, default_value = "auto")]
    pub precond_sign: PrecondSign,
    /// Include the solution vector in the result.
    #[arg(long = "include-x")]
    pub include_x: bool,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub matrix: PathBuf,
    #[command(flatten)]
    pub inner: InnerArgs,
    /// Normal-equations side for NE kinds: left is AᵀA, right is AAᵀ.
    #[arg(long, value_enum, default_value = "left")]
    pub side: SideArg,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long)]
    pub matrix: PathBuf,
    #[arg(long)]
    pub rhs: Option<PathBuf>,
    #[command(flatten)]
    pub inner: InnerArgs,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long = "max-outer")]
    pub max_outer: Option<usize>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Comma-separated methods (cgls, lsqr, lsmr, cgne, mrne).
    #[arg(long, default_value = "cgls,lsmr")]
    pub methods: String,
    /// Comma-separated relaxation parameters.
    #[arg(long, default_value = "0.8,1.0,1.5", allow_hyphen_values = true)]
    pub omegas: String,
    /// Comma-separated inner step counts.
    #[arg(long, default_value = "1,2,3")]
    pub steps: String,
    /// Normal-equations kind; a direct kind is mapped to its counterpart.
    #[arg(long, default_value = "ne-ssor")]
    pub inner: SplittingKind,
    /// Add the over/underdetermined, full/deficient rank problems.
    #[arg(long = "shape-grid")]
    pub shape_grid: bool,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long = "max-outer")]
    pub max_outer: Option<usize>,
    /// Add a wall-time column (the report is then no longer reproducible).
    #[arg(long)]
    pub timing: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}
