//! Matrix-free preconditioned CG and MINRES.

mod cg;
mod minres;
mod operator;
mod types;

pub use cg::pcg;
pub use minres::pminres;
pub use operator::{
    symmetry_defect, DensePreconditioner, IdentityPreconditioner, LinearOperator, NormalOperator,
    Preconditioner,
};
pub use types::{ConvergenceHistory, HistoryRecord, SolveResult, SolverConfig, Termination};
