use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

/// Stopping and breakdown parameters shared by the Krylov solvers.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Target for `‖r_k‖₂ / ‖r₀‖₂`.
    pub tol: f64,
    pub max_outer: usize,
    /// Relative threshold below which `⟨r, C r⟩` counts as non-positive.
    pub breakdown_tol: f64,
    pub record_history: bool,
    /// Also keep every iterate `x_k` in the history.
    pub record_iterates: bool,
    /// Use `−C` instead of `C` (for negative definite preconditioners).
    pub negate_preconditioner: bool,
    /// Recompute the true residual every this many iterations.
    pub replace_every: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_outer: 1000,
            breakdown_tol: 1e-14,
            record_history: true,
            record_iterates: false,
            negate_preconditioner: false,
            replace_every: 50,
        }
    }
}

impl SolverConfig {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_max_outer(mut self, max_outer: usize) -> Self {
        self.max_outer = max_outer;
        self
    }

    pub fn recording_iterates(mut self) -> Self {
        self.record_iterates = true;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::Config(format!("tol must be positive, got {}", self.tol)));
        }
        if self.max_outer == 0 {
            return Err(Error::Config("max_outer must be at least 1".into()));
        }
        if !(self.breakdown_tol >= 0.0) {
            return Err(Error::Config("breakdown_tol must be nonnegative".into()));
        }
        if self.replace_every == 0 {
            return Err(Error::Config("replace_every must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Converged,
    MaxIterations,
    /// `⟨r, C r⟩ ≤ 0` for a nonzero `r`: the preconditioner is not definite.
    BreakdownIndefinitePreconditioner,
    /// `⟨A p, p⟩ ≤ 0`: the operator is not semidefinite along `p`.
    BreakdownZeroCurvature,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Converged => "converged",
            Self::MaxIterations => "max_iterations",
            Self::BreakdownIndefinitePreconditioner => "breakdown_indefinite_preconditioner",
            Self::BreakdownZeroCurvature => "breakdown_zero_curvature",
        }
    }

    pub fn is_breakdown(self) -> bool {
        matches!(
            self,
            Self::BreakdownIndefinitePreconditioner | Self::BreakdownZeroCurvature
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HistoryRecord {
    pub k: usize,
    /// `‖r_k‖₂` of the unpreconditioned residual.
    pub res_norm: f64,
    /// `⟨r_k, z_k⟩` for CG, the preconditioned residual estimate for MINRES.
    pub aux: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConvergenceHistory {
    pub records: Vec<HistoryRecord>,
    pub iterates: Option<Vec<Vec<f64>>>,
}

impl ConvergenceHistory {
    pub(crate) fn new(record_iterates: bool) -> Self {
        Self {
            records: Vec::new(),
            iterates: record_iterates.then(Vec::new),
        }
    }

    pub(crate) fn push(&mut self, k: usize, res_norm: f64, aux: f64, x: &[f64]) {
        self.records.push(HistoryRecord { k, res_norm, aux });
        if let Some(it) = self.iterates.as_mut() {
            it.push(x.to_vec());
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// `k,res_norm,aux` with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,res_norm,aux\n");
        for r in &self.records {
            writeln!(out, "{},{:.16e},{:.16e}", r.k, r.res_norm, r.aux).unwrap();
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub x: Vec<f64>,
    pub iterations: usize,
    pub termination: Termination,
    pub history: ConvergenceHistory,
    /// `‖b − Op x₀‖₂`.
    pub initial_residual_norm: f64,
    /// `‖b − Op x‖₂` recomputed from the returned iterate.
    pub final_residual_norm: f64,
}

impl SolveResult {
    pub fn converged(&self) -> bool {
        self.termination == Termination::Converged
    }

    pub fn relative_residual(&self) -> f64 {
        if self.initial_residual_norm == 0.0 {
            0.0
        } else {
            self.final_residual_norm / self.initial_residual_norm
        }
    }
}
