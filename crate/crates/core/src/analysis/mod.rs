//! Dense analysis of inner-iteration preconditioners: definiteness verdicts,
//! admissible relaxation parameters, spectral summaries and convergence
//! bounds. Everything here is capped at [`DENSE_CAP`](crate::linalg::DENSE_CAP).

mod bounds;
mod definiteness;
mod intervals;
mod oracle;
mod spectral;

pub use bounds::{cg_bound_curve, cg_curve_from_kappa, mr_bound_curve, BoundCurve, BoundKind, BoundPoint};
pub use definiteness::{check_definiteness, classify, DefinitenessCheck, DefinitenessReport, Subject, Verdict};
pub use intervals::{
    admissible_omega, omega_interval_shifted, ssor_omega_intervals, AdmissibleOmega, Interval, OmegaIntervals,
    SsorIntervals,
};
pub use oracle::{solution_form_oracle, RANGE_TOL};
pub use spectral::{kappa_ell, kappa_report, spectral_summary, KappaReport, SpectralSummary, UNIT_EIG_TOL};
