use std::sync::Arc;

use innerit::analysis::{
    admissible_omega, check_definiteness, kappa_report, spectral_summary, ssor_omega_intervals, AdmissibleOmega,
    DefinitenessCheck, KappaReport, SpectralSummary,
};
use innerit::linalg::dense::check_cap;
use innerit::Side;
use serde::Serialize;

use crate::args::{AnalyzeArgs, SideArg};
use crate::error::CliResult;
use crate::io::{emit, load_matrix};
use crate::solve::build;

#[derive(Serialize)]
struct SsorParameters {
    mu: f64,
    rho_s: f64,
}

#[derive(Serialize)]
struct AnalyzeReport {
    rows: usize,
    cols: usize,
    side: Side,
    inner: String,
    omega: f64,
    inner_steps: usize,
    definiteness: DefinitenessCheck,
    spectral: SpectralSummary,
    kappa: Option<KappaReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    kappa_unavailable: Option<String>,
    omega_intervals: Option<AdmissibleOmega>,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega_intervals_unavailable: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ssor: Option<SsorParameters>,
    case_labels: Vec<String>,
}

fn split<T>(r: innerit::Result<T>) -> (Option<T>, Option<String>) {
    match r {
        Ok(v) => (Some(v), None),
        Err(e) => (None, Some(e.to_string())),
    }
}

pub fn run(args: &AnalyzeArgs) -> CliResult<i32> {
    let a = Arc::new(load_matrix(&args.matrix)?);
    let kind = args.inner.inner;
    let side = match (kind.is_normal_equations(), args.side) {
        (false, _) => Side::Direct,
        (true, SideArg::Left) => Side::NormalLeft,
        (true, SideArg::Right) => Side::NormalRight,
    };
    let dim = match side {
        Side::NormalLeft => a.ncols(),
        _ => a.nrows(),
    };
    check_cap(dim)?;

    let p = build(&a, side, &args.inner)?;
    let induced = p.splitting().induced_dense()?;
    let definiteness = check_definiteness(&p)?;
    let spectral = spectral_summary(&p)?;
    let (kappa, kappa_unavailable) = split(kappa_report(&p));
    let (omega_intervals, omega_intervals_unavailable) = split(admissible_omega(kind, &induced));
    let ssor = if kind.is_ssor_family() {
        ssor_omega_intervals(&induced).ok().map(|s| SsorParameters { mu: s.mu, rho_s: s.rho_s })
    } else {
        None
    };
    let case_labels = omega_intervals
        .as_ref()
        .map(|o| vec![o.odd_ell.case_label.clone(), o.even_ell.case_label.clone()])
        .unwrap_or_default();

    let report = AnalyzeReport {
        rows: a.nrows(),
        cols: a.ncols(),
        side,
        inner: kind.to_string(),
        omega: args.inner.omega,
        inner_steps: args.inner.inner_steps,
        definiteness,
        spectral,
        kappa,
        kappa_unavailable,
        omega_intervals,
        omega_intervals_unavailable,
        ssor,
        case_labels,
    };
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    emit(args.output.as_deref(), &text)?;
    Ok(0)
}
