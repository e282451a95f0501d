use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::dense::check_cap;
use crate::splittings::{materialize_dense, InnerPreconditioner};

use super::spectral::{kappa_report_materialized, require_spsd_and_spd_c, spectral_summary_materialized};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundKind {
    #[serde(rename = "MR-nu")]
    MrNu,
    #[serde(rename = "MR-kappa")]
    MrKappa,
    #[serde(rename = "CG-kappa")]
    CgKappa,
}

impl BoundKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::MrNu => "MR-nu",
            Self::MrKappa => "MR-kappa",
            Self::CgKappa => "CG-kappa",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundPoint {
    pub k: usize,
    pub value: f64,
    /// Which factor attains the minimum at this `k`.
    pub active: BoundKind,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCurve {
    /// The factor active at the last point.
    pub kind: BoundKind,
    pub nu: Option<f64>,
    pub kappa: f64,
    pub ell: usize,
    pub points: Vec<BoundPoint>,
}

impl BoundCurve {
    pub fn value(&self, k: usize) -> Option<f64> {
        self.points.get(k).map(|p| p.value)
    }
}

fn kappa_ratio(kappa: f64) -> f64 {
    let s = kappa.sqrt();
    (s - 1.0) / (s + 1.0)
}

/// `min(ν^{kℓ}, 2 q^k)` with `q = (√κ − 1)/(√κ + 1)`, `k = 0..=k_max`.
///
/// Refuses unless the induced matrix is semidefinite, `C^(ℓ)` is SPD and
/// `H` is semiconvergent.
pub fn mr_bound_curve(p: &InnerPreconditioner, k_max: usize) -> Result<BoundCurve> {
    check_cap(p.dim())?;
    let mat = materialize_dense(p)?;
    require_spsd_and_spd_c(&mat)?;
    let s = spectral_summary_materialized(&mat)?;
    if !s.semiconvergent {
        return Err(Error::Hypothesis(format!(
            "H is not semiconvergent (nu = {:.6e}, unit eigenvalues simple: {})",
            s.nu, s.unit_eigs_simple
        )));
    }
    let kappa = kappa_report_materialized(&mat, p.ell())?.kappa;
    let q = kappa_ratio(kappa);
    let rate_nu = s.nu.powi(p.ell() as i32);
    let points: Vec<BoundPoint> = (0..=k_max)
        .map(|k| {
            let f_nu = rate_nu.powi(k as i32);
            let f_kappa = 2.0 * q.powi(k as i32);
            if f_nu <= f_kappa {
                BoundPoint { k, value: f_nu, active: BoundKind::MrNu }
            } else {
                BoundPoint { k, value: f_kappa, active: BoundKind::MrKappa }
            }
        })
        .collect();
    Ok(BoundCurve {
        kind: points.last().map_or(BoundKind::MrNu, |p| p.active),
        nu: Some(s.nu),
        kappa,
        ell: p.ell(),
        points,
    })
}

/// `min(1, 2 q^k)` with `q = (√κ − 1)/(√κ + 1)`.
pub fn cg_bound_curve(p: &InnerPreconditioner, k_max: usize) -> Result<BoundCurve> {
    check_cap(p.dim())?;
    let mat = materialize_dense(p)?;
    let kappa = kappa_report_materialized(&mat, p.ell())?.kappa;
    Ok(cg_curve_from_kappa(kappa, p.ell(), k_max))
}

pub fn cg_curve_from_kappa(kappa: f64, ell: usize, k_max: usize) -> BoundCurve {
    let q = kappa_ratio(kappa);
    let points = (0..=k_max)
        .map(|k| BoundPoint {
            k,
            value: (2.0 * q.powi(k as i32)).min(1.0),
            active: BoundKind::CgKappa,
        })
        .collect();
    BoundCurve {
        kind: BoundKind::CgKappa,
        nu: None,
        kappa,
        ell,
        points,
    }
}
