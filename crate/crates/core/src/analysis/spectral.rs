use nalgebra::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::dense::{check_cap, general_eigenvalues, numerical_rank, sym_eigenvalues, symmetrize};
use crate::linalg::{dense_sym_eig, DenseMatrix};
use crate::splittings::{materialize_dense, InnerPreconditioner, MaterializedPreconditioner};

use super::definiteness::{classify, Subject, Verdict};

/// Distance from 1 within which an eigenvalue of `H` counts as 1.
pub const UNIT_EIG_TOL: f64 = 1e-10;

const RANK_TOL: f64 = 1e-10;
const KAPPA_CUT: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralSummary {
    /// `max |λ|` over eigenvalues of `H` other than 1 (0 if there are none).
    pub nu: f64,
    /// Largest and smallest real parts over eigenvalues other than 1.
    pub lambda_max_h: Option<f64>,
    pub lambda_min_h: Option<f64>,
    /// Eigenvalue of `H` with the smallest modulus (its real part; the
    /// modulus if it is genuinely complex).
    pub delta: f64,
    pub unit_multiplicity: usize,
    pub unit_eigs_simple: bool,
    pub semiconvergent: bool,
    /// Whether the spectrum came from the symmetric similarity transform.
    pub real_spectrum: bool,
}

pub(crate) struct HSpectrum {
    pub eigs: Vec<Complex<f64>>,
    pub real_spectrum: bool,
}

/// Eigenvalues of `H = M⁻¹N`. With `M` definite this goes through the
/// symmetric matrix `M^{-1/2} N M^{-1/2}` (after flipping signs if `M` is
/// negative definite); otherwise through a general eigensolver.
pub(crate) fn h_spectrum(mat: &MaterializedPreconditioner) -> Result<HSpectrum> {
    let m_verdict = classify(&mat.m, Subject::M)?.verdict;
    if m_verdict.is_definite() {
        let sign = if m_verdict == Verdict::Snd { -1.0 } else { 1.0 };
        let me = dense_sym_eig(&(&mat.m * sign))?;
        let s = me.recompose(|l| 1.0 / l.sqrt());
        let g = symmetrize(&(&s * (mat.n() * sign) * &s));
        let eigs = sym_eigenvalues(&g)?.into_iter().map(|v| Complex::new(v, 0.0)).collect();
        Ok(HSpectrum {
            eigs,
            real_spectrum: true,
        })
    } else {
        Ok(HSpectrum {
            eigs: general_eigenvalues(&mat.h)?,
            real_spectrum: false,
        })
    }
}

fn is_unit(z: Complex<f64>) -> bool {
    (z - Complex::new(1.0, 0.0)).norm() <= UNIT_EIG_TOL
}

pub fn spectral_summary(p: &InnerPreconditioner) -> Result<SpectralSummary> {
    check_cap(p.dim())?;
    let mat = materialize_dense(p)?;
    spectral_summary_materialized(&mat)
}

pub(crate) fn spectral_summary_materialized(mat: &MaterializedPreconditioner) -> Result<SpectralSummary> {
    let spec = h_spectrum(mat)?;
    summarize(&spec, &mat.h)
}

fn summarize(spec: &HSpectrum, h: &DenseMatrix) -> Result<SpectralSummary> {
    if spec.eigs.is_empty() {
        return Err(Error::Dimension("empty matrix".into()));
    }
    let others: Vec<Complex<f64>> = spec.eigs.iter().copied().filter(|&z| !is_unit(z)).collect();
    let unit_multiplicity = spec.eigs.len() - others.len();
    let nu = others.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let lambda_max_h = others.iter().map(|z| z.re).reduce(f64::max);
    let lambda_min_h = others.iter().map(|z| z.re).reduce(f64::min);
    let smallest = spec
        .eigs
        .iter()
        .copied()
        .min_by(|a, b| a.norm().total_cmp(&b.norm()))
        .unwrap();
    let delta = if smallest.im.abs() <= UNIT_EIG_TOL { smallest.re } else { smallest.norm() };

    let unit_eigs_simple = if spec.real_spectrum || unit_multiplicity == 0 {
        true
    } else {
        let n = h.nrows();
        let shifted = h - DenseMatrix::identity(n, n);
        let sq = &shifted * &shifted;
        numerical_rank(&shifted, RANK_TOL) == numerical_rank(&sq, RANK_TOL)
    };
    Ok(SpectralSummary {
        nu,
        lambda_max_h,
        lambda_min_h,
        delta,
        unit_multiplicity,
        unit_eigs_simple,
        semiconvergent: nu < 1.0 && unit_eigs_simple,
        real_spectrum: spec.real_spectrum,
    })
}

/// `κ^(ℓ)` together with the closed-form expressions in terms of the
/// spectrum of `H`, kept for comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KappaReport {
    pub ell: usize,
    /// Ratio of extreme nonzero eigenvalues of `C^(ℓ)A = I − H^ℓ`.
    pub kappa: f64,
    /// `(1 − λ_max(H)) / (1 − λ_min(H))` for odd `ℓ`,
    /// `(1 − δ^ℓ) / (1 − ν^ℓ)` for even `ℓ`.
    pub closed_form: Option<f64>,
    pub closed_form_case: &'static str,
}

pub fn kappa_ell(p: &InnerPreconditioner) -> Result<f64> {
    Ok(kappa_report(p)?.kappa)
}

pub fn kappa_report(p: &InnerPreconditioner) -> Result<KappaReport> {
    check_cap(p.dim())?;
    let mat = materialize_dense(p)?;
    kappa_report_materialized(&mat, p.ell())
}

pub(crate) fn require_spsd_and_spd_c(mat: &MaterializedPreconditioner) -> Result<()> {
    let a = classify(&mat.induced, Subject::Other)?;
    if matches!(a.verdict, Verdict::Indefinite | Verdict::Snd) {
        return Err(Error::NotSemidefinite(a.min_eig));
    }
    let c = classify(&mat.c, Subject::CEll)?;
    if c.verdict != Verdict::Spd {
        return Err(Error::NotPositiveDefinite(c.min_eig));
    }
    Ok(())
}

pub(crate) fn kappa_report_materialized(mat: &MaterializedPreconditioner, ell: usize) -> Result<KappaReport> {
    require_spsd_and_spd_c(mat)?;
    let spec = h_spectrum(mat)?;
    let ell_i = ell as i32;
    let ca: Vec<f64> = spec
        .eigs
        .iter()
        .map(|z| (Complex::new(1.0, 0.0) - z.powi(ell_i)).norm())
        .collect();
    let top = ca.iter().copied().fold(0.0, f64::max);
    let kept: Vec<f64> = ca.into_iter().filter(|&v| v > KAPPA_CUT * top).collect();
    if top == 0.0 || kept.is_empty() {
        return Err(Error::InvalidMatrix("C A has no eigenvalues above the rank threshold".into()));
    }
    let lo = kept.iter().copied().fold(f64::INFINITY, f64::min);
    let kappa = top / lo;

    let s = summarize(&spec, &mat.h)?;
    let (closed_form, closed_form_case) = if ell % 2 == 1 {
        let v = match (s.lambda_max_h, s.lambda_min_h) {
            (Some(hi), Some(lo)) => Some((1.0 - hi) / (1.0 - lo)),
            _ => None,
        };
        (v, "odd")
    } else {
        let den = 1.0 - s.nu.powi(ell_i);
        let v = (den != 0.0).then(|| (1.0 - s.delta.powi(ell_i)) / den);
        (v, "even")
    };
    Ok(KappaReport {
        ell,
        kappa,
        closed_form: closed_form.filter(|v| v.is_finite()),
        closed_form_case,
    })
}
