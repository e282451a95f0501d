use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::dense::{check_cap, sym_eigenvalues};
use crate::linalg::DenseMatrix;
use crate::splittings::{materialize_dense, InnerPreconditioner, MaterializedPreconditioner};

const DEF_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "SPD")]
    Spd,
    #[serde(rename = "SND")]
    Snd,
    #[serde(rename = "indefinite")]
    Indefinite,
    #[serde(rename = "singular-semidefinite")]
    SingularSemidefinite,
}

impl Verdict {
    /// Classifies from extreme eigenvalues with tolerance
    /// `1e-10 · max(|min|, |max|, 1)`.
    pub fn from_extremes(min_eig: f64, max_eig: f64) -> Self {
        let tol = DEF_TOL * min_eig.abs().max(max_eig.abs()).max(1.0);
        if min_eig > tol {
            Self::Spd
        } else if max_eig < -tol {
            Self::Snd
        } else if min_eig < -tol && max_eig > tol {
            Self::Indefinite
        } else {
            Self::SingularSemidefinite
        }
    }

    pub fn is_definite(self) -> bool {
        matches!(self, Self::Spd | Self::Snd)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Spd => "SPD",
            Self::Snd => "SND",
            Self::Indefinite => "indefinite",
            Self::SingularSemidefinite => "singular-semidefinite",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Subject {
    M,
    #[serde(rename = "M_plus_N")]
    MPlusN,
    #[serde(rename = "C_ell")]
    CEll,
    /// Any other matrix handed to [`classify`].
    #[serde(rename = "other")]
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DefinitenessReport {
    pub verdict: Verdict,
    pub min_eig: f64,
    pub max_eig: f64,
    pub subject: Subject,
}

/// Dense eigenvalue verdict for a symmetric matrix.
pub fn classify(a: &DenseMatrix, subject: Subject) -> Result<DefinitenessReport> {
    let ev = sym_eigenvalues(a)?;
    let (min_eig, max_eig) = match (ev.first(), ev.last()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => return Err(Error::Dimension("empty matrix".into())),
    };
    Ok(DefinitenessReport {
        verdict: Verdict::from_extremes(min_eig, max_eig),
        min_eig,
        max_eig,
        subject,
    })
}

/// Verdicts for `M`, `M + N` and `C^(ℓ)` of one inner preconditioner.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DefinitenessCheck {
    pub ell: usize,
    pub m: DefinitenessReport,
    pub m_plus_n: DefinitenessReport,
    pub c_ell: DefinitenessReport,
    /// `M` for odd `ℓ`, `M + N` for even `ℓ`.
    pub governing: Subject,
}

impl DefinitenessCheck {
    pub fn governing_report(&self) -> &DefinitenessReport {
        match self.governing {
            Subject::M => &self.m,
            _ => &self.m_plus_n,
        }
    }
}

pub fn check_definiteness(p: &InnerPreconditioner) -> Result<DefinitenessCheck> {
    check_cap(p.dim())?;
    let mat = materialize_dense(p)?;
    check_definiteness_materialized(&mat, p.ell())
}

pub(crate) fn check_definiteness_materialized(
    mat: &MaterializedPreconditioner,
    ell: usize,
) -> Result<DefinitenessCheck> {
    let m = classify(&mat.m, Subject::M)?;
    let m_plus_n = classify(&mat.m_plus_n(), Subject::MPlusN)?;
    let c_ell = classify(&mat.c, Subject::CEll)?;
    let governing = if ell % 2 == 1 { Subject::M } else { Subject::MPlusN };
    let check = DefinitenessCheck {
        ell,
        m,
        m_plus_n,
        c_ell,
        governing,
    };
    let g = check.governing_report().verdict;
    let c = check.c_ell.verdict;
    // Singular-semidefinite verdicts sit on the tolerance boundary and are
    // not held against the guard.
    let decisive = |v: Verdict| v != Verdict::SingularSemidefinite;
    if decisive(g) && decisive(c) && ((g == Verdict::Spd) != (c == Verdict::Spd) || (g == Verdict::Snd) != (c == Verdict::Snd)) {
        return Err(Error::Inconsistent(format!(
            "l = {ell}: {} is {} but C is {}",
            if governing == Subject::M { "M" } else { "M+N" },
            g.as_str(),
            c.as_str()
        )));
    }
    Ok(check)
}
