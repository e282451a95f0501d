use serde::ser::{SerializeTuple, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::dense::{check_cap, check_symmetric, dense_sym_eig, norm2, sym_eigenvalues, symmetrize};
use crate::linalg::DenseMatrix;
use crate::splittings::SplittingKind;

/// Open interval `(lo, hi)`; endpoints may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }

    pub fn is_empty(&self) -> bool {
        !(self.lo < self.hi)
    }
}

struct Endpoint(f64);

impl Serialize for Endpoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0 == f64::INFINITY {
            s.serialize_str("inf")
        } else if self.0 == f64::NEG_INFINITY {
            s.serialize_str("-inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&Endpoint(self.lo))?;
        t.serialize_element(&Endpoint(self.hi))?;
        t.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OmegaIntervals {
    pub intervals: Vec<Interval>,
    pub case_label: String,
}

impl OmegaIntervals {
    fn new(mut intervals: Vec<Interval>, case_label: impl Into<String>) -> Self {
        intervals.retain(|i| !i.is_empty());
        intervals.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        Self {
            intervals,
            case_label: case_label.into(),
        }
    }

    pub fn contains(&self, omega: f64) -> bool {
        self.intervals.iter().any(|i| i.contains(omega))
    }
}

/// Values of `ω` for which `2ω⁻¹B − A` is SPD.
///
/// Uses `λ_max` of `B^{-1/2} A B^{-1/2}`: `(0, 2/λ)` when positive,
/// `(−∞, 2/λ) ∪ (0, ∞)` when negative, `(0, ∞)` when it vanishes.
pub fn omega_interval_shifted(a: &DenseMatrix, b: &DenseMatrix) -> Result<OmegaIntervals> {
    if a.shape() != b.shape() || !a.is_square() {
        return Err(Error::Dimension(format!(
            "A is {}x{}, B is {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    check_cap(a.nrows())?;
    check_symmetric(a)?;
    let be = dense_sym_eig(b)?;
    if be.eigenvalues.is_empty() {
        return Err(Error::Dimension("empty matrix".into()));
    }
    let bmin = be.min();
    if bmin <= 1e-14 * be.max_abs() {
        return Err(Error::NotPositiveDefinite(bmin));
    }
    let b_isqrt = be.recompose(|l| 1.0 / l.sqrt());
    let scaled = symmetrize(&(&b_isqrt * a * &b_isqrt));
    let lam = *sym_eigenvalues(&scaled)?.last().unwrap();
    Ok(shifted_from_lambda(lam, norm2(a)))
}

fn shifted_from_lambda(lam: f64, a_norm: f64) -> OmegaIntervals {
    if lam.abs() <= 1e-12 * a_norm || lam == 0.0 {
        OmegaIntervals::new(vec![Interval::new(0.0, f64::INFINITY)], "lambda_max = 0")
    } else if lam > 0.0 {
        OmegaIntervals::new(vec![Interval::new(0.0, 2.0 / lam)], "lambda_max > 0")
    } else {
        OmegaIntervals::new(
            vec![
                Interval::new(f64::NEG_INFINITY, 2.0 / lam),
                Interval::new(0.0, f64::INFINITY),
            ],
            "lambda_max < 0",
        )
    }
}

/// SSOR intervals: odd `ℓ` exact, even `ℓ` sufficient only.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SsorIntervals {
    pub odd_ell: OmegaIntervals,
    pub even_ell: OmegaIntervals,
    pub mu: f64,
    pub rho_s: f64,
}

pub fn ssor_omega_intervals(a: &DenseMatrix) -> Result<SsorIntervals> {
    check_cap(a.nrows())?;
    check_symmetric(a)?;
    let n = a.nrows();
    let mut d_isqrt = vec![0.0; n];
    for i in 0..n {
        let d = a[(i, i)];
        if d == 0.0 {
            return Err(Error::ZeroDiagonal(i));
        }
        if d < 0.0 {
            return Err(Error::InvalidMatrix(format!(
                "SSOR interval analysis needs a positive diagonal, entry {i} is {d}"
            )));
        }
        d_isqrt[i] = 1.0 / d.sqrt();
    }
    // Scaled strictly lower part: D^{-1/2} L D^{-1/2}.
    let ls = DenseMatrix::from_fn(n, n, |i, j| if i > j { a[(i, j)] * d_isqrt[i] * d_isqrt[j] } else { 0.0 });
    let s = symmetrize(&(&ls + ls.transpose()));
    let t = symmetrize(&(&ls * ls.transpose()));
    let s_ev = sym_eigenvalues(&s)?;
    let t_ev = sym_eigenvalues(&t)?;
    let (s_min, s_max) = (s_ev.first().copied().unwrap_or(0.0), s_ev.last().copied().unwrap_or(0.0));
    let t_max = t_ev.last().copied().unwrap_or(0.0);
    let mu = s_min + 1.0;
    let rho_s = s_max + 2.0 * t_max + 1.0;

    let mut intervals = Vec::new();
    let mut labels = Vec::new();
    const ZERO: f64 = 1e-14;
    if mu >= 0.5 {
        intervals.push(Interval::new(0.0, 2.0));
        labels.push("mu >= 1/2");
    } else if mu.abs() <= ZERO {
        intervals.push(Interval::new(0.0, 1.0));
        labels.push("mu = 0");
    } else {
        intervals.push(Interval::new(0.0, (1.0 - (1.0 - 2.0 * mu).sqrt()) / mu));
        labels.push("mu < 1/2, mu != 0");
    }
    if rho_s.abs() <= ZERO {
        intervals.push(Interval::new(2.0, f64::INFINITY));
        labels.push("rho_s = 0");
    } else if rho_s < 0.0 {
        let root = (1.0 + (1.0 - 2.0 * rho_s).sqrt()) / rho_s;
        intervals.push(Interval::new(f64::NEG_INFINITY, root));
        intervals.push(Interval::new(2.0, f64::INFINITY));
        labels.push("rho_s < 0");
    } else if rho_s < 0.5 {
        intervals.push(Interval::new(2.0, (1.0 + (1.0 - 2.0 * rho_s).sqrt()) / rho_s));
        labels.push("rho_s in (0, 1/2)");
    }

    Ok(SsorIntervals {
        odd_ell: OmegaIntervals::new(vec![Interval::new(0.0, 2.0)], "odd l: (0, 2)"),
        even_ell: OmegaIntervals::new(intervals, labels.join("; ")),
        mu,
        rho_s,
    })
}

/// Admissible `ω` for a splitting family on a given induced matrix, for odd
/// and even `ℓ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibleOmega {
    pub odd_ell: OmegaIntervals,
    pub even_ell: OmegaIntervals,
    /// True when the even-`ℓ` set is only sufficient.
    pub even_sufficient_only: bool,
}

pub fn admissible_omega(kind: SplittingKind, induced: &DenseMatrix) -> Result<AdmissibleOmega> {
    check_cap(induced.nrows())?;
    if kind.is_ssor_family() {
        let s = ssor_omega_intervals(induced)?;
        return Ok(AdmissibleOmega {
            odd_ell: s.odd_ell,
            even_ell: s.even_ell,
            even_sufficient_only: true,
        });
    }
    let n = induced.nrows();
    let b = if kind.uses_diagonal() {
        let d: Vec<f64> = (0..n).map(|i| induced[(i, i)]).collect();
        if let Some(i) = d.iter().position(|&v| v == 0.0) {
            return Err(Error::ZeroDiagonal(i));
        }
        if d.iter().any(|&v| v < 0.0) {
            return Err(Error::InvalidMatrix("diagonal splitting analysis needs a positive diagonal".into()));
        }
        crate::linalg::dense::diag(&d)
    } else {
        DenseMatrix::identity(n, n)
    };
    Ok(AdmissibleOmega {
        odd_ell: OmegaIntervals::new(vec![Interval::new(0.0, f64::INFINITY)], "odd l: M = B/omega SPD for omega > 0"),
        even_ell: omega_interval_shifted(induced, &b)?,
        even_sufficient_only: false,
    })
}
