//! Stationary splittings and the inner-iteration preconditioner.
//!
//! A splitting `𝔸 = M − N` of a symmetric matrix `𝔸` defines the stationary
//! iteration `z ← H z + M⁻¹ r` with `H = M⁻¹ N`. Running `ℓ` steps from
//! `z = 0` yields `z = C r` with `C = Σ_{i<ℓ} Hⁱ M⁻¹`, which is what the
//! Krylov solvers use as a preconditioner.
//!
//! `𝔸` is either the operand itself ([`Side::Direct`]) or one of the normal
//! matrices `AᵀA` ([`Side::NormalLeft`]) and `AAᵀ` ([`Side::NormalRight`]).
//! The normal matrices are never formed: the NE sweeps walk the columns
//! (resp. rows) of `A` while keeping `A z` (resp. `Aᵀ u`) up to date.
//!
//! | kind            | `M`                                             |
//! |-----------------|-------------------------------------------------|
//! | Richardson(-NE) | `ω⁻¹ I`                                         |
//! | JOR / Cimmino-NE| `ω⁻¹ D`                                         |
//! | SSOR / NE-SSOR  | `ω⁻¹(2−ω)⁻¹ (D + ωL) D⁻¹ (D + ωLᵀ)`             |
//!
//! where `𝔸 = L + D + Lᵀ` with `L` strictly lower triangular.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::dense::{check_cap, inverse};
use crate::linalg::{dot, DenseMatrix, SparseMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplittingKind {
    Richardson,
    Jor,
    Ssor,
    RichardsonNe,
    CimminoNe,
    NeSsor,
}

impl SplittingKind {
    pub fn is_normal_equations(self) -> bool {
        matches!(self, Self::RichardsonNe | Self::CimminoNe | Self::NeSsor)
    }

    pub fn is_ssor_family(self) -> bool {
        matches!(self, Self::Ssor | Self::NeSsor)
    }

    /// Kinds whose splitting matrix involves the diagonal `D`.
    pub fn uses_diagonal(self) -> bool {
        !matches!(self, Self::Richardson | Self::RichardsonNe)
    }

    /// The same method in the other family (direct <-> normal equations).
    pub fn counterpart(self) -> Self {
        match self {
            Self::Richardson => Self::RichardsonNe,
            Self::Jor => Self::CimminoNe,
            Self::Ssor => Self::NeSsor,
            Self::RichardsonNe => Self::Richardson,
            Self::CimminoNe => Self::Jor,
            Self::NeSsor => Self::Ssor,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Richardson => "richardson",
            Self::Jor => "jor",
            Self::Ssor => "ssor",
            Self::RichardsonNe => "richardson-ne",
            Self::CimminoNe => "cimmino-ne",
            Self::NeSsor => "ne-ssor",
        }
    }
}

impl fmt::Display for SplittingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SplittingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "richardson" => Self::Richardson,
            "jor" | "jacobi" => Self::Jor,
            "ssor" => Self::Ssor,
            "richardson-ne" => Self::RichardsonNe,
            "cimmino-ne" | "cimmino" => Self::CimminoNe,
            "ne-ssor" => Self::NeSsor,
            other => return Err(Error::Config(format!("unknown splitting '{other}'"))),
        })
    }
}

/// Which symmetric matrix the splitting is built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    /// The (square, symmetric) operand itself.
    Direct,
    /// `AᵀA`, for least-squares problems.
    NormalLeft,
    /// `AAᵀ`, for minimum-norm problems.
    NormalRight,
}

/// A stationary splitting with relaxation parameter `ω`.
#[derive(Debug, Clone)]
pub struct Splitting {
    kind: SplittingKind,
    omega: f64,
    side: Side,
    operand: Arc<SparseMatrix>,
    /// Columns of the operand (CSR of `Aᵀ`), kept only for column sweeps.
    columns: Option<SparseMatrix>,
    diag: Vec<f64>,
}

impl Splitting {
    pub fn new(kind: SplittingKind, omega: f64, operand: Arc<SparseMatrix>, side: Side) -> Result<Self> {
        match (kind.is_normal_equations(), side) {
            (true, Side::Direct) => {
                return Err(Error::InvalidSplitting(format!(
                    "{kind} requires a normal-equations side"
                )))
            }
            (false, Side::NormalLeft | Side::NormalRight) => {
                return Err(Error::InvalidSplitting(format!(
                    "{kind} acts on the operand directly; use {} for normal equations",
                    kind.counterpart()
                )))
            }
            _ => {}
        }
        if !omega.is_finite() || omega == 0.0 {
            return Err(Error::InvalidOmega {
                omega,
                kind: kind.to_string(),
            });
        }
        if kind.is_ssor_family() && omega == 2.0 {
            return Err(Error::InvalidOmega {
                omega,
                kind: kind.to_string(),
            });
        }
        if side == Side::Direct {
            match operand.max_asymmetry() {
                None => {
                    return Err(Error::Dimension(format!(
                        "direct splitting needs a square operand, got {}x{}",
                        operand.nrows(),
                        operand.ncols()
                    )))
                }
                Some(asym) if asym > 1e-12 * operand.max_abs().max(1.0) => {
                    return Err(Error::NotSymmetric(asym))
                }
                _ => {}
            }
        }
        let diag = match side {
            Side::Direct => operand.diagonal(),
            Side::NormalLeft => operand.col_norms_sq(),
            Side::NormalRight => operand.row_norms_sq(),
        };
        if kind.uses_diagonal() {
            if let Some(i) = diag.iter().position(|&d| d == 0.0) {
                return Err(Error::ZeroDiagonal(i));
            }
        }
        let columns = (side == Side::NormalLeft && kind == SplittingKind::NeSsor)
            .then(|| operand.transpose());
        Ok(Self {
            kind,
            omega,
            side,
            operand,
            columns,
            diag,
        })
    }

    /// Splitting on a square symmetric operand.
    pub fn direct(kind: SplittingKind, omega: f64, a: Arc<SparseMatrix>) -> Result<Self> {
        Self::new(kind, omega, a, Side::Direct)
    }

    pub fn kind(&self) -> SplittingKind {
        self.kind
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn operand(&self) -> &Arc<SparseMatrix> {
        &self.operand
    }

    /// Diagonal `D` of the induced symmetric matrix.
    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    /// Dimension of the induced symmetric matrix.
    pub fn dim(&self) -> usize {
        match self.side {
            Side::Direct | Side::NormalLeft => self.operand.ncols(),
            Side::NormalRight => self.operand.nrows(),
        }
    }

    /// `𝔸 x` for the induced symmetric matrix.
    pub fn apply_induced(&self, x: &[f64], out: &mut [f64]) {
        let a = &*self.operand;
        match self.side {
            Side::Direct => a.spmv_into(x, out),
            Side::NormalLeft => {
                let mut t = vec![0.0; a.nrows()];
                a.spmv_into(x, &mut t);
                a.spmv_t_into(&t, out);
            }
            Side::NormalRight => {
                let mut t = vec![0.0; a.ncols()];
                a.spmv_t_into(x, &mut t);
                a.spmv_into(&t, out);
            }
        }
    }

    fn check_len(&self, r: &[f64]) -> Result<()> {
        if r.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "splitting acts on vectors of length {}, got {}",
                self.dim(),
                r.len()
            )));
        }
        Ok(())
    }

    /// `M⁻¹ r` without forming `M`.
    pub fn apply_m_inv(&self, r: &[f64]) -> Result<Vec<f64>> {
        self.check_len(r)?;
        let mut z = vec![0.0; r.len()];
        let mut aux = self.sweep_aux();
        self.step(r, &mut z, &mut aux, true);
        Ok(z)
    }

    /// Auxiliary vector kept in sync with `z` by the NE-SSOR sweeps:
    /// `A z` for column sweeps, `Aᵀ u` for row sweeps.
    fn sweep_aux(&self) -> Vec<f64> {
        match (self.kind.is_ssor_family(), self.side) {
            (true, Side::NormalLeft) => vec![0.0; self.operand.nrows()],
            (true, Side::NormalRight) => vec![0.0; self.operand.ncols()],
            _ => Vec::new(),
        }
    }

    /// One stationary step `z ← z + M⁻¹ (r − 𝔸 z)`. `zero` marks `z = 0`,
    /// which lets the point methods skip the operator application.
    fn step(&self, r: &[f64], z: &mut [f64], aux: &mut [f64], zero: bool) {
        let w = self.omega;
        if self.kind.is_ssor_family() {
            match self.side {
                Side::Direct => {
                    self.sor_sweep_direct(r, z, 0..self.dim());
                    self.sor_sweep_direct(r, z, (0..self.dim()).rev());
                }
                Side::NormalLeft => {
                    self.sor_sweep_columns(r, z, aux, 0..self.dim());
                    self.sor_sweep_columns(r, z, aux, (0..self.dim()).rev());
                }
                Side::NormalRight => {
                    self.sor_sweep_rows(r, z, aux, 0..self.dim());
                    self.sor_sweep_rows(r, z, aux, (0..self.dim()).rev());
                }
            }
            return;
        }
        let resid: Vec<f64> = if zero {
            r.to_vec()
        } else {
            let mut az = vec![0.0; r.len()];
            self.apply_induced(z, &mut az);
            r.iter().zip(&az).map(|(ri, ai)| ri - ai).collect()
        };
        if self.kind.uses_diagonal() {
            for ((zi, ri), di) in z.iter_mut().zip(&resid).zip(&self.diag) {
                *zi += w * ri / di;
            }
        } else {
            for (zi, ri) in z.iter_mut().zip(&resid) {
                *zi += w * ri;
            }
        }
    }

    fn sor_sweep_direct(&self, r: &[f64], z: &mut [f64], order: impl Iterator<Item = usize>) {
        let a = &*self.operand;
        for i in order {
            let (cols, vals) = a.row(i);
            let mut s = r[i];
            for (&j, &v) in cols.iter().zip(vals) {
                s -= v * z[j];
            }
            z[i] += self.omega * s / self.diag[i];
        }
    }

    /// SOR on `AᵀA z = r` one column of `A` at a time; `y = A z`.
    fn sor_sweep_columns(
        &self,
        r: &[f64],
        z: &mut [f64],
        y: &mut [f64],
        order: impl Iterator<Item = usize>,
    ) {
        let cols = self.columns.as_ref().expect("column storage for NE-SSOR");
        for j in order {
            let (rows, vals) = cols.row(j);
            let mut s = 0.0;
            for (&i, &v) in rows.iter().zip(vals) {
                s += v * y[i];
            }
            let delta = self.omega * (r[j] - s) / self.diag[j];
            z[j] += delta;
            for (&i, &v) in rows.iter().zip(vals) {
                y[i] += delta * v;
            }
        }
    }

    /// SOR on `AAᵀ u = r` one row of `A` at a time; `w = Aᵀ u`.
    fn sor_sweep_rows(
        &self,
        r: &[f64],
        u: &mut [f64],
        w: &mut [f64],
        order: impl Iterator<Item = usize>,
    ) {
        let a = &*self.operand;
        for i in order {
            let (cols, vals) = a.row(i);
            let s = cols.iter().zip(vals).fold(0.0, |acc, (&j, &v)| acc + v * w[j]);
            let delta = self.omega * (r[i] - s) / self.diag[i];
            u[i] += delta;
            for (&j, &v) in cols.iter().zip(vals) {
                w[j] += delta * v;
            }
        }
    }

    /// Dense induced matrix `𝔸`.
    pub fn induced_dense(&self) -> Result<DenseMatrix> {
        check_cap(self.dim())?;
        let a = self.operand.to_dense();
        Ok(match self.side {
            Side::Direct => a,
            Side::NormalLeft => a.transpose() * &a,
            Side::NormalRight => &a * a.transpose(),
        })
    }

    /// Dense splitting matrix `M`, assembled from its defining formula.
    pub fn splitting_matrix_dense(&self) -> Result<DenseMatrix> {
        let n = self.dim();
        check_cap(n)?;
        let w = self.omega;
        Ok(match self.kind {
            SplittingKind::Richardson | SplittingKind::RichardsonNe => {
                DenseMatrix::identity(n, n) / w
            }
            SplittingKind::Jor | SplittingKind::CimminoNe => {
                DenseMatrix::from_fn(n, n, |i, j| if i == j { self.diag[i] / w } else { 0.0 })
            }
            SplittingKind::Ssor | SplittingKind::NeSsor => {
                let big = self.induced_dense()?;
                let lower = DenseMatrix::from_fn(n, n, |i, j| if i > j { big[(i, j)] } else { 0.0 });
                let d = DenseMatrix::from_fn(n, n, |i, j| if i == j { self.diag[i] } else { 0.0 });
                let d_inv =
                    DenseMatrix::from_fn(n, n, |i, j| if i == j { 1.0 / self.diag[i] } else { 0.0 });
                let left = &d + &lower * w;
                let right = &d + lower.transpose() * w;
                (left * d_inv * right) / (w * (2.0 - w))
            }
        })
    }
}

/// `ℓ` steps of a splitting, started from zero, used as a preconditioner.
#[derive(Debug, Clone)]
pub struct InnerPreconditioner {
    splitting: Splitting,
    ell: usize,
}

impl InnerPreconditioner {
    pub fn new(splitting: Splitting, ell: usize) -> Result<Self> {
        if ell == 0 {
            return Err(Error::Config("number of inner steps must be at least 1".into()));
        }
        Ok(Self { splitting, ell })
    }

    pub fn splitting(&self) -> &Splitting {
        &self.splitting
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn dim(&self) -> usize {
        self.splitting.dim()
    }

    /// `C r = Σ_{i<ℓ} Hⁱ M⁻¹ r`, computed by running the stationary
    /// iteration `ℓ` times from `z⁽⁰⁾ = 0`.
    pub fn apply_inner(&self, r: &[f64]) -> Result<Vec<f64>> {
        self.splitting.check_len(r)?;
        let mut z = vec![0.0; r.len()];
        self.apply_into(r, &mut z);
        Ok(z)
    }

    /// Same as [`apply_inner`](Self::apply_inner) into a caller buffer;
    /// lengths are the caller's responsibility.
    pub fn apply_into(&self, r: &[f64], z: &mut [f64]) {
        z.iter_mut().for_each(|v| *v = 0.0);
        let mut aux = self.splitting.sweep_aux();
        for k in 0..self.ell {
            self.splitting.step(r, z, &mut aux, k == 0);
        }
    }

    /// Runs the bare stationary iteration for `steps` steps from zero and
    /// returns every iterate norm, `‖z⁽¹⁾‖ … ‖z⁽steps⁾‖`.
    pub fn stationary_norms(&self, r: &[f64], steps: usize) -> Result<Vec<f64>> {
        self.splitting.check_len(r)?;
        let mut z = vec![0.0; r.len()];
        let mut aux = self.splitting.sweep_aux();
        let mut norms = Vec::with_capacity(steps);
        for k in 0..steps {
            self.splitting.step(r, &mut z, &mut aux, k == 0);
            norms.push(dot(&z, &z).sqrt());
        }
        Ok(norms)
    }
}

/// Dense forms of an inner preconditioner, for analysis and testing.
#[derive(Debug, Clone)]
pub struct MaterializedPreconditioner {
    /// Induced symmetric matrix `𝔸`.
    pub induced: DenseMatrix,
    /// Splitting matrix `M`.
    pub m: DenseMatrix,
    /// `M⁻¹`.
    pub m_inv: DenseMatrix,
    /// Iteration matrix `H = M⁻¹ N`.
    pub h: DenseMatrix,
    /// `C = Σ_{i<ℓ} Hⁱ M⁻¹`.
    pub c: DenseMatrix,
}

impl MaterializedPreconditioner {
    /// `N = M − 𝔸`.
    pub fn n(&self) -> DenseMatrix {
        &self.m - &self.induced
    }

    /// `M + N = 2M − 𝔸`.
    pub fn m_plus_n(&self) -> DenseMatrix {
        &self.m * 2.0 - &self.induced
    }
}

/// Builds `M`, `H` and `C` densely from the splitting formulas. This path
/// shares nothing with the sweeps in [`InnerPreconditioner::apply_inner`].
pub fn materialize_dense(p: &InnerPreconditioner) -> Result<MaterializedPreconditioner> {
    let s = p.splitting();
    let induced = s.induced_dense()?;
    let m = s.splitting_matrix_dense()?;
    let m_inv = inverse(&m)?;
    let n_mat = &m - &induced;
    let h = &m_inv * n_mat;
    let mut c = m_inv.clone();
    for _ in 1..p.ell() {
        c = &h * c + &m_inv;
    }
    Ok(MaterializedPreconditioner {
        induced,
        m,
        m_inv,
        h,
        c,
    })
}
