//! Dense desk-scale oracles: symmetric eigendecomposition, pseudo-inverse
//! and square root.
//!
//! These routines are deliberately independent of the matrix-free code paths
//! so they can be used to check them. Every entry point refuses inputs larger
//! than [`DENSE_CAP`].

use nalgebra::{Complex, DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

/// Dense real matrix used by the oracles.
pub type DenseMatrix = DMatrix<f64>;

/// Largest dimension any dense oracle accepts.
pub const DENSE_CAP: usize = 2000;

/// Default relative rank tolerance for pseudo-inverses.
pub const DEFAULT_RANK_TOL: f64 = 1e-12;

const SYM_TOL: f64 = 1e-10;

/// Eigendecomposition of a symmetric matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct SymEig {
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, in eigenvalue order.
    pub eigenvectors: DenseMatrix,
}

impl SymEig {
    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.min().abs().max(self.max().abs())
    }

    /// `Q f(Λ) Qᵀ`.
    pub fn recompose(&self, f: impl Fn(f64) -> f64) -> DenseMatrix {
        let q = &self.eigenvectors;
        let n = q.nrows();
        let mut scaled = q.clone();
        for (j, &lam) in self.eigenvalues.iter().enumerate() {
            let fj = f(lam);
            for i in 0..n {
                scaled[(i, j)] *= fj;
            }
        }
        let out = scaled * q.transpose();
        symmetrize(&out)
    }
}

pub fn max_abs(a: &DenseMatrix) -> f64 {
    a.iter().fold(0.0, |m: f64, v| m.max(v.abs()))
}

/// `max |A_ij - A_ji|`.
pub fn max_asymmetry(a: &DenseMatrix) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..a.nrows() {
        for j in 0..i {
            worst = worst.max((a[(i, j)] - a[(j, i)]).abs());
        }
    }
    worst
}

/// `(A + Aᵀ) / 2`.
pub fn symmetrize(a: &DenseMatrix) -> DenseMatrix {
    (a + a.transpose()) * 0.5
}

pub fn check_cap(n: usize) -> Result<()> {
    if n > DENSE_CAP {
        Err(Error::SizeCap {
            size: n,
            cap: DENSE_CAP,
        })
    } else {
        Ok(())
    }
}

/// Checks squareness, size cap and symmetry to `1e-10` relative to the
/// largest entry (absolute when entries are below one).
pub fn check_symmetric(a: &DenseMatrix) -> Result<()> {
    if a.nrows() != a.ncols() {
        return Err(Error::Dimension(format!(
            "expected a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    check_cap(a.nrows())?;
    let asym = max_asymmetry(a);
    if asym > SYM_TOL * max_abs(a).max(1.0) {
        return Err(Error::NotSymmetric(asym));
    }
    Ok(())
}

/// Symmetric eigendecomposition with ascending eigenvalues.
pub fn dense_sym_eig(a: &DenseMatrix) -> Result<SymEig> {
    check_symmetric(a)?;
    let n = a.nrows();
    if n == 0 {
        return Ok(SymEig {
            eigenvalues: Vec::new(),
            eigenvectors: DenseMatrix::zeros(0, 0),
        });
    }
    let eig = SymmetricEigen::new(symmetrize(a));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let eigenvalues = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let eigenvectors = DenseMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(SymEig {
        eigenvalues,
        eigenvectors,
    })
}

/// Eigenvalues only, ascending.
pub fn sym_eigenvalues(a: &DenseMatrix) -> Result<Vec<f64>> {
    check_symmetric(a)?;
    let mut ev: Vec<f64> = symmetrize(a).symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// Moore–Penrose pseudo-inverse of a symmetric matrix. Eigenvalues with
/// `|λ| <= rank_tol * max|λ|` are treated as zero.
///
/// For symmetric input this coincides with the group inverse.
pub fn pinv_sym(a: &DenseMatrix, rank_tol: f64) -> Result<DenseMatrix> {
    if !(rank_tol > 0.0) {
        return Err(Error::Config(format!("rank_tol must be positive, got {rank_tol}")));
    }
    let eig = dense_sym_eig(a)?;
    let cut = rank_tol * eig.max_abs();
    Ok(eig.recompose(|l| if l.abs() <= cut { 0.0 } else { 1.0 / l }))
}

/// Pseudo-inverse of a rectangular matrix through `(AᵀA)⁺ Aᵀ`.
pub fn pinv_rect(a: &DenseMatrix, rank_tol: f64) -> Result<DenseMatrix> {
    let ata = a.transpose() * a;
    Ok(pinv_sym(&ata, rank_tol)? * a.transpose())
}

/// Symmetric square root of an SPD matrix.
pub fn sqrt_sym_pd(a: &DenseMatrix) -> Result<DenseMatrix> {
    let eig = dense_sym_eig(a)?;
    if eig.eigenvalues.is_empty() {
        return Ok(DenseMatrix::zeros(0, 0));
    }
    if eig.min() <= 0.0 {
        return Err(Error::NotPositiveDefinite(eig.min()));
    }
    Ok(eig.recompose(f64::sqrt))
}

/// Inverse of a square matrix through LU with partial pivoting.
pub fn inverse(a: &DenseMatrix) -> Result<DenseMatrix> {
    if a.nrows() != a.ncols() {
        return Err(Error::Dimension("inverse of a non-square matrix".into()));
    }
    check_cap(a.nrows())?;
    a.clone()
        .lu()
        .try_inverse()
        .ok_or_else(|| Error::InvalidMatrix("matrix is singular".into()))
}

/// Eigenvalues of a general square matrix (real Schur form).
pub fn general_eigenvalues(a: &DenseMatrix) -> Result<Vec<Complex<f64>>> {
    if a.nrows() != a.ncols() {
        return Err(Error::Dimension("eigenvalues of a non-square matrix".into()));
    }
    check_cap(a.nrows())?;
    Ok(a.complex_eigenvalues().iter().copied().collect())
}

/// Numerical rank from singular values above `rel_tol * σ_max`.
pub fn numerical_rank(a: &DenseMatrix, rel_tol: f64) -> usize {
    if a.is_empty() {
        return 0;
    }
    let sv = a.singular_values();
    let smax = sv.iter().fold(0.0f64, |m, &s| m.max(s));
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * smax).count()
}

/// Spectral norm (largest singular value).
pub fn norm2(a: &DenseMatrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.singular_values().iter().fold(0.0f64, |m, &s| m.max(s))
}

pub fn from_rows(rows: &[&[f64]]) -> DenseMatrix {
    let ncols = rows.first().map_or(0, |r| r.len());
    DenseMatrix::from_fn(rows.len(), ncols, |i, j| rows[i][j])
}

pub fn diag(d: &[f64]) -> DenseMatrix {
    DenseMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(d))
}
