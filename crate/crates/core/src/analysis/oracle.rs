use crate::error::{Error, Result};
use crate::linalg::dense::{check_cap, check_symmetric, symmetrize};
use crate::linalg::{dense_mv, dense_sym_eig, norm2, pinv_sym, sub, DenseMatrix, DEFAULT_RANK_TOL};

/// Relative tolerance for `b ∈ R(A)`.
pub const RANGE_TOL: f64 = 1e-10;

/// The solution preconditioned Krylov methods reach on a consistent
/// symmetric system, `P^{-1/2} Â⁺ b̂ + P^{-1/2}(I − ÂÂ⁺) x̂₀` with
/// `P^{-1/2} = C^{1/2}`, `Â = C^{1/2} A C^{1/2}`, `b̂ = C^{1/2} b` and
/// `x̂₀ = C^{-1/2} x₀`.
pub fn solution_form_oracle(a: &DenseMatrix, c: &DenseMatrix, b: &[f64], x0: &[f64]) -> Result<Vec<f64>> {
    let n = a.nrows();
    if !a.is_square() || c.shape() != (n, n) || b.len() != n || x0.len() != n {
        return Err(Error::Dimension("oracle inputs must share one dimension".into()));
    }
    check_cap(n)?;
    check_symmetric(a)?;

    let a_pinv = pinv_sym(a, DEFAULT_RANK_TOL)?;
    let proj_b = dense_mv(a, &dense_mv(&a_pinv, b));
    let bn = norm2(b);
    let defect = norm2(&sub(b, &proj_b));
    if defect > RANGE_TOL * bn {
        return Err(Error::NotInRange(if bn > 0.0 { defect / bn } else { defect }));
    }

    let ce = dense_sym_eig(c)?;
    if ce.eigenvalues.is_empty() || ce.min() <= 0.0 {
        return Err(Error::NotPositiveDefinite(ce.min()));
    }
    let half = ce.recompose(f64::sqrt);
    let half_inv = ce.recompose(|l| 1.0 / l.sqrt());
    let hat = symmetrize(&(&half * a * &half));
    let hat_pinv = pinv_sym(&hat, DEFAULT_RANK_TOL)?;

    let b_hat = dense_mv(&half, b);
    let x0_hat = dense_mv(&half_inv, x0);
    let proj = DenseMatrix::identity(n, n) - &hat * &hat_pinv;
    let first = dense_mv(&half, &dense_mv(&hat_pinv, &b_hat));
    let second = dense_mv(&half, &dense_mv(&proj, &x0_hat));
    Ok(first.iter().zip(&second).map(|(u, v)| u + v).collect())
}
