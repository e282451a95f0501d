//! Seeded random test problems with prescribed spectra and ranks.

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::DenseMatrix;

pub type ProblemRng = ChaCha8Rng;

pub fn rng(seed: u64) -> ProblemRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_vector(n: usize, rng: &mut impl Rng) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

pub fn gaussian_matrix(m: usize, n: usize, rng: &mut impl Rng) -> DenseMatrix {
    DenseMatrix::from_fn(m, n, |_, _| rng.sample(StandardNormal))
}

/// `m x k` matrix with orthonormal columns (`k <= m`).
pub fn orthonormal_columns(m: usize, k: usize, rng: &mut impl Rng) -> DenseMatrix {
    assert!(k <= m);
    if k == 0 {
        return DenseMatrix::zeros(m, 0);
    }
    let q = gaussian_matrix(m, k, rng).qr().q();
    q.columns(0, k).into_owned()
}

/// `Q diag(eigs) Qᵀ` with a random orthogonal `Q`.
pub fn symmetric_with_spectrum(eigs: &[f64], rng: &mut impl Rng) -> DenseMatrix {
    let n = eigs.len();
    let q = orthonormal_columns(n, n, rng);
    let d = DenseMatrix::from_diagonal(&DVector::from_column_slice(eigs));
    let a = &q * d * q.transpose();
    (&a + a.transpose()) * 0.5
}

/// Symmetric positive semidefinite `n x n` matrix of the given rank, with
/// nonzero eigenvalues uniform in `[lo, hi]`.
pub fn spsd(n: usize, rank: usize, lo: f64, hi: f64, rng: &mut impl Rng) -> DenseMatrix {
    let mut eigs: Vec<f64> = (0..rank).map(|_| rng.random_range(lo..=hi)).collect();
    eigs.resize(n, 0.0);
    symmetric_with_spectrum(&eigs, rng)
}

/// `U diag(s) Vᵀ` of the given rank, singular values uniform in `[lo, hi]`.
pub fn rank_deficient(
    m: usize,
    n: usize,
    rank: usize,
    lo: f64,
    hi: f64,
    rng: &mut impl Rng,
) -> DenseMatrix {
    assert!(rank <= m.min(n));
    let u = orthonormal_columns(m, rank, rng);
    let v = orthonormal_columns(n, rank, rng);
    let s: Vec<f64> = (0..rank).map(|_| rng.random_range(lo..=hi)).collect();
    let s = DenseMatrix::from_diagonal(&DVector::from_column_slice(&s));
    u * s * v.transpose()
}

/// Symmetric matrix with a dominant-ish diagonal whose entries have
/// magnitude in `[0.5, 1.5]`; `signs` picks positive-only or mixed signs.
/// Off-diagonal entries are Gaussian scaled by `coupling / sqrt(n)`.
pub fn symmetric_random(n: usize, coupling: f64, mixed_signs: bool, rng: &mut impl Rng) -> DenseMatrix {
    let mut a = DenseMatrix::zeros(n, n);
    let scale = coupling / (n as f64).sqrt();
    for i in 0..n {
        let mag: f64 = rng.random_range(0.5..=1.5);
        let sign = if mixed_signs && rng.random_bool(0.5) { -1.0 } else { 1.0 };
        a[(i, i)] = sign * mag;
        for j in 0..i {
            let v: f64 = rng.sample::<f64, _>(StandardNormal) * scale;
            a[(i, j)] = v;
            a[(j, i)] = v;
        }
    }
    a
}
