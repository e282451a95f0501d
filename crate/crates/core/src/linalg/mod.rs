//! Linear algebra primitives: CSR storage, Matrix Market I/O and the dense
//! oracles everything else is tested against.

pub mod dense;
pub mod mm;
pub mod sparse;

pub use dense::{
    dense_sym_eig, pinv_rect, pinv_sym, sqrt_sym_pd, DenseMatrix, SymEig, DEFAULT_RANK_TOL,
    DENSE_CAP,
};
pub use mm::{mm_read, mm_write, mm_write_vector, read_vector, MatrixMarketHeader};
pub use sparse::SparseMatrix;

/// Inner product, accumulated left to right.
#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(0.0, |acc, (x, y)| acc + x * y)
}

#[inline]
pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// `y += alpha * x`
#[inline]
pub fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// `a - b`
pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(alpha: f64, x: &mut [f64]) {
    x.iter_mut().for_each(|v| *v *= alpha);
}

/// Dense matrix-vector product for oracle code.
pub fn dense_mv(a: &DenseMatrix, x: &[f64]) -> Vec<f64> {
    (a * nalgebra::DVector::from_column_slice(x))
        .iter()
        .copied()
        .collect()
}
