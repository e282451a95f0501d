#![allow(dead_code)]

use std::sync::Arc;

use innerit::linalg::dense::{self, sym_eigenvalues};
use innerit::linalg::{dense_mv, DenseMatrix, SparseMatrix};
use innerit::splittings::{InnerPreconditioner, Side, Splitting, SplittingKind};
use innerit::Result;

pub fn sparse(a: &DenseMatrix) -> Arc<SparseMatrix> {
    Arc::new(SparseMatrix::from_dense(a).unwrap())
}

pub fn direct(a: &DenseMatrix, kind: SplittingKind, omega: f64, ell: usize) -> Result<InnerPreconditioner> {
    InnerPreconditioner::new(Splitting::direct(kind, omega, sparse(a))?, ell)
}

pub fn normal(a: &Arc<SparseMatrix>, kind: SplittingKind, omega: f64, side: Side, ell: usize) -> Result<InnerPreconditioner> {
    InnerPreconditioner::new(Splitting::new(kind, omega, a.clone(), side)?, ell)
}

/// `min |λ| / max |λ|` of a symmetric matrix.
pub fn relative_gap(a: &DenseMatrix) -> f64 {
    let ev = sym_eigenvalues(&dense::symmetrize(a)).unwrap();
    let top = ev.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let low = ev.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
    if top == 0.0 {
        0.0
    } else {
        low / top
    }
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn diff_norm(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub fn mv(a: &DenseMatrix, x: &[f64]) -> Vec<f64> {
    dense_mv(a, x)
}

/// Dense `C` assembled column by column from the matrix-free sweeps.
pub fn c_from_sweeps(p: &InnerPreconditioner) -> DenseMatrix {
    let n = p.dim();
    let mut c = DenseMatrix::zeros(n, n);
    let mut e = vec![0.0; n];
    for j in 0..n {
        e[j] = 1.0;
        let col = p.apply_inner(&e).unwrap();
        e[j] = 0.0;
        for i in 0..n {
            c[(i, j)] = col[i];
        }
    }
    c
}
