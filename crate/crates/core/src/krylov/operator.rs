use crate::error::{Error, Result};
use crate::linalg::{dense_mv, dot, DenseMatrix, SparseMatrix};
use crate::splittings::{InnerPreconditioner, Side};

/// A square operator, symmetric by contract.
pub trait LinearOperator {
    fn dim(&self) -> usize;

    /// `y = Op x`; both slices have length [`dim`](Self::dim).
    fn apply(&self, x: &[f64], y: &mut [f64]);

    fn apply_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dim()];
        self.apply(x, &mut y);
        y
    }
}

impl LinearOperator for SparseMatrix {
    fn dim(&self) -> usize {
        debug_assert!(self.is_square());
        self.nrows()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.spmv_into(x, y);
    }
}

impl LinearOperator for DenseMatrix {
    fn dim(&self) -> usize {
        self.nrows()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        y.copy_from_slice(&dense_mv(self, x));
    }
}

/// `AᵀA` or `AAᵀ` applied through two sparse products.
#[derive(Debug, Clone, Copy)]
pub struct NormalOperator<'a> {
    a: &'a SparseMatrix,
    side: Side,
}

impl<'a> NormalOperator<'a> {
    /// `AᵀA` (n x n).
    pub fn left(a: &'a SparseMatrix) -> Self {
        Self { a, side: Side::NormalLeft }
    }

    /// `AAᵀ` (m x m).
    pub fn right(a: &'a SparseMatrix) -> Self {
        Self { a, side: Side::NormalRight }
    }
}

impl LinearOperator for NormalOperator<'_> {
    fn dim(&self) -> usize {
        match self.side {
            Side::NormalRight => self.a.nrows(),
            _ => self.a.ncols(),
        }
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        match self.side {
            Side::NormalRight => {
                let t = vec![0.0; self.a.ncols()];
                let mut t = t;
                self.a.spmv_t_into(x, &mut t);
                self.a.spmv_into(&t, y);
            }
            _ => {
                let mut t = vec![0.0; self.a.nrows()];
                self.a.spmv_into(x, &mut t);
                self.a.spmv_t_into(&t, y);
            }
        }
    }
}

/// Application of a symmetric definite preconditioner `C ≈ 𝔸⁻¹`.
pub trait Preconditioner {
    fn dim(&self) -> usize;

    /// `z = C r`.
    fn apply(&self, r: &[f64], z: &mut [f64]);
}

impl Preconditioner for InnerPreconditioner {
    fn dim(&self) -> usize {
        InnerPreconditioner::dim(self)
    }

    fn apply(&self, r: &[f64], z: &mut [f64]) {
        self.apply_into(r, z);
    }
}

/// `C = I`.
#[derive(Debug, Clone, Copy)]
pub struct IdentityPreconditioner(pub usize);

impl Preconditioner for IdentityPreconditioner {
    fn dim(&self) -> usize {
        self.0
    }

    fn apply(&self, r: &[f64], z: &mut [f64]) {
        z.copy_from_slice(r);
    }
}

/// An explicit dense `C`.
#[derive(Debug, Clone)]
pub struct DensePreconditioner(pub DenseMatrix);

impl Preconditioner for DensePreconditioner {
    fn dim(&self) -> usize {
        self.0.nrows()
    }

    fn apply(&self, r: &[f64], z: &mut [f64]) {
        z.copy_from_slice(&dense_mv(&self.0, r));
    }
}

/// Samples `⟨Op x, y⟩ − ⟨x, Op y⟩` on the given pairs and returns the worst
/// relative defect.
pub fn symmetry_defect<O: LinearOperator + ?Sized>(op: &O, pairs: &[(Vec<f64>, Vec<f64>)]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (x, y) in pairs {
        if x.len() != op.dim() || y.len() != op.dim() {
            return Err(Error::Dimension("symmetry probe length".into()));
        }
        let lhs = dot(&op.apply_vec(x), y);
        let rhs = dot(x, &op.apply_vec(y));
        let scale = lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE);
        worst = worst.max((lhs - rhs).abs() / scale);
    }
    Ok(worst)
}
