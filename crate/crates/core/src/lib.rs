//! Krylov solvers preconditioned by a fixed number of stationary inner
//! iterations (Richardson, JOR, SSOR and their normal-equations variants),
//! for symmetric, singular, indefinite and least-squares problems, together
//! with the dense analysis needed to pick relaxation parameters.
//!
//! ```
//! use std::sync::Arc;
//! use innerit::krylov::{pminres, SolverConfig};
//! use innerit::linalg::SparseMatrix;
//! use innerit::splittings::{InnerPreconditioner, Splitting, SplittingKind};
//!
//! let a = Arc::new(SparseMatrix::from_diagonal(&[1.0, -1.0]).unwrap());
//! let s = Splitting::direct(SplittingKind::Richardson, 1.0, a.clone()).unwrap();
//! let p = InnerPreconditioner::new(s, 1).unwrap();
//! let res = pminres(a.as_ref(), &p, &[1.0, 1.0], &[0.0, 0.0], &SolverConfig::default()).unwrap();
//! assert!(res.converged());
//! ```

pub mod analysis;
pub mod error;
pub mod gen;
pub mod krylov;
pub mod linalg;
pub mod lsq;
pub mod splittings;

pub use error::{Error, Result};
pub use linalg::{DenseMatrix, SparseMatrix};
pub use splittings::{InnerPreconditioner, Side, Splitting, SplittingKind};
