//! Sparse symmetric matrices, the ridge-regularized Laplacian and the
//! leading-eigenpair solver.

mod eigen;
mod matrix;

pub use eigen::{top_eigenpairs, top_eigenpairs_with, EigenBasis, Solver, DENSE_LIMIT, LANCZOS_TOL};
pub use matrix::{regularized_laplacian, SymMatrix};
