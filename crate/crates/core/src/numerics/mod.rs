//! Dense complex linear algebra kernel.
//!
//! Everything here is sized for the virtual-array problem: covariance
//! matrices up to a few thousand entries per side, eigenvalue problems of
//! dimension K ≤ 16 for the rotation matrices. All operations are pure
//! functions of their inputs; matrices are immutable after construction.

mod general_eig;
mod hermitian;
mod matrix;

pub use general_eig::{general_eigenvalues, MAX_GENERAL_EIG_DIM};
pub use hermitian::{hermitian_eig, solve_general, solve_hermitian, HermitianEig};
pub use matrix::{kron, kron_vec, ComplexMatrix};

/// Relative tolerance for accepting a matrix as Hermitian.
pub(crate) const HERMITIAN_REL_TOL: f64 = 1e-8;
