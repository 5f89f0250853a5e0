//! Dense complex linear algebra: Jacobi eigensolver, spectral exponentials
//! and unitary diagonalization.

mod eig;
mod matrix;

pub use eig::{hermitian_eig, unitary_eig, unitary_from_hermitian, wrap_phase, EigDecomposition, UnitaryEig};
pub use matrix::{pauli, ComplexMatrix};

/// Default absolute max-norm tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Jacobi sweep cap.
pub const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NonHermitian { residual: f64 },
    #[error("matrix is not unitary (residual {residual:.3e})")]
    NonUnitary { residual: f64 },
    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
}
