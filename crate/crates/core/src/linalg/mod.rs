//! Dense complex linear-algebra kernel.
//!
//! Everything here is a pure function on immutable values.

mod eigen;
mod expm;
mod lu;
mod matrix;
mod schur;
mod svd;

pub use eigen::{hermitian_eigen, EigenSystem, HERMITIAN_TOL};
pub use expm::{expm, expm_hermitian, expm_pade};
pub use lu::{determinant, inverse, solve};
pub use matrix::{ComplexMatrix, C64, I, ONE, ZERO};
pub use schur::{eigenvalues, spectral_radius};
pub use svd::{operator_norm, singular_values, svd, SvdSystem};

pub(crate) use svd::complete_orthonormal;
