//! A numerical laboratory for log-majorization, symmetric norms and the
//! Araki-Lieb-Thirring family of matrix inequalities.
//!
//! The central object is the two-variable functional
//! `(p, t) -> || |A^{t/p} Z B^{t/p}|^{alpha p} ||`, which is jointly
//! log-convex. Around it sit the supporting kernels (Jacobi eigen/SVD,
//! exponentials, PSD powers, compound matrices, symmetric norms, Kraus maps),
//! a registry of seeded randomized checks for each inequality that follows
//! from the functional, and a hill-climbing search for tightness and
//! counterexamples.

pub mod error;
pub mod functional;
pub mod linalg;
pub mod major;
pub mod matfun;
pub mod norms;
pub mod posmap;
pub mod report;
pub mod search;
pub mod serde_ext;
pub mod suites;
pub mod tolerance;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, C64};
pub use tolerance::Tolerance;
