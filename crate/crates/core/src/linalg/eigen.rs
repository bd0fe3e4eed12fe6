//! Cyclic Jacobi eigendecomposition of Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot entry with a diagonal
//! unitary and then applies a real Jacobi rotation, so the 2x2 unitary is
//! `G = diag(1, e^{-i phi}) * [[c, s], [-s, c]]`.

use serde::{Deserialize, Serialize};

use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

/// Relative asymmetry allowed on input: `|H - H*|_max <= 1e-12 max(1, |H|_max)`.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Eigenvalues sorted decreasing with unitary column eigenvectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// `V diag(f(lambda)) V*`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.vectors;
        let fv: Vec<f64> = self.values.iter().map(|&x| f(x)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..n {
                if fv[k] != 0.0 {
                    acc += v[(i, k)] * v[(j, k)].conj() * fv[k];
                }
            }
            acc
        })
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|x| x)
    }
}

/// Rotation budget: at most `30 n^2` Jacobi rotations (about sixty sweeps).
fn rotation_budget(n: usize) -> usize {
    30 * n * n
}

/// Complex 2x2 Jacobi rotation zeroing the off-diagonal of
/// `[[app, apq], [conj(apq), aqq]]`.
///
/// Returns `(g_pp, g_pq, g_qp, g_qq, new_app, new_aqq)`.
#[inline]
pub(crate) fn jacobi_rotation(app: f64, aqq: f64, apq: C64) -> (C64, C64, C64, C64, f64, f64) {
    let mag = apq.norm();
    let phase = apq / mag;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let eip = phase.conj();
    (
        C64::new(c, 0.0),
        C64::new(s, 0.0),
        eip * (-s),
        eip * c,
        app - t * mag,
        aqq + t * mag,
    )
}

/// Eigendecomposition of a Hermitian matrix.
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<EigenSystem> {
    let n = h.require_square()?;
    h.require_finite()?;
    let defect = h.hermitian_defect();
    if defect > HERMITIAN_TOL * h.norm_max().max(1.0) {
        return Err(Error::NotHermitian { asymmetry: defect });
    }
    let mut a = h.hermitian_part();
    for i in 0..n {
        a[(i, i)].im = 0.0;
    }
    let mut v = ComplexMatrix::identity(n);
    let fro = a.norm_fro();
    let tiny = f64::EPSILON * f64::EPSILON * fro;
    let budget = rotation_budget(n);
    let mut rotations = 0usize;

    loop {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                if mag <= tiny || mag <= f64::EPSILON * (app.abs() * aqq.abs()).sqrt() {
                    a[(p, q)] = C64::new(0.0, 0.0);
                    a[(q, p)] = C64::new(0.0, 0.0);
                    continue;
                }
                if rotations >= budget {
                    return Err(Error::NoConvergence {
                        routine: "hermitian_eigen",
                        budget,
                    });
                }
                rotations += 1;
                rotated = true;
                let (gpp, gpq, gqp, gqq, new_pp, new_qq) = jacobi_rotation(app, aqq, apq);
                // A <- A G on columns p, q.
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * gpp + akq * gqp;
                    a[(k, q)] = akp * gpq + akq * gqq;
                }
                // A <- G* A on rows p, q.
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
                    a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)] = C64::new(new_pp, 0.0);
                a[(q, q)] = C64::new(new_qq, 0.0);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * gpp + vkq * gqp;
                    v[(k, q)] = vkp * gpq + vkq * gqq;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]).then(i.cmp(&j)));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(EigenSystem { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::{I, ONE};

    fn unitary_defect(v: &ComplexMatrix) -> f64 {
        let n = v.rows();
        (&v.adjoint() * v).max_abs_diff(&ComplexMatrix::identity(n))
    }

    #[test]
    fn diagonal_input() {
        let h = ComplexMatrix::from_real_diag(&[3.0, 1.0, 2.0]);
        let e = hermitian_eigen(&h).unwrap();
        assert_eq!(e.values, vec![3.0, 2.0, 1.0]);
        for j in 0..3 {
            let nonzero = (0..3).filter(|&i| e.vectors[(i, j)].norm() > 0.5).count();
            assert_eq!(nonzero, 1);
        }
    }

    #[test]
    fn swap_matrix() {
        let h = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let e = hermitian_eigen(&h).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-15);
        assert!((e.values[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn golden_ratio_spectrum() {
        let h = ComplexMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 1.0]]);
        let e = hermitian_eigen(&h).unwrap();
        let s5 = 5f64.sqrt();
        assert!((e.values[0] - (3.0 + s5) / 2.0).abs() < 1e-14);
        assert!((e.values[1] - (3.0 - s5) / 2.0).abs() < 1e-14);
        assert!((e.values[0] - 2.6180).abs() < 1e-4);
    }

    #[test]
    fn complex_hermitian_reconstructs() {
        let h = ComplexMatrix::from_rows(&[
            &[C64::new(2.0, 0.0), I, C64::new(0.5, -0.25)],
            &[-I, C64::new(-1.0, 0.0), ONE],
            &[C64::new(0.5, 0.25), ONE, C64::new(0.25, 0.0)],
        ]);
        let e = hermitian_eigen(&h).unwrap();
        assert!(unitary_defect(&e.vectors) < 1e-13);
        assert!(e.reconstruct().max_abs_diff(&h) < 1e-13);
        assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(hermitian_eigen(&m), Err(Error::NotHermitian { .. })));
        let r = ComplexMatrix::zeros(2, 3);
        assert!(matches!(hermitian_eigen(&r), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn degenerate_and_zero() {
        let e = hermitian_eigen(&ComplexMatrix::zeros(4, 4)).unwrap();
        assert_eq!(e.values, vec![0.0; 4]);
        let e = hermitian_eigen(&ComplexMatrix::identity(3).scale_real(2.0)).unwrap();
        assert_eq!(e.values, vec![2.0; 3]);
    }
}
