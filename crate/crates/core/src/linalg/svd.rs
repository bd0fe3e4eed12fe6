//! Singular value decomposition by one-sided (Hestenes) Jacobi.
//!
//! The rotations are the two-sided Jacobi rotations of `M*M`, applied to the
//! columns of `M` without ever forming the Gram matrix, so small singular
//! values keep their accuracy.

use serde::{Deserialize, Serialize};

use super::eigen::jacobi_rotation;
use super::matrix::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};

/// `M = left * diag(singulars) * right*` with singulars sorted decreasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvdSystem {
    pub singulars: Vec<f64>,
    pub left: ComplexMatrix,
    pub right: ComplexMatrix,
}

impl SvdSystem {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.singulars.len();
        let scaled = ComplexMatrix::from_fn(n, n, |i, j| self.left[(i, j)] * self.singulars[j]);
        &scaled * &self.right.adjoint()
    }
}

fn column_dot(w: &ComplexMatrix, p: usize, q: usize) -> C64 {
    (0..w.rows()).map(|i| w[(i, p)].conj() * w[(i, q)]).sum()
}

fn column_norm_sqr(w: &ComplexMatrix, p: usize) -> f64 {
    (0..w.rows()).map(|i| w[(i, p)].norm_sqr()).sum()
}

/// Orthonormalize `cols` in order and extend them to a full basis of C^n
/// with standard basis vectors (modified Gram-Schmidt, applied twice).
pub(crate) fn complete_orthonormal(n: usize, cols: Vec<Vec<C64>>) -> ComplexMatrix {
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(n);
    let candidates = cols
        .into_iter()
        .map(|c| (c, true))
        .chain((0..n).map(|k| {
            let mut e = vec![ZERO; n];
            e[k] = C64::new(1.0, 0.0);
            (e, false)
        }));
    for (mut v, _) in candidates {
        if basis.len() == n {
            break;
        }
        let start = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if start == 0.0 {
            continue;
        }
        for _ in 0..2 {
            for b in &basis {
                let proj: C64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= proj * bi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm <= 1e-8 * start {
            continue;
        }
        for vi in &mut v {
            *vi /= norm;
        }
        basis.push(v);
    }
    let mut out = ComplexMatrix::zeros(n, n);
    for (j, b) in basis.iter().enumerate() {
        out.set_column(j, b);
    }
    out
}

/// Singular value decomposition of a square matrix.
pub fn svd(m: &ComplexMatrix) -> Result<SvdSystem> {
    let n = m.require_square()?;
    m.require_finite()?;
    let mut w = m.clone();
    let mut v = ComplexMatrix::identity(n);
    let budget = 30 * n * n;
    let mut rotations = 0usize;
    let scale = m.norm_fro();
    let tiny = f64::EPSILON * f64::EPSILON * scale * scale;

    loop {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let gamma = column_dot(&w, p, q);
                let mag = gamma.norm();
                if mag == 0.0 {
                    continue;
                }
                let alpha = column_norm_sqr(&w, p);
                let beta = column_norm_sqr(&w, q);
                if mag <= tiny || mag <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                if rotations >= budget {
                    return Err(Error::NoConvergence {
                        routine: "svd",
                        budget,
                    });
                }
                rotations += 1;
                rotated = true;
                let (gpp, gpq, gqp, gqq, _, _) = jacobi_rotation(alpha, beta, gamma);
                for k in 0..n {
                    let wkp = w[(k, p)];
                    let wkq = w[(k, q)];
                    w[(k, p)] = wkp * gpp + wkq * gqp;
                    w[(k, q)] = wkp * gpq + wkq * gqq;
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

    let norms: Vec<f64> = (0..n).map(|j| column_norm_sqr(&w, j).sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]).then(i.cmp(&j)));
    let singulars: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let right = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);

    let top = singulars.first().copied().unwrap_or(0.0);
    let cutoff = top * f64::EPSILON * n as f64;
    let range_cols: Vec<Vec<C64>> = order
        .iter()
        .zip(&singulars)
        .take_while(|(_, &s)| s > cutoff && s > 0.0)
        .map(|(&j, &s)| w.column(j).into_iter().map(|z| z / s).collect())
        .collect();
    let left = complete_orthonormal(n, range_cols);
    Ok(SvdSystem {
        singulars,
        left,
        right,
    })
}

/// Singular values only.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    svd(m).map(|s| s.singulars)
}

/// Operator norm `lambda_1(|M|)`.
pub fn operator_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(m)?.first().copied().unwrap_or(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigen::hermitian_eigen;
    use crate::linalg::matrix::{I, ONE};

    #[test]
    fn nilpotent_shift() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let s = svd(&m).unwrap();
        assert_eq!(s.singulars, vec![1.0, 0.0]);
        assert!(s.reconstruct().max_abs_diff(&m) < 1e-15);
    }

    #[test]
    fn unitary_has_unit_singulars() {
        let r = 0.5f64.sqrt();
        let u = ComplexMatrix::from_rows(&[&[ONE * r, I * r], &[I * r, ONE * r]]);
        let s = svd(&u).unwrap();
        for x in s.singulars {
            assert!((x - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn complex_diagonal() {
        let m = ComplexMatrix::from_diag(&[C64::new(-2.0, 0.0), C64::new(0.0, 3.0)]);
        let s = svd(&m).unwrap();
        assert_eq!(s.singulars, vec![3.0, 2.0]);
        assert!(s.reconstruct().max_abs_diff(&m) < 1e-15);
    }

    #[test]
    fn agrees_with_gram_eigenvalues() {
        let m = ComplexMatrix::from_rows(&[
            &[C64::new(1.0, 0.5), C64::new(-0.3, 0.2), C64::new(0.1, 0.0)],
            &[C64::new(0.0, -1.0), C64::new(2.0, 0.0), C64::new(0.4, 0.4)],
            &[C64::new(0.7, 0.0), C64::new(0.0, 0.3), C64::new(-1.2, 0.1)],
        ]);
        let s = svd(&m).unwrap();
        let e = hermitian_eigen(&(&m.adjoint() * &m)).unwrap();
        for (x, l) in s.singulars.iter().zip(e.values) {
            assert!((x - l.sqrt()).abs() <= 1e-9 * x);
        }
        let ud = (&s.left.adjoint() * &s.left).max_abs_diff(&ComplexMatrix::identity(3));
        assert!(ud < 1e-13);
        assert!(s.reconstruct().max_abs_diff(&m) < 1e-13);
    }

    #[test]
    fn rank_deficient_left_factor_is_unitary() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0], &[0.0, 0.0, 0.0]]);
        let s = svd(&m).unwrap();
        assert!(s.singulars[1] < 1e-14);
        let ud = (&s.left.adjoint() * &s.left).max_abs_diff(&ComplexMatrix::identity(3));
        assert!(ud < 1e-13);
        assert!(s.reconstruct().max_abs_diff(&m) < 1e-13);
    }
}
