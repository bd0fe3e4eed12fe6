//! Matrix exponential.
//!
//! Hermitian inputs go through the eigendecomposition. Everything else uses
//! scaling and squaring with the degree-13 diagonal Padé approximant
//! (Higham 2005): scale so that `|A/2^s|_1 <= 5.37`, evaluate
//! `r13 = q13^{-1} p13`, then square `s` times.

use super::eigen::{hermitian_eigen, HERMITIAN_TOL};
use super::lu::solve;
use super::matrix::ComplexMatrix;
use crate::error::Result;

const THETA_13: f64 = 5.371_920_351_148_152;

const PADE_13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

/// `e^H`, dispatching on whether `H` is Hermitian.
pub fn expm(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    h.require_square()?;
    h.require_finite()?;
    if h.is_hermitian(HERMITIAN_TOL) {
        expm_hermitian(h)
    } else {
        expm_pade(h)
    }
}

/// `V diag(e^{lambda}) V*`.
pub fn expm_hermitian(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(h)?;
    Ok(eig.reconstruct_with(f64::exp))
}

fn lincomb(terms: &[(f64, &ComplexMatrix)]) -> ComplexMatrix {
    let (r, c) = terms[0].1.shape();
    let mut out = ComplexMatrix::zeros(r, c);
    for &(coef, m) in terms {
        if coef != 0.0 {
            out = &out + &m.scale_real(coef);
        }
    }
    out
}

/// Scaling and squaring with Padé(13); valid for any square matrix.
pub fn expm_pade(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.require_square()?;
    a.require_finite()?;
    let norm = a.norm_one();
    let s = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil() as i32
    } else {
        0
    };
    let a = a.scale_real(0.5f64.powi(s));
    let b = &PADE_13;
    let id = ComplexMatrix::identity(n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let u_inner = &(&a6 * &lincomb(&[(b[13], &a6), (b[11], &a4), (b[9], &a2)]))
        + &lincomb(&[(b[7], &a6), (b[5], &a4), (b[3], &a2), (b[1], &id)]);
    let u = &a * &u_inner;
    let v = &(&a6 * &lincomb(&[(b[12], &a6), (b[10], &a4), (b[8], &a2)]))
        + &lincomb(&[(b[6], &a6), (b[4], &a4), (b[2], &a2), (b[0], &id)]);
    let mut r = solve(&(&v - &u), &(&v + &u))?;
    for _ in 0..s {
        r = &r * &r;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::C64;

    #[test]
    fn zero_gives_identity() {
        let e = expm(&ComplexMatrix::zeros(3, 3)).unwrap();
        assert!(e.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);
    }

    #[test]
    fn diagonal() {
        let e = expm(&ComplexMatrix::from_real_diag(&[1.0, -1.0])).unwrap();
        let one = std::f64::consts::E;
        assert!((e[(0, 0)].re - one).abs() < 1e-14);
        assert!((e[(1, 1)].re - 1.0 / one).abs() < 1e-15);
    }

    #[test]
    fn swap_matrix_closed_form() {
        let x = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let expect = ComplexMatrix::from_real_rows(&[
            &[1f64.cosh(), 1f64.sinh()],
            &[1f64.sinh(), 1f64.cosh()],
        ]);
        assert!(expm(&x).unwrap().max_abs_diff(&expect) < 1e-14);
        assert!(expm_pade(&x).unwrap().max_abs_diff(&expect) < 1e-14);
    }

    #[test]
    fn nilpotent_and_rotation() {
        let n = ComplexMatrix::from_real_rows(&[&[0.0, 3.0], &[0.0, 0.0]]);
        let e = expm(&n).unwrap();
        assert!(e.max_abs_diff(&ComplexMatrix::from_real_rows(&[&[1.0, 3.0], &[0.0, 1.0]])) < 1e-14);
        // e^{i theta sigma_y}-style rotation with a large angle forces squaring.
        let t = 40.0;
        let r = ComplexMatrix::from_real_rows(&[&[0.0, -t], &[t, 0.0]]);
        let e = expm(&r).unwrap();
        let expect = ComplexMatrix::from_real_rows(&[&[t.cos(), -t.sin()], &[t.sin(), t.cos()]]);
        assert!(e.max_abs_diff(&expect) < 1e-11);
        let skew = ComplexMatrix::from_diag(&[C64::new(0.0, t)]);
        assert!((expm(&skew).unwrap()[(0, 0)] - C64::new(0.0, t).exp()).norm() < 1e-12);
    }
}
