use super::matrix::{ComplexMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};

/// In-place LU with partial pivoting. Returns the packed factors, the row
/// permutation and its sign, or `None` when a pivot is exactly zero.
fn factor(m: &ComplexMatrix) -> (ComplexMatrix, Vec<usize>, f64, bool) {
    let n = m.dim();
    let mut lu = m.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1.0;
    let mut singular = false;
    for col in 0..n {
        let (pivot, best) = (col..n)
            .map(|r| (r, lu[(r, col)].norm()))
            .fold((col, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best == 0.0 {
            singular = true;
            continue;
        }
        if pivot != col {
            for j in 0..n {
                let tmp = lu[(col, j)];
                lu[(col, j)] = lu[(pivot, j)];
                lu[(pivot, j)] = tmp;
            }
            perm.swap(col, pivot);
            sign = -sign;
        }
        let d = lu[(col, col)];
        for r in (col + 1)..n {
            let f = lu[(r, col)] / d;
            lu[(r, col)] = f;
            if f != ZERO {
                for j in (col + 1)..n {
                    let u = lu[(col, j)];
                    lu[(r, j)] -= f * u;
                }
            }
        }
    }
    (lu, perm, sign, singular)
}

/// Determinant via partial-pivot LU.
pub fn determinant(m: &ComplexMatrix) -> Result<C64> {
    let n = m.require_square()?;
    if n == 0 {
        return Ok(ONE);
    }
    let (lu, _, sign, singular) = factor(m);
    if singular {
        return Ok(ZERO);
    }
    Ok((0..n).map(|i| lu[(i, i)]).product::<C64>() * sign)
}

/// Solve `A X = B`.
pub fn solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.require_square()?;
    if b.rows() != n {
        return Err(Error::DimMismatch {
            expected: (n, b.cols()),
            got: b.shape(),
        });
    }
    let (lu, perm, _, singular) = factor(a);
    if singular {
        return Err(Error::Singular);
    }
    let mut x = ComplexMatrix::zeros(n, b.cols());
    for c in 0..b.cols() {
        let mut y: Vec<C64> = (0..n).map(|i| b[(perm[i], c)]).collect();
        for i in 0..n {
            for k in 0..i {
                let l = lu[(i, k)];
                let yk = y[k];
                y[i] -= l * yk;
            }
        }
        for i in (0..n).rev() {
            for k in (i + 1)..n {
                let u = lu[(i, k)];
                let yk = y[k];
                y[i] -= u * yk;
            }
            y[i] /= lu[(i, i)];
        }
        for i in 0..n {
            x[(i, c)] = y[i];
        }
    }
    Ok(x)
}

pub fn inverse(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    solve(a, &ComplexMatrix::identity(a.require_square()?))
}
