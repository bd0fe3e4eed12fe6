//! Matrix functions and constructions.
//!
//! Fractional powers of PSD matrices follow the generalized-inverse
//! convention: eigenvalues on the null space map to zero for every exponent,
//! so `A^{-t} = (A + F)^{-t} E` with `F` the null-space projection and `E`
//! the range projection, and `A^0 = E`.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::linalg::{
    complete_orthonormal, determinant, hermitian_eigen, operator_norm, svd, ComplexMatrix,
    EigenSystem, C64, I, ZERO,
};
use crate::tolerance::Tolerance;

/// Eigenvalues at most this fraction of `lambda_1` are treated as exact zeros.
pub const NULL_SPACE_FLOOR: f64 = 1e-14;

/// Positive semidefinite matrix with its cached spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct PsdMatrix {
    matrix: ComplexMatrix,
    spectrum: EigenSystem,
}

fn clamp_spectrum(mut eig: EigenSystem) -> EigenSystem {
    let top = eig.values.first().copied().unwrap_or(0.0).max(0.0);
    for v in &mut eig.values {
        if *v <= NULL_SPACE_FLOOR * top {
            *v = 0.0;
        }
    }
    eig
}

impl PsdMatrix {
    /// Validate a Hermitian matrix as PSD, clamping roundoff-level negative
    /// eigenvalues (down to `-1e-10 max(1, lambda_1)`) to zero.
    pub fn new(m: &ComplexMatrix) -> Result<Self> {
        let eig = hermitian_eigen(m)?;
        let top = eig.values.first().copied().unwrap_or(0.0);
        let bottom = eig.values.last().copied().unwrap_or(0.0);
        if bottom < -Tolerance::DEFAULT.psd_clamp * top.max(1.0) {
            return Err(Error::NotPsd {
                min_eigenvalue: bottom,
            });
        }
        Ok(PsdMatrix {
            matrix: m.hermitian_part(),
            spectrum: clamp_spectrum(eig),
        })
    }

    /// Nearest PSD matrix in the spectral sense: Hermitian part with negative
    /// eigenvalues set to zero. Never fails on finite square input.
    pub fn project(m: &ComplexMatrix) -> Result<Self> {
        let h = m.hermitian_part();
        let eig = clamp_spectrum(hermitian_eigen(&h)?);
        Ok(Self::from_spectrum(eig))
    }

    /// From eigenvalues and eigenvectors; negative values are clamped.
    pub fn from_spectrum(mut eig: EigenSystem) -> Self {
        for v in &mut eig.values {
            *v = v.max(0.0);
        }
        let mut order: Vec<usize> = (0..eig.values.len()).collect();
        order.sort_by(|&i, &j| eig.values[j].total_cmp(&eig.values[i]).then(i.cmp(&j)));
        let n = eig.values.len();
        let eig = EigenSystem {
            values: order.iter().map(|&i| eig.values[i]).collect(),
            vectors: ComplexMatrix::from_fn(n, n, |i, j| eig.vectors[(i, order[j])]),
        };
        let eig = clamp_spectrum(eig);
        PsdMatrix {
            matrix: eig.reconstruct(),
            spectrum: eig,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_spectrum(EigenSystem {
            values: vec![1.0; n],
            vectors: ComplexMatrix::identity(n),
        })
    }

    pub fn from_real_diag(d: &[f64]) -> Result<Self> {
        Self::new(&ComplexMatrix::from_real_diag(d))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn spectrum(&self) -> &EigenSystem {
        &self.spectrum
    }

    /// Eigenvalues in decreasing order.
    pub fn values(&self) -> &[f64] {
        &self.spectrum.values
    }

    /// Eigenvalues in increasing order.
    pub fn increasing_values(&self) -> Vec<f64> {
        self.spectrum.values.iter().rev().copied().collect()
    }

    pub fn dim(&self) -> usize {
        self.spectrum.values.len()
    }

    pub fn lambda_max(&self) -> f64 {
        self.values().first().copied().unwrap_or(0.0)
    }

    /// `A^down = diag(lambda_1, ..., lambda_n)`.
    pub fn down(&self) -> ComplexMatrix {
        ComplexMatrix::from_real_diag(self.values())
    }

    pub fn rank(&self) -> usize {
        self.values().iter().filter(|&&v| v > 0.0).count()
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.dim()
    }

    pub fn range_projection(&self) -> ComplexMatrix {
        psd_power(self, 0.0).matrix
    }

    /// `V diag(f(lambda)) V*` over the range; null eigenvalues map to zero.
    pub fn apply_on_range(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        self.spectrum
            .reconstruct_with(|x| if x > 0.0 { f(x) } else { 0.0 })
    }
}

/// `A^t` under the generalized-inverse convention.
pub fn psd_power(a: &PsdMatrix, t: f64) -> PsdMatrix {
    if t == 1.0 {
        return a.clone();
    }
    let values: Vec<f64> = a
        .values()
        .iter()
        .map(|&x| if x > 0.0 { x.powf(t) } else { 0.0 })
        .collect();
    PsdMatrix::from_spectrum(EigenSystem {
        values,
        vectors: a.spectrum.vectors.clone(),
    })
}

/// `log A` for positive definite `A`.
pub fn psd_log(a: &PsdMatrix) -> Result<ComplexMatrix> {
    if !a.is_invertible() {
        return Err(Error::BadDomain("logarithm of a singular PSD matrix".into()));
    }
    Ok(a.spectrum.reconstruct_with(f64::ln))
}

/// `f(H)` for Hermitian `H`.
pub fn hermitian_function(h: &ComplexMatrix, f: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
    Ok(hermitian_eigen(h)?.reconstruct_with(f))
}

/// `|M|^e = (M*M)^{e/2}` from the SVD of `M`.
pub fn abs_power(m: &ComplexMatrix, e: f64) -> Result<PsdMatrix> {
    let s = svd(m)?;
    let top = s.singulars.first().copied().unwrap_or(0.0);
    let values = s
        .singulars
        .iter()
        .map(|&x| {
            if x > NULL_SPACE_FLOOR * top && x > 0.0 {
                x.powf(e)
            } else {
                0.0
            }
        })
        .collect();
    Ok(PsdMatrix::from_spectrum(EigenSystem {
        values,
        vectors: s.right,
    }))
}

/// `|M| = (M*M)^{1/2}`.
pub fn abs_val(m: &ComplexMatrix) -> Result<PsdMatrix> {
    abs_power(m, 1.0)
}

/// Polar factors `N = unitary * abs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polar {
    pub unitary: ComplexMatrix,
    pub abs: PsdMatrix,
}

/// Normal matrix with its polar decomposition `N = U|N|`, `U|N| = |N|U`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalMatrix {
    matrix: ComplexMatrix,
    polar: Polar,
}

/// `max |N*N - NN*|` relative to `max(1, |N|_inf^2)`.
pub fn normality_defect(m: &ComplexMatrix) -> Result<f64> {
    m.require_square()?;
    let comm = &(&m.adjoint() * m) - &(m * &m.adjoint());
    let op = operator_norm(m)?;
    Ok(comm.norm_max() / op.powi(2).max(1.0))
}

impl NormalMatrix {
    pub fn new(m: &ComplexMatrix) -> Result<Self> {
        let polar = polar(m, true)?;
        Ok(NormalMatrix {
            matrix: m.clone(),
            polar,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn abs(&self) -> &PsdMatrix {
        &self.polar.abs
    }

    pub fn phase(&self) -> &ComplexMatrix {
        &self.polar.unitary
    }
}

/// Polar decomposition via the SVD `M = W S V*`: `U = W V*`, `|M| = V S V*`.
/// The left factor is completed on the null space by Gram-Schmidt against
/// the range columns, so `U` is always unitary.
pub fn polar(m: &ComplexMatrix, require_normal: bool) -> Result<Polar> {
    m.require_square()?;
    if require_normal {
        let defect = normality_defect(m)?;
        if defect > 1e-10 {
            return Err(Error::NotNormal { commutator: defect });
        }
    }
    let s = svd(m)?;
    let unitary = &s.left * &s.right.adjoint();
    let abs = PsdMatrix::from_spectrum(EigenSystem {
        values: s.singulars.clone(),
        vectors: s.right.clone(),
    });
    Ok(Polar { unitary, abs })
}

/// Cartesian decomposition `T = X + iY` with `X = (T+T*)/2`, `Y = (T-T*)/2i`.
pub fn cartesian(t: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let adj = t.adjoint();
    let x = (t + &adj).scale_real(0.5);
    let y = (t - &adj).scale(C64::new(0.0, -0.5));
    (x, y)
}

/// Entrywise (Schur) product.
pub fn schur_product(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<ComplexMatrix> {
    y.require_shape(x.shape())?;
    Ok(ComplexMatrix::from_fn(x.rows(), x.cols(), |i, j| x[(i, j)] * y[(i, j)]))
}

/// Block-diagonal matrix `X_1 + ... + X_m` (direct sum).
pub fn direct_sum(blocks: &[ComplexMatrix]) -> ComplexMatrix {
    let rows = blocks.iter().map(|b| b.rows()).sum();
    let cols = blocks.iter().map(|b| b.cols()).sum();
    let mut out = ComplexMatrix::zeros(rows, cols);
    let (mut r, mut c) = (0, 0);
    for b in blocks {
        out.set_block(r, c, b);
        r += b.rows();
        c += b.cols();
    }
    out
}

/// Kronecker product `X (x) Y`.
pub fn kron(x: &ComplexMatrix, y: &ComplexMatrix) -> ComplexMatrix {
    let (yr, yc) = y.shape();
    ComplexMatrix::from_fn(x.rows() * yr, x.cols() * yc, |i, j| {
        x[(i / yr, j / yc)] * y[(i % yr, j % yc)]
    })
}

/// Index sets of size `k` from `0..n` in lexicographic order.
pub fn index_sets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..n).combinations(k).collect()
}

/// k-th compound (antisymmetric power) of `M`: the matrix of all k x k
/// minors, rows and columns indexed by increasing index sets in
/// lexicographic order.
pub fn compound(m: &ComplexMatrix, k: usize) -> Result<ComplexMatrix> {
    let n = m.require_square()?;
    if k == 0 || k > n {
        return Err(Error::BadOrder { k, n });
    }
    let sets = index_sets(n, k);
    let size = sets.len();
    let mut out = ComplexMatrix::zeros(size, size);
    let mut sub = ComplexMatrix::zeros(k, k);
    for (a, rows) in sets.iter().enumerate() {
        for (b, cols) in sets.iter().enumerate() {
            for (i, &r) in rows.iter().enumerate() {
                for (j, &c) in cols.iter().enumerate() {
                    sub[(i, j)] = m[(r, c)];
                }
            }
            out[(a, b)] = determinant(&sub)?;
        }
    }
    Ok(out)
}

/// `i * M`.
pub fn times_i(m: &ComplexMatrix) -> ComplexMatrix {
    m.scale(I)
}

/// Isometry check `V*V = I` to `tol`.
pub fn is_isometry(v: &ComplexMatrix, tol: f64) -> bool {
    (&v.adjoint() * v).max_abs_diff(&ComplexMatrix::identity(v.cols())) <= tol
}

/// Orthonormal basis completion with the columns of `m` kept first.
pub fn complete_basis(m: &ComplexMatrix) -> ComplexMatrix {
    let cols = (0..m.cols()).map(|j| m.column(j)).collect();
    complete_orthonormal(m.rows(), cols)
}

/// Diagonal part `I o X`.
pub fn diagonal_part(x: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(x.rows(), x.cols(), |i, j| if i == j { x[(i, j)] } else { ZERO })
}
