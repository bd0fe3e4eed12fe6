//! Positive linear maps in Kraus form.
//!
//! A map `Phi: M_m -> M_n` is stored as operators `Z_i` of shape `m x n`
//! acting by `Phi(X) = sum_i Z_i* X Z_i`, so positivity holds by
//! construction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, ComplexMatrix, C64, ONE};
use crate::matfun::{direct_sum, psd_power, PsdMatrix};

/// Slack on `sum Z_i* Z_i <= I` for the sub-unital and unital flags.
pub const UNITAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "KrausRepr", into = "KrausRepr")]
pub struct KrausMap {
    in_dim: usize,
    out_dim: usize,
    kraus: Vec<ComplexMatrix>,
    sub_unital: bool,
    unital: bool,
}

#[derive(Serialize, Deserialize)]
struct KrausRepr {
    in_dim: usize,
    out_dim: usize,
    kraus: Vec<ComplexMatrix>,
}

impl From<KrausMap> for KrausRepr {
    fn from(m: KrausMap) -> Self {
        KrausRepr {
            in_dim: m.in_dim,
            out_dim: m.out_dim,
            kraus: m.kraus,
        }
    }
}

impl TryFrom<KrausRepr> for KrausMap {
    type Error = Error;

    fn try_from(r: KrausRepr) -> Result<Self> {
        KrausMap::new(r.in_dim, r.out_dim, r.kraus)
    }
}

impl KrausMap {
    pub fn new(in_dim: usize, out_dim: usize, kraus: Vec<ComplexMatrix>) -> Result<Self> {
        for z in &kraus {
            z.require_shape((in_dim, out_dim))?;
            z.require_finite()?;
        }
        let mut map = KrausMap {
            in_dim,
            out_dim,
            kraus,
            sub_unital: false,
            unital: false,
        };
        let gram = map.unit_image();
        let top = hermitian_eigen(&gram)?.values.first().copied().unwrap_or(0.0);
        map.sub_unital = top <= 1.0 + UNITAL_TOL;
        map.unital = gram.max_abs_diff(&ComplexMatrix::identity(out_dim)) <= UNITAL_TOL;
        Ok(map)
    }

    /// The congruence `X -> Z* X Z`.
    pub fn congruence(z: ComplexMatrix) -> Result<Self> {
        let (m, n) = z.shape();
        Self::new(m, n, vec![z])
    }

    pub fn identity(n: usize) -> Self {
        Self::new(n, n, vec![ComplexMatrix::identity(n)]).expect("identity is a valid map")
    }

    /// Diagonal pinching `X -> I o X`.
    pub fn pinching(n: usize) -> Self {
        let kraus = (0..n)
            .map(|i| ComplexMatrix::from_fn(n, n, |r, c| if r == i && c == i { ONE } else { C64::default() }))
            .collect();
        Self::new(n, n, kraus).expect("pinching is a valid map")
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn is_sub_unital(&self) -> bool {
        self.sub_unital
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    /// `Phi(I) = sum Z_i* Z_i`.
    pub fn unit_image(&self) -> ComplexMatrix {
        self.kraus
            .iter()
            .fold(ComplexMatrix::zeros(self.out_dim, self.out_dim), |acc, z| {
                &acc + &(&z.adjoint() * z)
            })
    }

    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        x.require_shape((self.in_dim, self.in_dim))?;
        Ok(self
            .kraus
            .iter()
            .fold(ComplexMatrix::zeros(self.out_dim, self.out_dim), |acc, z| {
                &acc + &(&(&z.adjoint() * x) * z)
            }))
    }

    /// `Phi` followed by `Psi`.
    pub fn then(&self, psi: &KrausMap) -> Result<KrausMap> {
        if psi.in_dim != self.out_dim {
            return Err(Error::DimMismatch {
                expected: (self.out_dim, self.out_dim),
                got: (psi.in_dim, psi.in_dim),
            });
        }
        let mut kraus = Vec::with_capacity(self.kraus.len() * psi.kraus.len());
        for z in &self.kraus {
            for w in &psi.kraus {
                kraus.push(z * w);
            }
        }
        KrausMap::new(self.in_dim, psi.out_dim, kraus)
    }

    /// The same map multiplied by `c >= 0`.
    pub fn scaled(&self, c: f64) -> Result<KrausMap> {
        let s = c.max(0.0).sqrt();
        KrausMap::new(
            self.in_dim,
            self.out_dim,
            self.kraus.iter().map(|z| z.scale_real(s)).collect(),
        )
    }
}

/// The Schur multiplier `X -> C o X` for PSD `C`, from the rank-one
/// factorization `C = sum c_i c_i*` with Kraus terms `diag(conj c_i)`.
pub fn schur_multiplier(c: &PsdMatrix) -> Result<KrausMap> {
    let n = c.dim();
    let eig = c.spectrum();
    let kraus = eig
        .values
        .iter()
        .enumerate()
        .filter(|(_, &l)| l > 0.0)
        .map(|(i, &l)| {
            let s = l.sqrt();
            ComplexMatrix::from_diag(
                &(0..n).map(|r| (eig.vectors[(r, i)] * s).conj()).collect::<Vec<_>>(),
            )
        })
        .collect();
    KrausMap::new(n, n, kraus)
}

/// Mean of the diagonal blocks: `M_{mn} -> M_n`, `(S_kl) -> (1/m) sum S_kk`.
pub fn block_average(m: usize, n: usize) -> KrausMap {
    let w = 1.0 / (m as f64).sqrt();
    let kraus = (0..m)
        .map(|k| {
            ComplexMatrix::from_fn(m * n, n, |r, c| {
                if r == k * n + c {
                    C64::new(w, 0.0)
                } else {
                    C64::default()
                }
            })
        })
        .collect();
    KrausMap::new(m * n, n, kraus).expect("block average is a valid map")
}

/// Mean over all blocks: `M_{mn} -> M_n`, `(S_kl) -> (1/m) sum_{k,l} S_kl`.
pub fn block_full_average(m: usize, n: usize) -> KrausMap {
    let w = 1.0 / (m as f64).sqrt();
    let z = ComplexMatrix::from_fn(m * n, n, |r, c| {
        if r % n == c {
            C64::new(w, 0.0)
        } else {
            C64::default()
        }
    });
    KrausMap::new(m * n, n, vec![z]).expect("block full average is a valid map")
}

/// Block dilation of a sub-unital map acting on `B^p`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dilation {
    /// `A + 0 + ... + 0`.
    pub a: PsdMatrix,
    /// `B + B + ... + B`.
    pub b: PsdMatrix,
    /// The Kraus operators stacked in the first block column.
    pub z: ComplexMatrix,
    /// Size of each diagonal block.
    pub block: usize,
}

impl Dilation {
    /// Leading `block x block` corner.
    pub fn compress(&self, m: &ComplexMatrix) -> ComplexMatrix {
        m.block(0, 0, self.block, self.block)
    }
}

/// For `Phi: M_m -> M_n` with Kraus operators `Z_1..Z_r`, `A in M_n` and
/// `B in M_m`, build matrices in `M_{rd}` (`d = max(m, n)`) such that the
/// leading block of `A~ Z~* B~^p Z~ A~` is `A Phi(B^p) A` for every `p`.
pub fn dilate(map: &KrausMap, a: &PsdMatrix, b: &PsdMatrix) -> Result<Dilation> {
    if !map.is_sub_unital() {
        let top = hermitian_eigen(&map.unit_image())?.values[0];
        return Err(Error::NotSubUnital { excess: top });
    }
    if a.dim() != map.out_dim() {
        return Err(Error::DimMismatch {
            expected: (map.out_dim(), map.out_dim()),
            got: (a.dim(), a.dim()),
        });
    }
    if b.dim() != map.in_dim() {
        return Err(Error::DimMismatch {
            expected: (map.in_dim(), map.in_dim()),
            got: (b.dim(), b.dim()),
        });
    }
    let d = map.in_dim().max(map.out_dim());
    let r = map.kraus().len().max(1);
    let mut a_blocks = vec![a.matrix().pad_to(d)];
    a_blocks.resize(r, ComplexMatrix::zeros(d, d));
    let b_blocks = vec![b.matrix().pad_to(d); r];
    let mut z = ComplexMatrix::zeros(r * d, r * d);
    for (i, zi) in map.kraus().iter().enumerate() {
        z.set_block(i * d, 0, &zi.pad_to(d));
    }
    Ok(Dilation {
        a: PsdMatrix::new(&direct_sum(&a_blocks))?,
        b: PsdMatrix::new(&direct_sum(&b_blocks))?,
        z,
        block: d,
    })
}

/// One rank-one spectral projection `E_i = x_i x_i*` of a PSD `A` together
/// with its eigenvalue and its image `Phi(E_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralComponent {
    pub value: f64,
    pub vector: Vec<C64>,
    pub image: ComplexMatrix,
}

/// The components of `A` under `map`, one per eigenvector.
pub fn spectral_components(map: &KrausMap, a: &PsdMatrix) -> Result<Vec<SpectralComponent>> {
    let eig = a.spectrum();
    (0..a.dim())
        .map(|i| {
            let x = eig.vectors.column(i);
            let col = ComplexMatrix::column_vector(&x);
            let e = &col * &col.adjoint();
            Ok(SpectralComponent {
                value: eig.values[i],
                vector: x,
                image: map.apply(&e)?,
            })
        })
        .collect()
}

/// Kraus form of a positive map known only on the commutative algebra
/// spanned by the `E_i`: `Z_ij = x_i R_ij` with `R_ij` the j-th row of
/// `Phi(E_i)^{1/2}`.
pub fn kraus_on_commutative(components: &[SpectralComponent]) -> Result<KrausMap> {
    let first = components
        .first()
        .ok_or_else(|| Error::BadDomain("no spectral components".into()))?;
    let m = first.vector.len();
    let n = first.image.require_square()?;
    let mut kraus = Vec::new();
    for comp in components {
        if comp.vector.len() != m {
            return Err(Error::DimMismatch {
                expected: (m, 1),
                got: (comp.vector.len(), 1),
            });
        }
        comp.image.require_shape((n, n))?;
        let root = psd_power(&PsdMatrix::new(&comp.image)?, 0.5);
        let root = root.matrix();
        for j in 0..n {
            kraus.push(ComplexMatrix::from_fn(m, n, |r, c| comp.vector[r] * root[(j, c)]));
        }
    }
    KrausMap::new(m, n, kraus)
}

/// `sum_i lambda_i^t Phi(E_i)`, the value of `Phi(A^t)` on the algebra.
pub fn image_of_power(components: &[SpectralComponent], t: f64) -> ComplexMatrix {
    let n = components.first().map_or(0, |c| c.image.rows());
    components
        .iter()
        .filter(|c| c.value > 0.0)
        .fold(ComplexMatrix::zeros(n, n), |acc, c| {
            &acc + &c.image.scale_real(c.value.powf(t))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matfun::schur_product;

    fn herm(rows: &[&[f64]]) -> ComplexMatrix {
        ComplexMatrix::from_real_rows(rows)
    }

    #[test]
    fn apply_examples() {
        let x = ComplexMatrix::from_rows(&[
            &[C64::new(2.0, 0.0), C64::new(1.0, 1.0)],
            &[C64::new(1.0, -1.0), C64::new(3.0, 0.0)],
        ]);
        assert_eq!(KrausMap::identity(2).apply(&x).unwrap(), x);
        let p = KrausMap::pinching(2).apply(&x).unwrap();
        assert_eq!(p, ComplexMatrix::from_real_diag(&[2.0, 3.0]));
        let c = KrausMap::congruence(herm(&[&[0.5, 0.1], &[0.0, 0.3]])).unwrap();
        assert!(c.is_sub_unital() && !c.is_unital());
        assert!(KrausMap::identity(3).is_unital());
        assert!(matches!(
            KrausMap::identity(2).apply(&ComplexMatrix::identity(3)),
            Err(Error::DimMismatch { .. })
        ));
    }

    #[test]
    fn schur_multiplier_examples() {
        let x = ComplexMatrix::from_rows(&[
            &[C64::new(2.0, 0.0), C64::new(1.0, 2.0)],
            &[C64::new(1.0, -2.0), C64::new(5.0, 0.0)],
        ]);
        let ones = PsdMatrix::new(&herm(&[&[1.0, 1.0], &[1.0, 1.0]])).unwrap();
        let m = schur_multiplier(&ones).unwrap();
        assert!(m.is_unital());
        assert!(m.apply(&x).unwrap().max_abs_diff(&x) < 1e-14);
        let id = schur_multiplier(&PsdMatrix::identity(2)).unwrap();
        assert!(id.apply(&x).unwrap().max_abs_diff(&KrausMap::pinching(2).apply(&x).unwrap()) < 1e-15);
        let rho = 0.6;
        let c = PsdMatrix::new(&herm(&[&[1.0, rho], &[rho, 1.0]])).unwrap();
        let m = schur_multiplier(&c).unwrap();
        assert!(m.is_sub_unital());
        let got = m.apply(&x).unwrap();
        assert!(got.max_abs_diff(&schur_product(c.matrix(), &x).unwrap()) < 1e-14);
        assert!((got[(0, 1)] - x[(0, 1)] * rho).norm() < 1e-14);
    }

    #[test]
    fn block_maps() {
        let x1 = herm(&[&[1.0, 2.0], &[2.0, 5.0]]);
        let x2 = herm(&[&[3.0, 0.0], &[0.0, 1.0]]);
        let avg = block_average(2, 2);
        assert!(avg.is_unital());
        let got = avg.apply(&direct_sum(&[x1.clone(), x2.clone()])).unwrap();
        assert!(got.max_abs_diff(&(&x1 + &x2).scale_real(0.5)) < 1e-15);
        let one = block_average(1, 2);
        assert!(one.apply(&x1).unwrap().max_abs_diff(&x1) < 1e-15);

        let (b, c, d, e) = (x1.clone(), herm(&[&[0.0, 1.0], &[1.0, 0.0]]), herm(&[&[0.0, 1.0], &[1.0, 0.0]]), x2.clone());
        let mut big = ComplexMatrix::zeros(4, 4);
        big.set_block(0, 0, &b);
        big.set_block(0, 2, &c);
        big.set_block(2, 0, &d);
        big.set_block(2, 2, &e);
        let full = block_full_average(2, 2);
        assert!(full.is_unital());
        let expect = (&(&(&b + &c) + &d) + &e).scale_real(0.5);
        assert!(full.apply(&big).unwrap().max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn dilation_reproduces_compression() {
        let a = PsdMatrix::new(&herm(&[&[2.0, 0.5], &[0.5, 1.0]])).unwrap();
        let b = PsdMatrix::from_real_diag(&[3.0, 0.5]).unwrap();
        let map = KrausMap::pinching(2);
        let dil = dilate(&map, &a, &b).unwrap();
        assert!(crate::linalg::operator_norm(&dil.z).unwrap() <= 1.0 + 1e-10);
        for p in [0.5, 1.0, 2.0] {
            let bp = psd_power(&dil.b, p);
            let lhs = &(&(&(dil.a.matrix() * &dil.z.adjoint()) * bp.matrix()) * &dil.z) * dil.a.matrix();
            let direct = &(a.matrix() * &map.apply(psd_power(&b, p).matrix()).unwrap()) * a.matrix();
            assert!(dil.compress(&lhs).max_abs_diff(&direct) < 1e-12);
        }
        let single = KrausMap::congruence(herm(&[&[0.5, 0.0], &[0.2, 0.4]])).unwrap();
        let dil = dilate(&single, &a, &b).unwrap();
        assert_eq!(dil.z, single.kraus()[0]);
        let big = KrausMap::congruence(ComplexMatrix::identity(2).scale_real(2.0)).unwrap();
        assert!(matches!(dilate(&big, &a, &b), Err(Error::NotSubUnital { .. })));
    }

    #[test]
    fn commutative_kraus() {
        let a = PsdMatrix::from_real_diag(&[3.0, 1.0, 0.5]).unwrap();
        let rho = PsdMatrix::new(&herm(&[&[0.6, 0.2], &[0.2, 0.4]])).unwrap();
        // Phi(X) = Tr(X) rho as a 3 -> 2 map.
        let comps: Vec<SpectralComponent> = (0..3)
            .map(|i| {
                let mut v = vec![C64::default(); 3];
                v[i] = ONE;
                SpectralComponent {
                    value: a.values()[i],
                    vector: v,
                    image: rho.matrix().clone(),
                }
            })
            .collect();
        let k = kraus_on_commutative(&comps).unwrap();
        for t in [0.5, 1.0, 2.0, 3.0] {
            let at = psd_power(&a, t);
            let expect = rho.matrix().scale_real(at.matrix().trace().re);
            assert!(k.apply(at.matrix()).unwrap().max_abs_diff(&expect) < 1e-12);
            assert!(image_of_power(&comps, t).max_abs_diff(&expect) < 1e-12);
        }
        let lam = PsdMatrix::identity(2).matrix().scale_real(2.0);
        let lam = PsdMatrix::new(&lam).unwrap();
        let comps = spectral_components(&KrausMap::pinching(2), &lam).unwrap();
        let k = kraus_on_commutative(&comps).unwrap();
        let at = psd_power(&lam, 1.5);
        assert!(k.apply(at.matrix()).unwrap().max_abs_diff(&ComplexMatrix::identity(2).scale_real(2f64.powf(1.5))) < 1e-12);
    }
}
