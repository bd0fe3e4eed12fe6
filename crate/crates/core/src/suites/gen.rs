//! Seeded random generators.
//!
//! Streams are derived by hashing `(seed, label, dim)` through splitmix64
//! into a ChaCha8 key, so every instance is reproducible on its own and
//! independent of how trials are scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::linalg::{hermitian_eigen, operator_norm, ComplexMatrix, EigenSystem, C64};
use crate::matfun::PsdMatrix;
use crate::posmap::KrausMap;

/// One step of splitmix64.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// FNV-1a hash of a label.
pub fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

/// Seed of trial `index` in a run with base seed `seed`.
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    splitmix64(splitmix64(seed) ^ splitmix64(index.wrapping_add(0x5851_f42d_4c95_7f2d)))
}

/// Seed for the generator stream of `label` at dimension `dim`.
pub fn stream_seed(seed: u64, label: &str, dim: usize) -> u64 {
    splitmix64(seed ^ splitmix64(fnv1a(label) ^ splitmix64(dim as u64)))
}

/// Eigenvalue decay of generated PSD matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Profile {
    /// Eigenvalues uniform in `[0.2, 2]`.
    WellConditioned,
    /// Eigenvalues decaying geometrically to about `1e-5`.
    NearSingular,
    /// A third of the eigenvalues (at least one) exactly zero.
    RankDeficient,
}

impl Profile {
    pub const ALL: [Profile; 3] = [
        Profile::WellConditioned,
        Profile::NearSingular,
        Profile::RankDeficient,
    ];
    pub const INVERTIBLE: [Profile; 2] = [Profile::WellConditioned, Profile::NearSingular];

    pub fn name(&self) -> &'static str {
        match self {
            Profile::WellConditioned => "well-conditioned",
            Profile::NearSingular => "near-singular",
            Profile::RankDeficient => "rank-deficient",
        }
    }
}

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.rng.random::<f64>()
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    pub fn pick<T: Copy>(&mut self, xs: &[T]) -> T {
        xs[self.index(xs.len())]
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn seed(&mut self) -> u64 {
        self.rng.random()
    }

    /// Entries i.i.d. standard complex Gaussian.
    pub fn gaussian(&mut self, rows: usize, cols: usize) -> ComplexMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        ComplexMatrix::from_fn(rows, cols, |_, _| C64::new(self.normal() * s, self.normal() * s))
    }

    /// Haar-distributed unitary from Gram-Schmidt on a Gaussian matrix.
    pub fn unitary(&mut self, n: usize) -> ComplexMatrix {
        let g = self.gaussian(n, n);
        let mut q = ComplexMatrix::zeros(n, n);
        for j in 0..n {
            let mut v = g.column(j);
            for _ in 0..2 {
                for k in 0..j {
                    let qk = q.column(k);
                    let r: C64 = qk.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                    for (x, y) in v.iter_mut().zip(&qk) {
                        *x -= r * y;
                    }
                }
            }
            let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            for x in &mut v {
                *x /= norm;
            }
            q.set_column(j, &v);
        }
        q
    }

    /// Eigenvalues for a profile, in decreasing order.
    pub fn spectrum(&mut self, n: usize, profile: Profile) -> Vec<f64> {
        let mut v: Vec<f64> = match profile {
            Profile::WellConditioned => (0..n).map(|_| self.uniform(0.2, 2.0)).collect(),
            Profile::NearSingular => (0..n)
                .map(|j| {
                    let decay = if n > 1 { -5.0 * j as f64 / (n - 1) as f64 } else { 0.0 };
                    10f64.powf(decay) * self.uniform(0.5, 2.0)
                })
                .collect(),
            Profile::RankDeficient => {
                let zeros = (n / 3).max(1).min(n);
                (0..n)
                    .map(|j| if j + zeros >= n { 0.0 } else { self.uniform(0.2, 2.0) })
                    .collect()
            }
        };
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    pub fn psd(&mut self, n: usize, profile: Profile) -> ComplexMatrix {
        let values = self.spectrum(n, profile);
        let u = self.unitary(n);
        EigenSystem { values, vectors: u }.reconstruct().hermitian_part()
    }

    pub fn hermitian(&mut self, n: usize) -> ComplexMatrix {
        let values = (0..n).map(|_| self.uniform(-1.0, 1.0)).collect();
        let u = self.unitary(n);
        EigenSystem { values, vectors: u }.reconstruct().hermitian_part()
    }

    /// `U diag(mu_j e^{i phi_j}) U*` with moduli drawn from `profile`.
    pub fn normal_matrix(&mut self, n: usize, profile: Profile) -> ComplexMatrix {
        let moduli = self.spectrum(n, profile);
        let d: Vec<C64> = moduli
            .iter()
            .map(|&m| C64::from_polar(m, self.uniform(-std::f64::consts::PI, std::f64::consts::PI)))
            .collect();
        let u = self.unitary(n);
        &(&u * &ComplexMatrix::from_diag(&d)) * &u.adjoint()
    }

    /// Gaussian matrix with operator norm in `[0.5, 1]`.
    pub fn contraction(&mut self, n: usize) -> ComplexMatrix {
        let g = self.gaussian(n, n);
        let s = self.uniform(0.5, 1.0) / operator_norm(&g).expect("finite");
        g.scale_real(s)
    }

    /// `W diag(1 + u_j) V*`, so every singular value is at least one.
    pub fn expansive(&mut self, n: usize) -> ComplexMatrix {
        let s: Vec<f64> = (0..n).map(|_| 1.0 + self.uniform(0.0, 1.0)).collect();
        let w = self.unitary(n);
        let v = self.unitary(n);
        &(&w * &ComplexMatrix::from_real_diag(&s)) * &v.adjoint()
    }

    /// `W diag(s) V*` with singular values `s` drawn from `profile`.
    pub fn with_singulars(&mut self, n: usize, profile: Profile) -> ComplexMatrix {
        let s = self.spectrum(n, profile);
        let w = self.unitary(n);
        let v = self.unitary(n);
        &(&w * &ComplexMatrix::from_real_diag(&s)) * &v.adjoint()
    }

    /// Gaussian matrix scaled by `scale / sqrt(n)`.
    pub fn general(&mut self, n: usize, scale: f64) -> ComplexMatrix {
        self.gaussian(n, n).scale_real(scale / (n as f64).sqrt())
    }

    /// PSD with every diagonal entry in `[0.25, 1]`.
    pub fn diag_bounded_psd(&mut self, n: usize) -> ComplexMatrix {
        let g = self.psd(n, Profile::WellConditioned);
        let d: Vec<f64> = (0..n)
            .map(|j| self.uniform(0.5, 1.0) / g[(j, j)].re.sqrt())
            .collect();
        ComplexMatrix::from_fn(n, n, |i, j| g[(i, j)] * (d[i] * d[j])).hermitian_part()
    }

    /// `k` Kraus operators in `M_{m,n}` with `lambda_max(sum Z*Z)` in `[0.5, 1]`.
    pub fn subunital_map(&mut self, m: usize, n: usize, k: usize) -> KrausMap {
        let zs: Vec<ComplexMatrix> = (0..k).map(|_| self.gaussian(m, n)).collect();
        let gram = zs
            .iter()
            .fold(ComplexMatrix::zeros(n, n), |acc, z| &acc + &(&z.adjoint() * z));
        let top = hermitian_eigen(&gram).expect("Hermitian").values[0];
        let c = (self.uniform(0.5, 1.0) / top).sqrt();
        KrausMap::new(m, n, zs.iter().map(|z| z.scale_real(c)).collect()).expect("valid shapes")
    }

    /// Positive tuple with entries in `[lo, hi]`.
    pub fn tuple(&mut self, n: usize, lo: f64, hi: f64) -> Vec<f64> {
        (0..n).map(|_| self.uniform(lo, hi)).collect()
    }
}

pub fn gen_psd(seed: u64, n: usize, profile: Profile) -> PsdMatrix {
    PsdMatrix::new(&Gen::new(seed).psd(n, profile)).expect("generated matrix is PSD")
}

pub fn gen_hermitian(seed: u64, n: usize) -> ComplexMatrix {
    Gen::new(seed).hermitian(n)
}

pub fn gen_normal(seed: u64, n: usize) -> ComplexMatrix {
    Gen::new(seed).normal_matrix(n, Profile::WellConditioned)
}

pub fn gen_contraction(seed: u64, n: usize) -> ComplexMatrix {
    Gen::new(seed).contraction(n)
}

pub fn gen_expansive(seed: u64, n: usize) -> ComplexMatrix {
    Gen::new(seed).expansive(n)
}

pub fn gen_subunital_map(seed: u64, m: usize, n: usize, k_terms: usize) -> KrausMap {
    Gen::new(seed).subunital_map(m, n, k_terms)
}
