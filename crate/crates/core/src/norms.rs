//! Symmetric (unitarily invariant) norms.
//!
//! Every kind is a symmetric gauge of the singular values, which always come
//! from the SVD. Ky Fan norms are extremal for the family, so Ky Fan
//! dominance certifies a norm inequality for every symmetric norm at once.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{singular_values, ComplexMatrix};
use crate::matfun::PsdMatrix;
use crate::serde_ext;
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum SymmetricNorm {
    Operator,
    Trace,
    Schatten(f64),
    KyFan(usize),
    NormalizedKyFan(usize),
}

impl fmt::Display for SymmetricNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymmetricNorm::Operator => write!(f, "operator"),
            SymmetricNorm::Trace => write!(f, "trace"),
            SymmetricNorm::Schatten(p) => write!(f, "schatten:{p:?}"),
            SymmetricNorm::KyFan(k) => write!(f, "kyfan:{k}"),
            SymmetricNorm::NormalizedKyFan(k) => write!(f, "nkyfan:{k}"),
        }
    }
}

impl FromStr for SymmetricNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown norm `{s}`"));
        let (kind, arg) = match s.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (s, None),
        };
        let order = |a: Option<&str>| -> Result<usize> {
            let k: usize = a.ok_or_else(bad)?.parse().map_err(|_| bad())?;
            if k == 0 {
                return Err(bad());
            }
            Ok(k)
        };
        match kind {
            "operator" | "inf" if arg.is_none() => Ok(SymmetricNorm::Operator),
            "trace" if arg.is_none() => Ok(SymmetricNorm::Trace),
            "schatten" => {
                let p: f64 = arg.ok_or_else(bad)?.parse().map_err(|_| bad())?;
                if !(p >= 1.0) || !p.is_finite() {
                    return Err(Error::BadDomain(format!("Schatten exponent {p} must be >= 1")));
                }
                Ok(SymmetricNorm::Schatten(p))
            }
            "kyfan" => Ok(SymmetricNorm::KyFan(order(arg)?)),
            "nkyfan" => Ok(SymmetricNorm::NormalizedKyFan(order(arg)?)),
            _ => Err(bad()),
        }
    }
}

impl TryFrom<String> for SymmetricNorm {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SymmetricNorm> for String {
    fn from(n: SymmetricNorm) -> String {
        n.to_string()
    }
}

/// Singular values of a possibly rectangular matrix, zero-padded to
/// `max(rows, cols)` entries.
pub fn singulars(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if m.is_square() {
        singular_values(m)
    } else {
        singular_values(&m.pad_to(m.rows().max(m.cols())))
    }
}

fn log_sum_exp(xs: impl Iterator<Item = f64>) -> f64 {
    let xs: Vec<f64> = xs.collect();
    let top = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return top;
    }
    top + xs.iter().map(|x| (x - top).exp()).sum::<f64>().ln()
}

impl SymmetricNorm {
    /// Every kind this crate knows at dimension `n`.
    pub fn family(n: usize) -> Vec<SymmetricNorm> {
        let mut out = vec![
            SymmetricNorm::Operator,
            SymmetricNorm::Trace,
            SymmetricNorm::Schatten(1.5),
            SymmetricNorm::Schatten(2.0),
            SymmetricNorm::Schatten(4.0),
        ];
        out.extend((1..=n).map(SymmetricNorm::KyFan));
        out.extend((1..=n).map(SymmetricNorm::NormalizedKyFan));
        out
    }

    fn check_order(&self, n: usize) -> Result<()> {
        match *self {
            SymmetricNorm::KyFan(k) | SymmetricNorm::NormalizedKyFan(k) if k == 0 || k > n => {
                Err(Error::BadOrder { k, n })
            }
            _ => Ok(()),
        }
    }

    pub fn evaluate(&self, m: &ComplexMatrix) -> Result<f64> {
        self.evaluate_singulars(&singulars(m)?)
    }

    /// The gauge applied to decreasing singular values.
    pub fn evaluate_singulars(&self, s: &[f64]) -> Result<f64> {
        self.check_order(s.len())?;
        Ok(match *self {
            SymmetricNorm::Operator => s.first().copied().unwrap_or(0.0),
            SymmetricNorm::Trace => s.iter().sum(),
            SymmetricNorm::Schatten(p) => {
                let top = s.first().copied().unwrap_or(0.0);
                if top == 0.0 {
                    0.0
                } else {
                    top * s.iter().map(|x| (x / top).powf(p)).sum::<f64>().powf(1.0 / p)
                }
            }
            SymmetricNorm::KyFan(k) => s[..k].iter().sum(),
            SymmetricNorm::NormalizedKyFan(k) => s[..k].iter().sum::<f64>() / k as f64,
        })
    }

    /// `log || diag(s)^e ||` computed in log space, so that huge or tiny
    /// exponents do not overflow.
    pub fn log_evaluate_powered(&self, s: &[f64], e: f64) -> Result<f64> {
        self.check_order(s.len())?;
        let logs = s.iter().map(|&x| if x > 0.0 { e * x.ln() } else { f64::NEG_INFINITY });
        Ok(match *self {
            SymmetricNorm::Operator => logs.fold(f64::NEG_INFINITY, f64::max),
            SymmetricNorm::Trace => log_sum_exp(logs),
            SymmetricNorm::Schatten(p) => log_sum_exp(logs.map(|l| p * l)) / p,
            SymmetricNorm::KyFan(k) => log_sum_exp(logs.take(k)),
            SymmetricNorm::NormalizedKyFan(k) => log_sum_exp(logs.take(k)) - (k as f64).ln(),
        })
    }
}

/// Per-k result of a Ky Fan (weak additive majorization) comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominanceReport {
    pub verdict: bool,
    /// `sum_{j<=k} lambda_j(Y) - sum_{j<=k} lambda_j(X)`.
    #[serde(with = "serde_ext::float_vec")]
    pub margins: Vec<f64>,
}

/// `X <_w Y`: every Ky Fan partial sum of `X` is at most that of `Y`.
pub fn kyfan_dominance(x: &PsdMatrix, y: &PsdMatrix, tol: &Tolerance) -> Result<DominanceReport> {
    if x.dim() != y.dim() {
        return Err(Error::DimMismatch {
            expected: (x.dim(), x.dim()),
            got: (y.dim(), y.dim()),
        });
    }
    let (mut sx, mut sy) = (0.0, 0.0);
    let mut verdict = true;
    let margins = x
        .values()
        .iter()
        .zip(y.values())
        .map(|(a, b)| {
            sx += a;
            sy += b;
            verdict &= tol.at_most(sx, sy);
            sy - sx
        })
        .collect();
    Ok(DominanceReport { verdict, margins })
}

/// Outcome of `|| |X*Y| || <= || |X*X| ||^{1/2} || |Y*Y| ||^{1/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CauchySchwarz {
    pub lhs: f64,
    pub rhs: f64,
    pub verdict: bool,
}

pub fn cauchy_schwarz_check(
    norm: SymmetricNorm,
    x: &ComplexMatrix,
    y: &ComplexMatrix,
    tol: &Tolerance,
) -> Result<CauchySchwarz> {
    y.require_shape(x.shape())?;
    let xa = x.adjoint();
    let lhs = norm.evaluate(&(&xa * y))?;
    let rhs = (norm.evaluate(&(&xa * x))? * norm.evaluate(&(&y.adjoint() * y))?).sqrt();
    Ok(CauchySchwarz {
        lhs,
        rhs,
        verdict: tol.at_most(lhs, rhs),
    })
}
