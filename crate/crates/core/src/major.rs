//! Weak log-majorization, log-majorization and the super relation.
//!
//! Margins are per-k log ratios of eigenvalue products, positive when the
//! inequality holds with room to spare. Zero eigenvalues are counted
//! rather than logged: an eigenvalue at or below `zero_floor * s` (with `s`
//! the larger top eigenvalue of the pair) is an exact zero, and a product
//! containing one is zero.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::operator_norm;
use crate::matfun::{compound, PsdMatrix};
use crate::serde_ext;
use crate::tolerance::{MarginMode, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// `prod_{j<=k} lambda_j(X) <= prod_{j<=k} lambda_j(Y)` for all k.
    WeakLog,
    /// Weak log-majorization with equality at `k = n`.
    Log,
    /// `prod_{j<=k} nu_j(X) >= prod_{j<=k} nu_j(Y)` with `nu` increasing.
    SuperWeakLog,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MajorizationReport {
    pub relation: Relation,
    /// Log-scale margin for each k, `+inf`/`-inf` under the zero policy.
    #[serde(with = "serde_ext::float_vec")]
    pub k_margins: Vec<f64>,
    /// Difference of products normalized by `s^k`.
    pub abs_margins: Vec<f64>,
    pub verdict: bool,
    pub tol: f64,
    pub mode: MarginMode,
    /// Left spectrum in the order compared (decreasing, or increasing for
    /// the super relation).
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
}

impl MajorizationReport {
    /// The smallest per-k margin under the report's mode.
    pub fn worst_margin(&self) -> f64 {
        let tol = Tolerance::DEFAULT.with_mode(self.mode);
        self.k_margins
            .iter()
            .zip(&self.abs_margins)
            .map(|(&l, &a)| tol.effective_margin(l, a))
            .fold(f64::INFINITY, f64::min)
    }

    /// First k (1-based) whose margin fails.
    pub fn first_violation(&self) -> Option<usize> {
        let tol = Tolerance {
            log_margin: self.tol,
            mode: self.mode,
            ..Tolerance::DEFAULT
        };
        self.k_margins
            .iter()
            .zip(&self.abs_margins)
            .position(|(&l, &a)| !tol.margin_ok(l, a))
            .map(|k| k + 1)
    }

    /// Margin at `k = n`, the log-ratio of determinants.
    pub fn det_margin(&self) -> f64 {
        self.k_margins.last().copied().unwrap_or(0.0)
    }
}

/// Per-k margins certifying `prod small <= prod big` on prefixes.
fn prefix_margins(small: &[f64], big: &[f64], tol: &Tolerance) -> (Vec<f64>, Vec<f64>) {
    let scale = small
        .iter()
        .chain(big)
        .copied()
        .fold(0.0f64, f64::max);
    let floor = tol.zero_floor * scale;
    let (mut ls, mut lb) = (0.0, 0.0);
    let (mut zs, mut zb) = (false, false);
    let mut logs = Vec::with_capacity(small.len());
    let mut abs = Vec::with_capacity(small.len());
    for (&s, &b) in small.iter().zip(big) {
        if s <= floor {
            zs = true;
        } else {
            ls += (s / scale).ln();
        }
        if b <= floor {
            zb = true;
        } else {
            lb += (b / scale).ln();
        }
        let log = match (zs, zb) {
            (false, false) => lb - ls,
            (true, false) => f64::INFINITY,
            (false, true) => f64::NEG_INFINITY,
            (true, true) => 0.0,
        };
        let ps = if zs { 0.0 } else { ls.exp() };
        let pb = if zb { 0.0 } else { lb.exp() };
        logs.push(log);
        abs.push(pb - ps);
    }
    (logs, abs)
}

fn decreasing(v: &[f64]) -> Vec<f64> {
    let mut v: Vec<f64> = v.iter().map(|x| x.max(0.0)).collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Compare two nonnegative spectra (in any order) under `relation`.
pub fn majorize_spectra(
    relation: Relation,
    x: &[f64],
    y: &[f64],
    tol: &Tolerance,
) -> Result<MajorizationReport> {
    if x.len() != y.len() {
        return Err(Error::DimMismatch {
            expected: (x.len(), x.len()),
            got: (y.len(), y.len()),
        });
    }
    let (lhs, rhs) = match relation {
        Relation::WeakLog | Relation::Log => (decreasing(x), decreasing(y)),
        Relation::SuperWeakLog => {
            let (mut a, mut b) = (decreasing(x), decreasing(y));
            a.reverse();
            b.reverse();
            (a, b)
        }
    };
    let (k_margins, abs_margins) = match relation {
        Relation::SuperWeakLog => prefix_margins(&rhs, &lhs, tol),
        _ => prefix_margins(&lhs, &rhs, tol),
    };
    let mut verdict = k_margins
        .iter()
        .zip(&abs_margins)
        .all(|(&l, &a)| tol.margin_ok(l, a));
    if relation == Relation::Log {
        if let (Some(&l), Some(&a)) = (k_margins.last(), abs_margins.last()) {
            verdict &= tol.equality_ok(l, a);
        }
    }
    Ok(MajorizationReport {
        relation,
        k_margins,
        abs_margins,
        verdict,
        tol: tol.log_margin,
        mode: tol.mode,
        lhs,
        rhs,
    })
}

pub fn weak_log_majorize(x: &PsdMatrix, y: &PsdMatrix, tol: &Tolerance) -> Result<MajorizationReport> {
    majorize_spectra(Relation::WeakLog, x.values(), y.values(), tol)
}

pub fn log_majorize(x: &PsdMatrix, y: &PsdMatrix, tol: &Tolerance) -> Result<MajorizationReport> {
    majorize_spectra(Relation::Log, x.values(), y.values(), tol)
}

pub fn super_weak_log_majorize(
    x: &PsdMatrix,
    y: &PsdMatrix,
    tol: &Tolerance,
) -> Result<MajorizationReport> {
    majorize_spectra(Relation::SuperWeakLog, x.values(), y.values(), tol)
}

/// Eigenvalues of a PSD matrix recovered from compound operator norms,
/// `lambda_k = ||C_k(A)|| / ||C_{k-1}(A)||`.
pub fn spectrum_via_compounds(a: &PsdMatrix) -> Result<Vec<f64>> {
    let n = a.dim();
    let mut prev = 1.0;
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let p = operator_norm(&compound(a.matrix(), k)?)?;
        out.push(if prev > 0.0 { p / prev } else { 0.0 });
        prev = p;
    }
    Ok(out)
}

/// The same relation as [`majorize_spectra`], from compound-matrix norms
/// instead of the eigensolver.
pub fn majorize_via_compounds(
    relation: Relation,
    x: &PsdMatrix,
    y: &PsdMatrix,
    tol: &Tolerance,
) -> Result<MajorizationReport> {
    majorize_spectra(relation, &spectrum_via_compounds(x)?, &spectrum_via_compounds(y)?, tol)
}
