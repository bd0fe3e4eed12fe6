//! The two-variable functional `F(p, t) = || |A^{t/p} Z B^{t/p}|^{alpha p} ||`
//! and its sections and variants.
//!
//! Everything is evaluated in log space from singular values, so large
//! exponents neither overflow nor underflow. Negative `t` follows the
//! generalized-inverse convention of [`crate::matfun::psd_power`].

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{operator_norm, ComplexMatrix};
use crate::matfun::{compound, PsdMatrix};
use crate::norms::{singulars, SymmetricNorm};
use crate::serde_ext;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Variant {
    /// `F(p, t)` on `(0, inf) x R`.
    TwoVar,
    /// `p -> F(p, 1)`.
    SectionT1,
    /// `t -> F(1, t) = || |A^t Z B^t|^alpha ||`.
    SectionP1,
    /// `(p, t) -> || |A^{t/p} Z B^{t/p}|^alpha ||^p`; at `t = 1` this is
    /// `p -> || |A^{1/p} Z B^{1/p}|^alpha ||^p`.
    PowerP,
    /// `|| (Z* A^{t/p} Z)^{alpha p} ||`; `B` is unused.
    Congruence,
    /// `|| |A^{t/p} Z B^{t/p}|^c ||` with a fixed exponent `c`. Not
    /// log-convex in general; used as a negative control for the probes.
    FixedExponent(f64),
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::TwoVar => write!(f, "two-var"),
            Variant::SectionT1 => write!(f, "section-t1"),
            Variant::SectionP1 => write!(f, "section-p1"),
            Variant::PowerP => write!(f, "power-p"),
            Variant::Congruence => write!(f, "congruence"),
            Variant::FixedExponent(c) => write!(f, "fixed:{c:?}"),
        }
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "two-var" => Variant::TwoVar,
            "section-t1" => Variant::SectionT1,
            "section-p1" => Variant::SectionP1,
            "power-p" => Variant::PowerP,
            "congruence" => Variant::Congruence,
            _ => match s.strip_prefix("fixed:").map(str::parse::<f64>) {
                Some(Ok(c)) if c.is_finite() && c > 0.0 => Variant::FixedExponent(c),
                _ => return Err(Error::Parse(format!("unknown functional variant `{s}`"))),
            },
        })
    }
}

impl TryFrom<String> for Variant {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Variant> for String {
    fn from(v: Variant) -> String {
        v.to_string()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FunctionalSpec {
    pub a: PsdMatrix,
    pub b: PsdMatrix,
    /// `dim A x dim B`; rectangular shapes are zero-padded implicitly.
    pub z: ComplexMatrix,
    pub alpha: f64,
    pub norm: SymmetricNorm,
    pub variant: Variant,
}

impl FunctionalSpec {
    pub fn new(
        a: PsdMatrix,
        b: PsdMatrix,
        z: ComplexMatrix,
        alpha: f64,
        norm: SymmetricNorm,
        variant: Variant,
    ) -> Result<Self> {
        z.require_shape((a.dim(), b.dim()))?;
        z.require_finite()?;
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::BadDomain(format!("alpha = {alpha} must be positive")));
        }
        Ok(FunctionalSpec {
            a,
            b,
            z,
            alpha,
            norm,
            variant,
        })
    }

    /// The same data under another variant.
    pub fn with_variant(&self, variant: Variant) -> Self {
        FunctionalSpec {
            variant,
            ..self.clone()
        }
    }

    /// Singular values of `A^s Z B^s` under the generalized-inverse
    /// convention, taken from `D_A^s (U_A* Z U_B) D_B^s` restricted to the
    /// ranges. Null directions contribute exact zeros and the graded entries
    /// are formed without cancellation.
    fn sandwich_singulars(&self, s: f64) -> Result<Vec<f64>> {
        let (ea, eb) = (self.a.spectrum(), self.b.spectrum());
        let w = &(&ea.vectors.adjoint() * &self.z) * &eb.vectors;
        let (ra, rb) = (self.a.rank(), self.b.rank());
        let da: Vec<f64> = ea.values[..ra].iter().map(|x| x.powf(s)).collect();
        let db: Vec<f64> = eb.values[..rb].iter().map(|x| x.powf(s)).collect();
        let m = ComplexMatrix::from_fn(ra, rb, |i, j| w[(i, j)] * (da[i] * db[j]));
        let mut sv = if ra == 0 || rb == 0 { Vec::new() } else { singulars(&m)? };
        sv.resize(self.a.dim().max(self.b.dim()), 0.0);
        Ok(sv)
    }

    /// `log || |A^s Z B^s|^e ||`.
    fn log_abs_power(&self, s: f64, e: f64) -> Result<f64> {
        self.norm.log_evaluate_powered(&self.sandwich_singulars(s)?, e)
    }

    pub fn log_evaluate(&self, p: f64, t: f64) -> Result<f64> {
        if !t.is_finite() {
            return Err(Error::BadDomain(format!("t = {t} must be finite")));
        }
        let need_p = !matches!(self.variant, Variant::SectionP1);
        if need_p && (!(p > 0.0) || !p.is_finite()) {
            return Err(Error::BadDomain(format!("p = {p} must be positive")));
        }
        match self.variant {
            Variant::TwoVar => self.log_abs_power(t / p, self.alpha * p),
            Variant::SectionT1 => self.log_abs_power(1.0 / p, self.alpha * p),
            Variant::SectionP1 => self.log_abs_power(t, self.alpha),
            Variant::PowerP => Ok(p * self.log_abs_power(t / p, self.alpha)?),
            Variant::FixedExponent(c) => self.log_abs_power(t / p, c),
            Variant::Congruence => {
                // Z* A^s Z = |A^{s/2} Z|^2.
                let half = self.a.apply_on_range(|x| x.powf(t / (2.0 * p)));
                let s = singulars(&(&half * &self.z))?;
                self.norm.log_evaluate_powered(&s, 2.0 * self.alpha * p)
            }
        }
    }

    pub fn evaluate(&self, p: f64, t: f64) -> Result<f64> {
        Ok(self.log_evaluate(p, t)?.exp())
    }
}

/// Rectangular `(p, t)` lattice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub p: Vec<f64>,
    pub t: Vec<f64>,
}

impl Grid {
    pub fn new(p: Vec<f64>, t: Vec<f64>) -> Result<Self> {
        for (name, axis) in [("p", &p), ("t", &t)] {
            if axis.is_empty() {
                return Err(Error::BadGrid(format!("axis {name} is empty")));
            }
            if axis.iter().any(|x| !x.is_finite()) {
                return Err(Error::BadGrid(format!("axis {name} has non-finite values")));
            }
            if axis.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::BadGrid(format!("axis {name} must be strictly increasing")));
            }
        }
        Ok(Grid { p, t })
    }

    /// `n` equally spaced points from `lo` to `hi` on each axis.
    pub fn uniform(p: (f64, f64, usize), t: (f64, f64, usize)) -> Result<Self> {
        let axis = |(lo, hi, n): (f64, f64, usize)| -> Vec<f64> {
            if n <= 1 {
                vec![lo]
            } else {
                (0..n)
                    .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
                    .collect()
            }
        };
        Grid::new(axis(p), axis(t))
    }

    pub fn points(&self) -> Vec<(f64, f64)> {
        self.p
            .iter()
            .flat_map(|&p| self.t.iter().map(move |&t| (p, t)))
            .collect()
    }
}

impl FromStr for Grid {
    type Err = Error;

    /// `p:1,1.5,2;t:0.5,1,1.5`. A missing axis defaults to the single value 1.
    fn from_str(s: &str) -> Result<Self> {
        let (mut p, mut t) = (None, None);
        for part in s.split(';').map(str::trim).filter(|x| !x.is_empty()) {
            let (name, vals) = part
                .split_once(':')
                .ok_or_else(|| Error::BadGrid(format!("expected `axis:values`, got `{part}`")))?;
            let vals = vals
                .split(',')
                .map(|v| {
                    v.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::BadGrid(format!("bad number `{v}`")))
                })
                .collect::<Result<Vec<f64>>>()?;
            match name.trim() {
                "p" => p = Some(vals),
                "t" => t = Some(vals),
                other => return Err(Error::BadGrid(format!("unknown axis `{other}`"))),
            }
        }
        Grid::new(p.unwrap_or_else(|| vec![1.0]), t.unwrap_or_else(|| vec![1.0]))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MidpointCheck {
    pub a: (f64, f64),
    pub b: (f64, f64),
    pub mid: (f64, f64),
    /// `log F(mid) - (log F(a) + log F(b)) / 2`; nonpositive when log-convex.
    #[serde(with = "serde_ext::float")]
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    /// What was probed, e.g. `two-var kyfan:2 alpha=1`.
    pub label: String,
    pub grid: Vec<(f64, f64)>,
    #[serde(with = "serde_ext::float_vec")]
    pub values: Vec<f64>,
    #[serde(with = "serde_ext::float_vec")]
    pub log_values: Vec<f64>,
    pub midpoint_checks: Vec<MidpointCheck>,
    /// `-max residual`: positive when every midpoint inequality holds strictly.
    #[serde(with = "serde_ext::float")]
    pub min_residual_margin: f64,
    pub tol: f64,
    pub verdict: bool,
}

fn residual(mid: f64, a: f64, b: f64) -> f64 {
    if mid == f64::NEG_INFINITY {
        f64::NEG_INFINITY
    } else if a == f64::NEG_INFINITY || b == f64::NEG_INFINITY {
        f64::INFINITY
    } else {
        mid - 0.5 * (a + b)
    }
}

fn same(x: f64, y: f64) -> bool {
    (x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1.0)
}

/// Midpoint log-convexity of `F` from `spec` on every axis-aligned and
/// diagonal pair of grid points that is symmetric about a third grid point.
pub fn probe_logconvexity(spec: &FunctionalSpec, grid: &Grid, tol: f64) -> Result<ProbeReport> {
    let label = format!("{} {} alpha={:?}", spec.variant, spec.norm, spec.alpha);
    probe_log_fn(label, grid, tol, |p, t| spec.log_evaluate(p, t))
}

/// The same probe for any `(p, t) -> log F(p, t)`.
pub fn probe_log_fn<F>(label: String, grid: &Grid, tol: f64, log_f: F) -> Result<ProbeReport>
where
    F: Fn(f64, f64) -> Result<f64> + Sync,
{
    let (np, nt) = (grid.p.len(), grid.t.len());
    let points = grid.points();
    let log_values = points
        .par_iter()
        .map(|&(p, t)| log_f(p, t))
        .collect::<Result<Vec<f64>>>()?;
    let at = |i: usize, j: usize| log_values[i * nt + j];

    let mut checks = Vec::new();
    for i in 0..np {
        for j in 0..nt {
            for (dp, dt) in [(1isize, 0isize), (0, 1), (1, 1), (1, -1)] {
                for d in 1.. {
                    let (ia, ja) = (i as isize - d * dp, j as isize - d * dt);
                    let (ib, jb) = (i as isize + d * dp, j as isize + d * dt);
                    let inside = |x: isize, n: usize| x >= 0 && (x as usize) < n;
                    if !(inside(ia, np) && inside(ib, np) && inside(ja, nt) && inside(jb, nt)) {
                        break;
                    }
                    let (ia, ja, ib, jb) = (ia as usize, ja as usize, ib as usize, jb as usize);
                    let a = (grid.p[ia], grid.t[ja]);
                    let b = (grid.p[ib], grid.t[jb]);
                    let mid = (grid.p[i], grid.t[j]);
                    if !same(0.5 * (a.0 + b.0), mid.0) || !same(0.5 * (a.1 + b.1), mid.1) {
                        return Err(Error::BadGrid(format!(
                            "midpoint of {a:?} and {b:?} is not on the grid"
                        )));
                    }
                    checks.push(MidpointCheck {
                        a,
                        b,
                        mid,
                        residual: residual(at(i, j), at(ia, ja), at(ib, jb)),
                    });
                }
            }
        }
    }
    let worst = checks
        .iter()
        .map(|c| c.residual)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(ProbeReport {
        label,
        grid: points,
        values: log_values.iter().map(|l| l.exp()).collect(),
        log_values,
        verdict: worst <= tol,
        min_residual_margin: if checks.is_empty() { f64::INFINITY } else { -worst },
        midpoint_checks: checks,
        tol,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotoneReport {
    pub p_grid: Vec<f64>,
    #[serde(with = "serde_ext::float_vec")]
    pub log_values: Vec<f64>,
    /// Largest `log F(p_{i+1}, 1) - log F(p_i, 1)`.
    #[serde(with = "serde_ext::float")]
    pub worst_increase: f64,
    pub verdict: bool,
}

/// `p -> F(p, 1)` is nonincreasing when `Z` is a contraction.
pub fn monotone_section_check(
    spec: &FunctionalSpec,
    p_grid: &[f64],
    tol: f64,
) -> Result<MonotoneReport> {
    let norm = operator_norm(&spec.z.pad_to(spec.z.rows().max(spec.z.cols())))?;
    if norm > 1.0 + 1e-12 {
        return Err(Error::NotContraction { norm });
    }
    let mut p_grid = p_grid.to_vec();
    p_grid.sort_by(f64::total_cmp);
    let section = spec.with_variant(Variant::SectionT1);
    let log_values = p_grid
        .iter()
        .map(|&p| section.log_evaluate(p, 1.0))
        .collect::<Result<Vec<f64>>>()?;
    let worst_increase = log_values
        .windows(2)
        .map(|w| if w[1] == f64::NEG_INFINITY { f64::NEG_INFINITY } else { w[1] - w[0] })
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(MonotoneReport {
        p_grid,
        log_values,
        verdict: worst_increase <= tol,
        worst_increase,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitProbe {
    pub j: usize,
    pub p_sequence: Vec<f64>,
    /// `lambda_j^{1/p}(A^p Z* B^p Z A^p)` for each `p`.
    pub values: Vec<f64>,
    /// Largest successive `|log| difference` over the last third.
    #[serde(with = "serde_ext::float")]
    pub tail: f64,
}

/// `(1/p) log prod_{i<=k} lambda_i(A^p Z* B^p Z A^p)`, through the k-th
/// compounds so that only top singular values are ever needed.
fn log_prefix_root(a: &PsdMatrix, b: &PsdMatrix, z: &ComplexMatrix, k: usize, p: f64) -> Result<f64> {
    if k == 0 {
        return Ok(0.0);
    }
    let ca = PsdMatrix::project(&compound(a.matrix(), k)?)?;
    let cb = PsdMatrix::project(&compound(b.matrix(), k)?)?;
    let cz = compound(z, k)?;
    let (sa, sb) = (ca.lambda_max(), cb.lambda_max());
    if sa == 0.0 || sb == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    let an = ca.apply_on_range(|x| (x / sa).powf(p));
    let bn = cb.apply_on_range(|x| (x / sb).powf(p / 2.0));
    let top = operator_norm(&(&(&bn * &cz) * &an))?;
    if top == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(sb.ln() + 2.0 * sa.ln() + 2.0 * top.ln() / p)
}

/// Max successive `|log v_{i+1} - log v_i|` over the last third of the
/// sequence.
pub fn cauchy_tail(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let diffs: Vec<f64> = values
        .windows(2)
        .map(|w| {
            if w[0] == w[1] {
                0.0
            } else {
                (w[1].ln() - w[0].ln()).abs()
            }
        })
        .collect();
    let start = diffs.len() - diffs.len().div_ceil(3);
    diffs[start..].iter().copied().fold(0.0, f64::max)
}

pub fn limit_probe(
    a: &PsdMatrix,
    b: &PsdMatrix,
    z: &ComplexMatrix,
    j: usize,
    p_sequence: &[f64],
) -> Result<LimitProbe> {
    let n = a.dim();
    z.require_shape((n, n))?;
    if b.dim() != n {
        return Err(Error::DimMismatch {
            expected: (n, n),
            got: (b.dim(), b.dim()),
        });
    }
    if j == 0 || j > n {
        return Err(Error::BadOrder { k: j, n });
    }
    if let Some(&p) = p_sequence.iter().find(|&&p| !(p > 0.0) || !p.is_finite()) {
        return Err(Error::BadDomain(format!("p = {p} must be positive")));
    }
    let values = p_sequence
        .par_iter()
        .map(|&p| {
            let hi = log_prefix_root(a, b, z, j, p)?;
            let lo = log_prefix_root(a, b, z, j - 1, p)?;
            Ok(if hi == f64::NEG_INFINITY { 0.0 } else { (hi - lo).exp() })
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(LimitProbe {
        j,
        p_sequence: p_sequence.to_vec(),
        tail: cauchy_tail(&values),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_spec(norm: SymmetricNorm) -> FunctionalSpec {
        let a = PsdMatrix::from_real_diag(&[1.0, 4.0]).unwrap();
        FunctionalSpec::new(a.clone(), a, ComplexMatrix::identity(2), 1.0, norm, Variant::TwoVar)
            .unwrap()
    }

    #[test]
    fn identity_gives_one() {
        let id = PsdMatrix::identity(3);
        let spec = FunctionalSpec::new(
            id.clone(),
            id,
            ComplexMatrix::identity(3),
            1.3,
            SymmetricNorm::Operator,
            Variant::TwoVar,
        )
        .unwrap();
        for (p, t) in [(0.5, -1.0), (1.0, 0.0), (3.0, 2.0)] {
            assert!((spec.evaluate(p, t).unwrap() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn commuting_diagonal_case() {
        let spec = diag_spec(SymmetricNorm::Operator);
        for (p, t) in [(1.0, 0.5), (2.0, 0.5), (0.7, 1.3)] {
            assert!((spec.log_evaluate(p, t).unwrap() - t * 16f64.ln()).abs() < 1e-13);
        }
        let lhs = spec.evaluate(1.0, 0.5).unwrap().powi(2);
        let rhs = spec.evaluate(1.0, 0.0).unwrap() * spec.evaluate(1.0, 1.0).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);
        let grid: Grid = "p:1,1.5,2;t:0,0.5,1".parse().unwrap();
        let r = probe_logconvexity(&spec, &grid, 1e-12).unwrap();
        assert!(r.verdict);
        assert!(r.midpoint_checks.iter().all(|c| c.residual.abs() < 1e-12));
        assert_eq!(r.midpoint_checks.len(), 8);
    }

    #[test]
    fn t_zero_ignores_a_and_b() {
        let a = PsdMatrix::from_real_diag(&[2.0, 5.0]).unwrap();
        let b = PsdMatrix::from_real_diag(&[0.3, 1.0]).unwrap();
        let z = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[0.0, 1.0]]);
        let spec = FunctionalSpec::new(a, b, z.clone(), 1.0, SymmetricNorm::Trace, Variant::TwoVar).unwrap();
        let s = singulars(&z).unwrap();
        for p in [0.5, 1.0, 2.0] {
            let expect: f64 = s.iter().map(|x| x.powf(p)).sum();
            assert!((spec.evaluate(p, 0.0).unwrap() - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn domain_and_grid_errors() {
        let spec = diag_spec(SymmetricNorm::Trace);
        assert!(matches!(spec.log_evaluate(0.0, 1.0), Err(Error::BadDomain(_))));
        assert!(matches!(spec.log_evaluate(-1.0, 1.0), Err(Error::BadDomain(_))));
        let skewed: Grid = "p:1,2,4;t:1".parse().unwrap();
        assert!(matches!(probe_logconvexity(&spec, &skewed, 1e-9), Err(Error::BadGrid(_))));
        assert!(matches!("p:2,1".parse::<Grid>(), Err(Error::BadGrid(_))));
        assert!(matches!("q:1".parse::<Grid>(), Err(Error::BadGrid(_))));
    }

    #[test]
    fn monotone_examples() {
        let spec = diag_spec(SymmetricNorm::Operator);
        let r = monotone_section_check(&spec, &[1.0, 2.0, 4.0, 8.0], 1e-12).unwrap();
        assert!(r.verdict);
        for l in &r.log_values {
            assert!((l - 16f64.ln()).abs() < 1e-12);
        }
        let big = FunctionalSpec {
            z: ComplexMatrix::identity(2).scale_real(1.5),
            ..spec
        };
        assert!(matches!(
            monotone_section_check(&big, &[1.0, 2.0], 1e-12),
            Err(Error::NotContraction { .. })
        ));
    }

    #[test]
    fn limit_commuting_is_constant() {
        let a = PsdMatrix::from_real_diag(&[2.0, 0.5, 1.0]).unwrap();
        let b = PsdMatrix::from_real_diag(&[1.0, 3.0, 0.25]).unwrap();
        // A^p B^{2p} A^p has eigenvalues (a_i^2 b_i)^p: 4, 0.75, 0.25.
        let expect = [4.0, 0.75, 0.25];
        for j in 1..=3 {
            let r = limit_probe(&a, &b, &ComplexMatrix::identity(3), j, &[1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0])
                .unwrap();
            for v in &r.values {
                assert!((v - expect[j - 1]).abs() < 1e-10, "j={j}: {v}");
            }
            assert!(r.tail < 1e-10);
        }
    }

    #[test]
    fn variant_strings() {
        for v in [
            Variant::TwoVar,
            Variant::SectionT1,
            Variant::SectionP1,
            Variant::PowerP,
            Variant::Congruence,
            Variant::FixedExponent(2.0),
        ] {
            assert_eq!(v.to_string().parse::<Variant>().unwrap(), v);
        }
    }
}
