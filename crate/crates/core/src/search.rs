//! Random-restart hill climbing on check margins.
//!
//! Every restart starts from a freshly generated instance and proposes
//! entrywise Gaussian perturbations with step `sigma_0 * decay^k`, where
//! `sigma_0` is a fraction of each part's RMS entry. After each proposal
//! the perturbed parts are projected back onto their constraint set, and a
//! proposal is kept only when it lowers the margin.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, operator_norm, svd, ComplexMatrix, EigenSystem, C64, I};
use crate::matfun::PsdMatrix;
use crate::posmap::KrausMap;
use crate::serde_ext;
use crate::suites::{lookup, run_check, stream_seed, trial_seed, CheckDef, Constraint, Gen, Instance, Part, Profile};
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    pub restarts: usize,
    pub steps: usize,
    /// `sigma_0` as a fraction of each part's RMS entry.
    pub step_fraction: f64,
    pub decay: f64,
}

impl Budget {
    pub fn new(restarts: usize, steps: usize) -> Self {
        Budget {
            restarts,
            steps,
            step_fraction: 0.2,
            decay: 0.95,
        }
    }
}

/// Id of the open reciprocal Lie-Trotter probe with a weight `Z`.
pub const LIE_TROTTER_Z: &str = "lie_trotter_z";

#[derive(Debug, Clone, Copy)]
enum Objective {
    Check(&'static CheckDef),
    LieTrotterZ,
}

const LIE_CONSTRAINTS: &[(&str, Constraint)] = &[
    ("A", Constraint::PsdInvertible),
    ("B", Constraint::PsdInvertible),
    ("Z", Constraint::Contraction),
];

impl Objective {
    fn resolve(id: &str) -> Result<Self> {
        match id {
            LIE_TROTTER_Z => Ok(Objective::LieTrotterZ),
            "det_schur" => Ok(Objective::Check(lookup("det_schur_counterexample")?)),
            _ => lookup(id)
                .map(Objective::Check)
                .map_err(|_| Error::UnknownObjective(id.to_string())),
        }
    }

    fn id(&self) -> &'static str {
        match self {
            Objective::Check(c) => c.id,
            Objective::LieTrotterZ => LIE_TROTTER_Z,
        }
    }

    fn expects_violation(&self) -> bool {
        matches!(self, Objective::Check(c) if c.expects_violation)
    }

    fn constraints(&self) -> &'static [(&'static str, Constraint)] {
        match self {
            Objective::Check(c) => c.constraints,
            Objective::LieTrotterZ => LIE_CONSTRAINTS,
        }
    }

    fn instance(&self, seed: u64, dim: usize) -> Instance {
        match self {
            Objective::Check(c) => c.instance(seed, dim),
            Objective::LieTrotterZ => {
                let mut g = Gen::new(stream_seed(seed, LIE_TROTTER_Z, dim));
                Instance::new(LIE_TROTTER_Z, seed, dim, Profile::WellConditioned)
                    .with("A", Part::Matrix(g.psd(dim, Profile::WellConditioned)))
                    .with("B", Part::Matrix(g.psd(dim, Profile::WellConditioned)))
                    .with("Z", Part::Matrix(g.contraction(dim)))
            }
        }
    }

    fn margin(&self, inst: &Instance, tol: &Tolerance) -> Result<f64> {
        match self {
            Objective::Check(c) => Ok(run_check(c.id, inst, tol)?.worst_margin),
            Objective::LieTrotterZ => {
                let (a, b, z) = (inst.psd("A")?, inst.psd("B")?, inst.square("Z")?);
                Ok(-lie_trotter_z_tail(&a, &b, z)?)
            }
        }
    }
}

/// The p values of the weighted Lie-Trotter sequence.
pub const LIE_TROTTER_Z_POWERS: [f64; 5] = [2.0, 4.0, 8.0, 16.0, 32.0];

/// `(A^p Z* B^p Z A^p)^{1/p}` with `A`, `B` scaled to unit norm.
pub fn lie_trotter_z_term(a: &PsdMatrix, b: &PsdMatrix, z: &ComplexMatrix, p: f64) -> Result<ComplexMatrix> {
    let (sa, sb) = (a.lambda_max(), b.lambda_max());
    if sa == 0.0 || sb == 0.0 {
        return Ok(ComplexMatrix::zeros(a.dim(), a.dim()));
    }
    let ap = a.apply_on_range(|x| (x / sa).powf(p));
    let bp = b.apply_on_range(|x| (x / sb).powf(p / 2.0));
    let s = svd(&(&(&bp * z) * &ap))?;
    Ok(EigenSystem {
        values: s.singulars,
        vectors: s.right,
    }
    .reconstruct_with(|x| if x > 0.0 { x.powf(2.0 / p) } else { 0.0 }))
}

/// Relative change between the last two terms of the sequence.
pub fn lie_trotter_z_tail(a: &PsdMatrix, b: &PsdMatrix, z: &ComplexMatrix) -> Result<f64> {
    let n = LIE_TROTTER_Z_POWERS.len();
    let prev = lie_trotter_z_term(a, b, z, LIE_TROTTER_Z_POWERS[n - 2])?;
    let last = lie_trotter_z_term(a, b, z, LIE_TROTTER_Z_POWERS[n - 1])?;
    let scale = last.norm_max();
    Ok(if scale == 0.0 { 0.0 } else { prev.max_abs_diff(&last) / scale })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub objective_id: String,
    pub expects_violation: bool,
    pub best_instance: Instance,
    /// Negative means a violation was found.
    #[serde(with = "serde_ext::float")]
    pub best_margin: f64,
    /// Accepted improvements of the winning restart, starting at step 0.
    pub trajectory: Vec<TrajectoryPoint>,
    /// Best margin of each restart.
    #[serde(with = "serde_ext::float_vec")]
    pub restart_margins: Vec<f64>,
    pub restarts: usize,
    pub steps: usize,
    pub seed: u64,
    pub dims: Vec<usize>,
    /// `best_margin < -tol` on a check objective; always false for the
    /// open probe, which only reports numbers.
    pub found_violation: bool,
    /// Re-evaluation of `best_instance` reproduced `best_margin`.
    pub verified: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryPoint {
    pub step: usize,
    #[serde(with = "serde_ext::float")]
    pub margin: f64,
}

struct RestartResult {
    instance: Instance,
    margin: f64,
    trajectory: Vec<TrajectoryPoint>,
}

fn rms(m: &ComplexMatrix) -> f64 {
    let len = (m.rows() * m.cols()).max(1) as f64;
    (m.norm_fro() / len.sqrt()).max(1e-3)
}

fn perturb_matrix(g: &mut Gen, m: &ComplexMatrix, sigma: f64) -> ComplexMatrix {
    let noise = g.gaussian(m.rows(), m.cols());
    m + &noise.scale_real(sigma * rms(m))
}

fn clamp_psd(m: &ComplexMatrix, relative_floor: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(&m.hermitian_part())?;
    let top = eig.values.first().copied().unwrap_or(0.0).max(0.0);
    let floor = relative_floor * top;
    Ok(eig.reconstruct_with(|x| x.max(floor)).hermitian_part())
}

/// A normal matrix near `m + noise`: rotate the eigenbasis by `e^{iH}` and
/// move the eigenvalues.
fn perturb_normal(g: &mut Gen, m: &ComplexMatrix, sigma: f64) -> Result<ComplexMatrix> {
    let n = m.rows();
    // Generic real combination of the commuting Hermitian and skew parts.
    let re = m.hermitian_part();
    let im = (m - &m.adjoint()).scale(-I * 0.5);
    let u = hermitian_eigen(&(&re + &im.scale_real(std::f64::consts::FRAC_1_SQRT_2 + 0.1)))?.vectors;
    let d = (&(&u.adjoint() * m) * &u).diagonal();
    let h = g.gaussian(n, n).hermitian_part().scale_real(sigma);
    let eh = hermitian_eigen(&h)?;
    let rot = ComplexMatrix::from_fn(n, n, |i, j| {
        (0..n)
            .map(|k| eh.vectors[(i, k)] * eh.vectors[(j, k)].conj() * C64::from_polar(1.0, eh.values[k]))
            .sum()
    });
    let scale = d.iter().map(|x| x.norm()).fold(1e-3, f64::max);
    let d: Vec<C64> = d
        .iter()
        .map(|x| x + C64::new(g.normal(), g.normal()) * (sigma * scale))
        .collect();
    let q = &u * &rot;
    Ok(&(&q * &ComplexMatrix::from_diag(&d)) * &q.adjoint())
}

fn project_expansive(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let mut s = svd(m)?;
    s.singulars.iter_mut().for_each(|x| *x = x.max(1.0));
    Ok(s.reconstruct())
}

fn project_diag_bounded(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let c = clamp_psd(m, 0.0)?;
    let d: Vec<f64> = (0..c.rows()).map(|j| 1.0 / c[(j, j)].re.max(1.0).sqrt()).collect();
    Ok(ComplexMatrix::from_fn(c.rows(), c.cols(), |i, j| c[(i, j)] * (d[i] * d[j])).hermitian_part())
}

fn perturb_map(g: &mut Gen, map: &KrausMap, sigma: f64) -> Result<KrausMap> {
    let kraus: Vec<ComplexMatrix> = map.kraus().iter().map(|z| perturb_matrix(g, z, sigma)).collect();
    let unit = kraus
        .iter()
        .fold(ComplexMatrix::zeros(map.out_dim(), map.out_dim()), |acc, z| &acc + &(&z.adjoint() * z));
    let top = hermitian_eigen(&unit)?.values[0];
    let c = if top > 1.0 { (1.0 - 1e-12) / top.sqrt() } else { 1.0 };
    KrausMap::new(map.in_dim(), map.out_dim(), kraus.iter().map(|z| z.scale_real(c)).collect())
}

fn perturb_one(g: &mut Gen, m: &ComplexMatrix, constraint: Constraint, sigma: f64) -> Result<ComplexMatrix> {
    Ok(match constraint {
        Constraint::Fixed => m.clone(),
        Constraint::Normal => perturb_normal(g, m, sigma)?,
        Constraint::Psd => clamp_psd(&perturb_matrix(g, m, sigma), 0.0)?,
        Constraint::PsdInvertible => clamp_psd(&perturb_matrix(g, m, sigma), 1e-3)?,
        Constraint::Hermitian => perturb_matrix(g, m, sigma).hermitian_part(),
        Constraint::Contraction => {
            let z = perturb_matrix(g, m, sigma);
            let norm = operator_norm(&z)?;
            if norm > 1.0 {
                z.scale_real(1.0 / norm)
            } else {
                z
            }
        }
        Constraint::Expansive => project_expansive(&perturb_matrix(g, m, sigma))?,
        Constraint::DiagBoundedPsd => project_diag_bounded(&perturb_matrix(g, m, sigma))?,
        Constraint::SubUnitalMap | Constraint::Free => perturb_matrix(g, m, sigma),
    })
}

/// `inst` with every non-fixed part perturbed at relative step `sigma` and
/// projected back onto its constraint.
pub fn perturb(
    g: &mut Gen,
    inst: &Instance,
    constraints: &[(&str, Constraint)],
    sigma: f64,
) -> Result<Instance> {
    let mut out = inst.clone();
    for &(name, constraint) in constraints {
        if constraint == Constraint::Fixed {
            continue;
        }
        let Some(part) = inst.parts.get(name) else {
            continue;
        };
        let next = match part {
            Part::Matrix(m) => Part::Matrix(perturb_one(g, m, constraint, sigma)?),
            Part::Matrices(ms) => Part::Matrices(
                ms.iter()
                    .map(|m| perturb_one(g, m, constraint, sigma))
                    .collect::<Result<_>>()?,
            ),
            Part::Map(map) => Part::Map(perturb_map(g, map, sigma)?),
            Part::Vector(v) => Part::Vector(v.iter().map(|x| x * (sigma * g.normal()).exp()).collect()),
            Part::Scalar(x) => Part::Scalar(*x),
        };
        out.set(name, next);
    }
    Ok(out)
}

fn climb(objective: Objective, start: Instance, seed: u64, budget: &Budget, tol: &Tolerance) -> Result<RestartResult> {
    let dim = start.dim;
    let mut inst = start;
    let mut margin = objective.margin(&inst, tol)?;
    let mut trajectory = vec![TrajectoryPoint { step: 0, margin }];
    let mut g = Gen::new(stream_seed(seed, "search", dim));
    let mut sigma = budget.step_fraction;
    for step in 1..=budget.steps {
        let candidate = perturb(&mut g, &inst, objective.constraints(), sigma);
        sigma *= budget.decay;
        // Proposals that leave the domain (a failed projection or an
        // evaluation error) are rejected.
        let Ok(candidate) = candidate else { continue };
        let Ok(m) = objective.margin(&candidate, tol) else { continue };
        if m < margin {
            inst = candidate;
            margin = m;
            trajectory.push(TrajectoryPoint { step, margin: m });
        }
    }
    Ok(RestartResult {
        instance: inst,
        margin,
        trajectory,
    })
}

/// Minimize the margin of `objective_id` over `budget.restarts` restarts,
/// cycling through `dims`.
pub fn minimize_margin(
    objective_id: &str,
    dims: &[usize],
    budget: &Budget,
    seed: u64,
    tol: &Tolerance,
) -> Result<SearchReport> {
    let objective = Objective::resolve(objective_id)?;
    if dims.is_empty() {
        return Err(Error::BadDomain("a search needs at least one dimension".into()));
    }
    if let Some(&n) = dims.iter().find(|&&n| n == 0 || n > 12) {
        return Err(Error::BadDomain(format!("dimension {n} outside 1..=12")));
    }
    search(objective, dims, budget, seed, tol, |r, rs| {
        objective.instance(rs, dims[r % dims.len()])
    })
}

/// The same search with every restart starting from `start`.
pub fn minimize_margin_from(
    objective_id: &str,
    start: &Instance,
    budget: &Budget,
    seed: u64,
    tol: &Tolerance,
) -> Result<SearchReport> {
    let objective = Objective::resolve(objective_id)?;
    if start.check_id != objective.id() {
        return Err(Error::SignatureMismatch(format!(
            "start instance belongs to `{}`, not `{}`",
            start.check_id,
            objective.id()
        )));
    }
    search(objective, &[start.dim], budget, seed, tol, |_, _| start.clone())
}

fn search(
    objective: Objective,
    dims: &[usize],
    budget: &Budget,
    seed: u64,
    tol: &Tolerance,
    start: impl Fn(usize, u64) -> Instance + Sync,
) -> Result<SearchReport> {
    if budget.restarts == 0 {
        return Err(Error::BadDomain("a search needs at least one restart".into()));
    }
    let results = (0..budget.restarts)
        .into_par_iter()
        .map(|r| {
            let rs = trial_seed(seed, r as u64);
            climb(objective, start(r, rs), rs, budget, tol)
        })
        .collect::<Result<Vec<_>>>()?;
    let restart_margins: Vec<f64> = results.iter().map(|r| r.margin).collect();
    // First restart wins ties, so the reduction does not depend on scheduling.
    let best = results
        .into_iter()
        .reduce(|a, b| if b.margin < a.margin { b } else { a })
        .expect("at least one restart");
    let check = objective.margin(&best.instance, tol)?;
    let verified = (check - best.margin).abs() <= 1e-12 || check == best.margin;
    Ok(SearchReport {
        objective_id: objective.id().to_string(),
        expects_violation: objective.expects_violation(),
        found_violation: matches!(objective, Objective::Check(_)) && best.margin < -tol.log_margin,
        best_instance: best.instance,
        best_margin: best.margin,
        trajectory: best.trajectory,
        restart_margins,
        restarts: budget.restarts,
        steps: budget.steps,
        seed,
        dims: dims.to_vec(),
        verified,
    })
}

/// Every objective id: the registry, the `det_schur` alias and the open probe.
pub fn objective_ids() -> Vec<&'static str> {
    let mut ids: Vec<&'static str> = crate::suites::REGISTRY.iter().map(|c| c.id).collect();
    ids.push("det_schur");
    ids.push(LIE_TROTTER_Z);
    ids
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matfun::normality_defect;

    #[test]
    fn det_schur_finds_violation() {
        let r = minimize_margin("det_schur", &[2], &Budget::new(4, 20), 3, &Tolerance::DEFAULT).unwrap();
        assert!(r.found_violation && r.best_margin <= -1e-3);
        assert!(r.verified);
        assert!(r.trajectory.windows(2).all(|w| w[1].margin < w[0].margin));
    }

    #[test]
    fn striking_never_violates() {
        let r = minimize_margin("striking", &[3], &Budget::new(3, 40), 5, &Tolerance::DEFAULT).unwrap();
        assert!(r.best_margin >= -1e-8, "{}", r.best_margin);
        assert!(r.verified && !r.expects_violation);
    }

    #[test]
    fn deterministic_and_errors() {
        let b = Budget::new(2, 10);
        let x = minimize_margin("cartesian", &[2, 3], &b, 9, &Tolerance::DEFAULT).unwrap();
        let y = minimize_margin("cartesian", &[2, 3], &b, 9, &Tolerance::DEFAULT).unwrap();
        assert_eq!(serde_json::to_string(&x).unwrap(), serde_json::to_string(&y).unwrap());
        assert!(matches!(
            minimize_margin("nope", &[2], &b, 0, &Tolerance::DEFAULT),
            Err(Error::UnknownObjective(_))
        ));
    }

    #[test]
    fn projections_respect_constraints() {
        let mut g = Gen::new(1);
        let n = g.normal_matrix(4, Profile::WellConditioned);
        let p = perturb_normal(&mut g, &n, 0.2).unwrap();
        assert!(normality_defect(&p).unwrap() < 1e-10);
        assert!(p.max_abs_diff(&n) > 1e-6);
        let e = project_expansive(&g.gaussian(3, 3)).unwrap();
        let ee = PsdMatrix::new(&(&e.adjoint() * &e)).unwrap();
        assert!(ee.values()[2] >= 1.0 - 1e-10);
        let c = project_diag_bounded(&g.gaussian(3, 3)).unwrap();
        assert!((0..3).all(|j| c[(j, j)].re <= 1.0 + 1e-12));
        let map = g.subunital_map(3, 3, 2);
        let map = perturb_map(&mut g, &map, 0.5).unwrap();
        assert!(map.is_sub_unital());
    }

    #[test]
    fn lie_trotter_z_reports_numbers() {
        let r = minimize_margin(LIE_TROTTER_Z, &[3], &Budget::new(2, 5), 1, &Tolerance::DEFAULT).unwrap();
        assert!(r.best_margin.is_finite() && r.best_margin <= 0.0);
        let a = PsdMatrix::from_real_diag(&[2.0, 1.0]).unwrap();
        let i = ComplexMatrix::identity(2);
        // Commuting case: A^2 B with B = I, so the sequence is constant.
        let tail = lie_trotter_z_tail(&a, &PsdMatrix::identity(2), &i).unwrap();
        assert!(tail < 1e-12);
    }
}
