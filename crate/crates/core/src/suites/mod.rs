//! Seeded instance generators, the check registry and suite runs.

pub mod catalog;
pub mod checks;
pub mod gen;
pub mod instance;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64, I};
use crate::matfun::abs_power;
use crate::serde_ext;
use crate::tolerance::Tolerance;

pub use checks::{five_norms, instance_tolerance, lookup, CheckDef, Evaluation, REGISTRY};
pub use gen::{
    gen_contraction, gen_expansive, gen_hermitian, gen_normal, gen_psd, gen_subunital_map, stream_seed,
    trial_seed, Gen, Profile,
};
pub use instance::{Constraint, Instance, Part};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Violation,
    /// A counterexample check found its counterexample.
    ExpectedCounterexample,
    /// A counterexample check did not find one on this instance.
    MissedCounterexample,
}

impl Status {
    /// Whether the outcome is what the registry expects.
    pub fn is_success(&self) -> bool {
        matches!(self, Status::Pass | Status::ExpectedCounterexample)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub check_id: String,
    pub seed: u64,
    pub dim: usize,
    pub profile: Profile,
    pub verdict: bool,
    pub status: Status,
    #[serde(with = "serde_ext::float_vec")]
    pub margins: Vec<f64>,
    #[serde(with = "serde_ext::float")]
    pub worst_margin: f64,
    #[serde(with = "serde_ext::float_opt", default)]
    pub slack: Option<f64>,
    #[serde(with = "serde_ext::float_opt", default)]
    pub det_margin: Option<f64>,
    /// The full instance, present whenever the verdict is false.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Instance>,
}

/// Evaluate `instance` under the check `check_id`.
pub fn run_check(check_id: &str, instance: &Instance, tol: &Tolerance) -> Result<CheckOutcome> {
    let def = lookup(check_id)?;
    if instance.check_id != check_id {
        return Err(Error::SignatureMismatch(format!(
            "instance was generated for `{}`, not `{check_id}`",
            instance.check_id
        )));
    }
    let e = (def.evaluate)(instance, &instance_tolerance(instance, tol))?;
    let status = match (e.verdict, def.expects_violation) {
        (true, false) => Status::Pass,
        (false, false) => Status::Violation,
        (false, true) => Status::ExpectedCounterexample,
        (true, true) => Status::MissedCounterexample,
    };
    Ok(CheckOutcome {
        check_id: check_id.to_string(),
        seed: instance.seed,
        dim: instance.dim,
        profile: instance.profile,
        verdict: e.verdict,
        status,
        worst_margin: e.worst_margin(),
        margins: e.margins,
        slack: e.slack,
        det_margin: e.det_margin,
        witness: (!e.verdict).then(|| instance.clone()),
    })
}

/// Named groups of checks.
pub const SUITES: &[(&str, &[&str])] = &[
    ("all", &[]),
    (
        "araki-family",
        &[
            "araki",
            "lieb_thirring",
            "cor1_norm",
            "striking",
            "super_expansive",
            "trace_econvex",
            "trace_econcave",
            "subunital_psd",
            "schur_mask",
        ],
    ),
    (
        "normal-family",
        &[
            "triangle_normal",
            "araki_normal",
            "main_normal_map",
            "m_normals",
            "cartesian",
            "sym_part",
            "schur_normals",
            "schur_TT",
        ],
    ),
    (
        "exponential",
        &["cohen_exp", "thompson_exp", "gt_log", "segal", "golden_thompson", "emi", "lie_trotter_probe"],
    ),
    (
        "holder",
        &[
            "loewner_heinz",
            "kosaki_holder",
            "littlewood_scalar",
            "littlewood_matrix",
            "poslin_probe",
            "schur_exponent_exchange",
        ],
    ),
    ("counterexamples", &["det_schur_counterexample"]),
];

/// Check ids of a suite, in registry order for `all`.
pub fn suite_checks(suite_id: &str) -> Result<Vec<&'static str>> {
    match SUITES.iter().find(|(id, _)| *id == suite_id) {
        Some((_, [])) => Ok(REGISTRY.iter().map(|c| c.id).collect()),
        Some((_, ids)) => Ok(ids.to_vec()),
        None => Err(Error::UnknownSuite(suite_id.to_string())),
    }
}

/// `trials` seeded instances of one check, spread round-robin over `dims`.
pub fn run_check_trials(check_id: &str, dims: &[usize], trials: usize, seed: u64, tol: &Tolerance) -> Result<Vec<CheckOutcome>> {
    let def = lookup(check_id)?;
    if trials > 0 && dims.is_empty() {
        return Err(Error::BadDomain("no dimensions given".into()));
    }
    if let Some(&n) = dims.iter().find(|&&n| n == 0 || n > 12) {
        return Err(Error::BadDomain(format!("dimension {n} outside 1..=12")));
    }
    (0..trials)
        .into_par_iter()
        .map(|i| {
            let dim = dims[i % dims.len()];
            let inst = def.instance(trial_seed(seed, i as u64), dim);
            run_check(check_id, &inst, tol)
        })
        .collect()
}

/// Every check of a suite; outcomes are ordered by check, then trial.
pub fn run_suite(suite_id: &str, dims: &[usize], trials: usize, seed: u64, tol: &Tolerance) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for id in suite_checks(suite_id)? {
        out.extend(run_check_trials(id, dims, trials, seed, tol)?);
    }
    Ok(out)
}

/// `lambda_1(|N|^p) / lambda_1(c (|X|^p + |Y|^p))` on the nilpotent
/// `N = X + iY = [[0, 1], [0, 0]]` with `A = I`.
pub fn tightness_cartesian_with_constant(p: f64, c: f64) -> Result<f64> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::BadDomain(format!("p = {p} must be at least one")));
    }
    let n = ComplexMatrix::from_rows(&[&[C64::new(0.0, 0.0), C64::new(1.0, 0.0)], &[C64::new(0.0, 0.0); 2]]);
    let x = (&n + &n.adjoint()).scale_real(0.5);
    let y = (&n - &n.adjoint()).scale(-I * 0.5);
    let lhs = abs_power(&n, p)?.lambda_max();
    let sum = abs_power(&x, p)?.matrix() + abs_power(&y, p)?.matrix();
    let rhs = crate::matfun::PsdMatrix::project(&sum.scale_real(c))?.lambda_max();
    Ok(lhs / rhs)
}

/// The cartesian ratio with the constant `2^{p-1}`; equals one.
pub fn tightness_cartesian(p: f64) -> Result<f64> {
    tightness_cartesian_with_constant(p, 2f64.powf(p - 1.0))
}
