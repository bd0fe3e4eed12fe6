//! Run configurations and the reports they produce.
//!
//! A [`RunConfig`] fully determines a [`Report`]: executing the same config
//! twice gives byte-identical JSON. Reports carry no timestamps and all maps
//! are ordered.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functional::{probe_logconvexity, FunctionalSpec, Grid, ProbeReport, Variant};
use crate::linalg::ComplexMatrix;
use crate::matfun::PsdMatrix;
use crate::norms::SymmetricNorm;
use crate::search::{minimize_margin, Budget, SearchReport};
use crate::serde_ext;
use crate::suites::{
    five_norms, lookup, run_check, run_check_trials, run_suite, stream_seed, tightness_cartesian, trial_seed,
    CheckOutcome, Gen, Instance, Part, Profile, Status,
};
use crate::tolerance::Tolerance;

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// A suite or a single check.
    #[default]
    Suite,
    /// Log-convexity probes of random functionals.
    Probe,
    /// Hill-climbing search on an objective.
    Search,
    /// The closed-form examples.
    Demo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub command: Command,
    pub suite: Option<String>,
    pub check: Option<String>,
    pub objective: Option<String>,
    pub dims: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    /// `p:a,b,c;t:x,y,z` for probes.
    pub grid: Option<String>,
    /// A fixed norm for probes; otherwise the five kinds are cycled.
    pub norm: Option<SymmetricNorm>,
    /// A fixed alpha for probes; otherwise `0.5, 1, 2` are cycled.
    pub alpha: Option<f64>,
    pub variant: Variant,
    pub restarts: usize,
    pub steps: usize,
    pub out: Option<String>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: Command::Suite,
            suite: None,
            check: None,
            objective: None,
            dims: vec![3],
            trials: 100,
            seed: 0,
            tol: 1e-8,
            grid: None,
            norm: None,
            alpha: None,
            variant: Variant::TwoVar,
            restarts: 20,
            steps: 200,
            out: None,
            format: Format::Json,
        }
    }
}

/// Default probe grid: five values of each variable.
pub const DEFAULT_GRID: &str = "p:0.5,1,1.5,2,2.5;t:-1,-0.5,0,0.5,1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeOutcome {
    pub seed: u64,
    pub dim: usize,
    pub instance: Instance,
    pub report: ProbeReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemoResult {
    pub name: String,
    #[serde(with = "serde_ext::float")]
    pub value: f64,
    #[serde(with = "serde_ext::float")]
    pub expected: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct CheckSummary {
    pub trials: usize,
    pub passes: usize,
    pub violations: usize,
    pub expected_counterexamples: usize,
    pub missed_counterexamples: usize,
    #[serde(with = "serde_ext::float")]
    pub worst_margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct Summary {
    pub checks: BTreeMap<String, CheckSummary>,
    pub total: usize,
    /// Outcomes whose verdict is false.
    pub false_verdicts: usize,
    /// Outcomes that contradict the registry's expectation.
    pub unexpected: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: RunConfig,
    pub artifact_version: String,
    pub outcomes: Vec<CheckOutcome>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub probes: Vec<ProbeOutcome>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub searches: Vec<SearchReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub demos: Vec<DemoResult>,
    pub summary: Summary,
}

impl Report {
    fn new(config: RunConfig) -> Self {
        Report {
            config,
            artifact_version: ARTIFACT_VERSION.to_string(),
            outcomes: Vec::new(),
            probes: Vec::new(),
            searches: Vec::new(),
            demos: Vec::new(),
            summary: Summary::default(),
        }
    }

    fn summarize(&mut self) {
        let mut s = Summary::default();
        for o in &self.outcomes {
            let e = s.checks.entry(o.check_id.clone()).or_insert_with(|| CheckSummary {
                worst_margin: f64::INFINITY,
                ..CheckSummary::default()
            });
            e.trials += 1;
            e.worst_margin = e.worst_margin.min(o.worst_margin);
            match o.status {
                Status::Pass => e.passes += 1,
                Status::Violation => e.violations += 1,
                Status::ExpectedCounterexample => e.expected_counterexamples += 1,
                Status::MissedCounterexample => e.missed_counterexamples += 1,
            }
            s.total += 1;
            s.false_verdicts += usize::from(!o.verdict);
            s.unexpected += usize::from(!o.status.is_success());
        }
        for p in &self.probes {
            s.total += 1;
            s.false_verdicts += usize::from(!p.report.verdict);
            s.unexpected += usize::from(!p.report.verdict);
        }
        for r in &self.searches {
            s.total += 1;
            let bad = r.found_violation != r.expects_violation || !r.verified;
            s.false_verdicts += usize::from(r.found_violation || !r.verified);
            s.unexpected += usize::from(bad);
        }
        for d in &self.demos {
            s.total += 1;
            s.false_verdicts += usize::from(!d.pass);
            s.unexpected += usize::from(!d.pass);
        }
        self.summary = s;
    }

    /// 0 when every verdict is true and matches expectation, 2 otherwise.
    /// A found counterexample is a false verdict and therefore exits 2; its
    /// outcome is labelled `expected-counterexample`.
    pub fn exit_code(&self) -> i32 {
        if self.summary.false_verdicts == 0 && self.summary.unexpected == 0 {
            0
        } else {
            2
        }
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// One row per outcome, probe, search or demo; witnesses are omitted.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| Error::Parse(e.to_string());
        w.write_record(["kind", "id", "seed", "dim", "profile", "verdict", "status", "worst_margin", "det_margin", "slack"])
            .map_err(err)?;
        let f = |x: f64| format!("{x:?}");
        let fo = |x: Option<f64>| x.map(f).unwrap_or_default();
        for o in &self.outcomes {
            let status = serde_json::to_value(o.status).map_err(|e| Error::Parse(e.to_string()))?;
            w.write_record([
                "check".to_string(),
                o.check_id.clone(),
                o.seed.to_string(),
                o.dim.to_string(),
                o.profile.name().to_string(),
                o.verdict.to_string(),
                status.as_str().unwrap_or_default().to_string(),
                f(o.worst_margin),
                fo(o.det_margin),
                fo(o.slack),
            ])
            .map_err(err)?;
        }
        for p in &self.probes {
            w.write_record([
                "probe".to_string(),
                p.report.label.clone(),
                p.seed.to_string(),
                p.dim.to_string(),
                p.instance.profile.name().to_string(),
                p.report.verdict.to_string(),
                if p.report.verdict { "pass" } else { "violation" }.to_string(),
                f(p.report.min_residual_margin),
                String::new(),
                String::new(),
            ])
            .map_err(err)?;
        }
        for r in &self.searches {
            w.write_record([
                "search".to_string(),
                r.objective_id.clone(),
                r.seed.to_string(),
                r.best_instance.dim.to_string(),
                r.best_instance.profile.name().to_string(),
                (!r.found_violation).to_string(),
                if r.found_violation { "violation" } else { "pass" }.to_string(),
                f(r.best_margin),
                String::new(),
                String::new(),
            ])
            .map_err(err)?;
        }
        for d in &self.demos {
            w.write_record([
                "demo".to_string(),
                d.name.clone(),
                String::new(),
                String::new(),
                String::new(),
                d.pass.to_string(),
                if d.pass { "pass" } else { "violation" }.to_string(),
                f(d.value - d.expected),
                String::new(),
                String::new(),
            ])
            .map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn render(&self) -> Result<String> {
        match self.config.format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

/// A random functional for probe trial `(seed, dim)`.
pub fn probe_instance(seed: u64, dim: usize, alpha: f64) -> Instance {
    let mut g = Gen::new(stream_seed(seed, "probe", dim));
    let profile = g.pick(&Profile::ALL);
    Instance::new("probe", seed, dim, profile)
        .with("A", Part::Matrix(g.psd(dim, profile)))
        .with("B", Part::Matrix(g.psd(dim, profile)))
        .with("Z", Part::Matrix(g.general(dim, 1.0)))
        .with("alpha", Part::Scalar(alpha))
}

fn spec_of(inst: &Instance, norm: SymmetricNorm, variant: Variant) -> Result<FunctionalSpec> {
    FunctionalSpec::new(
        inst.psd("A")?,
        inst.psd("B")?,
        inst.square("Z")?.clone(),
        inst.exponent("alpha")?,
        norm,
        variant,
    )
}

/// `trials` probes at each of the cycled norms and alphas.
pub fn run_probes(config: &RunConfig) -> Result<Vec<ProbeOutcome>> {
    let grid: Grid = config.grid.as_deref().unwrap_or(DEFAULT_GRID).parse()?;
    if config.trials > 0 && config.dims.is_empty() {
        return Err(Error::BadDomain("no dimensions given".into()));
    }
    let alphas = [0.5, 1.0, 2.0];
    (0..config.trials)
        .map(|i| {
            let dim = config.dims[i % config.dims.len()];
            let seed = trial_seed(config.seed, i as u64);
            let norm = config.norm.unwrap_or(five_norms(dim)[i % 5]);
            let alpha = config.alpha.unwrap_or(alphas[(i / 5) % 3]);
            let instance = probe_instance(seed, dim, alpha);
            let report = probe_logconvexity(&spec_of(&instance, norm, config.variant)?, &grid, config.tol)?;
            Ok(ProbeOutcome {
                seed,
                dim,
                instance,
                report,
            })
        })
        .collect()
}

fn demo(name: &str, value: f64, expected: f64, tolerance: f64) -> DemoResult {
    DemoResult {
        name: name.to_string(),
        value,
        expected,
        tolerance,
        pass: (value - expected).abs() <= tolerance,
    }
}

/// The closed-form examples with their known values.
pub fn run_demos() -> Result<Vec<DemoResult>> {
    let tol = Tolerance::DEFAULT;
    let mut out = Vec::new();

    let s = ComplexMatrix::from_real_diag(&[1.0, -1.0]);
    let t = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
    let gt = Instance::new("golden_thompson", 0, 2, Profile::WellConditioned)
        .with("S", Part::Matrix(s))
        .with("T", Part::Matrix(t));
    let slack = run_check("golden_thompson", &gt, &tol)?.slack.unwrap_or(f64::NAN);
    let expected = 2.0 * 1f64.cosh().powi(2) - 2.0 * 2f64.sqrt().cosh();
    out.push(demo("golden_thompson_2x2_slack", slack, expected, 1e-6));

    for p in [1.0, 2.0, 3.0] {
        out.push(demo(&format!("tightness_cartesian_p{p}"), tightness_cartesian(p)?, 1.0, 1e-10));
    }

    let ones = Instance::new("det_schur_counterexample", 0, 2, Profile::WellConditioned)
        .with("A", Part::Matrix(ComplexMatrix::identity(2)))
        .with("B", Part::Matrix(ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]])))
        .with("p", Part::Scalar(2.0));
    let det = run_check("det_schur_counterexample", &ones, &tol)?;
    out.push(demo("det_schur_all_ones_log_ratio", det.worst_margin, -(4f64.ln()), 1e-12));

    let a = PsdMatrix::from_real_diag(&[2.0, 1.0, 0.5])?;
    let b = PsdMatrix::from_real_diag(&[0.3, 1.0, 3.0])?;
    let araki = Instance::new("araki", 0, 3, Profile::WellConditioned)
        .with("A", Part::Matrix(a.into_matrix()))
        .with("B", Part::Matrix(b.into_matrix()))
        .with("p", Part::Scalar(2.0));
    let r = run_check("araki", &araki, &tol)?;
    let worst_abs = r.margins.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    out.push(demo("araki_commuting_margins", worst_abs, 0.0, 1e-12));
    Ok(out)
}

/// Run a configuration to completion.
pub fn execute(config: &RunConfig) -> Result<Report> {
    let tol = Tolerance::with_log_margin(config.tol);
    let mut report = Report::new(config.clone());
    match config.command {
        Command::Suite => {
            report.outcomes = match (&config.check, &config.suite) {
                (Some(check), _) => {
                    lookup(check)?;
                    run_check_trials(check, &config.dims, config.trials, config.seed, &tol)?
                }
                (None, Some(suite)) => run_suite(suite, &config.dims, config.trials, config.seed, &tol)?,
                (None, None) => run_suite("all", &config.dims, config.trials, config.seed, &tol)?,
            };
        }
        Command::Probe => report.probes = run_probes(config)?,
        Command::Search => {
            let objective = config
                .objective
                .as_deref()
                .ok_or_else(|| Error::UnknownObjective("no objective given".into()))?;
            let budget = Budget::new(config.restarts, config.steps);
            report.searches = vec![minimize_margin(objective, &config.dims, &budget, config.seed, &tol)?];
        }
        Command::Demo => report.demos = run_demos()?,
    }
    report.summarize();
    Ok(report)
}
