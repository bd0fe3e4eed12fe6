//! End-to-end runs through suites, searches and reports.

use majorlab::functional::{probe_logconvexity, FunctionalSpec, Grid, Variant};
use majorlab::linalg::ComplexMatrix;
use majorlab::matfun::PsdMatrix;
use majorlab::norms::SymmetricNorm;
use majorlab::report::{execute, Command, Format, Report, RunConfig};
use majorlab::search::{minimize_margin, minimize_margin_from, objective_ids, Budget, LIE_TROTTER_Z};
use majorlab::suites::{
    lookup, run_check, run_check_trials, run_suite, suite_checks, tightness_cartesian_with_constant, Instance, Part,
    Profile, Status, REGISTRY, SUITES,
};
use majorlab::tolerance::Tolerance;
use majorlab::Error;

const TOL: Tolerance = Tolerance::DEFAULT;

#[test]
fn every_suite_passes_a_small_sweep() {
    for (suite, _) in SUITES {
        for o in run_suite(suite, &[2, 3, 4], 12, 3, &TOL).unwrap() {
            assert!(o.status.is_success(), "{} seed {} dim {}: {:?}", o.check_id, o.seed, o.dim, o.status);
        }
    }
}

#[test]
fn trials_cycle_dimensions_and_seeds_differ() {
    let out = run_check_trials("araki", &[2, 5], 6, 42, &TOL).unwrap();
    let dims: Vec<usize> = out.iter().map(|o| o.dim).collect();
    assert_eq!(dims, [2, 5, 2, 5, 2, 5]);
    let mut seeds: Vec<u64> = out.iter().map(|o| o.seed).collect();
    seeds.dedup();
    assert_eq!(seeds.len(), 6);
}

#[test]
fn bad_inputs_are_errors() {
    assert!(matches!(lookup("nope"), Err(Error::UnknownCheck(_))));
    assert!(run_check_trials("araki", &[13], 1, 0, &TOL).is_err());
    assert!(run_check_trials("araki", &[], 1, 0, &TOL).is_err());
    let wrong = lookup("araki").unwrap().instance(1, 3);
    assert!(matches!(run_check("lieb_thirring", &wrong, &TOL), Err(Error::SignatureMismatch(_))));
    assert!(minimize_margin("nope", &[2], &Budget::new(1, 1), 0, &TOL).is_err());
    assert!(minimize_margin("araki", &[2], &Budget::new(0, 1), 0, &TOL).is_err());
}

#[test]
fn counterexample_witness_reproduces_after_json() {
    let out = run_check_trials("det_schur_counterexample", &[2, 3], 4, 9, &TOL).unwrap();
    for o in out {
        assert_eq!(o.status, Status::ExpectedCounterexample);
        let text = serde_json::to_string(o.witness.as_ref().unwrap()).unwrap();
        let back: Instance = serde_json::from_str(&text).unwrap();
        let again = run_check(&o.check_id, &back, &TOL).unwrap();
        assert_eq!(again.margins, o.margins);
        assert!(again.worst_margin < 0.0);
    }
}

#[test]
fn commuting_araki_search_stays_at_equality() {
    let a = PsdMatrix::from_real_diag(&[2.0, 1.0, 0.5]).unwrap();
    let b = PsdMatrix::from_real_diag(&[0.3, 1.0, 3.0]).unwrap();
    let start = Instance::new("araki", 0, 3, Profile::WellConditioned)
        .with("A", Part::Matrix(a.into_matrix()))
        .with("B", Part::Matrix(b.into_matrix()))
        .with("p", Part::Scalar(2.0));
    let before = run_check("araki", &start, &TOL).unwrap();
    assert!(before.worst_margin.abs() <= 1e-12);
    let r = minimize_margin_from("araki", &start, &Budget::new(4, 60), 1, &TOL).unwrap();
    assert!(r.verified && !r.found_violation);
    assert!(r.best_margin >= -1e-8 && r.best_margin <= before.worst_margin + 1e-12);
}

#[test]
fn search_never_violates_a_true_inequality() {
    for id in ["striking", "araki", "lieb_thirring", "triangle_normal"] {
        let r = minimize_margin(id, &[2, 3], &Budget::new(4, 80), 17, &TOL).unwrap();
        assert!(r.best_margin >= -1e-8, "{id}: {}", r.best_margin);
        assert!(r.verified && !r.found_violation);
        assert!(r.trajectory.windows(2).all(|w| w[1].margin < w[0].margin));
        assert_eq!(r.restart_margins.len(), 4);
    }
}

#[test]
fn det_schur_alias_finds_counterexample() {
    let r = minimize_margin("det_schur", &[2], &Budget::new(3, 50), 0, &TOL).unwrap();
    assert_eq!(r.objective_id, "det_schur_counterexample");
    assert!(r.expects_violation && r.found_violation && r.verified);
    assert!(r.best_margin <= -1e-3);
}

#[test]
fn open_probe_is_report_only() {
    assert!(objective_ids().contains(&LIE_TROTTER_Z));
    let r = minimize_margin(LIE_TROTTER_Z, &[2], &Budget::new(2, 10), 3, &TOL).unwrap();
    assert!(!r.found_violation && r.verified);
    assert!(r.best_margin.is_finite());
}

#[test]
fn cartesian_constant_cannot_be_lowered() {
    for p in [1.0, 2.0, 3.0] {
        let c = 2f64.powf(p - 1.0);
        assert!((tightness_cartesian_with_constant(p, c).unwrap() - 1.0).abs() <= 1e-10);
        assert!(tightness_cartesian_with_constant(p, 0.99 * c).unwrap() > 1.0);
    }
}

#[test]
fn commuting_functional_is_log_affine_in_t() {
    let a = PsdMatrix::from_real_diag(&[2.0, 0.5]).unwrap();
    let b = PsdMatrix::from_real_diag(&[3.0, 1.5]).unwrap();
    let spec = FunctionalSpec::new(a, b, ComplexMatrix::identity(2), 1.0, SymmetricNorm::Operator, Variant::TwoVar)
        .unwrap();
    let grid = Grid::uniform((1.0, 2.0, 3), (-1.0, 1.0, 5)).unwrap();
    let r = probe_logconvexity(&spec, &grid, 1e-9).unwrap();
    assert!(r.verdict);
    // || |A^{t/p} B^{t/p}|^p ||_inf = 6^t for t >= 0 and 0.75^t below zero.
    for ((p, t), v) in r.grid.iter().zip(&r.values) {
        let base: f64 = if *t >= 0.0 { 6.0 } else { 0.75 };
        assert!((v - base.powf(*t)).abs() <= 1e-12 * v.max(1.0), "p={p} t={t}");
    }
}

#[test]
fn report_round_trips_and_renders_csv() {
    let config = RunConfig {
        check: Some("det_schur_counterexample".into()),
        dims: vec![2],
        trials: 3,
        seed: 1,
        format: Format::Csv,
        ..RunConfig::default()
    };
    let report = execute(&config).unwrap();
    assert_eq!(report.exit_code(), 2);
    assert_eq!(report.summary.unexpected, 0);
    assert_eq!(report.summary.false_verdicts, 3);
    let back = Report::from_json(&report.to_json().unwrap()).unwrap();
    assert_eq!(back, report);

    let csv = report.render().unwrap();
    let mut reader = csv::Reader::from_reader(csv.as_bytes());
    let headers = reader.headers().unwrap().clone();
    assert!(headers.iter().any(|h| h == "status"));
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 3);
    let status = headers.iter().position(|h| h == "status").unwrap();
    assert!(rows.iter().all(|r| &r[status] == "expected-counterexample"));
}

#[test]
fn passing_runs_exit_zero() {
    let suite = execute(&RunConfig {
        suite: Some("araki-family".into()),
        dims: vec![2, 3],
        trials: 4,
        ..RunConfig::default()
    })
    .unwrap();
    assert_eq!(suite.exit_code(), 0);
    assert_eq!(suite.summary.total, 4 * suite_checks("araki-family").unwrap().len());
    let demo = execute(&RunConfig {
        command: Command::Demo,
        ..RunConfig::default()
    })
    .unwrap();
    assert!(demo.demos.iter().all(|d| d.pass));
    assert_eq!(demo.exit_code(), 0);
}

#[test]
fn negative_control_fails_where_true_functional_passes() {
    let base = RunConfig {
        command: Command::Probe,
        dims: vec![2, 3],
        trials: 10,
        seed: 4,
        ..RunConfig::default()
    };
    assert_eq!(execute(&base).unwrap().exit_code(), 0);
    let broken = RunConfig {
        variant: Variant::FixedExponent(1.0),
        ..base
    };
    assert_eq!(execute(&broken).unwrap().exit_code(), 2);
}

#[test]
fn registry_ids_match_listing() {
    for def in REGISTRY {
        assert!(objective_ids().contains(&def.id));
        assert!(!def.statement.is_empty());
    }
}
