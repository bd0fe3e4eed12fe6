//! Acceptance criteria; one PASS/FAIL line each, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::Instant;

use majorlab::functional::Variant;
use majorlab::linalg::ComplexMatrix;
use majorlab::major::{majorize_via_compounds, weak_log_majorize, Relation};
use majorlab::matfun::{psd_power, PsdMatrix};
use majorlab::report::{execute, Command, Report, RunConfig};
use majorlab::search::{minimize_margin, Budget};
use majorlab::suites::checks::lie_trotter_errors;
use majorlab::suites::{
    run_check, run_check_trials, stream_seed, tightness_cartesian, Gen, Instance, Part, Profile, REGISTRY,
};
use majorlab::tolerance::Tolerance;

type Criterion = (&'static str, fn() -> Result<String, String>);

fn max_residual(report: &Report) -> f64 {
    report
        .probes
        .iter()
        .flat_map(|o| o.report.midpoint_checks.iter().map(|c| c.residual))
        .fold(f64::NEG_INFINITY, f64::max)
}

fn probe_config(trials: usize, variant: Variant) -> RunConfig {
    RunConfig {
        command: Command::Probe,
        dims: vec![1, 2, 3, 4],
        trials,
        seed: 20240601,
        variant,
        ..RunConfig::default()
    }
}

fn joint_logconvexity() -> Result<String, String> {
    let start = Instant::now();
    let report = execute(&probe_config(200, Variant::TwoVar)).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    let worst = max_residual(&report);
    let grids_ok = report.probes.iter().all(|o| o.report.grid.len() == 25);
    let norms: std::collections::BTreeSet<String> =
        report.probes.iter().map(|o| o.report.label.split(' ').nth(1).unwrap_or("").to_string()).collect();
    let msg = format!("{} probes, max residual {worst:.3e}, {secs:.1} s", report.probes.len());
    if report.probes.len() == 200 && grids_ok && worst <= 1e-9 && secs <= 60.0 && norms.len() >= 5 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn registry_sweep() -> Result<String, String> {
    let tol = Tolerance::with_log_margin(1e-8);
    let dims = [2, 3, 4, 5, 6];
    let (mut total, mut bad, mut worst_det) = (0usize, Vec::new(), 0f64);
    for def in REGISTRY {
        let outcomes = run_check_trials(def.id, &dims, 500, 7, &tol).map_err(|e| e.to_string())?;
        for o in &outcomes {
            total += 1;
            if !o.status.is_success() {
                bad.push(format!("{}@{}", o.check_id, o.seed));
            }
            if def.det_equality {
                worst_det = worst_det.max(o.det_margin.map_or(f64::INFINITY, f64::abs));
            }
        }
    }
    let msg = format!(
        "{} checks, {total} outcomes, {} unexpected, max |det margin| {worst_det:.3e}",
        REGISTRY.len(),
        bad.len()
    );
    if bad.is_empty() && worst_det <= 1e-8 {
        Ok(msg)
    } else {
        Err(format!("{msg}; first: {:?}", bad.iter().take(5).collect::<Vec<_>>()))
    }
}

fn oracle_equivalence() -> Result<String, String> {
    let tol = Tolerance::DEFAULT;
    let (mut agree, mut holds) = (0usize, 0usize);
    for i in 0..500u64 {
        let n = 1 + (i as usize % 5);
        let mut g = Gen::new(stream_seed(i, "oracle", n));
        let profile = g.pick(&Profile::ALL);
        let a = PsdMatrix::new(&g.psd(n, profile)).map_err(|e| e.to_string())?;
        let b = PsdMatrix::new(&g.psd(n, profile)).map_err(|e| e.to_string())?;
        // Odd pairs satisfy the relation, even pairs are arbitrary.
        let (x, y) = if i % 2 == 1 {
            let p = g.uniform(1.0, 3.0);
            let ah = psd_power(&a, 0.5);
            let x = PsdMatrix::project(&(&(ah.matrix() * b.matrix()) * ah.matrix())).map_err(|e| e.to_string())?;
            let ahp = psd_power(&a, p / 2.0);
            let y = PsdMatrix::project(&(&(ahp.matrix() * psd_power(&b, p).matrix()) * ahp.matrix()))
                .map_err(|e| e.to_string())?;
            (psd_power(&x, p), y)
        } else {
            (a, b)
        };
        let eig = weak_log_majorize(&x, &y, &tol).map_err(|e| e.to_string())?.verdict;
        let cmp = majorize_via_compounds(Relation::WeakLog, &x, &y, &tol).map_err(|e| e.to_string())?.verdict;
        agree += usize::from(eig == cmp);
        holds += usize::from(eig);
    }
    let msg = format!("{agree}/500 verdicts agree ({holds} hold)");
    if agree == 500 && holds > 0 && holds < 500 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn closed_forms() -> Result<String, String> {
    let gt = Instance::new("golden_thompson", 0, 2, Profile::WellConditioned)
        .with("S", Part::Matrix(ComplexMatrix::from_real_diag(&[1.0, -1.0])))
        .with("T", Part::Matrix(ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])));
    let slack = run_check("golden_thompson", &gt, &Tolerance::DEFAULT)
        .map_err(|e| e.to_string())?
        .slack
        .unwrap_or(f64::NAN);
    let expected = 2.0 * 1f64.cosh().powi(2) - 2.0 * 2f64.sqrt().cosh();
    let mut ok = (slack - expected).abs() <= 1e-6;
    let mut msg = format!("slack {slack:.10} vs {expected:.10}");
    for p in [1.0, 2.0, 3.0] {
        let r = tightness_cartesian(p).map_err(|e| e.to_string())?;
        ok &= (r - 1.0).abs() <= 1e-10;
        msg += &format!(", cartesian p={p}: {r:.12}");
    }
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn counterexample_search() -> Result<String, String> {
    let tol = Tolerance::DEFAULT;
    let budget = Budget::new(20, 200);
    let mut found = 0;
    let mut worst = f64::NEG_INFINITY;
    for seed in 0..100u64 {
        let r = minimize_margin("det_schur", &[2], &budget, seed, &tol).map_err(|e| e.to_string())?;
        found += usize::from(r.best_margin <= -1e-3 && r.verified);
        worst = worst.max(r.best_margin);
    }
    let msg = format!("{found}/100 seeds reach margin <= -1e-3 (least negative {worst:.4})");
    if found >= 95 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn negative_control() -> Result<String, String> {
    let report = execute(&probe_config(50, Variant::FixedExponent(1.0))).map_err(|e| e.to_string())?;
    let worst = max_residual(&report);
    let failing = report.probes.iter().filter(|o| !o.report.verdict).count();
    let msg = format!("max residual {worst:.3e}, {failing}/50 probes reject");
    if worst > 1e-6 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn determinism() -> Result<String, String> {
    let configs = [
        RunConfig {
            trials: 5,
            dims: vec![2, 3],
            seed: 11,
            ..RunConfig::default()
        },
        probe_config(10, Variant::TwoVar),
        RunConfig {
            command: Command::Search,
            objective: Some("det_schur".into()),
            dims: vec![2],
            restarts: 3,
            steps: 30,
            seed: 5,
            ..RunConfig::default()
        },
        RunConfig {
            command: Command::Demo,
            ..RunConfig::default()
        },
    ];
    let mut bytes = 0;
    for c in &configs {
        let a = execute(c).and_then(|r| r.to_json()).map_err(|e| e.to_string())?;
        let b = execute(c).and_then(|r| r.to_json()).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("{:?} run differs", c.command));
        }
        bytes += a.len();
    }
    Ok(format!("{} configurations identical ({bytes} bytes)", configs.len()))
}

fn lie_product() -> Result<String, String> {
    let mut worst_final = 0f64;
    for i in 0..20u64 {
        let n = 2 + (i as usize % 5);
        let mut g = Gen::new(stream_seed(i, "lie", n));
        let (h, k) = (g.hermitian(n), g.hermitian(n));
        let errors = lie_trotter_errors(&h, &k).map_err(|e| e.to_string())?;
        if let Some(j) = errors.windows(2).position(|w| w[1] >= w[0]) {
            return Err(format!("pair {i}: error grows at n = 2^{}", j + 1));
        }
        worst_final = worst_final.max(*errors.last().unwrap());
    }
    let msg = format!("20 pairs decrease, max error at n = 2^10: {worst_final:.3e}");
    if worst_final < 1e-4 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("joint log-convexity probes", joint_logconvexity),
        ("registry sweep", registry_sweep),
        ("eigen vs compound oracle", oracle_equivalence),
        ("closed forms", closed_forms),
        ("det_schur counterexample search", counterexample_search),
        ("fixed-exponent negative control", negative_control),
        ("byte-identical reports", determinism),
        ("Lie product convergence", lie_product),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(msg) => println!("[PASS] {}. {name}: {msg} [{secs:.1} s]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {}. {name}: {msg} [{secs:.1} s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
