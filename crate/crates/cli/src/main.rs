//! `majorlab`: run inequality suites, log-convexity probes, margin searches
//! and the closed-form demos, and write the report as JSON or CSV.
//!
//! Exit status is 0 when every verdict holds, 2 when any verdict is false
//! (a found counterexample included; its outcome is labelled
//! `expected-counterexample`) and 1 on usage or configuration errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, ValueEnum};
use majorlab::functional::Variant;
use majorlab::norms::SymmetricNorm;
use majorlab::report::{execute, Command, Format, RunConfig};
use majorlab::search::objective_ids;
use majorlab::suites::{REGISTRY, SUITES};
use majorlab::Error;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "majorlab", version, about = "Randomized checks of log-majorization and symmetric-norm inequalities")]
#[command(group(ArgGroup::new("mode").args(["suite", "check", "objective", "probe", "demo", "list"])))]
struct Cli {
    /// Run every check of a suite.
    #[arg(long)]
    suite: Option<String>,
    /// Run a single check.
    #[arg(long)]
    check: Option<String>,
    /// Hill-climb the margin of an objective.
    #[arg(long)]
    objective: Option<String>,
    /// Probe joint log-convexity of random functionals.
    #[arg(long)]
    probe: bool,
    /// Evaluate the closed-form examples.
    #[arg(long)]
    demo: bool,
    /// Print check, suite and objective ids.
    #[arg(long)]
    list: bool,
    /// Dimensions, comma separated or repeated.
    #[arg(long = "dim", value_delimiter = ',')]
    dims: Vec<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, env = "MAJORLAB_SEED")]
    seed: Option<u64>,
    /// Log-margin tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Probe grid, `p:a,b,c;t:x,y,z`.
    #[arg(long)]
    grid: Option<String>,
    /// Probe norm: operator, trace, schatten:P, kyfan:K, nkyfan:K.
    #[arg(long)]
    norm: Option<String>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Probe variant: two-var, section-t1, section-p1, power-p, congruence, fixed:C.
    #[arg(long)]
    variant: Option<String>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    steps: Option<usize>,
    /// Report path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Start from a saved JSON run configuration; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn usage(msg: impl std::fmt::Display) -> String {
    format!("majorlab: {msg}")
}

fn build_config(cli: &Cli) -> Result<RunConfig, String> {
    let mut config = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?
        }
        None => RunConfig::default(),
    };
    if let Some(s) = &cli.suite {
        config.command = Command::Suite;
        config.suite = Some(s.clone());
        config.check = None;
    }
    if let Some(c) = &cli.check {
        config.command = Command::Suite;
        config.check = Some(c.clone());
    }
    if let Some(o) = &cli.objective {
        config.command = Command::Search;
        config.objective = Some(o.clone());
    }
    if cli.probe {
        config.command = Command::Probe;
    }
    if cli.demo {
        config.command = Command::Demo;
    }
    if !cli.dims.is_empty() {
        config.dims = cli.dims.clone();
    }
    if let Some(t) = cli.trials {
        config.trials = t;
    }
    if let Some(s) = cli.seed {
        config.seed = s;
    }
    if let Some(t) = cli.tol {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(usage(format!("--tol {t} must be a nonnegative number")));
        }
        config.tol = t;
    }
    if let Some(g) = &cli.grid {
        config.grid = Some(g.clone());
    }
    if let Some(n) = &cli.norm {
        config.norm = Some(n.parse::<SymmetricNorm>().map_err(usage)?);
    }
    if let Some(a) = cli.alpha {
        config.alpha = Some(a);
    }
    if let Some(v) = &cli.variant {
        config.variant = v.parse::<Variant>().map_err(usage)?;
    }
    if let Some(r) = cli.restarts {
        config.restarts = r;
    }
    if let Some(s) = cli.steps {
        config.steps = s;
    }
    if let Some(o) = &cli.out {
        config.out = Some(o.display().to_string());
    }
    if let Some(f) = cli.format {
        config.format = match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        };
    }
    Ok(config)
}

fn list() -> String {
    let mut out = String::from("checks:\n");
    for c in REGISTRY {
        let tag = if c.expects_violation { " [expects violation]" } else { "" };
        out += &format!("  {:26} {}{tag}\n", c.id, c.statement);
    }
    out += "suites:\n";
    for (id, _) in SUITES {
        out += &format!("  {id}\n");
    }
    out += "objectives:\n";
    for id in objective_ids() {
        out += &format!("  {id}\n");
    }
    out
}

/// Write to standard output; a closed pipe is not an error.
fn emit(text: &str) -> Result<(), String> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(usage(e)),
        _ => Ok(()),
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    if cli.list {
        emit(&list())?;
        return Ok(ExitCode::SUCCESS);
    }
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(usage("--jobs must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(usage)?;
    }
    let config = build_config(cli)?;
    let report = execute(&config).map_err(|e: Error| usage(e))?;
    let text = report.render().map_err(usage)?;
    match &config.out {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("{path}: {e}")))?,
        None => emit(&text)?,
    }
    let s = &report.summary;
    eprintln!(
        "majorlab: {} evaluated, {} false verdicts, {} unexpected",
        s.total, s.false_verdicts, s.unexpected
    );
    Ok(ExitCode::from(report.exit_code() as u8))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
    }
}
