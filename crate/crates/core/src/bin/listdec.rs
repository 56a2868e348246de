use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use listdec::scenario::{emit_plotdata, parse_report, run_scenario, ScenarioConfig, ScenarioError, ScenarioKind};

#[derive(Parser)]
#[command(name = "listdec", version, about = "List-decoding experiments in Hamming space")]
struct Cli {
    /// Scenario config of `key = value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Master seed; overrides the config's `seed`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Output file; overrides the config's `out`. Stdout when neither is set.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Extra `key=value` settings, applied after the config file.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    set: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Decide list-decodability of a code file exactly.
    Check,
    /// Run a construction over seeded random constant-weight codes.
    Construct,
    /// Evaluate a closed-form bound or sweep an inequality.
    Bounds,
    /// Witness-count campaigns over random codes.
    Montecarlo,
    /// Run the full invariant suite.
    VerifyFacts,
    /// Project columns of a scenario CSV for plotting.
    Plot,
}

impl Command {
    fn kind(self) -> ScenarioKind {
        match self {
            Command::Check => ScenarioKind::Check,
            Command::Construct => ScenarioKind::Construct,
            Command::Bounds => ScenarioKind::Bounds,
            Command::Montecarlo => ScenarioKind::MonteCarlo,
            Command::VerifyFacts => ScenarioKind::VerifyFacts,
            Command::Plot => ScenarioKind::Plot,
        }
    }
}

fn io_err(path: &std::path::Path, e: std::io::Error) -> ScenarioError {
    ScenarioError::Io(format!("{}: {e}", path.display()))
}

fn run(cli: Cli) -> Result<(), ScenarioError> {
    let text = match &cli.config {
        Some(p) => std::fs::read_to_string(p).map_err(|e| io_err(p, e))?,
        None => String::new(),
    };
    let mut overrides = Vec::new();
    for s in &cli.set {
        let (k, v) = s
            .split_once('=')
            .ok_or_else(|| ScenarioError::Config { key: s.clone(), message: "expected KEY=VALUE".into() })?;
        overrides.push((k.trim().to_string(), v.trim().to_string()));
    }
    if let Some(seed) = cli.seed {
        overrides.push(("seed".into(), seed.to_string()));
    }
    if let Some(out) = &cli.out {
        overrides.push(("out".into(), out.display().to_string()));
    }
    let cfg = ScenarioConfig::from_text(Some(cli.command.kind()), &text, &overrides)?;
    if let Some(k) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| ScenarioError::Config { key: "workers".into(), message: e.to_string() })?;
    }
    let (body, failures) = if cfg.scenario == ScenarioKind::Plot {
        let input = PathBuf::from(cfg.raw("input"));
        let report = parse_report(&std::fs::read_to_string(&input).map_err(|e| io_err(&input, e))?)?;
        let ys: Vec<&str> = cfg.raw("y").split_whitespace().collect();
        (emit_plotdata(&report, cfg.raw("x"), &ys)?, 0)
    } else {
        let report = run_scenario(&cfg)?;
        eprintln!("wall clock: {:.3} s", report.wall_clock.as_secs_f64());
        (report.to_csv(), report.failures)
    };
    match cfg.out() {
        Some(path) => std::fs::write(path, body).map_err(|e| io_err(path.as_ref(), e))?,
        None => print!("{body}"),
    }
    if failures > 0 {
        return Err(ScenarioError::Failed(format!("{failures} row(s) failed their check")));
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("listdec: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
