//! Command-line front end: `fit`, `solve`, `sweep`, and `report` over a flat
//! key-value config file.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::config::{load_config, ModelSource, RunConfig};
use crate::error::{Error, Result};
use crate::report::{self, SweepRow};
use crate::solver::{decide, ReleaseProblem, SolveRun};
use crate::srgm::{fit_with, FailureDataset, FitOptions};

pub const EXIT_OK: i32 = 0;
/// The goals conflicted; a goal-programming compromise was reported instead.
pub const EXIT_COMPROMISE: i32 = 1;
// clap reserves 2 for usage errors
pub const EXIT_CONFIG: i32 = 3;
pub const EXIT_ESTIMATION: i32 = 4;
pub const EXIT_FAILURE: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "reltime",
    version,
    about = "Release-time decisions under fuzzy cost and reliability goals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Estimate model parameters from the configured failure history.
    Fit {
        /// Run configuration (must name a `failure_data` source).
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        /// Also write a config with the estimates in place of the history.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Pick a release time: max-min satisfaction, goal-programming fallback.
    Solve {
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        /// Override the goal-programming weights as `cost,reliability`.
        #[arg(long, value_name = "W1,W2", value_parser = parse_weight_pair)]
        weights: Option<(f64, f64)>,
        /// Override the goal-programming target satisfaction level.
        #[arg(long, value_name = "LEVEL", value_parser = parse_alpha)]
        alpha_target: Option<f64>,
    },
    /// Print the cost/reliability/membership trade-off as CSV.
    Sweep {
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        /// Grid step (default: config `sweep_step`, else window span / 2000).
        #[arg(long, value_name = "STEP")]
        grid: Option<f64>,
        /// Keep signed memberships instead of clamping to [0, 1].
        #[arg(long)]
        unclamped: bool,
    },
    /// Write decision.txt and sweep.csv into a directory.
    Report {
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        /// Output directory (default: config `output`).
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
        #[arg(long, value_name = "STEP")]
        grid: Option<f64>,
        #[arg(long, value_name = "W1,W2", value_parser = parse_weight_pair)]
        weights: Option<(f64, f64)>,
        #[arg(long, value_name = "LEVEL", value_parser = parse_alpha)]
        alpha_target: Option<f64>,
    },
}

fn parse_weight_pair(s: &str) -> std::result::Result<(f64, f64), String> {
    let (cost, reliability) =
        s.split_once(',').ok_or_else(|| format!("expected `cost,reliability`, got `{s}`"))?;
    let parse = |part: &str| {
        part.trim()
            .parse::<f64>()
            .ok()
            .filter(|w| w.is_finite() && *w >= 0.0)
            .ok_or_else(|| format!("weights must be finite and non-negative, got `{s}`"))
    };
    Ok((parse(cost)?, parse(reliability)?))
}

fn parse_alpha(s: &str) -> std::result::Result<f64, String> {
    s.parse::<f64>()
        .ok()
        .filter(|a| a.is_finite() && (0.0..=1.0).contains(a))
        .ok_or_else(|| format!("target level must lie in [0, 1], got `{s}`"))
}

/// Parses the command line, runs the command, and returns the process exit
/// code. Errors print to stderr.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Config(_) => EXIT_CONFIG,
        Error::Estimation(_) => EXIT_ESTIMATION,
        Error::Domain(_) | Error::Io(_) => EXIT_FAILURE,
    }
}

/// Writes to stdout, treating a closed pipe (e.g. `reltime sweep | head`) as
/// a normal early stop rather than an error.
fn emit(text: &str) -> Result<()> {
    use std::io::Write;
    match std::io::stdout().write_all(text.as_bytes()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(Error::Io(format!("stdout: {e}"))),
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Fit { config, out } => run_fit(&config, out.as_deref()),
        Command::Solve { config, weights, alpha_target } => {
            let cfg = load_config(&config)?;
            let (problem, run) = solve_from(&cfg, weights, alpha_target)?;
            emit(&report::render_decision(&run, &problem))?;
            Ok(exit_for(&run))
        }
        Command::Sweep { config, grid, unclamped } => {
            let cfg = load_config(&config)?;
            let (model, _) = cfg.resolve_model()?;
            let problem = cfg.problem(model)?;
            let rows = sweep_rows(&cfg, &problem, grid, !unclamped)?;
            emit(&report::sweep_csv(&rows))?;
            Ok(EXIT_OK)
        }
        Command::Report { config, out, grid, weights, alpha_target } => {
            run_report(&config, out, grid, weights, alpha_target)
        }
    }
}

fn run_fit(config: &Path, out: Option<&Path>) -> Result<i32> {
    let cfg = load_config(config)?;
    let ModelSource::FailureData(path) = &cfg.model else {
        return Err(Error::config(
            "failure_data",
            None,
            "fit needs a failure_data source in the config",
        ));
    };
    let data = FailureDataset::from_path(path)?;
    let outcome = fit_with(&data, &FitOptions { method: cfg.fit_method, ..FitOptions::default() })?;
    emit(&report::render_fit(&outcome, &data))?;
    if let Some(out) = out {
        write_file(out, &cfg.render_derived(&outcome.model))?;
        emit(&format!("derived config written to {}\n", out.display()))?;
    }
    Ok(EXIT_OK)
}

fn run_report(
    config: &Path,
    out: Option<PathBuf>,
    grid: Option<f64>,
    weights: Option<(f64, f64)>,
    alpha_target: Option<f64>,
) -> Result<i32> {
    let cfg = load_config(config)?;
    let Some(dir) = out.or_else(|| cfg.output.clone()) else {
        return Err(Error::config(
            "output",
            None,
            "report needs --out or an `output` key in the config",
        ));
    };
    std::fs::create_dir_all(&dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;

    let (problem, run) = solve_from(&cfg, weights, alpha_target)?;
    write_file(&dir.join("decision.txt"), &report::render_decision(&run, &problem))?;
    let rows = sweep_rows(&cfg, &problem, grid, true)?;
    write_file(&dir.join("sweep.csv"), &report::sweep_csv(&rows))?;
    emit(&format!("report written to {}\n", dir.display()))?;
    Ok(exit_for(&run))
}

fn solve_from(
    cfg: &RunConfig,
    weights: Option<(f64, f64)>,
    alpha_target: Option<f64>,
) -> Result<(ReleaseProblem, SolveRun)> {
    let (model, _) = cfg.resolve_model()?;
    let problem = cfg.problem(model)?;
    let run = decide(
        &problem,
        weights.unwrap_or(cfg.weights),
        alpha_target.unwrap_or(cfg.alpha_target),
        &cfg.solver_options(),
    )?;
    Ok((problem, run))
}

fn sweep_rows(
    cfg: &RunConfig,
    problem: &ReleaseProblem,
    grid: Option<f64>,
    clamp: bool,
) -> Result<Vec<SweepRow>> {
    let window = cfg.window.unwrap_or_else(|| report::default_sweep_window(problem));
    let step = grid.or(cfg.sweep_step).unwrap_or((window.1 - window.0) / 2000.0);
    report::sweep(problem, window, step, clamp)
}

fn exit_for(run: &SolveRun) -> i32 {
    match run {
        SolveRun::Feasible(_) => EXIT_OK,
        SolveRun::Compromise { .. } => EXIT_COMPROMISE,
    }
}

fn write_file(path: &Path, content: &str) -> Result<()> {
    std::fs::write(path, content).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
