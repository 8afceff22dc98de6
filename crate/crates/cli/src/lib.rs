//! Command-line front-end: figure presets, custom sweeps, config validation
//! and manifest replay.
//!
//! Every sweep writes `<out>.csv` and `<out>.manifest.json`. Exit status is 0
//! on success, 2 for configuration or request errors and 3 for I/O errors.

pub mod figures;
pub mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use backhaul_core::montecarlo::{grid, run_point, Axis, SweepRow, SweepSpec};
use backhaul_core::{load_scenario, Execution, Metric, Scenario, Strategy};
use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use figures::{default_trials, Figure, DEFAULT_TRACE_LENGTH};
use output::{csv_text, output_paths, sha256_hex, write_atomic, PointTiming, RunManifest, SweepRecord};

#[derive(Debug, Parser)]
#[command(
    name = "backhaul",
    version,
    about = "Hybrid sub-THz/FSO backhaul Monte Carlo simulator"
)]
pub struct Cli {
    /// Scenario file; built-in defaults when absent.
    #[arg(long, global = true, env = "BACKHAUL_CONFIG")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// End-to-end outage of modes 1-7 versus UE distance.
    #[command(name = "fig2-distance")]
    Fig2Distance(RunArgs),
    /// Single-hop outage versus transmit SNR.
    #[command(name = "fig3-power")]
    Fig3Power(RunArgs),
    /// Ergodic rate versus FSO visibility.
    #[command(name = "fig4-visibility")]
    Fig4Visibility(RunArgs),
    /// Outage versus beamwidth at 200 m and 400 m.
    #[command(name = "fig5-beamwidth")]
    Fig5Beamwidth(RunArgs),
    /// Free sweep over any axis.
    Custom(CustomArgs),
    /// Loads and checks the configuration, then prints it fully resolved.
    Validate,
    /// Re-runs the sweep recorded in a manifest.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Comma-separated strategies replacing the preset list.
    #[arg(long, value_delimiter = ',')]
    pub strategies: Option<Vec<String>>,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Trials per strategy and point; defaults to 1e7 for outage, 1e5 for rate.
    #[arg(long)]
    pub trials: Option<u64>,
    /// Output path prefix.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long)]
    pub workers: Option<usize>,
    /// `key=value` overrides, applied after any figure preset.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
}

#[derive(Debug, Clone, Args)]
pub struct CustomArgs {
    /// `name:start:stop:step`, where name is a built-in axis or a config key.
    #[arg(long, required_unless_present = "points")]
    pub axis: Option<String>,
    /// Explicit `name:v1,v2,...` instead of a grid.
    #[arg(long, conflicts_with = "axis")]
    pub points: Option<String>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub strategies: Vec<String>,
    #[arg(long, default_value = "outage")]
    pub metric: String,
    /// Steps per trace for `switch_rate`.
    #[arg(long, default_value_t = DEFAULT_TRACE_LENGTH)]
    pub trace_length: u64,
    #[command(flatten)]
    pub run: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ReplayArgs {
    pub manifest: PathBuf,
    /// Output prefix; defaults to the recorded CSV path without extension.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] backhaul_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Loads the scenario named by `--config`, or the defaults.
pub fn load_config(path: Option<&Path>) -> Result<Scenario, CliError> {
    match path {
        None => Ok(Scenario::default()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(io_err(p))?;
            Ok(load_scenario(&text)?)
        }
    }
}

fn apply_overrides(scenario: &mut Scenario, overrides: &[String]) -> Result<(), CliError> {
    for o in overrides {
        let (k, v) = o
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("override `{o}` is not KEY=VALUE")))?;
        scenario.set_text(k.trim(), v.trim())?;
    }
    scenario.validate()?;
    Ok(())
}

fn parse_strategies(names: &[String]) -> Result<Vec<Strategy>, CliError> {
    names.iter().map(|n| Ok(n.trim().parse::<Strategy>()?)).collect()
}

fn parse_axis(text: &str) -> Result<(Axis, Vec<f64>), CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let [name, start, stop, step] = parts[..] else {
        return Err(CliError::Usage(format!(
            "axis `{text}` is not name:start:stop:step"
        )));
    };
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("axis `{text}`: `{s}` is not a number")))
    };
    let axis: Axis = name.parse()?;
    Ok((axis, grid(num(start)?, num(stop)?, num(step)?)?))
}

fn parse_points(text: &str) -> Result<(Axis, Vec<f64>), CliError> {
    let (name, list) = text
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("points `{text}` is not name:v1,v2,...")))?;
    let points = list
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("points: `{s}` is not a number")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((name.parse()?, points))
}

/// A resolved run: scenario, sweep and where to write.
#[derive(Debug, Clone)]
pub struct Plan {
    pub command: String,
    pub scenario: Scenario,
    pub spec: SweepSpec,
    pub out: PathBuf,
    pub workers: Option<usize>,
    pub config_path: Option<PathBuf>,
}

pub fn figure_plan(
    figure: Figure,
    base: &Scenario,
    args: &RunArgs,
    config_path: Option<&Path>,
) -> Result<Plan, CliError> {
    let common = &args.common;
    let trials = common.trials.unwrap_or_else(|| default_trials(figure.metric()));
    let (mut scenario, mut spec) = figure.plan(base, trials, common.seed)?;
    apply_overrides(&mut scenario, &common.overrides)?;
    if let Some(names) = &args.strategies {
        spec.strategies = parse_strategies(names)?;
    }
    Ok(Plan {
        command: figure.command().to_string(),
        scenario,
        spec,
        out: common
            .out
            .clone()
            .unwrap_or_else(|| PathBuf::from(figure.command())),
        workers: common.workers,
        config_path: config_path.map(Path::to_path_buf),
    })
}

pub fn custom_plan(base: &Scenario, args: &CustomArgs, config_path: Option<&Path>) -> Result<Plan, CliError> {
    let (axis, points) = match (&args.axis, &args.points) {
        (Some(a), _) => parse_axis(a)?,
        (None, Some(p)) => parse_points(p)?,
        (None, None) => return Err(CliError::Usage("one of --axis or --points is required".into())),
    };
    let metric: Metric = args.metric.parse()?;
    let mut scenario = base.clone();
    apply_overrides(&mut scenario, &args.run.overrides)?;
    let spec = SweepSpec {
        axis,
        points,
        trials_per_point: args.run.trials.unwrap_or_else(|| default_trials(metric)),
        seed: args.run.seed,
        strategies: parse_strategies(&args.strategies)?,
        metric,
        trace_length: args.trace_length,
    };
    Ok(Plan {
        command: "custom".into(),
        scenario,
        spec,
        out: args.run.out.clone().unwrap_or_else(|| PathBuf::from("custom")),
        workers: args.run.workers,
        config_path: config_path.map(Path::to_path_buf),
    })
}

/// Rebuilds the plan stored in a manifest after checking its digest.
pub fn replay_plan(args: &ReplayArgs) -> Result<Plan, CliError> {
    let text = fs::read_to_string(&args.manifest).map_err(io_err(&args.manifest))?;
    let manifest: RunManifest = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", args.manifest.display())))?;
    if sha256_hex(manifest.config_text.as_bytes()) != manifest.scenario_digest {
        return Err(CliError::Usage(format!(
            "{}: scenario digest does not match the recorded config",
            args.manifest.display()
        )));
    }
    let scenario = load_scenario(&manifest.config_text)?;
    let spec = manifest.sweep.to_spec()?;
    let out = match &args.out {
        Some(o) => o.clone(),
        None => PathBuf::from(manifest.csv.strip_suffix(".csv").unwrap_or(&manifest.csv)),
    };
    Ok(Plan {
        command: manifest.command,
        scenario,
        spec,
        out,
        workers: args.workers.or(manifest.workers),
        config_path: manifest.config_path.map(PathBuf::from),
    })
}

/// Runs every point, then writes the CSV and the manifest. Nothing is
/// written if any point fails.
pub fn execute(plan: &Plan) -> Result<(Vec<SweepRow>, RunManifest), CliError> {
    plan.spec.validate()?;
    let exec = Execution::with_workers(plan.workers);
    let mut rows = Vec::new();
    let mut timings = Vec::new();
    for value in plan.spec.ascending_points() {
        let t0 = Instant::now();
        rows.extend(run_point(&plan.spec, &plan.scenario, value, exec)?);
        let seconds = t0.elapsed().as_secs_f64();
        eprintln!(
            "{}: {}={} done in {:.2} s",
            plan.command, plan.spec.axis, value, seconds
        );
        timings.push(PointTiming {
            axis_value: value,
            seconds,
        });
    }

    let (csv_path, manifest_path) = output_paths(&plan.out);
    if let Some(dir) = csv_path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    let config_text = plan.scenario.to_config_text();
    let manifest = RunManifest {
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: plan.command.clone(),
        scenario_digest: sha256_hex(config_text.as_bytes()),
        config_text,
        config_path: plan.config_path.as_ref().map(|p| p.display().to_string()),
        sweep: SweepRecord::from_spec(&plan.spec),
        seed: plan.spec.seed,
        workers: plan.workers,
        point_durations: timings,
        csv: csv_path.display().to_string(),
    };
    write_atomic(&csv_path, csv_text(&rows).as_bytes()).map_err(io_err(&csv_path))?;
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serialises");
    write_atomic(&manifest_path, json.as_bytes()).map_err(io_err(&manifest_path))?;
    Ok((rows, manifest))
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let config = cli.config.as_deref();
    let plan = match &cli.command {
        Command::Validate => {
            let s = load_config(config)?;
            print!("{}", s.to_config_text());
            return Ok(());
        }
        Command::Replay(args) => replay_plan(args)?,
        Command::Custom(args) => custom_plan(&load_config(config)?, args, config)?,
        Command::Fig2Distance(a) => figure_plan(Figure::Distance, &load_config(config)?, a, config)?,
        Command::Fig3Power(a) => figure_plan(Figure::Power, &load_config(config)?, a, config)?,
        Command::Fig4Visibility(a) => figure_plan(Figure::Visibility, &load_config(config)?, a, config)?,
        Command::Fig5Beamwidth(a) => figure_plan(Figure::Beamwidth, &load_config(config)?, a, config)?,
    };
    let (_, manifest) = execute(&plan)?;
    println!("{}", manifest.csv);
    Ok(())
}
