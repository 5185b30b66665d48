//! Command-line front end: one subcommand per study, CSV/JSON output and a
//! `manifest.json` that can be replayed with `--from-manifest`.

pub mod angle;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, CommandFactory, Parser, Subcommand};

pub use angle::{parse_angle, Angle, AngleParseError};
pub use config::{CoinSpec, CommandKind, DisorderArg, OutputFormat, RunConfig, TargetArg};
pub use output::RunManifest;

use crate::error::WalkError;
use crate::experiments::{angle_grid, coherence_series, disorder_ensemble, line_scan, run_series, sweep, SweepGrid};

/// Environment variable consulted when `--out-dir` is absent.
pub const OUT_DIR_ENV: &str = "ALTWALK_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "altwalk", version, about = "Two-dimensional alternate quantum walk with step-dependent phase gates")]
pub struct Cli {
    /// Re-run the configuration recorded in a manifest.json
    #[arg(long, value_name = "PATH")]
    pub from_manifest: Option<PathBuf>,

    /// Output directory (default: $ALTWALK_OUT_DIR, else the current directory)
    #[arg(long, global = true, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Return probability P0(t) and running average for one walk
    Evolve(RunArgs),
    /// Average return probability over an n x n grid of (phi_x, phi_y)
    Sweep(RunArgs),
    /// Average return probability along phi_x with phi_y = 0
    Scan(RunArgs),
    /// Trial-averaged walk with a disordered phase gate
    Disorder(RunArgs),
    /// Coherence norm between the x and y walkers at every step
    Coherence(RunArgs),
}

#[derive(Debug, Args, Clone)]
pub struct RunArgs {
    /// Number of time steps (default: 40 for sweep/coherence, else 100)
    #[arg(long)]
    pub steps: Option<usize>,
    /// Phase-gate angle before the x shift: radians or e.g. 19pi/25
    #[arg(long, default_value = "0", value_parser = parse_angle_arg, allow_hyphen_values = true)]
    pub phi_x: Angle,
    /// Phase-gate angle before the y shift
    #[arg(long, default_value = "0", value_parser = parse_angle_arg, allow_hyphen_values = true)]
    pub phi_y: Angle,
    /// Initial coin: zero, one, plus, plus-y, or a0,a1 (complex, e.g. 0.6,0.8i)
    #[arg(long, default_value = "plus-y", value_parser = parse_coin_arg)]
    pub coin: CoinSpec,
    /// Index t of the first step in P(phi, t)
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(i64).range(0..=1))]
    pub step_base: i64,
    /// Disorder model of the phase angle
    #[arg(long, value_enum)]
    pub disorder: Option<DisorderArg>,
    /// Which phase gate the disorder perturbs
    #[arg(long, value_enum, default_value = "phi-x")]
    pub disorder_target: TargetArg,
    /// Half-width of the uniform relative perturbation
    #[arg(long, default_value_t = 0.01)]
    pub epsilon: f64,
    /// Number of disorder trials (disorder subcommand)
    #[arg(long)]
    pub trials: Option<usize>,
    /// Disorder seed (base seed for trial ensembles)
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Angles per axis for sweep and scan, spaced 2pi/n
    #[arg(long, default_value_t = 50)]
    pub grid_n: usize,
    /// Largest density-matrix dimension for the coherence norm
    #[arg(long, default_value_t = crate::observables::DEFAULT_DIMENSION_CAP)]
    pub coherence_cap: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,
}

fn parse_angle_arg(s: &str) -> Result<Angle, AngleParseError> {
    s.parse()
}

fn parse_coin_arg(s: &str) -> Result<CoinSpec, String> {
    s.parse()
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags or flag combinations; exit code 2.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// Checks flag combinations and resolves defaults.
pub fn resolve(kind: CommandKind, args: &RunArgs) -> Result<RunConfig, CliError> {
    let disorder = args.disorder.unwrap_or(DisorderArg::None);
    if args.trials.is_some() && disorder == DisorderArg::None {
        return Err(CliError::Usage("--trials requires --disorder time|position|both".into()));
    }
    if args.trials.is_some() && kind != CommandKind::Disorder {
        return Err(CliError::Usage("--trials is only meaningful for the disorder subcommand".into()));
    }
    if kind == CommandKind::Disorder && disorder == DisorderArg::None {
        return Err(CliError::Usage("the disorder subcommand requires --disorder time|position|both".into()));
    }
    if !(args.epsilon.is_finite() && args.epsilon >= 0.0) {
        return Err(CliError::Usage("--epsilon must be a finite non-negative number".into()));
    }
    if args.trials == Some(0) {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    if matches!(kind, CommandKind::Sweep | CommandKind::Scan) && args.grid_n == 0 {
        return Err(CliError::Usage("--grid-n must be at least 1".into()));
    }
    let steps = args.steps.unwrap_or(kind.default_steps());
    if matches!(kind, CommandKind::Sweep | CommandKind::Scan) && (steps < 2 || !steps.is_multiple_of(2)) {
        return Err(CliError::Usage(format!(
            "--steps must be even and at least 2 for {}, got {steps}",
            kind.name()
        )));
    }
    Ok(RunConfig {
        command: kind,
        steps,
        phi_x: args.phi_x.clone(),
        phi_y: args.phi_y.clone(),
        coin: args.coin.clone(),
        step_base: args.step_base,
        disorder,
        disorder_target: args.disorder_target,
        epsilon: args.epsilon,
        seed: args.seed,
        trials: match kind {
            CommandKind::Disorder => Some(args.trials.unwrap_or(100)),
            _ => None,
        },
        grid_n: args.grid_n,
        coherence_cap: args.coherence_cap,
        format: args.format,
    })
}

/// Runs `config`, writing data files and `manifest.json` into `out_dir`.
pub fn execute(config: &RunConfig, out_dir: &Path) -> Result<RunManifest, CliError> {
    let started = Instant::now();
    std::fs::create_dir_all(out_dir)?;
    let params = config.walk_params();
    let mut outputs = Vec::new();

    match config.command {
        CommandKind::Evolve => {
            let records = run_series(&params)?;
            outputs.push(output::write_series(out_dir, config.format, &records)?);
        }
        CommandKind::Sweep => {
            let mut grid = SweepGrid::uniform(config.grid_n, config.steps);
            grid.template = params;
            let values = sweep(&grid)?;
            let rows: Vec<(f64, f64, f64)> = grid
                .phi_x_values
                .iter()
                .zip(&values)
                .flat_map(|(&px, row)| grid.phi_y_values.iter().zip(row).map(move |(&py, &v)| (px, py, v)))
                .collect();
            outputs.push(output::write_grid(out_dir, config.format, &rows)?);
        }
        CommandKind::Scan => {
            let mut template = params;
            template.phi_y = 0.0;
            let scan = line_scan(&angle_grid(config.grid_n), &template)?;
            let rows: Vec<(f64, f64, f64)> = scan.points.iter().map(|&(px, v)| (px, 0.0, v)).collect();
            outputs.push(output::write_grid(out_dir, config.format, &rows)?);
            let (best_phi, best) = scan.best();
            println!(
                "argmax: phi_x = {} ({}pi/{}), p_bar = {}",
                output::fmt_real(best_phi),
                2 * scan.argmax,
                config.grid_n,
                output::fmt_real(best)
            );
        }
        CommandKind::Disorder => {
            let trials = config.trials.unwrap_or(100);
            let ensemble = disorder_ensemble(&params, config.disorder.into(), config.epsilon, trials, config.seed)?;
            outputs.push(output::write_series(out_dir, config.format, &ensemble.records())?);
        }
        CommandKind::Coherence => {
            let rows = coherence_series(&params, config.steps, config.coherence_cap)?;
            outputs.push(output::write_coherence(out_dir, config.format, &rows)?);
        }
    }

    let manifest = RunManifest {
        command: config.command.name().to_string(),
        config: config.clone(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        outputs: outputs
            .iter()
            .filter_map(|p| p.file_name().map(|f| f.to_string_lossy().into_owned()))
            .collect(),
        duration_secs: started.elapsed().as_secs_f64(),
    };
    manifest.write(out_dir)?;
    Ok(manifest)
}

fn default_out_dir() -> PathBuf {
    std::env::var_os(OUT_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("."))
}

/// Runs the parsed command line; returns the process exit code.
pub fn run(cli: Cli) -> Result<RunManifest, CliError> {
    let out_dir = cli.out_dir.clone().unwrap_or_else(default_out_dir);
    let config = match (&cli.from_manifest, &cli.command) {
        (Some(_), Some(_)) => {
            return Err(CliError::Usage("--from-manifest cannot be combined with a subcommand".into()))
        }
        (None, None) => return Err(CliError::Usage("a subcommand or --from-manifest is required".into())),
        (Some(path), None) => RunManifest::read(path)?.config.normalized().map_err(CliError::Usage)?,
        (None, Some(cmd)) => {
            let (kind, args) = match cmd {
                Command::Evolve(a) => (CommandKind::Evolve, a),
                Command::Sweep(a) => (CommandKind::Sweep, a),
                Command::Scan(a) => (CommandKind::Scan, a),
                Command::Disorder(a) => (CommandKind::Disorder, a),
                Command::Coherence(a) => (CommandKind::Coherence, a),
            };
            resolve(kind, args)?
        }
    };
    execute(&config, &out_dir)
}

/// Entry point for the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(cli) {
        Ok(manifest) => {
            for f in &manifest.outputs {
                eprintln!("wrote {f}");
            }
            0
        }
        Err(CliError::Usage(msg)) => {
            let err = Cli::command().error(clap::error::ErrorKind::ArgumentConflict, msg);
            let _ = err.print();
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
