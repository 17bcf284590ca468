//! Command-line surface.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;
use crate::run::run_scenario;
use crate::scenario::{parse_seed, preset, Kind, Scenario, Settings};
use crate::table::{Format, ResultTable};

/// Environment variable naming the directory used when `--out` is absent.
pub const OUT_DIR_ENV: &str = "THERMOMACHINE_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "thermomachine", version, about = "Collisional thermometry: SNR sweeps, heat ledgers and estimator checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Steady-state SNR over a temperature sweep.
    Steady(CommonArgs),
    /// Transient SNR against the number of collisions.
    Transient(CommonArgs),
    /// Machine SNR against a thermal probe measured k times.
    Cost(CommonArgs),
    /// Per-collision sample, ancilla and probe energy bookkeeping.
    Heat(CommonArgs),
    /// Steady SNR with a mis-estimated ancilla temperature.
    Noisy(CommonArgs),
    /// Maximum-likelihood estimation on simulated measurement records.
    Montecarlo(CommonArgs),
    /// Built-in self-test; exit status 2 if any check fails.
    Verify(CommonArgs),
    /// A built-in scenario: fig1b, fig2a, fig2b, fig3, figS1a, figS1b, figS2-ratio.
    Preset {
        name: String,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// TOML file of scenario settings.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Override one setting; repeatable, wins over the config file.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    /// Output file; defaults to $THERMOMACHINE_OUT_DIR/<name>.<ext> or stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: FormatArg,
    /// Master seed, decimal or 0x-prefixed hex.
    #[arg(long, value_parser = parse_seed)]
    pub seed: Option<u64>,
}

impl Command {
    fn parts(&self) -> (Option<&str>, Option<Kind>, &CommonArgs) {
        match self {
            Command::Steady(c) => (None, Some(Kind::SteadySweep), c),
            Command::Transient(c) => (None, Some(Kind::TransientSweep), c),
            Command::Cost(c) => (None, Some(Kind::CostComparison), c),
            Command::Heat(c) => (None, Some(Kind::HeatTrajectory), c),
            Command::Noisy(c) => (None, Some(Kind::NoisyAncilla), c),
            Command::Montecarlo(c) => (None, Some(Kind::Montecarlo), c),
            Command::Verify(c) => (None, Some(Kind::Verify), c),
            Command::Preset { name, common } => (Some(name), None, common),
        }
    }
}

/// Scenario after applying, in order, defaults or preset, config file,
/// `--set` pairs and `--seed`.
pub fn build_scenario(command: &Command) -> Result<Scenario, CliError> {
    let (name, kind, args) = command.parts();
    let mut scenario = match (name, kind) {
        (Some(name), _) => preset(name)?,
        (None, Some(kind)) => Scenario::defaults(kind),
        (None, None) => unreachable!("every command names a kind or a preset"),
    };
    let file = match &args.config {
        Some(path) => Some(std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?),
        None => None,
    };
    scenario.apply(&Settings::load(file.as_deref(), &args.set)?)?;
    if let Some(seed) = args.seed {
        scenario.seed = seed;
    }
    Ok(scenario)
}

fn destination(args: &CommonArgs, name: &str, format: Format) -> Option<PathBuf> {
    args.out.clone().or_else(|| {
        std::env::var_os(OUT_DIR_ENV)
            .filter(|d| !d.is_empty())
            .map(|dir| Path::new(&dir).join(format!("{name}.{}", format.extension())))
    })
}

/// Runs one invocation and writes its table.
pub fn execute(cli: &Cli) -> Result<(), CliError> {
    let scenario = build_scenario(&cli.command)?;
    let table = run_scenario(&scenario)?;
    let (_, _, args) = cli.command.parts();
    let format = match args.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    match destination(args, &scenario.name, format) {
        Some(path) => table.export(format, &path)?,
        None => std::io::stdout()
            .lock()
            .write_all(table.encode(format).as_bytes())
            .map_err(|e| CliError::io("<stdout>", e))?,
    }
    if scenario.kind == Kind::Verify {
        check_verification(&table)?;
    }
    Ok(())
}

pub(crate) fn check_verification(table: &ResultTable) -> Result<(), CliError> {
    let passed = table.column("passed").unwrap_or_default();
    let failed: Vec<String> = passed
        .iter()
        .enumerate()
        .filter(|(_, p)| **p != 1.0)
        .map(|(i, _)| {
            let key = format!("check.{:02}", i + 1);
            table.meta.get(&key).cloned().unwrap_or(key)
        })
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(failed.join("; ")))
    }
}
