//! Command-line and config-file parsing.
//!
//! Precedence, highest first: command-line flags, the config file (`--config`,
//! else `$PHOTON_KICK_CONFIG`), built-in defaults. Everything is validated
//! before any stepping starts.
//!
//! Config files hold `key = value` lines; `#` starts a comment. Keys are
//! `epsilon`, `tolerance`, `max_steps`, `stride`, `targets` and `convention`.
//! List values (`epsilon` for sweeps, `targets`) are comma separated.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand as ClapSubcommand};
use photon_kick_core::config::{validate_targets, REFERENCE_EPSILON};
use photon_kick_core::{Convention, SimulationConfig};

use crate::error::CliError;

pub const CONFIG_ENV: &str = "PHOTON_KICK_CONFIG";

#[derive(Debug, Parser)]
#[command(
    name = "photon-kick",
    version,
    about = "Photon-absorption acceleration of a single electron"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, ClapSubcommand)]
enum Command {
    /// Run one trajectory to convergence and write the sampled rows.
    Run(Flags),
    /// Sample α and γ at each velocity target.
    Compare(Flags),
    /// Max |α − γ| for each of several photon energies.
    Sweep(Flags),
}

#[derive(Debug, Args)]
struct Flags {
    /// Photon energy ħω₀/(m c²); comma-separated list for `sweep`.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    epsilon: Option<Vec<f64>>,
    /// Stop once the next dilation increment √(1 − u²) is below this.
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    max_steps: Option<u64>,
    /// Record every k-th step.
    #[arg(long)]
    stride: Option<u64>,
    /// Comma-separated velocities to force-record, or `none`.
    #[arg(long)]
    targets: Option<String>,
    #[arg(long, value_parser = parse_convention)]
    convention: Option<Convention>,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

fn parse_convention(s: &str) -> Result<Convention, String> {
    s.parse().map_err(|e| format!("{e}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    Run,
    Compare,
    Sweep,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliInvocation {
    pub subcommand: Subcommand,
    /// One entry for `run`/`compare`; at least one for `sweep`.
    pub epsilons: Vec<f64>,
    /// Carries the first (or only) epsilon.
    pub config: SimulationConfig,
    pub out: Option<PathBuf>,
}

/// Values read from a config file; unset keys fall through to defaults.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct FileConfig {
    pub epsilon: Option<Vec<f64>>,
    pub tolerance: Option<f64>,
    pub max_steps: Option<u64>,
    pub stride: Option<u64>,
    pub targets: Option<Option<Vec<f64>>>,
    pub convention: Option<Convention>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = FileConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let lineno = idx + 1;
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::usage(format!("config line {lineno}: expected `key = value`"))
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |e: String| CliError::usage(format!("config line {lineno}: {key}: {e}"));
            match key {
                "epsilon" => cfg.epsilon = Some(parse_list(value).map_err(bad)?),
                "tolerance" => cfg.tolerance = Some(parse_number(value).map_err(bad)?),
                "max_steps" => cfg.max_steps = Some(parse_count(value).map_err(bad)?),
                "stride" => cfg.stride = Some(parse_count(value).map_err(bad)?),
                "targets" => cfg.targets = Some(parse_targets(value).map_err(bad)?),
                "convention" => {
                    cfg.convention = Some(value.parse().map_err(|e| bad(format!("{e}")))?)
                }
                other => {
                    return Err(CliError::usage(format!(
                        "config line {lineno}: unknown key `{other}`"
                    )))
                }
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io_at(path, e))?;
        Self::parse(&text)
    }
}

fn parse_number(s: &str) -> Result<f64, String> {
    s.parse::<f64>().map_err(|e| format!("`{s}`: {e}"))
}

fn parse_count(s: &str) -> Result<u64, String> {
    s.parse::<u64>().map_err(|e| format!("`{s}`: {e}"))
}

fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',').map(|v| parse_number(v.trim())).collect()
}

fn parse_targets(s: &str) -> Result<Option<Vec<f64>>, String> {
    if s.trim() == "none" {
        return Ok(None);
    }
    parse_list(s).map(Some)
}

/// Parses `argv` (including the program name). `env_config` is the value of
/// `$PHOTON_KICK_CONFIG`, consulted only when `--config` is absent.
pub fn parse_args<I, T>(argv: I, env_config: Option<PathBuf>) -> Result<CliInvocation, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let (subcommand, flags) = match cli.command {
        Command::Run(f) => (Subcommand::Run, f),
        Command::Compare(f) => (Subcommand::Compare, f),
        Command::Sweep(f) => (Subcommand::Sweep, f),
    };

    let file = match flags.config.clone().or(env_config) {
        Some(path) => FileConfig::load(&path)?,
        None => FileConfig::default(),
    };

    let epsilons = flags
        .epsilon
        .or(file.epsilon)
        .unwrap_or_else(|| vec![REFERENCE_EPSILON]);
    if epsilons.is_empty() {
        return Err(CliError::usage("--epsilon needs at least one value"));
    }
    if subcommand != Subcommand::Sweep && epsilons.len() != 1 {
        return Err(CliError::usage(
            "a list of epsilons is only accepted by `sweep`",
        ));
    }

    let mut config = SimulationConfig::new(epsilons[0]);
    if let Some(tol) = flags.tolerance.or(file.tolerance) {
        config.step_tolerance = tol;
    }
    if let Some(max_steps) = flags.max_steps.or(file.max_steps) {
        config.max_steps = max_steps;
    }
    if let Some(stride) = flags.stride.or(file.stride) {
        config.sample_stride = stride;
    }
    if let Some(conv) = flags.convention.or(file.convention) {
        config.convention = conv;
    }
    let targets = match flags.targets {
        Some(t) => Some(parse_targets(&t).map_err(|e| CliError::usage(format!("--targets: {e}")))?),
        None => file.targets,
    };
    if let Some(targets) = targets {
        config.velocity_targets = targets;
    }

    for &eps in &epsilons {
        config
            .clone()
            .with_epsilon(eps)
            .validate()
            .map_err(|e| CliError::usage(e.to_string()))?;
    }
    validate_targets(config.targets()).map_err(|e| CliError::usage(e.to_string()))?;

    Ok(CliInvocation {
        subcommand,
        epsilons,
        config,
        out: flags.out,
    })
}
