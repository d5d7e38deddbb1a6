//! `umbralqm`: tabulates discrete polynomials, special functions and
//! Schrödinger spectra on a lattice as CSV or JSON.
//!
//! Exit codes: 0 on success, 2 on invalid input, 1 on internal failure or a
//! failed `check`. Data goes to stdout or `--out`; diagnostics to stderr.

pub mod commands;
pub mod config;
pub mod error;
pub mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use umbral_core::TrigKind;

use crate::commands::{Output, Particle, SeriesMode};
use crate::config::{parse_window, CorrSelection, Format, PartialConfig, RunConfig, CONFIG_ENV};
use crate::error::CliError;
use crate::table::Table;

pub use crate::table::split_csv_sections;

fn window_arg(s: &str) -> Result<(i64, i64), String> {
    parse_window(s).map_err(|e| e.to_string())
}

fn corr_arg(s: &str) -> Result<CorrSelection, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

fn format_arg(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

fn trig_arg(s: &str) -> Result<TrigKind, String> {
    s.parse().map_err(|e: umbral_core::Error| e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "umbralqm",
    version,
    about = "Discrete quantum mechanics on a lattice via umbral calculus"
)]
pub struct Cli {
    /// Lattice spacing σ.
    #[arg(long, global = true)]
    pub sigma: Option<f64>,
    /// Time step τ.
    #[arg(long, global = true)]
    pub tau: Option<f64>,
    /// right, left, symmetric or all.
    #[arg(long, global = true, value_parser = corr_arg)]
    pub corr: Option<CorrSelection>,
    /// csv or json.
    #[arg(long, global = true, value_parser = format_arg)]
    pub format: Option<Format>,
    /// Write to PATH instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Lattice indices MIN:MAX.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = window_arg)]
    pub window: Option<(i64, i64)>,
    /// Series tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Basic polynomials x⁽ⁿ⁾ beside the monomials xⁿ.
    Polys {
        /// Comma-separated degrees.
        #[arg(long, value_delimiter = ',', default_value = "0,1,2,3")]
        n: Vec<u64>,
    },
    /// Discrete exponentials E(k, x): closed form and series.
    Exp {
        #[arg(long, allow_hyphen_values = true)]
        k: f64,
        /// Imaginary part of k.
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        k_im: f64,
        #[arg(long, value_enum, default_value_t = SeriesMode::Auto)]
        series: SeriesMode,
    },
    /// Discrete sin, cos, sinh, cosh from a momentum or a wavelength.
    Trig {
        #[arg(
            long,
            allow_hyphen_values = true,
            conflicts_with = "l",
            required_unless_present = "l"
        )]
        k: Option<f64>,
        /// Lattice points per wavelength.
        #[arg(long)]
        l: Option<f64>,
        #[arg(long, value_parser = trig_arg, default_value = "sin")]
        func: TrigKind,
    },
    /// Infinite-well spectrum and wavefunctions.
    Well {
        /// Lattice intervals across the well (M).
        #[arg(long, default_value_t = 8)]
        points: u64,
        /// Comma-separated levels; default 1,2,3.
        #[arg(long, value_delimiter = ',')]
        levels: Option<Vec<u64>>,
    },
    /// Upper energy limits set by σ and τ, in eV.
    Bounds {
        #[arg(long, value_enum, default_value_t = Particle::Electron)]
        particle: Particle,
        /// Mass in kg, for --particle custom.
        #[arg(long)]
        mass: Option<f64>,
        /// Also estimate the largest well energy for M points.
        #[arg(long)]
        points: Option<f64>,
    },
    /// Run the invariant suite.
    Check,
}

impl Cli {
    fn flags(&self) -> PartialConfig {
        PartialConfig {
            sigma: self.sigma,
            tau: self.tau,
            corr: self.corr,
            format: self.format,
            out: self.out.clone(),
            window: self.window,
            tol: self.tol,
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. The config file is read from `config_path` when given.
pub fn run_with<I, T>(
    args: I,
    config_path: Option<PathBuf>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    2
                }
            };
        }
    };
    match execute(&cli, config_path.as_deref(), stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

/// Entry point for the binary: process arguments, `UMBRALQM_CONFIG`, real
/// stdout and stderr.
pub fn run() -> i32 {
    let config = std::env::var_os(CONFIG_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from);
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(
        std::env::args_os(),
        config,
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}

fn execute(
    cli: &Cli,
    config_path: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    let file = match config_path {
        Some(p) => PartialConfig::from_file(p)?,
        None => PartialConfig::default(),
    };
    let cfg = RunConfig::resolve(cli.flags(), file)?;
    let output = match &cli.command {
        Command::Polys { n } => commands::polys(&cfg, n)?,
        Command::Exp { k, k_im, series } => commands::exp(&cfg, *k, *k_im, *series)?,
        Command::Trig { k, l, func } => commands::trig(&cfg, *k, *l, *func)?,
        Command::Well { points, levels } => commands::well(&cfg, *points, levels.as_deref())?,
        Command::Bounds {
            particle,
            mass,
            points,
        } => commands::bounds(&cfg, *particle, *mass, *points)?,
        Command::Check => commands::check(&cfg)?,
    };
    for w in &output.warnings {
        writeln!(stderr, "warning: {w}")?;
    }
    emit(&cfg, &output, stdout)?;
    if output.failed {
        writeln!(stderr, "error: {} reported failures", output.command)?;
        return Ok(1);
    }
    Ok(0)
}

/// The JSON document for an output: `{meta, data}`.
pub fn json_document(cfg: &RunConfig, output: &Output) -> Value {
    let mut data = serde_json::Map::new();
    for t in &output.tables {
        data.insert(t.name.clone(), t.to_json_columns());
    }
    json!({
        "meta": {
            "command": output.command,
            "versions": {
                "umbralqm": env!("CARGO_PKG_VERSION"),
                "umbral_core": umbral_core::VERSION,
            },
            "config": {
                "sigma": cfg.sigma,
                "tau": cfg.tau,
                "corr": cfg.corr.to_string(),
                "format": cfg.format.to_string(),
                "out": cfg.out.as_ref().map(|p| p.display().to_string()),
                "window": [cfg.window.0, cfg.window.1],
                "tol": cfg.tol,
            },
            "params": output.params,
            "warnings": output.warnings,
        },
        "data": data,
    })
}

/// Path for the `index`-th table when writing to `base`: the first table
/// goes to `base` itself, later ones to `<stem>_<table>.<ext>` beside it.
pub fn table_path(base: &Path, index: usize, table: &Table) -> PathBuf {
    if index == 0 {
        return base.to_path_buf();
    }
    let stem = base
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match base.extension() {
        Some(ext) => format!("{stem}_{}.{}", table.name, ext.to_string_lossy()),
        None => format!("{stem}_{}", table.name),
    };
    base.with_file_name(name)
}

fn emit(cfg: &RunConfig, output: &Output, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cfg.format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&json_document(cfg, output))
                .map_err(|e| CliError::internal(format!("json encoding failed: {e}")))?;
            text.push('\n');
            match &cfg.out {
                Some(path) => write_file(path, text.as_bytes()),
                None => Ok(stdout.write_all(text.as_bytes())?),
            }
        }
        Format::Csv => match &cfg.out {
            Some(path) => {
                for (i, t) in output.tables.iter().enumerate() {
                    write_file(&table_path(path, i, t), t.to_csv_string().as_bytes())?;
                }
                Ok(())
            }
            None => {
                for (i, t) in output.tables.iter().enumerate() {
                    if i > 0 {
                        stdout.write_all(b"\n")?;
                    }
                    t.write_csv(&mut *stdout)?;
                }
                Ok(())
            }
        },
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes)
        .map_err(|e| CliError::internal(format!("cannot write {}: {e}", path.display())))
}
