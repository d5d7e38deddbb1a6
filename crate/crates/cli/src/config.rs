//! Run configuration: command-line flags over a config file over defaults.
//!
//! The config file named by `UMBRALQM_CONFIG` holds one `key = value` pair
//! per line; blank lines and lines starting with `#` are skipped. Keys are
//! the long flag names without dashes: `sigma`, `tau`, `corr`, `format`,
//! `out`, `window`, `tol`.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use umbral_core::CorrespondenceKind;

use crate::error::CliError;

pub const CONFIG_ENV: &str = "UMBRALQM_CONFIG";

pub const DEFAULT_SIGMA: f64 = 0.2;
pub const DEFAULT_TAU: f64 = 0.1;
pub const DEFAULT_WINDOW: (i64, i64) = (-10, 10);
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorrSelection {
    One(CorrespondenceKind),
    All,
}

impl CorrSelection {
    pub fn kinds(self) -> Vec<CorrespondenceKind> {
        match self {
            CorrSelection::One(k) => vec![k],
            CorrSelection::All => CorrespondenceKind::ALL.to_vec(),
        }
    }
}

impl FromStr for CorrSelection {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "all" => Ok(CorrSelection::All),
            "right" => Ok(CorrSelection::One(CorrespondenceKind::Right)),
            "left" => Ok(CorrSelection::One(CorrespondenceKind::Left)),
            "symmetric" => Ok(CorrSelection::One(CorrespondenceKind::Symmetric)),
            other => Err(CliError::validation(format!(
                "unknown correspondence '{other}', expected right, left, symmetric or all"
            ))),
        }
    }
}

impl fmt::Display for CorrSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorrSelection::One(k) => write!(f, "{k}"),
            CorrSelection::All => f.write_str("all"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(CliError::validation(format!(
                "unknown format '{other}', expected csv or json"
            ))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

pub fn parse_window(s: &str) -> Result<(i64, i64), CliError> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| CliError::validation(format!("window '{s}' is not of the form MIN:MAX")))?;
    let parse = |v: &str| {
        v.trim()
            .parse::<i64>()
            .map_err(|_| CliError::validation(format!("window bound '{v}' is not an integer")))
    };
    Ok((parse(lo)?, parse(hi)?))
}

fn parse_real(key: &str, s: &str) -> Result<f64, CliError> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| CliError::validation(format!("{key} '{s}' is not a number")))
}

/// Settings from one source; unset fields fall through to the next source.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PartialConfig {
    pub sigma: Option<f64>,
    pub tau: Option<f64>,
    pub corr: Option<CorrSelection>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub window: Option<(i64, i64)>,
    pub tol: Option<f64>,
}

impl PartialConfig {
    pub fn parse_file_contents(text: &str, origin: &str) -> Result<Self, CliError> {
        let mut cfg = PartialConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::validation(format!("{origin}:{}: expected key = value", i + 1))
            })?;
            let value = value.trim();
            let at =
                |e: CliError| CliError::validation(format!("{origin}:{}: {}", i + 1, e.message()));
            match key.trim() {
                "sigma" => cfg.sigma = Some(parse_real("sigma", value).map_err(at)?),
                "tau" => cfg.tau = Some(parse_real("tau", value).map_err(at)?),
                "tol" => cfg.tol = Some(parse_real("tol", value).map_err(at)?),
                "corr" => cfg.corr = Some(value.parse().map_err(at)?),
                "format" => cfg.format = Some(value.parse().map_err(at)?),
                "out" => cfg.out = Some(PathBuf::from(value)),
                "window" => cfg.window = Some(parse_window(value).map_err(at)?),
                other => {
                    return Err(CliError::validation(format!(
                        "{origin}:{}: unknown key '{other}'",
                        i + 1
                    )))
                }
            }
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::validation(format!("cannot read config file {}: {e}", path.display()))
        })?;
        Self::parse_file_contents(&text, &path.display().to_string())
    }

    /// `self` where set, otherwise `lower`.
    pub fn over(self, lower: PartialConfig) -> PartialConfig {
        PartialConfig {
            sigma: self.sigma.or(lower.sigma),
            tau: self.tau.or(lower.tau),
            corr: self.corr.or(lower.corr),
            format: self.format.or(lower.format),
            out: self.out.or(lower.out),
            window: self.window.or(lower.window),
            tol: self.tol.or(lower.tol),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub sigma: f64,
    pub tau: f64,
    pub corr: CorrSelection,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub window: (i64, i64),
    pub tol: f64,
    /// Whether σ and τ were given explicitly rather than defaulted.
    pub sigma_explicit: bool,
    pub tau_explicit: bool,
}

impl RunConfig {
    pub fn resolve(flags: PartialConfig, file: PartialConfig) -> Result<Self, CliError> {
        let merged = flags.over(file);
        let cfg = RunConfig {
            sigma: merged.sigma.unwrap_or(DEFAULT_SIGMA),
            tau: merged.tau.unwrap_or(DEFAULT_TAU),
            corr: merged.corr.unwrap_or(CorrSelection::All),
            format: merged.format.unwrap_or(Format::Csv),
            out: merged.out,
            window: merged.window.unwrap_or(DEFAULT_WINDOW),
            tol: merged.tol.unwrap_or(DEFAULT_TOL),
            sigma_explicit: merged.sigma.is_some(),
            tau_explicit: merged.tau.is_some(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        for (name, v) in [("sigma", self.sigma), ("tau", self.tau), ("tol", self.tol)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::validation(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if self.tol >= 1.0 {
            return Err(CliError::validation(format!(
                "tol must be below 1, got {}",
                self.tol
            )));
        }
        if self.window.0 > self.window.1 {
            return Err(CliError::validation(format!(
                "window minimum {} exceeds maximum {}",
                self.window.0, self.window.1
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_parsing() {
        let text = "# lattice\nsigma = 0.3\n\ncorr=right\nwindow = -4:7\nformat = json\n";
        let cfg = PartialConfig::parse_file_contents(text, "test").unwrap();
        assert_eq!(cfg.sigma, Some(0.3));
        assert_eq!(
            cfg.corr,
            Some(CorrSelection::One(CorrespondenceKind::Right))
        );
        assert_eq!(cfg.window, Some((-4, 7)));
        assert_eq!(cfg.format, Some(Format::Json));
        assert!(PartialConfig::parse_file_contents("bogus = 1", "t").is_err());
        assert!(PartialConfig::parse_file_contents("sigma", "t").is_err());
        assert!(PartialConfig::parse_file_contents("sigma = x", "t").is_err());
    }

    #[test]
    fn precedence() {
        let flags = PartialConfig {
            sigma: Some(0.5),
            ..Default::default()
        };
        let file = PartialConfig {
            sigma: Some(0.3),
            tol: Some(1e-8),
            ..Default::default()
        };
        let cfg = RunConfig::resolve(flags, file).unwrap();
        assert_eq!(cfg.sigma, 0.5);
        assert_eq!(cfg.tol, 1e-8);
        assert_eq!(cfg.window, DEFAULT_WINDOW);
        assert!(cfg.sigma_explicit && !cfg.tau_explicit);
    }

    #[test]
    fn validation() {
        let bad = |p: PartialConfig| RunConfig::resolve(p, PartialConfig::default()).is_err();
        assert!(bad(PartialConfig {
            sigma: Some(0.0),
            ..Default::default()
        }));
        assert!(bad(PartialConfig {
            tol: Some(-1.0),
            ..Default::default()
        }));
        assert!(bad(PartialConfig {
            window: Some((3, 2)),
            ..Default::default()
        }));
        assert!(parse_window("1-2").is_err());
        assert_eq!(parse_window("-3:-1").unwrap(), (-3, -1));
    }
}
