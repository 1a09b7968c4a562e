//! Sweep configuration: an optional TOML file overridden by command-line flags.

use crate::output::Format;
use clap::Args;
use serde::Deserialize;
use std::path::{Path, PathBuf};

/// Configuration problems; the binary maps these to exit code 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "configuration error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

pub fn config_error(msg: impl Into<String>) -> anyhow::Error {
    ConfigError(msg.into()).into()
}

#[derive(Args, Clone, Debug, Default)]
pub struct CommonArgs {
    /// Torus dimension (repeatable).
    #[arg(long = "n")]
    pub n: Vec<usize>,
    /// Deformation parameter α (repeatable).
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Vec<f64>,
    /// Mass scale M.
    #[arg(long = "M")]
    pub mass_scale: Option<f64>,
    /// Extra mass m₀²; α sweeps default to 1 + max(0, −m²).
    #[arg(long = "m0-sq")]
    pub m0_sq: Option<f64>,
    /// External momentum k² (repeatable).
    #[arg(long = "k-sq")]
    pub k_sq: Vec<f64>,
    /// Mode cutoff Λ (repeatable).
    #[arg(long)]
    pub cutoff: Vec<usize>,
    /// Momentum: integer vector "1,0" for dixmier, real |q| for exponent-compare (repeatable).
    #[arg(long, allow_negative_numbers = true)]
    pub q: Vec<String>,
    /// Quadrature tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// TOML file with the same keys; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Deserialize, Clone, Debug)]
#[serde(untagged)]
enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T> OneOrMany<T> {
    fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::One(x) => vec![x],
            OneOrMany::Many(v) => v,
        }
    }
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    n: Option<OneOrMany<usize>>,
    alpha: Option<OneOrMany<f64>>,
    #[serde(rename = "M")]
    mass_scale: Option<f64>,
    m0_sq: Option<f64>,
    k_sq: Option<OneOrMany<f64>>,
    cutoff: Option<OneOrMany<usize>>,
    q: Option<OneOrMany<String>>,
    tol: Option<f64>,
    format: Option<Format>,
    out: Option<PathBuf>,
}

/// Resolved parameter grids; empty lists mean "use the subcommand default".
#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub n: Vec<usize>,
    pub alpha: Vec<f64>,
    pub mass_scale: f64,
    pub m0_sq: Option<f64>,
    pub k_sq: Vec<f64>,
    pub cutoff: Vec<usize>,
    pub q: Vec<String>,
    pub tol: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
}

pub const DEFAULT_TOL: f64 = 1e-10;

fn pick<T>(flag: Vec<T>, file: Option<OneOrMany<T>>) -> Vec<T> {
    if flag.is_empty() {
        file.map(OneOrMany::into_vec).unwrap_or_default()
    } else {
        flag
    }
}

fn load(path: &Path) -> anyhow::Result<FileConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| config_error(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| config_error(format!("{}: {e}", path.display())))
}

impl SweepConfig {
    pub fn resolve(args: CommonArgs) -> anyhow::Result<Self> {
        let file = match &args.config {
            Some(p) => load(p)?,
            None => FileConfig::default(),
        };
        let cfg = SweepConfig {
            n: pick(args.n, file.n),
            alpha: pick(args.alpha, file.alpha),
            mass_scale: args.mass_scale.or(file.mass_scale).unwrap_or(1.0),
            m0_sq: args.m0_sq.or(file.m0_sq),
            k_sq: pick(args.k_sq, file.k_sq),
            cutoff: pick(args.cutoff, file.cutoff),
            q: pick(args.q, file.q),
            tol: args.tol.or(file.tol).unwrap_or(DEFAULT_TOL),
            format: args.format.or(file.format).unwrap_or_default(),
            out: args.out.or(file.out),
        };
        cfg.check_common()?;
        Ok(cfg)
    }

    fn check_common(&self) -> anyhow::Result<()> {
        if !(self.mass_scale > 0.0 && self.mass_scale.is_finite()) {
            return Err(config_error(format!("M = {} must be positive", self.mass_scale)));
        }
        if let Some(m) = self.m0_sq {
            if !(m >= 0.0 && m.is_finite()) {
                return Err(config_error(format!("m0_sq = {m} must be nonnegative")));
            }
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(config_error(format!("tol = {} must lie in (0, 1)", self.tol)));
        }
        if let Some(a) = self.alpha.iter().find(|a| !a.is_finite()) {
            return Err(config_error(format!("alpha = {a} is not finite")));
        }
        if let Some(k) = self.k_sq.iter().find(|k| !(**k >= 0.0 && k.is_finite())) {
            return Err(config_error(format!("k_sq = {k} must be nonnegative")));
        }
        if self.n.contains(&0) {
            return Err(config_error("n must be positive"));
        }
        Ok(())
    }

    pub fn n_or(&self, default: &[usize]) -> Vec<usize> {
        if self.n.is_empty() { default.to_vec() } else { self.n.clone() }
    }

    pub fn alpha_or(&self, default: &[f64]) -> Vec<f64> {
        if self.alpha.is_empty() { default.to_vec() } else { self.alpha.clone() }
    }

    pub fn k_sq_or(&self, default: &[f64]) -> Vec<f64> {
        if self.k_sq.is_empty() { default.to_vec() } else { self.k_sq.clone() }
    }

    pub fn cutoff_or(&self, default: &[usize]) -> Vec<usize> {
        if self.cutoff.is_empty() { default.to_vec() } else { self.cutoff.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let dir = std::env::temp_dir().join(format!("fracdim-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("sweep.toml");
        std::fs::write(&path, "n = 2\nalpha = [0.1, -0.1]\nM = 2.0\nformat = \"json\"\n").unwrap();
        let args = CommonArgs {
            alpha: vec![0.3],
            config: Some(path),
            ..Default::default()
        };
        let cfg = SweepConfig::resolve(args).unwrap();
        assert_eq!(cfg.n, vec![2]);
        assert_eq!(cfg.alpha, vec![0.3]);
        assert_eq!(cfg.mass_scale, 2.0);
        assert_eq!(cfg.format, Format::Json);
        assert_eq!(cfg.tol, DEFAULT_TOL);
    }

    #[test]
    fn bad_values_are_config_errors() {
        let e = SweepConfig::resolve(CommonArgs {
            mass_scale: Some(-1.0),
            ..Default::default()
        })
        .unwrap_err();
        assert!(e.downcast_ref::<ConfigError>().is_some());
        let dir = std::env::temp_dir().join(format!("fracdim-cfg-bad-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.toml");
        std::fs::write(&path, "alhpa = 0.1\n").unwrap();
        let e = SweepConfig::resolve(CommonArgs {
            config: Some(path),
            ..Default::default()
        })
        .unwrap_err();
        assert!(e.downcast_ref::<ConfigError>().is_some());
    }
}
