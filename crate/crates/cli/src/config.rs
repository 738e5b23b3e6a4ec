//! Command-line flags, the optional TOML config file, and the merged
//! [`RunConfig`].

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use diracline_core::coupling::Coupling;
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "diracline", version, about = "Spectra of 2D Dirac operators with a delta interaction on a line")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy bands on a k grid (CSV or SVG).
    Bands(CommonArgs),
    /// Spectrum of the full operator (JSON).
    Spectrum(CommonArgs),
    /// Fiber eigenvalues at --k, with the matching-determinant cross-check (JSON).
    Fiber(CommonArgs),
    /// Bound states of the regularized model for each --eps (CSV or JSON).
    Approx(ApproxArgs),
    /// Probe estimate of the resolvent difference against the (1+|k|)² factor (JSON).
    ResolventCheck(CommonArgs),
    /// Gaussian wave packet built on one band, sampled at time --time (CSV).
    Packet(PacketArgs),
    /// Runs the acceptance criteria and reports one line per criterion.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// TOML file with any of the keys below; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    pub eta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub tau: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub mass: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub k: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub kmin: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub kmax: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Comma-separated list of widths.
    #[arg(long, value_delimiter = ',')]
    pub eps: Option<Vec<f64>>,
    /// Output file; stdout if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ApproxArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Branch index l of the renormalization (only matters for d > 0).
    #[arg(long, allow_negative_numbers = true)]
    pub branch: Option<i32>,
    /// Use A = M without renormalization; the convergence check is skipped.
    #[arg(long)]
    pub naive: bool,
}

#[derive(Debug, Clone, Default, Args)]
pub struct PacketArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub time: Option<f64>,
    #[arg(long)]
    pub sigma_k: Option<f64>,
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Index into the band list of `bands`.
    #[arg(long)]
    pub band: Option<usize>,
    #[arg(long)]
    pub xmax: Option<f64>,
    #[arg(long)]
    pub ymax: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ValidateArgs {
    /// Run a single criterion.
    #[arg(long)]
    pub only: Option<u32>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Keys accepted in the config file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub eta: Option<f64>,
    pub tau: Option<f64>,
    pub lambda: Option<f64>,
    pub omega: Option<f64>,
    pub mass: Option<f64>,
    pub k: Option<f64>,
    pub kmin: Option<f64>,
    pub kmax: Option<f64>,
    pub samples: Option<usize>,
    pub eps: Option<Vec<f64>>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub branch: Option<i32>,
    pub time: Option<f64>,
    pub sigma_k: Option<f64>,
    pub nodes: Option<usize>,
    pub band: Option<usize>,
    pub xmax: Option<f64>,
    pub ymax: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Bands,
    Spectrum,
    Fiber,
    Approx,
    ResolventCheck,
    Packet,
}

impl CommandKind {
    fn default_format(self) -> Format {
        match self {
            CommandKind::Bands | CommandKind::Approx | CommandKind::Packet => Format::Csv,
            CommandKind::Spectrum | CommandKind::Fiber | CommandKind::ResolventCheck => Format::Json,
        }
    }

    fn allows(self, f: Format) -> bool {
        match self {
            CommandKind::Bands => matches!(f, Format::Csv | Format::Svg),
            CommandKind::Approx => matches!(f, Format::Csv | Format::Json),
            CommandKind::Packet => f == Format::Csv,
            CommandKind::Spectrum | CommandKind::Fiber | CommandKind::ResolventCheck => f == Format::Json,
        }
    }

    fn name(self) -> &'static str {
        match self {
            CommandKind::Bands => "bands",
            CommandKind::Spectrum => "spectrum",
            CommandKind::Fiber => "fiber",
            CommandKind::Approx => "approx",
            CommandKind::ResolventCheck => "resolvent-check",
            CommandKind::Packet => "packet",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PacketSettings {
    pub time: f64,
    pub sigma_k: f64,
    pub nodes: usize,
    pub band: usize,
    pub xmax: f64,
    pub ymax: f64,
}

/// Fully resolved settings of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub coupling: Coupling,
    pub k: f64,
    pub kmin: f64,
    pub kmax: f64,
    pub samples: usize,
    pub eps: Vec<f64>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub branch: i32,
    pub naive: bool,
    pub packet: PacketSettings,
}

impl RunConfig {
    /// Flags first, then the config file, then the defaults.
    pub fn resolve(command: CommandKind, args: &CommonArgs, extra: Extra) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let default_eps = match command {
            CommandKind::ResolventCheck => vec![0.1],
            _ => vec![1e-1, 1e-2, 1e-3],
        };
        let default_samples = if command == CommandKind::Packet { 64 } else { 601 };
        let cfg = RunConfig {
            command,
            coupling: Coupling::new(
                args.eta.or(file.eta).unwrap_or(0.0),
                args.tau.or(file.tau).unwrap_or(0.0),
                args.lambda.or(file.lambda).unwrap_or(0.0),
                args.omega.or(file.omega).unwrap_or(0.0),
                args.mass.or(file.mass).unwrap_or(1.0),
            ),
            k: args.k.or(file.k).unwrap_or(0.0),
            kmin: args.kmin.or(file.kmin).unwrap_or(-3.0),
            kmax: args.kmax.or(file.kmax).unwrap_or(3.0),
            samples: args.samples.or(file.samples).unwrap_or(default_samples),
            eps: args.eps.clone().or(file.eps).unwrap_or(default_eps),
            out: args.out.clone().or(file.out),
            format: args.format.or(file.format).unwrap_or(command.default_format()),
            branch: extra.branch.or(file.branch).unwrap_or(0),
            naive: extra.naive,
            packet: PacketSettings {
                time: extra.time.or(file.time).unwrap_or(1.0),
                sigma_k: extra.sigma_k.or(file.sigma_k).unwrap_or(0.3),
                nodes: extra.nodes.or(file.nodes).unwrap_or(512),
                band: extra.band.or(file.band).unwrap_or(0),
                xmax: extra.xmax.or(file.xmax).unwrap_or(3.0),
                ymax: extra.ymax.or(file.ymax).unwrap_or(8.0),
            },
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if !self.coupling.is_finite() || !self.k.is_finite() {
            return bad("coupling constants, mass and k must be finite".into());
        }
        if self.samples < 2 {
            return bad(format!("samples must be at least 2, got {}", self.samples));
        }
        if !(self.kmin < self.kmax) || !self.kmin.is_finite() || !self.kmax.is_finite() {
            return bad(format!("need kmin < kmax, got {} and {}", self.kmin, self.kmax));
        }
        if self.eps.is_empty() || self.eps.iter().any(|e| !(*e > 0.0) || !e.is_finite()) {
            return bad("eps values must be positive".into());
        }
        if !self.command.allows(self.format) {
            return bad(format!("{} does not support {:?} output", self.command.name(), self.format));
        }
        let p = &self.packet;
        if !(p.sigma_k > 0.0) || !(p.xmax > 0.0) || !(p.ymax > 0.0) || !p.time.is_finite() {
            return bad("packet width, time and grid extents must be positive and finite".into());
        }
        Ok(())
    }

    /// `samples` equally spaced momenta from `kmin` to `kmax`.
    pub fn k_grid(&self) -> Vec<f64> {
        let n = self.samples - 1;
        (0..=n)
            .map(|i| {
                if i == n {
                    self.kmax
                } else {
                    self.kmin + (self.kmax - self.kmin) * i as f64 / n as f64
                }
            })
            .collect()
    }
}

/// Command-specific flags merged into [`RunConfig`].
#[derive(Debug, Clone, Copy, Default)]
pub struct Extra {
    pub branch: Option<i32>,
    pub naive: bool,
    pub time: Option<f64>,
    pub sigma_k: Option<f64>,
    pub nodes: Option<usize>,
    pub band: Option<usize>,
    pub xmax: Option<f64>,
    pub ymax: Option<f64>,
}

impl From<&ApproxArgs> for Extra {
    fn from(a: &ApproxArgs) -> Self {
        Extra { branch: a.branch, naive: a.naive, ..Default::default() }
    }
}

impl From<&PacketArgs> for Extra {
    fn from(a: &PacketArgs) -> Self {
        Extra {
            time: a.time,
            sigma_k: a.sigma_k,
            nodes: a.nodes,
            band: a.band,
            xmax: a.xmax,
            ymax: a.ymax,
            ..Default::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("run.toml");
        std::fs::write(&p, "eta = 1.5\nmass = 2.0\nsamples = 11\n").unwrap();
        let args = CommonArgs { config: Some(p), eta: Some(3.0), ..Default::default() };
        let c = RunConfig::resolve(CommandKind::Bands, &args, Extra::default()).unwrap();
        assert_eq!(c.coupling.eta, 3.0);
        assert_eq!(c.coupling.mass, 2.0);
        assert_eq!(c.samples, 11);
    }

    #[test]
    fn unknown_key_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("run.toml");
        std::fs::write(&p, "etta = 1.0\n").unwrap();
        let args = CommonArgs { config: Some(p), ..Default::default() };
        let err = RunConfig::resolve(CommandKind::Bands, &args, Extra::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn grid_hits_both_ends() {
        let args = CommonArgs { kmin: Some(-3.0), kmax: Some(3.0), samples: Some(601), ..Default::default() };
        let c = RunConfig::resolve(CommandKind::Bands, &args, Extra::default()).unwrap();
        let g = c.k_grid();
        assert_eq!((g[0], g[300], g[600]), (-3.0, 0.0, 3.0));
    }

    #[test]
    fn rejects_bad_ranges() {
        for args in [
            CommonArgs { samples: Some(1), ..Default::default() },
            CommonArgs { kmin: Some(1.0), kmax: Some(1.0), ..Default::default() },
            CommonArgs { eps: Some(vec![0.1, -1.0]), ..Default::default() },
            CommonArgs { format: Some(Format::Json), ..Default::default() },
        ] {
            assert!(RunConfig::resolve(CommandKind::Bands, &args, Extra::default()).is_err());
        }
    }
}
