//! Run configuration: JSON config file, CLI flag overrides, validation.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use fragcorr::SystemParams;

use crate::run::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "fragcorr",
    version,
    about = "Correlation, alignment, and entanglement dynamics of oscillator-coupled decay fragments",
    after_help = "Exit codes: 0 success, 1 config error, 2 numerical failure, 3 verification failure.\n\
                  FRAGCORR_THREADS caps the worker pool (1 = sequential)."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample every closed-form observable over [0, t_max] and write a report.
    Trajectory(TrajectoryArgs),
    /// Map regimes and correlation retention over kappa and/or width axes.
    Sweep(SweepArgs),
    /// Print the regime classification for the configured parameters.
    Regimes(RegimesArgs),
    /// Run the oracle verification suite (closed forms vs grid propagation).
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct TrajectoryArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct RegimesArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Comma-separated subset of checks to run (default: all). Names:
    /// alpha-match, critical-constancy, free-limit, phase-fidelity,
    /// moment-match, purity-match, decay-exponent, hygiene.
    #[arg(long, value_delimiter = ',')]
    pub checks: Vec<String>,
    /// Multiply every verification tolerance by this factor (< 1 tightens).
    #[arg(long, default_value_t = 1.0)]
    pub tolerance_scale: f64,
}

/// Flags shared by every subcommand; each overrides the same-named config
/// file key.
#[derive(Args, Debug)]
pub struct CommonArgs {
    /// JSON config file; flags override file keys.
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Fragment mass [default: 1].
    #[arg(long)]
    pub m: Option<f64>,
    /// Reduced Planck constant [default: 1].
    #[arg(long)]
    pub hbar: Option<f64>,
    /// Coupling strength of V = kappa (x+y)^2; exclusive with --omega
    /// [default: 1].
    #[arg(long)]
    pub kappa: Option<f64>,
    /// Center-of-mass frequency; exclusive with --kappa.
    #[arg(long)]
    pub omega: Option<f64>,
    /// Initial center-of-mass width; exclusive with --delta-p [default: 1].
    #[arg(long)]
    pub a: Option<f64>,
    /// Initial total-momentum spread (sets a = hbar/delta_p); exclusive
    /// with --a.
    #[arg(long)]
    pub delta_p: Option<f64>,
    /// Per-particle mean momentum [default: 1].
    #[arg(long)]
    pub p0: Option<f64>,
    /// End of the sampled time window [default: pi].
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Number of sample times, >= 2 [default: 200].
    #[arg(long)]
    pub samples: Option<usize>,
    /// Reference volume for the Schmidt number [default: 1].
    #[arg(long)]
    pub volume: Option<f64>,

    /// Propagator grid points (power of two) [default: 4096].
    #[arg(long)]
    pub grid_n: Option<usize>,
    /// Propagator half-width [default: sized from the width extremes].
    #[arg(long)]
    pub extent: Option<f64>,
    /// Propagator time step [default: 4e-5 * min(pi/omega, M a^2/hbar)].
    #[arg(long)]
    pub dt: Option<f64>,
    /// Purity-oracle box half-width [default: 40].
    #[arg(long)]
    pub box_l: Option<f64>,
    /// Purity-oracle points per axis (power of two) [default: 1024].
    #[arg(long)]
    pub box_n: Option<usize>,

    /// Sweep axis over kappa, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub sweep_kappa: Option<Vec<f64>>,
    /// Sweep axis over a, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub sweep_a: Option<Vec<f64>>,

    /// Report format [default: csv].
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Report path [default: stdout].
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridConfig {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extent: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig { n: 4096, extent: None, dt: None }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepAxes {
    pub kappa: Vec<f64>,
    pub a: Vec<f64>,
}

/// Fully resolved run configuration. Exactly one of {kappa, omega} and one
/// of {a, delta_p} is set after validation; the echoed form in every report
/// header parses back to an equal value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub m: f64,
    pub hbar: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_p: Option<f64>,
    pub p0: f64,
    pub t_max: f64,
    pub samples: usize,
    pub volume: f64,
    pub grid: GridConfig,
    pub box_l: f64,
    pub box_n: usize,
    pub sweep: SweepAxes,
    pub format: OutputFormat,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            m: 1.0,
            hbar: 1.0,
            kappa: None,
            omega: None,
            a: None,
            delta_p: None,
            p0: 1.0,
            t_max: std::f64::consts::PI,
            samples: 200,
            volume: 1.0,
            grid: GridConfig::default(),
            box_l: 40.0,
            box_n: 1024,
            sweep: SweepAxes::default(),
            format: OutputFormat::Csv,
            output: None,
        }
    }
}

impl RunConfig {
    /// Load the file (if any), apply flag overrides, fill defaults, validate.
    pub fn resolve(args: &CommonArgs) -> Result<RunConfig, CliError> {
        let mut cfg = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::Config(format!("cannot read {}: {e}", path.display()))
                })?;
                serde_json::from_str::<RunConfig>(&text)
                    .map_err(|e| CliError::Config(format!("bad config file: {e}")))?
            }
            None => RunConfig::default(),
        };

        macro_rules! take {
            ($field:ident) => {
                if let Some(v) = &args.$field {
                    cfg.$field = Some(v.clone());
                }
            };
        }
        if let Some(v) = args.m {
            cfg.m = v;
        }
        if let Some(v) = args.hbar {
            cfg.hbar = v;
        }
        take!(kappa);
        take!(omega);
        take!(a);
        take!(delta_p);
        if let Some(v) = args.p0 {
            cfg.p0 = v;
        }
        if let Some(v) = args.t_max {
            cfg.t_max = v;
        }
        if let Some(v) = args.samples {
            cfg.samples = v;
        }
        if let Some(v) = args.volume {
            cfg.volume = v;
        }
        if let Some(v) = args.grid_n {
            cfg.grid.n = v;
        }
        if let Some(v) = args.extent {
            cfg.grid.extent = Some(v);
        }
        if let Some(v) = args.dt {
            cfg.grid.dt = Some(v);
        }
        if let Some(v) = args.box_l {
            cfg.box_l = v;
        }
        if let Some(v) = args.box_n {
            cfg.box_n = v;
        }
        if let Some(v) = &args.sweep_kappa {
            cfg.sweep.kappa = v.clone();
        }
        if let Some(v) = &args.sweep_a {
            cfg.sweep.a = v.clone();
        }
        if let Some(v) = args.format {
            cfg.format = v;
        }
        if let Some(v) = &args.output {
            cfg.output = Some(v.clone());
        }

        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&mut self) -> Result<(), CliError> {
        match (self.kappa, self.omega) {
            (Some(_), Some(_)) => {
                return Err(CliError::Config(
                    "provide exactly one of kappa, omega".to_string(),
                ))
            }
            (None, None) => self.kappa = Some(1.0),
            _ => {}
        }
        match (self.a, self.delta_p) {
            (Some(_), Some(_)) => {
                return Err(CliError::Config(
                    "provide exactly one of a, delta_p".to_string(),
                ))
            }
            (None, None) => self.a = Some(1.0),
            _ => {}
        }
        if self.samples < 2 {
            return Err(CliError::Config(format!(
                "samples must be >= 2, got {}",
                self.samples
            )));
        }
        if self.t_max <= 0.0 || self.t_max.is_nan() {
            return Err(CliError::Config(format!(
                "t_max must be > 0, got {}",
                self.t_max
            )));
        }
        if self.volume <= 0.0 || self.volume.is_nan() {
            return Err(CliError::Config(format!(
                "volume must be > 0, got {}",
                self.volume
            )));
        }
        if self.box_l <= 0.0 || self.box_l.is_nan() {
            return Err(CliError::Config(format!("box_l must be > 0, got {}", self.box_l)));
        }
        Ok(())
    }

    /// Width: the configured `a`, or ħ/Δp.
    pub fn width(&self) -> Result<f64, CliError> {
        if let Some(a) = self.a {
            return Ok(a);
        }
        let dp = self.delta_p.expect("validated");
        if dp <= 0.0 || dp.is_nan() {
            return Err(CliError::Config(format!("delta_p must be > 0, got {dp}")));
        }
        Ok(self.hbar / dp)
    }

    pub fn params(&self) -> Result<SystemParams, CliError> {
        let a = self.width()?;
        let params = match (self.kappa, self.omega) {
            (Some(kappa), None) => SystemParams::new(self.m, self.hbar, kappa, a),
            (None, Some(omega)) => SystemParams::from_omega(self.m, self.hbar, omega, a),
            _ => unreachable!("validated"),
        };
        params.map_err(|e| CliError::Config(e.to_string()))
    }

    /// Sample times 0..t_max inclusive.
    pub fn times(&self) -> Vec<f64> {
        (0..self.samples)
            .map(|k| self.t_max * k as f64 / (self.samples - 1) as f64)
            .collect()
    }

    /// One-line canonical JSON echoed into report headers.
    pub fn echo(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}
