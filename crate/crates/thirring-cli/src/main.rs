mod angle;
mod commands;
mod output;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use angle::{parse_angle, parse_grid, Grid};

pub const DEFAULT_SEED: u64 = 20_240_517;

#[derive(Parser)]
#[command(name = "tqca", version, about = "Two-particle spectra and dynamics of the Thirring quantum cellular automaton")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Free-walk dispersion ω(p) on a momentum grid.
    Dispersion(DispersionArgs),
    /// The six band arcs and excluded points at one total momentum.
    Bands(BandsArgs),
    /// Continuous band edges and the discrete band over couplings and momenta.
    Sweep(SweepArgs),
    /// Discrete eigenvalue at one (χ, p), or its eigenvector.
    BoundState(BoundStateArgs),
    /// Run the acceptance suite and write a report.
    Validate(ValidateArgs),
    /// Evolve a two-particle wavepacket.
    Evolve(EvolveArgs),
    /// Eigenvalue-1 state ψ_n at zero total momentum.
    Stationary(StationaryArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct Common {
    /// Mass μ in (0, 1).
    #[arg(long = "mass", default_value_t = 0.8)]
    pub mass: f64,
    /// Output file; standard output when omitted.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct DispersionArgs {
    #[command(flatten)]
    pub common: Common,
    /// Momentum grid min:max:count; 1024 points of (−π, π] by default.
    #[arg(long = "p-grid", value_parser = parse_grid, allow_hyphen_values = true)]
    pub p_grid: Option<Grid>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct BandsArgs {
    #[command(flatten)]
    pub common: Common,
    /// Total momentum p.
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, default_value = "0.55")]
    pub p: f64,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: Common,
    /// Coupling χ; repeatable. The six couplings ±π/5, ±π/2, ±4π/5 by default.
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub chi: Vec<f64>,
    /// Momentum grid min:max:count; 128 points of (−π, π] clear of multiples of π/2 by default.
    #[arg(long = "p-grid", value_parser = parse_grid, allow_hyphen_values = true)]
    pub p_grid: Option<Grid>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Also render the sweep as an SVG file.
    #[arg(long)]
    #[serde(skip)]
    pub svg: Option<PathBuf>,
    /// Number of random rows with a bound state to re-check on a ring.
    #[arg(long = "spot-check", default_value_t = 0)]
    pub spot_check: usize,
    /// Ring size for the spot check.
    #[arg(long = "ring-size", default_value_t = 129)]
    pub ring_size: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct BoundStateArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, default_value = "pi/2")]
    pub chi: f64,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, default_value = "0.55")]
    pub p: f64,
    /// Window size for the eigenvector (csv format).
    #[arg(long = "ring-size", default_value_t = 81)]
    pub ring_size: usize,
    /// json: analytic summary; csv: normalized eigenvector on the window.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub common: Common,
    /// Total momentum of the single-momentum checks.
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, default_value = "0.55")]
    pub p: f64,
    #[arg(long = "ring-size", default_value_t = 129)]
    pub ring_size: usize,
    /// Band tolerance for spectrum classification; 1e-3·2π/N by default.
    #[arg(long = "delta-band")]
    pub delta_band: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, default_value = "pi/2")]
    pub chi: f64,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, default_value = "0.55")]
    pub p0: f64,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, default_value = "0.4")]
    pub k0: f64,
    #[arg(long = "sigma-p", default_value_t = 0.2)]
    pub sigma_p: f64,
    #[arg(long = "sigma-k", default_value_t = 0.3)]
    pub sigma_k: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub y0: i64,
    /// Number of total momenta in the default grid.
    #[arg(long = "p-points", default_value_t = 128)]
    pub p_points: usize,
    #[arg(long = "ring-size", default_value_t = 1025)]
    pub ring_size: usize,
    #[arg(long, default_value_t = 200)]
    pub steps: usize,
    /// Start from the bound states instead of a plane-wave packet.
    #[arg(long)]
    pub bound: bool,
    /// csv: one row per step; json: full records including the separation distribution.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct StationaryArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, default_value = "0")]
    pub chi: f64,
    /// Label n ≥ 1 of ψ_n.
    #[arg(long, default_value_t = 1)]
    pub n: i64,
    #[arg(long, default_value_t = 512)]
    pub quadrature: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Dispersion(a) => commands::dispersion(&a),
        Command::Bands(a) => commands::bands(&a),
        Command::Sweep(a) => commands::sweep(&a),
        Command::BoundState(a) => commands::bound_state(&a),
        Command::Validate(a) => commands::validate(&a),
        Command::Evolve(a) => commands::evolve(&a),
        Command::Stationary(a) => commands::stationary(&a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
