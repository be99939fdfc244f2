use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(name = "honeylab", version, about = "Circumscribed polygons, Dowker checks and honeycomb certificates")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
pub struct Global {
    /// Relative tolerance
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub rel: f64,
    /// Absolute tolerance
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub abs: f64,
    /// Seed for randomized generators
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Omit the timestamp from SVG output
    #[arg(long, global = true)]
    pub reproducible: bool,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Rotated polar of a norm disk
    Isoperimetrix(IsoArgs),
    /// Minimum-area circumscribed n-gon
    Circumscribe(CircumscribeArgs),
    /// Table of A_K(n) for n = 3..nmax
    DowkerTable(TableArgs),
    /// Convexity checks on a table
    DowkerCheck(CheckArgs),
    /// Honeycomb certificate for a polygonal norm
    Honeycomb(HoneycombArgs),
    /// Hausdorff gate against the Euclidean disk
    Stability(StabilityArgs),
    /// Window-averaged statistics of a tiling patch
    Tiling(TilingArgs),
    /// Greedy nested-square construction
    Steinhaus(SteinhausArgs),
    /// Weak check over regular 2k-gon norms
    Sweep(SweepArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct IsoArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct CircumscribeArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub n: usize,
    /// Origin-symmetric optimum (needs an origin-symmetric input, even n)
    #[arg(long)]
    pub symmetric: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct TableArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value_t = 20)]
    pub nmax: usize,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PropertyArg {
    /// convexity of A^alpha
    Alpha,
    /// chord inequality across n = 6
    Weak,
}

#[derive(Debug, Args, Serialize)]
pub struct CheckArgs {
    #[arg(long)]
    pub table: PathBuf,
    #[arg(long, value_enum, default_value_t = PropertyArg::Weak)]
    pub property: PropertyArg,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct HoneycombArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    /// Table length (defaults to the isoperimetrix edge count, clamped)
    #[arg(long)]
    pub nmax: Option<usize>,
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct StabilityArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProtoArg {
    Hex,
    Square,
    Triangle,
    Voronoi,
    Steinhaus,
}

#[derive(Debug, Args, Serialize)]
pub struct TilingArgs {
    #[arg(long, value_enum)]
    pub proto: ProtoArg,
    /// Norm disk; the Euclidean disk approximation when omitted
    #[arg(long)]
    pub norm: Option<PathBuf>,
    #[arg(long = "R", default_value_t = 200.0)]
    pub r: f64,
    /// p<alpha> (e.g. p2), log, sides or iso
    #[arg(long, default_value = "p2")]
    pub stat: String,
    /// Number of radii in the series, doubling down from R
    #[arg(long, default_value_t = 4)]
    pub points: usize,
    /// Voronoi site jitter in lattice spacings
    #[arg(long, default_value_t = 0.3)]
    pub jitter: f64,
    /// Step sequence for the nested-square construction, e.g. AAB
    #[arg(long, default_value = "AAB")]
    pub schedule: String,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SteinhausArgs {
    #[arg(long, default_value_t = 8.0)]
    pub nu: f64,
    #[arg(long, default_value_t = 3)]
    pub milestones: usize,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 2)]
    pub k_min: usize,
    #[arg(long, default_value_t = 30)]
    pub k_max: usize,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}
