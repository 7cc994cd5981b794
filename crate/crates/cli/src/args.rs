use std::path::PathBuf;
use std::str::FromStr;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex;
use polarlab::{ExtremumKind, TheoremId, ZeroSide};
use serde::Serialize;

/// Certified checks of Bernstein-type and polar-derivative inequalities.
#[derive(Parser, Serialize, Debug)]
#[command(name = "polarlab", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Machine output format on stdout
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
}

#[derive(Subcommand, Serialize, Debug)]
#[serde(tag = "subcommand", rename_all = "lowercase")]
pub enum Command {
    /// Write generated instances as JSON files
    Gen(GenArgs),
    /// Evaluate a bound's right-hand side from certified extrema
    Bound(TrialArgs),
    /// Certified max or min of |p| on a circle
    Extrema(ExtremaArgs),
    /// Check one bound on one instance
    Verify(TrialArgs),
    /// Seeded randomized verification of one bound
    Campaign(CampaignArgs),
    /// Relative gap between the two sides of a bound
    Tightness(TrialArgs),
}

#[derive(ValueEnum, Serialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Serialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Extremal {
    /// (z + k)^n
    Binomial,
    /// (z^idx + k^idx)^(n/idx)
    Block,
}

#[derive(ValueEnum, Serialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum ClassKind {
    /// Zeros in |z| <= k, gap below the leading term
    Top,
    /// No zeros in |z| < k, gap above the constant term
    Bottom,
}

#[derive(ValueEnum, Serialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Inside,
    Zerofree,
}

impl From<Side> for ZeroSide {
    fn from(s: Side) -> Self {
        match s {
            Side::Inside => ZeroSide::ZerosInsideClosedDisk,
            Side::Zerofree => ZeroSide::ZeroFreeOpenDisk,
        }
    }
}

#[derive(ValueEnum, Serialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Max,
    Min,
}

impl From<Kind> for ExtremumKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Max => ExtremumKind::Max,
            Kind::Min => ExtremumKind::Min,
        }
    }
}

fn theorem(s: &str) -> Result<TheoremId, String> {
    TheoremId::from_str(s).map_err(|e| e.to_string())
}

fn alpha(s: &str) -> Result<String, String> {
    parse_alpha(s).map(|_| s.to_string())
}

/// `"3"`, `"1.5-2i"`, `"0.5+1e-3i"`; only the modulus is used.
pub fn parse_alpha(s: &str) -> Result<f64, String> {
    let z = Complex::<f64>::from_str(s.trim()).map_err(|e| format!("bad alpha '{s}': {e}"))?;
    let m = z.norm();
    if m.is_finite() {
        Ok(m)
    } else {
        Err(format!("alpha '{s}' is not finite"))
    }
}

/// Where a polynomial comes from: a file, an extremal construction or a
/// seeded random draw.
#[derive(Args, Serialize, Clone, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["poly", "extremal", "class"])))]
pub struct InstanceArgs {
    /// Instance or polynomial JSON file
    #[arg(long)]
    pub poly: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub extremal: Option<Extremal>,
    #[arg(long, value_enum)]
    pub class: Option<ClassKind>,
    /// Degree
    #[arg(long)]
    pub n: Option<usize>,
    /// Lacunary index (mu for top, m for bottom)
    #[arg(long = "idx", visible_aliases = ["mu", "m"])]
    pub index: Option<usize>,
    /// Disk radius of the class
    #[arg(long)]
    pub k: Option<f64>,
    /// Outer radius for zero-free draws; defaults to 2k
    #[arg(long)]
    pub k_max: Option<f64>,
    #[arg(long, value_enum)]
    pub side: Option<Side>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Serialize, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["extremal", "class"])))]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub extremal: Option<Extremal>,
    #[arg(long, value_enum)]
    pub class: Option<ClassKind>,
    #[arg(long)]
    pub n: usize,
    /// Lacunary index (mu for top, m for bottom)
    #[arg(long = "idx", visible_aliases = ["mu", "m"], default_value_t = 1)]
    pub index: usize,
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
    /// Outer radius for zero-free draws; defaults to 2k
    #[arg(long)]
    pub k_max: Option<f64>,
    #[arg(long, value_enum)]
    pub side: Option<Side>,
    /// Number of random instances, seeded seed, seed+1, ...
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1.0)]
    pub leading_scale: f64,
    /// Output directory
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Args, Serialize, Debug)]
pub struct TrialArgs {
    #[arg(long, value_parser = theorem)]
    pub theorem: TheoremId,
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, default_value_t = 1.0)]
    pub r: f64,
    #[arg(long = "R", default_value_t = 1.0)]
    #[serde(rename = "R")]
    pub big_r: f64,
    /// Complex alpha as "re+imi"; reduced to its modulus
    #[arg(long, value_parser = alpha, default_value = "1")]
    pub alpha: String,
    #[arg(long, default_value_t = 1e-8)]
    pub eps: f64,
    /// Also write the machine output here
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Serialize, Debug)]
pub struct ExtremaArgs {
    #[arg(long)]
    pub poly: PathBuf,
    #[arg(long)]
    pub radius: f64,
    #[arg(long, value_enum, default_value_t = Kind::Max)]
    pub kind: Kind,
    #[arg(long, default_value_t = 1e-8)]
    pub eps: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Serialize, Debug)]
pub struct CampaignArgs {
    #[arg(long, value_parser = theorem)]
    pub theorem: TheoremId,
    #[arg(long, default_value_t = 500)]
    pub trials: usize,
    #[arg(long, default_value_t = 8)]
    pub nmax: usize,
    /// Base seed; trial i uses seed + i
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-6)]
    pub eps: f64,
    /// Tolerance for re-running inconclusive trials; defaults to eps/100
    #[arg(long)]
    pub resolve_eps: Option<f64>,
    /// CSV file with one row per trial
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// CSV file of (parameters, slack) for plotting
    #[arg(long)]
    pub emit_plot_data: Option<PathBuf>,
}
