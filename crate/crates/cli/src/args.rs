use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dmxyz_core::DmAxis;

#[derive(Debug, Parser)]
#[command(
    name = "dmxyz",
    version,
    about = "Thermal entanglement of a two-qubit XYZ chain with DM interaction"
)]
pub struct Cli {
    /// Flat `key=value` file supplying defaults for any long flag.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Concurrence at a single parameter point.
    Eval(EvalArgs),
    /// Concurrence over a uniform grid in D or T, as CSV.
    Sweep(SweepArgs),
    /// Critical temperature or critical DM strength by bisection.
    Critical(CriticalArgs),
    /// Regenerate the data for one of the six figure presets (1..=6).
    Figure(FigureArgs),
    /// Compare closed forms with brute-force diagonalisation on random points.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, Args)]
pub struct CouplingArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub jx: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub jy: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub jz: f64,
    /// DM axis: x, y or z.
    #[arg(long, value_parser = parse_axis)]
    pub axis: DmAxis,
}

fn parse_axis(s: &str) -> Result<DmAxis, String> {
    s.parse()
        .map_err(|_| format!("expected x, y or z, got `{s}`"))
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub coupling: CouplingArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub d: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variable {
    D,
    T,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub coupling: CouplingArgs,
    /// Swept parameter.
    #[arg(long)]
    pub var: Variable,
    #[arg(long, allow_negative_numbers = true)]
    pub from: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub to: f64,
    #[arg(long, default_value_t = dmxyz_core::analysis::DEFAULT_STEPS)]
    pub steps: usize,
    /// Fixed DM strength for `--var t`.
    #[arg(long, allow_negative_numbers = true)]
    pub d: Option<f64>,
    /// Fixed temperature for `--var d`.
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<f64>,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Temp,
    Dm,
}

#[derive(Debug, Args)]
pub struct CriticalArgs {
    #[command(flatten)]
    pub coupling: CouplingArgs,
    #[arg(long)]
    pub kind: Kind,
    /// Bracket low end (default 0.05 for temp, 0 for dm).
    #[arg(long, allow_negative_numbers = true)]
    pub lo: Option<f64>,
    /// Bracket high end (default 50 for temp, 10 for dm).
    #[arg(long, allow_negative_numbers = true)]
    pub hi: Option<f64>,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Fixed DM strength for `--kind temp`.
    #[arg(long, allow_negative_numbers = true)]
    pub d: Option<f64>,
    /// Fixed temperature for `--kind dm`.
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<f64>,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(long)]
    pub figure: u8,
    /// Output directory, created if missing.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = dmxyz_core::analysis::verify::DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = dmxyz_core::analysis::verify::DEFAULT_SEED)]
    pub seed: u64,
    /// Largest accepted |closed form − oracle|.
    #[arg(long, default_value_t = dmxyz_core::analysis::verify::ORACLE_TOL)]
    pub tol: f64,
}

/// Appends `--key=value` for every config entry whose flag was not given on
/// the command line. Returns the config path's read error as a message.
pub fn merge_config(args: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| format!("cannot read --config {}: {e}", path.display()))?;
    let given: Vec<String> = args
        .iter()
        .filter_map(|a| a.to_str())
        .filter_map(|a| a.strip_prefix("--"))
        .map(|a| a.split('=').next().unwrap_or(a).to_string())
        .collect();
    let mut merged = args;
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("{}:{}: expected key=value", path.display(), n + 1));
        };
        let (key, value) = (key.trim(), value.trim());
        if key == "config" {
            return Err(format!(
                "{}:{}: config files cannot nest",
                path.display(),
                n + 1
            ));
        }
        if !given.iter().any(|g| g == key) {
            merged.push(format!("--{key}={value}").into());
        }
    }
    Ok(merged)
}

fn config_path(args: &[OsString]) -> Option<PathBuf> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let a = a.to_str()?;
        if a == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(PathBuf::from(p));
        }
    }
    None
}
