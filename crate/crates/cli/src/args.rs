use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eurb::{Observable64, Subsystem};

#[derive(Debug, Parser)]
#[command(name = "eurb", version, about = "Entropic uncertainty lower bounds for two-qubit states")]
pub struct Cli {
    /// Party whose measurement defines classical information and discord
    #[arg(long, global = true, value_enum, default_value_t = Side::B)]
    pub side: Side,

    /// Output format for data written to stdout
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute every bound for one state and one pair of settings
    Bounds(BoundsArgs),
    /// Sweep one family parameter and write a CSV table
    Sweep(SweepArgs),
    /// Regenerate the data behind figure 1 or figure 2
    Figure(FigureArgs),
    /// Check the random-state inequalities and identities
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

impl From<Side> for Subsystem {
    fn from(s: Side) -> Self {
        match s {
            Side::A => Subsystem::A,
            Side::B => Subsystem::B,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    JsonLines,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Table => "table",
            Format::Csv => "csv",
            Format::JsonLines => "json-lines",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Werner,
    Pe,
    Bd,
    Mm,
    Classical,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Werner => "werner",
            Family::Pe => "pe",
            Family::Bd => "bd",
            Family::Mm => "mm",
            Family::Classical => "classical",
        })
    }
}

/// Family parameters; which ones are required depends on `--state`.
#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    #[arg(long, value_enum)]
    pub state: Family,
    #[arg(long, allow_negative_numbers = true)]
    pub p: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub cx: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub cy: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub cz: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SettingsArgs {
    /// First observable: x, y, z or "theta,phi" in degrees
    #[arg(long = "obs-r", default_value = "z", allow_hyphen_values = true)]
    pub obs_r: ObsArg,
    /// Second observable, same syntax as --obs-r
    #[arg(long = "obs-s", default_value = "x", allow_hyphen_values = true)]
    pub obs_s: ObsArg,
    /// Search mutually unbiased settings minimizing the fine-grained sum instead
    #[arg(long, conflicts_with_all = ["obs_r", "obs_s"])]
    pub optimize_settings: bool,
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[command(flatten)]
    pub settings: SettingsArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub state: StateArgs,
    /// Parameter to sweep (p, alpha, cx, cy or cz)
    #[arg(long)]
    pub param: String,
    #[arg(long, allow_negative_numbers = true)]
    pub from: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub to: f64,
    #[arg(long, default_value_t = 101)]
    pub steps: usize,
    #[command(flatten)]
    pub settings: SettingsArgs,
    /// CSV destination; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FigureArgs {
    #[arg(long)]
    pub id: u32,
    /// CSV destination; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a grouped bar chart
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Slack allowed on the inequalities; a negative value demands a strict margin
    #[arg(long, default_value_t = 1e-7, allow_negative_numbers = true)]
    pub tol: f64,
    /// Random setting pairs drawn per state
    #[arg(long, default_value_t = 4)]
    pub pairs: usize,
}

/// A qubit observable as written on the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ObsArg {
    Axis(char),
    Degrees(f64, f64),
}

impl ObsArg {
    pub fn observable(&self) -> Observable64 {
        match *self {
            ObsArg::Axis('x') => Observable64::x(),
            ObsArg::Axis('y') => Observable64::y(),
            ObsArg::Axis(_) => Observable64::z(),
            ObsArg::Degrees(t, p) => {
                Observable64::new(t * std::f64::consts::PI / 180.0, p * std::f64::consts::PI / 180.0)
                    .expect("angles checked while parsing")
            }
        }
    }
}

impl std::str::FromStr for ObsArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        match s {
            "x" | "X" => return Ok(ObsArg::Axis('x')),
            "y" | "Y" => return Ok(ObsArg::Axis('y')),
            "z" | "Z" => return Ok(ObsArg::Axis('z')),
            _ => {}
        }
        let (t, p) = s
            .split_once(',')
            .ok_or_else(|| format!("expected x, y, z or \"theta,phi\" in degrees, got {s:?}"))?;
        let parse = |v: &str, name: &str| {
            v.trim().parse::<f64>().map_err(|_| format!("{name} is not a number: {v:?}"))
        };
        let (t, p) = (parse(t, "theta")?, parse(p, "phi")?);
        if !(0.0..=180.0).contains(&t) {
            return Err(format!("theta = {t} must lie in [0, 180] degrees"));
        }
        if !(0.0..360.0).contains(&p) {
            return Err(format!("phi = {p} must lie in [0, 360) degrees"));
        }
        Ok(ObsArg::Degrees(t, p))
    }
}

impl fmt::Display for ObsArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObsArg::Axis(c) => write!(f, "{c}"),
            ObsArg::Degrees(t, p) => write!(f, "{t},{p}"),
        }
    }
}

impl SettingsArgs {
    pub fn canonical(&self) -> String {
        if self.optimize_settings {
            "--optimize-settings".into()
        } else {
            format!("--obs-r {} --obs-s {}", self.obs_r, self.obs_s)
        }
    }
}
