//! `teichcore` command-line front end.

mod commands;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;
use teichcore::coarse::CoarseError;
use teichcore::disc::DiscError;
use teichcore::flat::{DiscPoint, FlatError};
use teichcore::veech::VeechError;

#[derive(Parser, Debug)]
#[command(name = "teichcore", version, about = "Teichmueller disc geometry of square-tiled surfaces")]
struct Cli {
    #[command(flatten)]
    config: Common,
    #[command(subcommand)]
    command: Command,
}

/// Knobs shared by every command, echoed into the provenance block.
#[derive(Args, Debug, Clone, Serialize)]
struct Common {
    /// Level of the enlarged horodiscs.
    #[arg(long, global = true, default_value_t = 0.5, value_parser = positive)]
    eps0: f64,
    /// Cutoff threshold for winding terms (at least 2).
    #[arg(long, global = true, default_value_t = 2.0, value_parser = at_least_two)]
    cutoff: f64,
    /// Enumeration radius for cusp holonomies.
    #[arg(long = "enum-radius", global = true, default_value_t = 12, value_parser = clap::value_parser!(i64).range(1..))]
    enum_radius: i64,
    /// Subgroup file (JSON list of labelled matrices); default is the full Veech group.
    #[arg(long, global = true)]
    subgroup: Option<PathBuf>,
    /// Word radius for subgroup cusp searches and translates.
    #[arg(long = "word-radius", global = true, default_value_t = 4)]
    word_radius: usize,
    /// Smallest horodisc size kept for subgroup families.
    #[arg(long = "min-size", global = true, default_value_t = 0.01, value_parser = positive)]
    min_size: f64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Directory for report.json and derived CSV/SVG/DOT files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Vertex data, Veech group, cusp classes and cylinder tables.
    Analyze { origami: PathBuf },
    /// ε_Γ, overlap bound R_Γ, W_Γ and horocycle moduli.
    Constants {
        origami: PathBuf,
        #[arg(long = "grid-step", default_value_t = 0.02, value_parser = positive)]
        grid_step: f64,
        #[arg(long = "y-max", default_value_t = 2.0, value_parser = positive)]
        y_max: f64,
    },
    /// Wedge spectrum on `[0, bound]`.
    Pvt {
        origami: PathBuf,
        #[arg(long, value_parser = positive)]
        bound: f64,
        /// Unimodular change of chart `p,q,r,s` for the invariance check.
        #[arg(long, default_value = "1,0,0,1")]
        chart: String,
    },
    /// Distance between two disc points.
    Distance {
        origami: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, value_parser = disc_point)]
        from: DiscPoint,
        #[arg(long, value_parser = disc_point)]
        to: DiscPoint,
    },
    /// Quasi-isometry experiments.
    Experiment {
        #[command(subcommand)]
        which: Experiment,
    },
}

#[derive(Subcommand, Debug)]
enum Experiment {
    /// Word length against truncated distance over a word ball.
    Undistortion {
        origami: PathBuf,
        #[arg(long, default_value_t = 6)]
        radius: usize,
        #[arg(long, default_value = "0,1", value_parser = disc_point)]
        basepoint: DiscPoint,
    },
    /// Electrified distance against the Hempel estimate on random thick pairs.
    Systole {
        origami: PathBuf,
        #[arg(long, default_value_t = 50)]
        pairs: usize,
        #[arg(long, default_value_t = 8)]
        radius: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    /// Truncated metric on the Nielsen core.
    Tr,
    /// Electrified metric.
    El,
    /// Plain hyperbolic metric.
    Hyp,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(v) => Err(format!("must be positive, got {v}")),
        Err(e) => Err(e.to_string()),
    }
}

fn at_least_two(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v >= 2.0 && v.is_finite() => Ok(v),
        Ok(v) => Err(format!("must be at least 2, got {v}")),
        Err(e) => Err(e.to_string()),
    }
}

fn disc_point(s: &str) -> Result<DiscPoint, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [x, y] = parts[..] else {
        return Err(format!("expected x,y, got {s:?}"));
    };
    let x: f64 = x.parse().map_err(|e| format!("{x:?}: {e}"))?;
    let y: f64 = y.parse().map_err(|e| format!("{y:?}: {e}"))?;
    if !(x.is_finite() && y > 0.0 && y.is_finite()) {
        return Err(format!("point must lie in the upper half-plane, got ({x}, {y})"));
    }
    Ok(DiscPoint::new(x, y))
}

/// Failure classes, each with its own exit code.
#[derive(Debug)]
pub enum CliError {
    /// Malformed input file or flag value.
    Parse(String),
    /// Well-formed but invalid surface.
    Surface(FlatError),
    Group(VeechError),
    Disc(DiscError),
    Coarse(CoarseError),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Surface(_) => 3,
            CliError::Group(_) => 4,
            CliError::Disc(_) => 5,
            CliError::Coarse(_) => 6,
            CliError::Io(_) => 7,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Surface(e) => write!(f, "invalid surface: {e}"),
            CliError::Group(e) => write!(f, "group error: {e}"),
            CliError::Disc(e) => write!(f, "disc error: {e}"),
            CliError::Coarse(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<FlatError> for CliError {
    fn from(e: FlatError) -> Self {
        match e {
            FlatError::Parse(m) => CliError::Parse(m),
            e => CliError::Surface(e),
        }
    }
}

impl From<VeechError> for CliError {
    fn from(e: VeechError) -> Self {
        match e {
            VeechError::Parse(m) => CliError::Parse(m),
            VeechError::Flat(e) => e.into(),
            e => CliError::Group(e),
        }
    }
}

impl From<DiscError> for CliError {
    fn from(e: DiscError) -> Self {
        match e {
            DiscError::Veech(e) => e.into(),
            DiscError::Flat(e) => e.into(),
            e => CliError::Disc(e),
        }
    }
}

impl From<CoarseError> for CliError {
    fn from(e: CoarseError) -> Self {
        match e {
            CoarseError::Disc(e) => e.into(),
            CoarseError::Veech(e) => e.into(),
            CoarseError::Flat(e) => e.into(),
            CoarseError::InvalidParameter(m) => CliError::Parse(m),
            e => CliError::Coarse(e),
        }
    }
}

/// A finished command: the JSON result plus derived views keyed by file name.
pub struct Output {
    pub command: String,
    pub parameters: Value,
    pub certificates: Value,
    pub result: Value,
    pub files: Vec<(String, String)>,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn render(out: &Output, config: &Common) -> String {
    let mut common = to_value(config);
    if let Value::Object(m) = &mut common {
        // Output location does not change the results.
        m.remove("out");
    }
    let report = serde_json::json!({
        "provenance": {
            "tool": "teichcore",
            "version": teichcore::VERSION,
            "command": out.command,
            "config": common,
            "parameters": out.parameters,
            "certificates": out.certificates,
        },
        "result": out.result,
    });
    serde_json::to_string_pretty(&report).expect("json") + "\n"
}

fn write_outputs(dir: &Path, json: &str, files: &[(String, String)]) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    fs::write(dir.join("report.json"), json).map_err(io)?;
    for (name, body) in files {
        fs::write(dir.join(name), body).map_err(io)?;
    }
    Ok(())
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("TEICHCORE_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Parse(format!("TEICHCORE_THREADS must be a positive integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Io(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), CliError> {
    configure_threads()?;
    let c = &cli.config;
    let out = match &cli.command {
        Command::Analyze { origami } => commands::analyze(c, origami)?,
        Command::Constants { origami, grid_step, y_max } => commands::constants(c, origami, *grid_step, *y_max)?,
        Command::Pvt { origami, bound, chart } => commands::pvt(c, origami, *bound, chart)?,
        Command::Distance { origami, kind, from, to } => commands::distance(c, origami, *kind, *from, *to)?,
        Command::Experiment { which: Experiment::Undistortion { origami, radius, basepoint } } => {
            commands::undistortion(c, origami, *radius, *basepoint)?
        }
        Command::Experiment { which: Experiment::Systole { origami, pairs, radius } } => {
            commands::systole(c, origami, *pairs, *radius)?
        }
    };
    let json = render(&out, c);
    if let Some(dir) = &c.out {
        write_outputs(dir, &json, &out.files)?;
    }
    print!("{json}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("teichcore: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
