mod eval;
mod examples;
mod schema;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qsep_core::scan::{
    export_csv, export_json, export_svg, grid_scan, parse_selection, DEFAULT_RESOLUTION,
};
use qsep_core::verdict::Alpha;
use qsep_core::{Config, Error};

/// Separability criteria for the noisy GHZ-W three-qubit family.
///
/// The PSD tolerance used for positivity decisions defaults to 1e-10 and can be overridden
/// with the QSEP_TOL environment variable.
#[derive(Debug, Parser)]
#[command(name = "qsep", version, arg_required_else_help = true)]
struct Cli {
    /// Print the JSON Schema of the `eval --json` output and exit.
    #[arg(long)]
    schema: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate every criterion at one point of the simplex.
    Eval {
        #[arg(long, allow_negative_numbers = true)]
        g: f64,
        #[arg(long, allow_negative_numbers = true)]
        w: f64,
        /// Extra Renyi orders for the entropy criterion, in addition to the default sweep.
        #[arg(long = "alpha", value_delimiter = ',')]
        alphas: Vec<Alpha>,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Scan the simplex lattice and export the results.
    Scan {
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        resolution: usize,
        /// Comma-separated criterion ids or families (`all`, `ppt`, `su`, `gs`, ...).
        #[arg(long, default_value = "all")]
        criteria: String,
        /// CSV output path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// SVG output path.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// JSON output path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Cross-check closed forms against numerics at random points.
    Verify {
        #[arg(long, default_value_t = 1000)]
        points: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Print one of the fixed example states with its verdicts.
    Examples {
        #[arg(long, value_enum)]
        which: Which,
        /// Parameter of the class 2.8 example.
        #[arg(long)]
        a: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Which {
    Class21,
    Class28,
    Pptes,
}

/// Failure of a subcommand, carrying the process exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Consistency(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Consistency(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Consistency(m) | Failure::Io(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::InvalidPoint { .. } | Error::InvalidArgument(_) | Error::NoSignChange => {
                Failure::Usage(msg)
            }
            Error::Io { .. } | Error::Json(_) => Failure::Io(msg),
            _ => Failure::Consistency(msg),
        }
    }
}

pub type CmdResult = Result<(), Failure>;

fn scan(
    resolution: usize,
    criteria: &str,
    out: Option<PathBuf>,
    svg: Option<PathBuf>,
    json: Option<PathBuf>,
) -> CmdResult {
    let ids = parse_selection(criteria)?;
    if ids.is_empty() {
        return Err(Failure::Usage("no criteria selected".into()));
    }
    let grid = grid_scan(resolution, &ids)?;
    println!(
        "scanned {} points x {} criteria at resolution {resolution}",
        grid.cells().len(),
        ids.len()
    );
    println!("PPTES cells: {}", grid.pptes_cells().len());
    if let Some(path) = out {
        export_csv(&grid, &path)?;
        println!("wrote {}", path.display());
    }
    if let Some(path) = svg {
        export_svg(&grid, &path)?;
        println!("wrote {}", path.display());
    }
    if let Some(path) = json {
        export_json(&grid, &path)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn run(cli: Cli, cfg: &Config) -> CmdResult {
    if cli.schema {
        println!(
            "{}",
            serde_json::to_string_pretty(&schema::eval_schema()).expect("static schema")
        );
        return Ok(());
    }
    match cli.command {
        None => Err(Failure::Usage("no subcommand given".into())),
        Some(Command::Eval { g, w, alphas, json }) => eval::run(g, w, &alphas, json, cfg),
        Some(Command::Scan {
            resolution,
            criteria,
            out,
            svg,
            json,
        }) => scan(resolution, &criteria, out, svg, json),
        Some(Command::Verify { points, tol, seed }) => verify::run(points, tol, seed),
        Some(Command::Examples { which, a }) => {
            let which = match (which, a) {
                (Which::Class21, None) => examples::Example::Class21,
                (Which::Pptes, None) => examples::Example::Pptes,
                (Which::Class28, a) => examples::Example::Class28(a.unwrap_or(2.0)),
                (_, Some(_)) => return Err(Failure::Usage("--a only applies to class28".into())),
            };
            examples::run(which, cfg)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let cfg = Config::from_env();
    match run(cli, &cfg) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
