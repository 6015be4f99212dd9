//! `pedalgeom`: pedal-polygon constructions from the command line.
//!
//! Every command prints a JSON report (sorted keys, so identical inputs give
//! identical bytes) and can draw its construction as layered SVG.
//!
//! Exit codes: 0 success, 2 input error, 3 geometric degeneracy,
//! 4 construction ran but did not certify, 1 output could not be written.

mod input;
mod job;
mod svg;

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use pedalgeom::{GeomError, Point, TBranch, DEFAULT_TOL};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::input::{parse_point, read_polygon, read_text};
use crate::job::Job;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Geometry(GeomError),
    Output(String),
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        CliError::Geometry(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Geometry(e) if e.is_degeneracy() => write!(f, "degenerate geometry: {e}"),
            CliError::Geometry(e) => write!(f, "invalid input: {e}"),
            CliError::Output(m) => write!(f, "cannot write output: {m}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Geometry(e) if e.is_degeneracy() => 3,
            CliError::Geometry(_) => 2,
            CliError::Output(_) => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "pedalgeom",
    version,
    about = "Pedal polygons, their invariants and pedal-equivalence paths"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Also render the construction as SVG.
    #[arg(long, global = true, value_name = "PATH")]
    svg: Option<PathBuf>,

    /// Relative tolerance for degeneracy and certification checks.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,

    /// Seed for randomized commands.
    #[arg(long, global = true, env = "PEDALGEOM_SEED", default_value_t = 0)]
    seed: u64,

    /// Include wall-clock timing in the report (makes it non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pedal polygon of a polygon with respect to a point.
    Pedal {
        polygon: PathBuf,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        point: Point,
    },
    /// Antipedal polygon: the polygon whose pedal at the point is the input.
    Antipedal {
        polygon: PathBuf,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        point: Point,
    },
    /// Pedal repeatedly, once per --point, in order.
    Iterate {
        polygon: PathBuf,
        #[arg(long = "point", required = true, value_parser = parse_point, allow_hyphen_values = true)]
        points: Vec<Point>,
    },
    /// Outer polygon of W with the angles of V at angle THETA.
    Outer {
        w: PathBuf,
        v: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
    },
    /// Inner polygon of W with the angles of V at angle THETA.
    Inner {
        w: PathBuf,
        v: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
    },
    /// Sample area(outer) + area(inner) over θ against its closed form.
    InvariantScan {
        w: PathBuf,
        v: PathBuf,
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Points X with pedal(V, X) similar to W, for triangles.
    Centers { v: PathBuf, w: PathBuf },
    /// Pedal path from the canonical square to a quadrilateral.
    QuadPath {
        w: PathBuf,
        /// Use the branch t = 1 + sqrt(1 - r) for the square-to-rectangle step.
        #[arg(long)]
        upper_branch: bool,
    },
    /// Pedal path from one quadrilateral to another.
    Connect { v: PathBuf, w: PathBuf },
    /// Randomized search for a pedal path between two n-gons.
    Explore {
        v: PathBuf,
        w: PathBuf,
        /// Number of candidate evaluations.
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        #[arg(long, default_value_t = 4)]
        restarts: usize,
        /// Longest point sequence tried.
        #[arg(long, default_value_t = 12)]
        max_len: usize,
    },
    /// Draw the construction recorded in a report as SVG.
    Render { report: PathBuf },
}

#[derive(Debug, Serialize, Deserialize)]
struct Timing {
    elapsed_ms: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct RunReport {
    #[serde(flatten)]
    job: Job,
    tol: f64,
    outputs: Value,
    residuals: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    timing: Option<Timing>,
}

fn build_job(command: Command, seed: u64) -> Result<Job, CliError> {
    let poly = |p: &Path| read_polygon(p);
    Ok(match command {
        Command::Pedal { polygon, point } => Job::Pedal {
            polygon: poly(&polygon)?,
            point,
        },
        Command::Antipedal { polygon, point } => Job::Antipedal {
            polygon: poly(&polygon)?,
            point,
        },
        Command::Iterate { polygon, points } => Job::Iterate {
            polygon: poly(&polygon)?,
            points,
        },
        Command::Outer { w, v, theta } => Job::Outer {
            w: poly(&w)?,
            v: poly(&v)?,
            theta: finite(theta, "--theta")?,
        },
        Command::Inner { w, v, theta } => Job::Inner {
            w: poly(&w)?,
            v: poly(&v)?,
            theta: finite(theta, "--theta")?,
        },
        Command::InvariantScan { w, v, samples } => Job::InvariantScan {
            w: poly(&w)?,
            v: poly(&v)?,
            samples,
        },
        Command::Centers { v, w } => Job::Centers {
            v: poly(&v)?,
            w: poly(&w)?,
        },
        Command::QuadPath { w, upper_branch } => Job::QuadPath {
            w: poly(&w)?,
            branch: if upper_branch {
                TBranch::Upper
            } else {
                TBranch::Lower
            },
        },
        Command::Connect { v, w } => Job::Connect {
            v: poly(&v)?,
            w: poly(&w)?,
        },
        Command::Explore {
            v,
            w,
            budget,
            restarts,
            max_len,
        } => Job::Explore {
            v: poly(&v)?,
            w: poly(&w)?,
            budget,
            seed,
            restarts,
            max_len,
        },
        Command::Render { .. } => unreachable!("handled before building a job"),
    })
}

fn finite(x: f64, what: &str) -> Result<f64, CliError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::Input(format!("{what} must be finite")))
    }
}

fn write_to(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::Output(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn contains_null(v: &Value) -> bool {
    match v {
        Value::Null => true,
        Value::Array(a) => a.iter().any(contains_null),
        Value::Object(o) => o.values().any(contains_null),
        _ => false,
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        return Err(CliError::Input("--tol must be positive".into()));
    }
    if let Command::Render { report } = &cli.command {
        let text = read_text(report)?;
        let report: RunReport = serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("{}: {e}", report.display())))?;
        let outcome = report.job.run(report.tol)?;
        let target = cli.svg.as_deref().or(cli.out.as_deref());
        write_to(target, &outcome.figure.to_svg())?;
        return Ok(ExitCode::SUCCESS);
    }

    let job = build_job(cli.command, cli.seed)?;
    let start = Instant::now();
    let mut outcome = job.run(cli.tol)?;
    let elapsed = start.elapsed();
    if outcome.failure.is_none()
        && (contains_null(&outcome.outputs) || outcome.residuals.values().any(|r| !r.is_finite()))
    {
        outcome.failure = Some("non-finite value in the result".into());
    }
    let report = RunReport {
        job,
        tol: cli.tol,
        outputs: outcome.outputs,
        residuals: outcome.residuals,
        timing: cli.timing.then_some(Timing {
            elapsed_ms: elapsed.as_secs_f64() * 1e3,
        }),
    };
    // Through Value so keys come out sorted.
    let value = serde_json::to_value(&report).expect("report serializes");
    let mut text = serde_json::to_string_pretty(&value).expect("report serializes");
    text.push('\n');
    write_to(cli.out.as_deref(), &text)?;
    if let Some(path) = &cli.svg {
        write_to(Some(path), &outcome.figure.to_svg())?;
    }
    if let Some(msg) = outcome.failure {
        eprintln!("pedalgeom: verification failed: {msg}");
        return Ok(ExitCode::from(4));
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("pedalgeom: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
