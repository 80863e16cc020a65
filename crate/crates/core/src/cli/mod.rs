//! Command-line front end. Parses arguments, reads a JSON input, dispatches to
//! the library and prints a report.
//!
//! Exit codes: 0 success, 2 bad input or validation failure, 3 a theorem was
//! numerically falsified, 64 usage error.

mod commands;
pub mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use crate::error::Error;
use report::{Report, Status, SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_FALSIFIED: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "mixedform", version, about = "Area forms, mixed volumes and cone metrics in support-number coordinates")]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Emit the JSON report instead of the text summary.
    #[arg(long, global = true)]
    pub json: bool,
    /// Override the tolerance of the command's main check.
    #[arg(long, global = true, value_name = "FLOAT")]
    pub tol: Option<f64>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0, value_name = "U64")]
    pub seed: u64,
    /// Number of random samples for sampled checks.
    #[arg(long, global = true, value_name = "INT")]
    pub samples: Option<usize>,
    /// Quadrature refinement depth.
    #[arg(long, global = true, value_name = "INT")]
    pub depth: Option<u32>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convex polygons with fixed edge directions.
    Polygon {
        #[command(subcommand)]
        op: PolygonOp,
    },
    /// Convex 3-polytopes given by halfspaces.
    Polytope {
        #[command(subcommand)]
        op: PolytopeOp,
    },
    /// Flat cone surfaces glued from triangles.
    Surface {
        #[command(subcommand)]
        op: SurfaceOp,
    },
    /// Fuchsian polyhedra given by quotient fan data.
    Fuchsian {
        #[command(subcommand)]
        op: FuchsianOp,
    },
}

#[derive(Debug, Args)]
struct Input {
    /// JSON input file.
    file: PathBuf,
}

#[derive(Debug, Subcommand)]
enum PolygonOp {
    /// Area form, area and edge lengths.
    AreaForm(Input),
    /// Signature of the area form.
    Signature(Input),
    /// Minkowski inequality for (h, k) and/or random pairs.
    Minkowski(Input),
    /// Complex edge-vector chart of the doubled polygon.
    Embed(Input),
}

#[derive(Debug, Subcommand)]
enum PolytopeOp {
    /// Combinatorics of the halfspace intersection.
    Build(Input),
    /// Volume and face areas.
    Volume(Input),
    /// Boundary area form, checked against the mixed volume.
    AreaForm(Input),
    /// Signature of the boundary area form.
    Signature(Input),
    /// Alexandrov-Fenchel inequality for (h, k, p) and/or random triples.
    AfCheck(Input),
    /// First area measure.
    Measure(Input),
    /// Boundary area as an integral over the sphere.
    SphereArea(Input),
    /// Boundary as a flat cone surface.
    BoundaryMetric(Input),
}

#[derive(Debug, Subcommand)]
enum SurfaceOp {
    /// Cone angles, curvatures, genus and Gauss-Bonnet.
    Check(Input),
}

#[derive(Debug, Subcommand)]
enum FuchsianOp {
    /// Covolume Hessian: diagonal dominance and definiteness.
    Hessian(Input),
    /// Boundary area form.
    AreaForm(Input),
    /// Positive definiteness of the area form and Cauchy-Schwarz samples.
    CheckPd(Input),
    /// Spherical distance between h and k.
    Distance(Input),
}

/// What a command produced before it is wrapped into a [`Report`].
#[derive(Debug, Default)]
pub(crate) struct Outcome {
    pub results: Value,
    pub summary: Vec<String>,
    pub tolerances: BTreeMap<String, f64>,
    pub falsified: Option<String>,
}

impl Outcome {
    pub fn tol(mut self, name: &str, value: f64) -> Self {
        self.tolerances.insert(name.to_string(), value);
        self
    }

    pub fn line(mut self, s: impl Into<String>) -> Self {
        self.summary.push(s.into());
        self
    }

    pub fn falsify_if(mut self, failed: bool, msg: impl Into<String>) -> Self {
        if failed && self.falsified.is_none() {
            self.falsified = Some(msg.into());
        }
        self
    }
}

fn dispatch(command: &Command, opts: &Options) -> (String, Result<(String, Outcome), Error>) {
    use commands as c;
    let (name, file, handler): (&str, &PathBuf, c::Handler) = match command {
        Command::Polygon { op } => match op {
            PolygonOp::AreaForm(i) => ("polygon area-form", &i.file, c::polygon_area_form),
            PolygonOp::Signature(i) => ("polygon signature", &i.file, c::polygon_signature),
            PolygonOp::Minkowski(i) => ("polygon minkowski", &i.file, c::polygon_minkowski),
            PolygonOp::Embed(i) => ("polygon embed", &i.file, c::polygon_embed),
        },
        Command::Polytope { op } => match op {
            PolytopeOp::Build(i) => ("polytope build", &i.file, c::polytope_build),
            PolytopeOp::Volume(i) => ("polytope volume", &i.file, c::polytope_volume),
            PolytopeOp::AreaForm(i) => ("polytope area-form", &i.file, c::polytope_area_form),
            PolytopeOp::Signature(i) => ("polytope signature", &i.file, c::polytope_signature),
            PolytopeOp::AfCheck(i) => ("polytope af-check", &i.file, c::polytope_af_check),
            PolytopeOp::Measure(i) => ("polytope measure", &i.file, c::polytope_measure),
            PolytopeOp::SphereArea(i) => ("polytope sphere-area", &i.file, c::polytope_sphere_area),
            PolytopeOp::BoundaryMetric(i) => ("polytope boundary-metric", &i.file, c::polytope_boundary_metric),
        },
        Command::Surface { op } => match op {
            SurfaceOp::Check(i) => ("surface check", &i.file, c::surface_check),
        },
        Command::Fuchsian { op } => match op {
            FuchsianOp::Hessian(i) => ("fuchsian hessian", &i.file, c::fuchsian_hessian),
            FuchsianOp::AreaForm(i) => ("fuchsian area-form", &i.file, c::fuchsian_area_form),
            FuchsianOp::CheckPd(i) => ("fuchsian check-pd", &i.file, c::fuchsian_check_pd),
            FuchsianOp::Distance(i) => ("fuchsian distance", &i.file, c::fuchsian_distance),
        },
    };
    let result = std::fs::read(file).map_err(Error::from).and_then(|bytes| {
        let digest = report::sha256_hex(&bytes);
        handler(&bytes, opts).map(|o| (digest, o))
    });
    (name.to_string(), result)
}

fn validate(opts: &Options) -> Result<(), Error> {
    if let Some(t) = opts.tol {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::InvalidInput(format!("--tol must be a finite non-negative number, got {t}")));
        }
    }
    Ok(())
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    if let Err(e) = validate(&cli.opts) {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_INPUT;
    }
    let start = Instant::now();
    let (command, result) = dispatch(&cli.command, &cli.opts);
    let elapsed = start.elapsed();
    let code = match result {
        Ok((digest, outcome)) => {
            let status = if outcome.falsified.is_some() { Status::Falsified } else { Status::Ok };
            let report = Report {
                schema: SCHEMA_VERSION,
                command,
                input_digest: digest,
                seed: cli.opts.seed,
                status,
                tolerances: outcome.tolerances,
                results: outcome.results,
                message: outcome.falsified,
                summary: outcome.summary,
            };
            let text = if cli.opts.json { report.to_json() + "\n" } else { report.to_text() };
            let _ = stdout.write_all(text.as_bytes());
            if status == Status::Falsified { EXIT_FALSIFIED } else { EXIT_OK }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_falsification() { EXIT_FALSIFIED } else { EXIT_INPUT }
        }
    };
    let _ = writeln!(stderr, "wall time: {:.3} ms", elapsed.as_secs_f64() * 1e3);
    code
}
