//! Argument handling and output formatting for the `pcretract` binary.
//!
//! [`run`] takes the full argument list and returns the exit code together
//! with what should go to stdout and stderr, so the whole command surface can
//! be tested without spawning processes.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pcretract::constructions::{build, Ambient, BuildOptions, ConstructionId};
use pcretract::verification::{borsuk_discontinuity_demo, run_suite, CheckReport, DemoRow, SuiteOptions};
use pcretract::{NormKind, Tolerance, Vector};
use serde::Serialize;

/// Environment variable consulted when `--seed` is not given.
pub const SEED_ENV: &str = "PCRETRACT_SEED";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pcretract", version, about = "Check piecewise continuous retractions by seeded sampling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every applicable check against a construction.
    Verify(VerifyArgs),
    /// Print one piece of a construction's witness cover as descriptor JSON.
    Witness(WitnessArgs),
    /// Print the table showing the sphere retraction jumping at the origin.
    Demo(DemoArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AmbientArg {
    Space,
    Ball,
}

impl From<AmbientArg> for Ambient {
    fn from(a: AmbientArg) -> Self {
        match a {
            AmbientArg::Space => Ambient::Space,
            AmbientArg::Ball => Ambient::UnitBall,
        }
    }
}

#[derive(Debug, Args)]
struct MapArgs {
    /// One of: fractional, glue, extend, const-extend, sphere, open-ball.
    #[arg(long)]
    construction: String,
    /// Ambient dimension; defaults to 1 for fractional and glue, 2 otherwise.
    #[arg(long)]
    dim: Option<usize>,
    /// `p:<value>` with value >= 1, or `max`.
    #[arg(long, default_value = "p:2")]
    norm: String,
    #[arg(long, value_enum, default_value_t = AmbientArg::Space)]
    ambient: AmbientArg,
    /// Pair the sphere retraction with the cover {‖x‖ >= 1/n}, which misses the origin.
    #[arg(long)]
    paper_witness: bool,
    /// Permit the open-ball retraction in dimension 1.
    #[arg(long)]
    allow_low_dim: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    map: MapArgs,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    membership_tol: f64,
    #[arg(long, default_value_t = 1e-12)]
    identity_tol: f64,
    /// Highest witness piece checked for continuity and nesting.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    max_piece: u64,
    /// Comma-separated field expressions on the retract, e.g. `const:1,coord:0,sin:0`.
    #[arg(long, value_delimiter = ',')]
    fields: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct WitnessArgs {
    #[command(flatten)]
    map: MapArgs,
    /// Piece index.
    #[arg(long)]
    n: usize,
}

#[derive(Debug, Args)]
struct DemoArgs {
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value = "p:2")]
    norm: String,
    /// First direction as comma-separated coordinates; defaults to e1.
    #[arg(long)]
    u: Option<String>,
    /// Second direction; defaults to e2.
    #[arg(long)]
    v: Option<String>,
    #[arg(long, default_value_t = 12)]
    depth: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// What a single invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Self { code, stdout, stderr: String::new() }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Self { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(EXIT_PASS, text)
            };
        }
    };
    match cli.command {
        Command::Verify(a) => verify(a),
        Command::Witness(a) => witness(a),
        Command::Demo(a) => demo(a),
    }
}

fn build_options(m: &MapArgs, tolerance: Tolerance<f64>) -> Result<(ConstructionId, BuildOptions<f64>), String> {
    let id: ConstructionId = m.construction.parse().map_err(|e| {
        let known: Vec<&str> = ConstructionId::ALL.iter().map(|c| c.as_str()).collect();
        format!("{e}; expected one of {}", known.join(", "))
    })?;
    let norm: NormKind<f64> = m.norm.parse().map_err(|e| format!("{e}"))?;
    if m.dim == Some(0) {
        return Err("dimension must be at least 1".into());
    }
    let opts = BuildOptions {
        dim: m.dim,
        norm,
        ambient: m.ambient.into(),
        anchor: None,
        allow_low_dim: m.allow_low_dim,
        paper_witness: m.paper_witness,
        tolerance,
    };
    Ok((id, opts))
}

#[derive(Serialize)]
struct VerifyDocument<'a> {
    construction: &'a str,
    dim: usize,
    norm: String,
    samples: u64,
    seed: u64,
    status: &'static str,
    reports: &'a [CheckReport],
}

fn verify(a: VerifyArgs) -> Outcome {
    let tolerance = match Tolerance::new(a.membership_tol, a.identity_tol) {
        Ok(t) => t,
        Err(e) => return Outcome::usage(e),
    };
    let (id, opts) = match build_options(&a.map, tolerance) {
        Ok(x) => x,
        Err(e) => return Outcome::usage(e),
    };
    let map = match build(id, &opts) {
        Ok(m) => Arc::new(m),
        Err(e) => return Outcome::usage(e),
    };
    let suite = SuiteOptions {
        samples: a.samples as usize,
        seed: a.seed,
        max_piece: a.max_piece as usize,
        identity_tol: a.identity_tol,
        fields: a.fields.iter().map(|f| f.trim().to_string()).filter(|f| !f.is_empty()).collect(),
        ..SuiteOptions::default()
    };
    let reports = match run_suite(&map, &suite) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e),
    };
    let all_pass = reports.iter().all(CheckReport::passed);
    let doc = VerifyDocument {
        construction: id.as_str(),
        dim: map.dim(),
        norm: map.norm().to_string(),
        samples: a.samples,
        seed: a.seed,
        status: if all_pass { "pass" } else { "fail" },
        reports: &reports,
    };
    let body = match a.format {
        Format::Json => serde_json::to_string_pretty(&doc).expect("report serializes") + "\n",
        Format::Text => verify_text(&doc),
    };
    let code = if all_pass { EXIT_PASS } else { EXIT_FAIL };
    match &a.output {
        Some(path) => match std::fs::write(path, &body) {
            Ok(()) => Outcome::ok(code, format!("{} ({}): report written to {}\n", doc.status, id, path.display())),
            Err(e) => Outcome::usage(format!("cannot write {}: {e}", path.display())),
        },
        None => Outcome::ok(code, body),
    }
}

/// Seventeen significant digits, enough to round-trip any double.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn point(p: &[f64]) -> String {
    let coords: Vec<String> = p.iter().map(|&c| num(c)).collect();
    format!("({})", coords.join(", "))
}

fn verify_text(doc: &VerifyDocument<'_>) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "construction {}  dim {}  norm {}  samples {}  seed {}",
        doc.construction, doc.dim, doc.norm, doc.samples, doc.seed
    );
    let width = doc.reports.iter().map(|r| r.check.len()).max().unwrap_or(5).max(5);
    let _ = writeln!(out, "{:<width$}  {:<12}  {:>9}  {:>23}  {:>23}", "check", "status", "samples", "max_violation", "tolerance");
    for r in doc.reports {
        let _ = writeln!(
            out,
            "{:<width$}  {:<12}  {:>9}  {:>23}  {:>23}",
            r.check,
            r.status.as_str(),
            r.samples,
            num(r.max_violation),
            num(r.tolerance)
        );
        for p in &r.witness_points {
            let _ = writeln!(out, "    at {}", point(p));
        }
    }
    let _ = writeln!(out, "overall: {}", doc.status);
    out
}

fn witness(a: WitnessArgs) -> Outcome {
    let (id, opts) = match build_options(&a.map, Tolerance::default()) {
        Ok(x) => x,
        Err(e) => return Outcome::usage(e),
    };
    match build(id, &opts) {
        Ok(map) => Outcome::ok(EXIT_PASS, serde_json::to_string(&map.piece(a.n)).expect("descriptor serializes") + "\n"),
        Err(e) => Outcome::usage(e),
    }
}

fn parse_direction(s: &str, dim: usize) -> Result<Vector<f64>, String> {
    let coords: Vec<f64> = s
        .split(',')
        .map(|c| c.trim().parse::<f64>().map_err(|e| format!("bad coordinate {c:?}: {e}")))
        .collect::<Result<_, _>>()?;
    if coords.len() != dim {
        return Err(format!("direction {s:?} has {} coordinates, expected {dim}", coords.len()));
    }
    Vector::new(coords).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct DemoDocument<'a> {
    dim: usize,
    norm: String,
    u: Vec<f64>,
    v: Vec<f64>,
    rows: &'a [DemoRow],
}

fn demo(a: DemoArgs) -> Outcome {
    if a.depth == 0 {
        return Outcome::usage("depth must be at least 1");
    }
    if a.dim < 2 && (a.u.is_none() || a.v.is_none()) {
        return Outcome::usage("the default directions e1, e2 need dimension at least 2");
    }
    let map_args = MapArgs {
        construction: "sphere".into(),
        dim: Some(a.dim),
        norm: a.norm.clone(),
        ambient: AmbientArg::Space,
        paper_witness: false,
        allow_low_dim: false,
    };
    let (id, opts) = match build_options(&map_args, Tolerance::default()) {
        Ok(x) => x,
        Err(e) => return Outcome::usage(e),
    };
    let map = match build(id, &opts) {
        Ok(m) => m,
        Err(e) => return Outcome::usage(e),
    };
    let unit = |i: usize| {
        let e = Vector::basis(a.dim, i);
        e.scaled(map.norm().norm(&e).recip()).expect("unit vector")
    };
    let dir = |arg: &Option<String>, i: usize| match arg {
        Some(s) => parse_direction(s, a.dim),
        None => Ok(unit(i)),
    };
    let (u, v) = match (dir(&a.u, 0), dir(&a.v, 1)) {
        (Ok(u), Ok(v)) => (u, v),
        (Err(e), _) | (_, Err(e)) => return Outcome::usage(e),
    };
    let rows = match borsuk_discontinuity_demo(&map, &u, &v, a.depth) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e),
    };
    let body = match a.format {
        Format::Json => {
            let doc = DemoDocument { dim: a.dim, norm: map.norm().to_string(), u: u.to_f64(), v: v.to_f64(), rows: &rows };
            serde_json::to_string_pretty(&doc).expect("rows serialize") + "\n"
        }
        Format::Text => demo_text(&rows),
    };
    Outcome::ok(EXIT_PASS, body)
}

fn demo_text(rows: &[DemoRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:>4}  {:>23}  {:>23}  {:>23}  images", "k", "r", "input_gap", "output_gap");
    for row in rows {
        let _ = writeln!(
            out,
            "{:>4}  {:>23}  {:>23}  {:>23}  {} {}",
            row.k,
            num(row.r),
            num(row.input_gap),
            num(row.output_gap),
            point(&row.image_u),
            point(&row.image_v)
        );
    }
    out
}
