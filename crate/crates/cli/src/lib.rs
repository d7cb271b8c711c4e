//! The `constwidth` command line.
//!
//! Exit codes: `0` success, `1` usage or input error, `2` the shape failed
//! validation, `3` a numeric step failed.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use constwidth::approximation::{assemble_with, build_plan_with};
use constwidth::io::{parse, render_svg, serialize_with_generator, Decorations};
use constwidth::measures::{area, area_by_parts_with, perimeter, AREA_GRID};
use constwidth::reduction::reduce_once;
use constwidth::shapes::{
    disk, figure_one_terms, minkowski_combine, perturbed_circle, regular_reuleaux, reuleaux_triangle,
};
use constwidth::{Error, Exec, Harmonic, ReuleauxPolygon, Shape, Vec2};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

// Invocations are single-threaded.
const EXEC: Exec = Exec::Sequential;

#[derive(Debug, Parser)]
#[command(name = "constwidth", version, about = "Curves of constant width via support functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a shape document.
    Gen {
        #[command(subcommand)]
        shape: GenShape,
        /// Output file; standard output when omitted.
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Check the width and convexity constraints.
    Validate { file: PathBuf },
    /// Print perimeter, area and curvature range.
    Measure {
        file: PathBuf,
        /// Quadrature grid for the alternative area, a power of two.
        #[arg(long, default_value_t = AREA_GRID)]
        grid: usize,
    },
    /// Approximate a shape by a Reuleaux polygon within `eps` in C¹.
    Approx {
        file: PathBuf,
        #[arg(long)]
        eps: f64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Remove two vertices from a Reuleaux polygon without increasing area.
    Reduce {
        file: PathBuf,
        /// Repeat until a triangle remains.
        #[arg(long)]
        to_triangle: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw a shape as SVG.
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 720)]
        samples: usize,
        /// Angles of supporting-line pairs, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        support_lines: Vec<f64>,
        /// Mark polygon vertices.
        #[arg(long)]
        vertices: bool,
    },
}

#[derive(Debug, Subcommand)]
enum GenShape {
    /// Disk of diameter one.
    Disk {
        /// Centre as `x,y`.
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        center: Option<Vec2>,
    },
    /// Reuleaux triangle.
    Triangle,
    /// Regular Reuleaux polygon.
    Regular {
        #[arg(long)]
        sides: usize,
    },
    /// `h = 1/2 + δ·g` with `g` a sum of odd harmonics.
    Perturbed {
        #[arg(long, default_value_t = 1.0 / 160.0)]
        delta: f64,
        /// Harmonics of `g` as `k:a:b`, comma separated; defaults to cos 3θ + sin 7θ.
        #[arg(long, value_delimiter = ',', value_parser = parse_harmonic, allow_hyphen_values = true)]
        terms: Vec<Harmonic>,
    },
    /// Support function `(1 − λ)h_A + λh_B`.
    Combine {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        lambda: f64,
    },
}

fn parse_point(s: &str) -> Result<Vec2, String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [x, y] => Ok(Vec2::new(
            x.trim().parse().map_err(|e| format!("{e}"))?,
            y.trim().parse().map_err(|e| format!("{e}"))?,
        )),
        _ => Err(format!("expected x,y, got {s:?}")),
    }
}

fn parse_harmonic(s: &str) -> Result<Harmonic, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [k, a, b] = parts.as_slice() else {
        return Err(format!("expected k:a:b, got {s:?}"));
    };
    let k = k.trim().parse::<u32>().map_err(|e| format!("harmonic index: {e}"))?;
    let a = a.trim().parse::<f64>().map_err(|e| format!("cosine coefficient: {e}"))?;
    let b = b.trim().parse::<f64>().map_err(|e| format!("sine coefficient: {e}"))?;
    Ok(Harmonic::new(k, a, b))
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidSideCount(_)
            | Error::InvalidArgument(_)
            | Error::EpsOutOfRange(_)
            | Error::Document(_)
            | Error::TooFewVertices(_) => EXIT_USAGE,
            Error::EvenHarmonic(_)
            | Error::DuplicateHarmonic(_)
            | Error::ConstraintViolation { .. }
            | Error::NotConvex { .. }
            | Error::InvalidPieces(_)
            | Error::BreakpointAmbiguity { .. } => EXIT_INVALID,
            _ => EXIT_NUMERIC,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Reports go to `out`, diagnostics to `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

fn read_shape(path: &Path) -> Result<Shape, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    Ok(parse(&text)?)
}

fn read_polygon(path: &Path) -> Result<ReuleauxPolygon, Failure> {
    let shape = read_shape(path)?;
    let support = shape
        .as_piecewise()
        .ok_or_else(|| Failure::usage(format!("{} is not a Reuleaux polygon", path.display())))?;
    Ok(ReuleauxPolygon::from_vertices(support.vertices())?)
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn emit_document(shape: &Shape, generator: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    let text = serialize_with_generator(shape, generator);
    match output {
        Some(path) => write_text(path, &text),
        None => out.write_all(text.as_bytes()).map_err(|e| Failure::usage(e.to_string())),
    }
}

fn io_err(e: std::io::Error) -> Failure {
    Failure::usage(e.to_string())
}

fn execute(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Gen { shape, output } => {
            let (shape, generator) = generate(shape)?;
            emit_document(&shape, &generator, output.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Validate { file } => validate(&file, out),
        Command::Measure { file, grid } => {
            let shape = read_shape(&file)?;
            let (kmin, kmax) = shape.curvature_range(EXEC);
            let rows = [
                ("perimeter", perimeter(&shape)),
                ("area", area(&shape)),
                ("area_alt", area_by_parts_with(&shape, grid, EXEC)?),
                ("min_curvature", kmin),
                ("max_curvature", kmax),
            ];
            writeln!(out, "{:<16}{:>22}", "quantity", "value").map_err(io_err)?;
            for (name, value) in rows {
                writeln!(out, "{name:<16}{value:>22.16}").map_err(io_err)?;
            }
            writeln!(out, "{:<16}{grid:>22}", "area_alt_grid").map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Approx { file, eps, output } => {
            let shape = read_shape(&file)?;
            let plan = build_plan_with(&shape, eps, EXEC)?;
            let result = assemble_with(plan, EXEC)?;
            let mut polygon = result.polygon.to_shape();
            polygon.label = format!("approx({}, {eps})", shape.label);
            writeln!(out, "eps                {eps}").map_err(io_err)?;
            writeln!(out, "delta              {:.6e}", result.plan.delta).map_err(io_err)?;
            writeln!(out, "samples            {}", result.plan.n).map_err(io_err)?;
            writeln!(out, "vertices           {}", result.polygon.len()).map_err(io_err)?;
            writeln!(out, "sup |h - h_eps|    {:.6e}", result.sup_h_error).map_err(io_err)?;
            writeln!(out, "sup |h' - h_eps'|  {:.6e}", result.sup_h_prime_error).map_err(io_err)?;
            let generator = format!("approx --eps {eps}");
            emit_document(&polygon, &generator, Some(&output), out)?;
            Ok(EXIT_OK)
        }
        Command::Reduce { file, to_triangle, output } => {
            let mut poly = read_polygon(&file)?;
            if poly.len() < 5 {
                return Err(Error::TooFewVertices(poly.len()).into());
            }
            writeln!(out, "{:<6}{:>10}{:>22}", "step", "vertices", "area").map_err(io_err)?;
            let mut step = 0;
            let mut last_area = area(&poly.to_shape());
            writeln!(out, "{step:<6}{:>10}{last_area:>22.16}", poly.len()).map_err(io_err)?;
            loop {
                let (next, _) = reduce_once(&poly)?;
                poly = next;
                step += 1;
                last_area = area(&poly.to_shape());
                writeln!(out, "{step:<6}{:>10}{last_area:>22.16}", poly.len()).map_err(io_err)?;
                if !to_triangle || poly.len() == 3 {
                    break;
                }
            }
            if let Some(path) = output {
                let shape = poly.into_shape(format!("reduced-{step}"));
                emit_document(&shape, "reduce", Some(&path), out)?;
            }
            Ok(EXIT_OK)
        }
        Command::Render { file, output, samples, support_lines, vertices } => {
            let shape = read_shape(&file)?;
            let deco = Decorations { support_lines, vertex_markers: vertices };
            write_text(&output, &render_svg(&shape, samples, &deco)?)?;
            Ok(EXIT_OK)
        }
    }
}

fn generate(shape: GenShape) -> Result<(Shape, String), Failure> {
    Ok(match shape {
        GenShape::Disk { center } => {
            let c = center.unwrap_or(Vec2::ZERO);
            (disk(c), format!("gen disk --center {},{}", c.x, c.y))
        }
        GenShape::Triangle => (reuleaux_triangle().to_shape(), "gen triangle".into()),
        GenShape::Regular { sides } => (regular_reuleaux(sides)?.to_shape(), format!("gen regular --sides {sides}")),
        GenShape::Perturbed { delta, terms } => {
            let terms = if terms.is_empty() { figure_one_terms() } else { terms };
            let listed: Vec<String> = terms.iter().map(|t| format!("{}:{}:{}", t.k, t.a, t.b)).collect();
            (perturbed_circle(&terms, delta)?, format!("gen perturbed --delta {delta} --terms {}", listed.join(",")))
        }
        GenShape::Combine { a, b, lambda } => {
            let (sa, sb) = (read_shape(&a)?, read_shape(&b)?);
            (minkowski_combine(&sa, &sb, lambda)?, format!("gen combine --lambda {lambda}"))
        }
    })
}

fn validate(file: &Path, out: &mut dyn Write) -> Outcome {
    let shape = match read_shape(file) {
        Ok(s) => s,
        Err(f) if f.code == EXIT_INVALID => {
            writeln!(out, "invalid: {}", f.message).map_err(io_err)?;
            return Ok(EXIT_INVALID);
        }
        Err(f) => return Err(f),
    };
    let width = shape.validate_width_with(EXEC);
    let convexity = shape.validate_convexity_with(EXEC);
    let verdict = |ok: bool| if ok { "pass" } else { "FAIL" };
    writeln!(out, "shape            {}", shape.label).map_err(io_err)?;
    writeln!(out, "width deviation  {:.3e}  {}", width.max_deviation, verdict(width.pass)).map_err(io_err)?;
    writeln!(
        out,
        "curvature range  [{:.6}, {:.6}]  {}",
        convexity.min_curvature,
        convexity.max_curvature,
        verdict(convexity.curvature_pass)
    )
    .map_err(io_err)?;
    writeln!(out, "kallay slack     {:.3e}  {}", convexity.kallay_min_slack, verdict(convexity.kallay_pass))
        .map_err(io_err)?;
    let pass = width.pass && convexity.pass();
    writeln!(out, "result           {}", if pass { "valid" } else { "invalid" }).map_err(io_err)?;
    Ok(if pass { EXIT_OK } else { EXIT_INVALID })
}
