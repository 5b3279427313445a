//! The `polysmooth` command line.
//!
//! Every subcommand reads one surface (intrinsic JSON or OFF) and writes one
//! document. Exit status: 0 pass, 1 a check failed, 2 bad input, 64 bad
//! usage. Errors print a one-line JSON diagnostic on stdout and prose on
//! stderr.

use std::f64::consts::PI;
use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::assemble::{
    global_verification, sample_fields, smooth_surface, write_csv, AssembleError, VerificationOptions,
};
use crate::certify::{angle_window_check, certify_with_minimal, CertifyError, CertifyMode, Window};
use crate::mesh::{MeshError, PolyhedralSurface, VertexId};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "polysmooth",
    version,
    about = "Certify and smooth polyhedral metric surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate the surface and print its combinatorial statistics.
    Validate(Io),
    /// Per-vertex cone angles and angle defects.
    Angles(Io),
    /// Bounded-geometry certification or cone-angle window check.
    Certify {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Bi-Lipschitz / simplex-count bound for lipschitz and quasiconformal.
        #[arg(long = "M", value_parser = clap::value_parser!(u64).range(1..))]
        m: Option<u64>,
        /// Window parameter for hypothesis and obstruction.
        #[arg(long = "K")]
        k: Option<f64>,
    },
    /// Smooth every cone point and verify curvature, distortion and Gauss-Bonnet.
    SmoothVerify {
        #[command(flatten)]
        io: Io,
        /// Radii per cone in the curvature sup.
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        grid: u64,
        /// Per-cone Gauss-Bonnet tolerance.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Sample φ, g_θθ and curvature along one smoothed cone.
    Sample {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        vertex: u64,
        /// Number of samples.
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        grid: u64,
    },
}

#[derive(Debug, Args)]
struct Io {
    #[arg(long)]
    input: PathBuf,
    /// Defaults to stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Input format; sniffed from the extension when absent.
    #[arg(long = "format-in", value_enum)]
    format_in: Option<InputFormat>,
    /// Output format; csv only applies to `sample`, which defaults to it.
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Lipschitz,
    Quasiconformal,
    Hypothesis,
    Obstruction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Json,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: io::Error },
    #[error("cannot write output: {0}")]
    Write(#[from] io::Error),
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error(transparent)]
    Certify(#[from] CertifyError),
    #[error(transparent)]
    Assemble(#[from] AssembleError),
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "UsageError",
            CliError::Read { .. } => "InputError",
            CliError::Write(_) => "OutputError",
            CliError::Mesh(e) => e.code(),
            CliError::Certify(e) => e.code(),
            CliError::Assemble(e) => e.code(),
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            _ => EXIT_INPUT,
        }
    }
}

#[derive(Serialize)]
struct Diagnostic<'a> {
    error: &'a str,
    message: String,
}

#[derive(Serialize)]
struct SurfaceStats {
    vertices: usize,
    edges: usize,
    faces: usize,
    euler_characteristic: i64,
    closed: bool,
    boundary_vertices: usize,
    min_vertex_separation: f64,
}

#[derive(Serialize)]
struct VertexAngle {
    vertex: VertexId,
    boundary: bool,
    cone_angle: f64,
    defect: f64,
}

#[derive(Serialize)]
struct AngleTable {
    vertices: Vec<VertexAngle>,
    sum_defects: f64,
    euler_characteristic: i64,
    two_pi_chi: f64,
}

/// Runs the CLI on `args` (including the program name) against the process
/// streams and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut io::stdout().lock(), &mut io::stderr().lock())
}

/// [`run`] with explicit streams.
pub fn run_with<I, T, O, E>(args: I, out: &mut O, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    O: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return EXIT_PASS;
            }
            let text = e.render().to_string();
            let first = text
                .lines()
                .next()
                .unwrap_or("usage error")
                .trim_start_matches("error: ");
            return report_error(&CliError::Usage(first.to_string()), &text, out, err);
        }
    };
    match execute(cli.command, out) {
        Ok(passed) => {
            if passed {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            let text = format!("polysmooth: {e}\n");
            report_error(&e, &text, out, err)
        }
    }
}

fn report_error<O: Write, E: Write>(e: &CliError, human: &str, out: &mut O, err: &mut E) -> i32 {
    let diag = Diagnostic {
        error: e.code(),
        message: e.to_string(),
    };
    let _ = writeln!(out, "{}", serde_json::to_string(&diag).expect("serializable"));
    let _ = write!(err, "{human}");
    e.exit_code()
}

/// Returns whether the command's check passed.
fn execute<O: Write>(command: Command, out: &mut O) -> Result<bool, CliError> {
    match command {
        Command::Validate(io) => {
            json_only(&io)?;
            let s = load(&io)?;
            let stats = SurfaceStats {
                vertices: s.vertex_count(),
                edges: s.edge_count(),
                faces: s.face_count(),
                euler_characteristic: s.euler_characteristic(),
                closed: s.is_closed(),
                boundary_vertices: s
                    .vertices()
                    .filter(|&v| s.is_boundary_vertex(v).unwrap_or(false))
                    .count(),
                min_vertex_separation: s.min_vertex_separation(),
            };
            emit_json(&io, &stats, out)?;
            Ok(true)
        }
        Command::Angles(io) => {
            json_only(&io)?;
            let s = load(&io)?;
            let mut vertices = Vec::with_capacity(s.vertex_count());
            for v in s.vertices() {
                let angle = s.cone_angle(v)?;
                vertices.push(VertexAngle {
                    vertex: v,
                    boundary: angle.is_boundary(),
                    cone_angle: angle.radians(),
                    defect: s.angle_defect(v)?,
                });
            }
            let chi = s.euler_characteristic();
            let table = AngleTable {
                vertices,
                sum_defects: s.total_angle_defect(),
                euler_characteristic: chi,
                two_pi_chi: 2.0 * PI * chi as f64,
            };
            emit_json(&io, &table, out)?;
            Ok(true)
        }
        Command::Certify { io, mode, m, k } => {
            json_only(&io)?;
            let report = match mode {
                Mode::Lipschitz | Mode::Quasiconformal => {
                    let m =
                        m.ok_or_else(|| CliError::Usage(format!("--M is required for --mode {}", mode_name(mode))))?;
                    let cmode = if mode == Mode::Lipschitz {
                        CertifyMode::Lipschitz
                    } else {
                        CertifyMode::Quasiconformal
                    };
                    certify_with_minimal(&load(&io)?, cmode, m)?
                }
                Mode::Hypothesis | Mode::Obstruction => {
                    let k =
                        k.ok_or_else(|| CliError::Usage(format!("--K is required for --mode {}", mode_name(mode))))?;
                    if !(k.is_finite() && k >= 1.0) {
                        return Err(CliError::Usage(format!("--K must be a finite number ≥ 1, got {k}")));
                    }
                    let window = if mode == Mode::Hypothesis {
                        Window::Hypothesis
                    } else {
                        Window::Obstruction
                    };
                    angle_window_check(&load(&io)?, k, window)?
                }
            };
            emit_json(&io, &report, out)?;
            Ok(report.passed())
        }
        Command::SmoothVerify { io, grid, tol } => {
            json_only(&io)?;
            if !(tol.is_finite() && tol > 0.0) {
                return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
            }
            let smoothed = smooth_surface(&load(&io)?)?;
            let opts = VerificationOptions {
                grid: grid as usize,
                quad_tol: tol,
                ..Default::default()
            };
            let report = global_verification(&smoothed, opts)?;
            emit_json(&io, &report, out)?;
            Ok(report.passed)
        }
        Command::Sample { io, vertex, grid } => {
            let smoothed = smooth_surface(&load(&io)?)?;
            let table = sample_fields(&smoothed, VertexId(vertex), grid as usize)?;
            match io.format.unwrap_or(OutputFormat::Csv) {
                OutputFormat::Csv => {
                    let mut buf = Vec::new();
                    write_csv(&mut buf, &table.rows)?;
                    emit(&io, &buf, out)?;
                }
                OutputFormat::Json => emit_json(&io, &table, out)?,
            }
            Ok(true)
        }
    }
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Lipschitz => "lipschitz",
        Mode::Quasiconformal => "quasiconformal",
        Mode::Hypothesis => "hypothesis",
        Mode::Obstruction => "obstruction",
    }
}

fn json_only(io: &Io) -> Result<(), CliError> {
    match io.format {
        Some(OutputFormat::Csv) => Err(CliError::Usage("--format csv is only supported by `sample`".into())),
        _ => Ok(()),
    }
}

fn sniff(path: &Path) -> InputFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("off") => InputFormat::Off,
        _ => InputFormat::Json,
    }
}

fn load(io: &Io) -> Result<PolyhedralSurface, CliError> {
    let text = fs::read_to_string(&io.input).map_err(|source| CliError::Read {
        path: io.input.display().to_string(),
        source,
    })?;
    let surface = match io.format_in.unwrap_or_else(|| sniff(&io.input)) {
        InputFormat::Json => PolyhedralSurface::from_json_str(&text)?,
        InputFormat::Off => PolyhedralSurface::from_off_str(&text)?,
    };
    Ok(surface)
}

fn emit_json<T: Serialize, O: Write>(io: &Io, value: &T, out: &mut O) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    emit(io, text.as_bytes(), out)
}

fn emit<O: Write>(io: &Io, bytes: &[u8], out: &mut O) -> Result<(), CliError> {
    match &io.output {
        Some(path) => fs::write(path, bytes)?,
        None => out.write_all(bytes)?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(args.iter().copied(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn write_tmp(name: &str, body: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("polysmooth-cli-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let p = dir.join(name);
        fs::write(&p, body).unwrap();
        p
    }

    #[test]
    fn usage_errors_exit_64() {
        let (code, out, err) = run_capture(&["polysmooth", "frobnicate"]);
        assert_eq!(code, EXIT_USAGE);
        let diag: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(diag["error"], "UsageError");
        assert!(!err.is_empty());
        assert_eq!(out.lines().count(), 1);

        let (code, _, _) = run_capture(&["polysmooth", "certify", "--input", "x.json"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn missing_parameter_for_mode() {
        let p = write_tmp("tet.json", &crate::fixtures::tetrahedron(1.0).to_json_string());
        let input = p.to_str().unwrap();
        let (code, out, _) = run_capture(&["polysmooth", "certify", "--input", input, "--mode", "hypothesis"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(out.contains("--K"));
        let (code, _, _) = run_capture(&[
            "polysmooth",
            "certify",
            "--input",
            input,
            "--mode",
            "hypothesis",
            "--K",
            "0.5",
        ]);
        assert_eq!(code, EXIT_USAGE);
        let (code, _, _) = run_capture(&[
            "polysmooth",
            "certify",
            "--input",
            input,
            "--mode",
            "lipschitz",
            "--M",
            "0",
        ]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn help_is_success() {
        let (code, out, _) = run_capture(&["polysmooth", "--help"]);
        assert_eq!(code, EXIT_PASS);
        assert!(out.contains("smooth-verify"));
    }

    #[test]
    fn unreadable_input_exits_2() {
        let (code, out, _) = run_capture(&["polysmooth", "validate", "--input", "/nonexistent/surface.json"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(out.contains("\"InputError\""));
    }

    #[test]
    fn window_verdicts() {
        let p = write_tmp("tet2.json", &crate::fixtures::tetrahedron(1.0).to_json_string());
        let input = p.to_str().unwrap();
        let (code, _, _) = run_capture(&[
            "polysmooth",
            "certify",
            "--input",
            input,
            "--mode",
            "hypothesis",
            "--K",
            "2",
        ]);
        assert_eq!(code, EXIT_PASS);
        let (code, out, _) = run_capture(&[
            "polysmooth",
            "certify",
            "--input",
            input,
            "--mode",
            "hypothesis",
            "--K",
            "1.5",
        ]);
        assert_eq!(code, EXIT_FAIL);
        assert!(out.contains("\"verdict\": \"fail\""));
    }

    #[test]
    fn off_sniffing_and_override() {
        let off = "OFF\n4 4 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 1 2\n3 0 1 3\n3 0 2 3\n3 1 2 3\n";
        let p = write_tmp("simplex.off", off);
        let (code, out, _) = run_capture(&["polysmooth", "validate", "--input", p.to_str().unwrap()]);
        assert_eq!(code, EXIT_PASS, "{out}");
        assert!(out.contains("\"euler_characteristic\": 2"));
        let q = write_tmp("simplex.txt", off);
        let (code, _, _) = run_capture(&["polysmooth", "validate", "--input", q.to_str().unwrap()]);
        assert_eq!(code, EXIT_INPUT);
        let (code, _, _) = run_capture(&[
            "polysmooth",
            "validate",
            "--input",
            q.to_str().unwrap(),
            "--format-in",
            "off",
        ]);
        assert_eq!(code, EXIT_PASS);
    }
}
