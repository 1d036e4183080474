//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 verification
//! or solver failure.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{parse_seed, RunConfig};
use crate::error::Error;
use crate::exterior::DecOperators;
use crate::mesh::SurfaceSpec;
use crate::spectral::SpectrumResult;
use crate::verify::{oneform_spectrum, render_table, run_suite, scalar_spectrum, solver_options, sphere_target};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_FAILURE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "hodgelab",
    version,
    about = "Spectral checks for Killing-type one-forms on triangulated surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a surface mesh, validate it and optionally write it as OFF.
    Mesh(MeshArgs),
    /// Lowest eigenpairs of the scalar or one-form Hodge Laplacian.
    Spectrum(SpectrumArgs),
    /// Run the full verification suite and write a JSON report.
    Verify(VerifyArgs),
    /// Eigenvalue error against the sphere target across refinement levels.
    Converge(ConvergeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Icosphere,
    Spheroid,
}

/// Surface selection; unset values fall back to the config, then defaults.
#[derive(Debug, Args)]
pub struct SurfaceArgs {
    /// Surface family.
    #[arg(long, value_enum)]
    pub kind: Option<Kind>,
    /// Subdivision level of the base icosahedron (at most 8).
    #[arg(long)]
    pub level: Option<usize>,
    /// Sphere radius (icosphere only).
    #[arg(long)]
    pub radius: Option<f64>,
    /// Equatorial semi-axis (spheroid only).
    #[arg(long)]
    pub a: Option<f64>,
    /// Polar semi-axis (spheroid only).
    #[arg(long)]
    pub c: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// JSON run configuration; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Random seed (decimal or 0x-hex); overrides the config and HODGELAB_SEED.
    #[arg(long, value_parser = seed_arg)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct MeshArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    /// Output OFF file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Form degree: 0 for functions, 1 for one-forms.
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub form: u8,
    /// Number of eigenpairs (defaults to the config counts).
    #[arg(long)]
    pub count: Option<usize>,
    /// Output CSV `index,eigenvalue,residual,group`; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the stiffness matrix in Matrix Market format.
    #[arg(long)]
    pub matrix_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Output JSON report (defaults to the config's output.report).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Comma-separated refinement levels (defaults to the config levels).
    #[arg(long, value_delimiter = ',')]
    pub levels: Vec<usize>,
    /// Form degree: 0 for functions, 1 for one-forms.
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub form: u8,
    /// Eigenvalue cluster: 1 for the first nonzero cluster, 2 for the next.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub cluster: u8,
    /// Output CSV `level,target,lambda,abs_error`; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn seed_arg(s: &str) -> Result<u64, String> {
    parse_seed(s).ok_or_else(|| format!("not an integer seed: {s:?}"))
}

/// A failed command with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if usage_error(&e) { EXIT_USAGE } else { EXIT_FAILURE };
        let message = match &e {
            Error::NoConvergence { residuals, .. } if !residuals.is_empty() => {
                let list: Vec<String> = residuals.iter().map(|r| format!("{r:.3e}")).collect();
                format!("{e}; residuals [{}]", list.join(", "))
            }
            _ => e.to_string(),
        };
        Failure { code, message }
    }
}

fn usage_error(e: &Error) -> bool {
    match e {
        Error::Config(_) | Error::LevelTooHigh(_) | Error::InvalidSurface(_) => true,
        Error::Stage { source, .. } => usage_error(source),
        _ => false,
    }
}

type CmdResult = Result<u8, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Mesh(a) => cmd_mesh(&a, out),
        Command::Spectrum(a) => cmd_spectrum(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Converge(a) => cmd_converge(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

impl SurfaceArgs {
    fn resolve(&self, base: &SurfaceSpec) -> Result<SurfaceSpec, Failure> {
        let kind = self.kind.unwrap_or(match base {
            SurfaceSpec::Icosphere { .. } => Kind::Icosphere,
            SurfaceSpec::Spheroid { .. } => Kind::Spheroid,
        });
        let level = self.level.unwrap_or(base.level());
        let spec = match kind {
            Kind::Icosphere => {
                if self.a.is_some() || self.c.is_some() {
                    return Err(Failure::usage("--a/--c apply to spheroids only"));
                }
                let radius = self.radius.or(base.sphere_radius()).unwrap_or(1.0);
                SurfaceSpec::Icosphere { level, radius }
            }
            Kind::Spheroid => {
                if self.radius.is_some() {
                    return Err(Failure::usage("--radius applies to icospheres only"));
                }
                let [ba, _, bc] = base.semi_axes();
                let (a, c) = match base {
                    SurfaceSpec::Spheroid { .. } => (ba, bc),
                    SurfaceSpec::Icosphere { .. } => (1.0, 2.0),
                };
                SurfaceSpec::Spheroid {
                    level,
                    a: self.a.unwrap_or(a),
                    c: self.c.unwrap_or(c),
                }
            }
        };
        spec.check()?;
        Ok(spec)
    }
}

impl CommonArgs {
    /// Config file, then `HODGELAB_SEED`, then `--seed`.
    fn load(&self) -> Result<RunConfig, Failure> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        cfg.apply_env()?;
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        Ok(cfg)
    }
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => write_file(p, text.as_bytes()),
        None => write!(out, "{text}").map_err(|e| Error::Io(e).into()),
    }
}

fn cmd_mesh(args: &MeshArgs, out: &mut dyn Write) -> CmdResult {
    if args.surface.level.is_none() {
        return Err(Failure::usage("--level is required"));
    }
    let spec = args.surface.resolve(&SurfaceSpec::unit_sphere(0))?;
    let mesh = spec.build()?;
    let report = mesh.validate();
    writeln!(
        out,
        "V={} E={} F={}",
        mesh.num_vertices(),
        mesh.num_edges(),
        mesh.num_faces()
    )
    .map_err(Error::Io)?;
    for check in &report.checks {
        writeln!(
            out,
            "{}: {} {}",
            check.name,
            if check.passed { "ok" } else { "FAILED" },
            check.detail
        )
        .map_err(Error::Io)?;
    }
    if let Some(path) = &args.out {
        write_file(path, &mesh.export_off())?;
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAILURE })
}

fn form_spectrum(
    spec: &SurfaceSpec,
    form: u8,
    count: usize,
    cfg: &RunConfig,
) -> Result<(DecOperators, SpectrumResult), Error> {
    let mesh = spec.build()?;
    let ops = DecOperators::new(&mesh)?;
    let opts = solver_options(cfg);
    let result = if form == 0 {
        scalar_spectrum(&ops, count, &opts)?
    } else {
        oneform_spectrum(&ops, count, &opts)?
    };
    Ok((ops, result))
}

fn cmd_spectrum(args: &SpectrumArgs, out: &mut dyn Write) -> CmdResult {
    let cfg = args.common.load()?;
    let spec = args.surface.resolve(&cfg.surface)?;
    let count = args.count.unwrap_or(if args.form == 0 {
        cfg.scalar_eigenpairs
    } else {
        cfg.eigenpairs
    });
    if count == 0 {
        return Err(Failure::usage("--count must be at least 1"));
    }
    let (ops, result) = form_spectrum(&spec, args.form, count, &cfg)?;
    if let Some(path) = &args.matrix_out {
        let (a, _) = if args.form == 0 {
            ops.laplacian0()
        } else {
            ops.laplacian1()?
        };
        let mut buf = Vec::new();
        a.write_matrix_market(&mut buf)?;
        write_file(path, &buf)?;
    }
    emit(args.out.as_deref(), &result.to_csv(), out)?;
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let mut cfg = args.common.load()?;
    cfg.surface = args.surface.resolve(&cfg.surface)?;
    let report = run_suite(&cfg)?;
    let json = report.to_json();
    if let Some(path) = args.out.as_ref().or(cfg.output.report.as_ref()) {
        write_file(path, json.as_bytes())?;
    }
    // The table is rendered from the serialized report, not the struct.
    let value: serde_json::Value = serde_json::from_str(&json).map_err(|e| Error::Config(e.to_string()))?;
    write!(out, "{}", render_table(&value)).map_err(Error::Io)?;
    Ok(if report.pass { EXIT_OK } else { EXIT_FAILURE })
}

/// Indices of the first (`cluster = 1`) or second nonzero eigenvalue
/// cluster of the round-sphere spectrum.
fn cluster_range(form: u8, cluster: u8) -> std::ops::Range<usize> {
    match (form, cluster) {
        (0, 1) => 1..4,
        (0, _) => 4..9,
        (_, 1) => 0..6,
        _ => 6..16,
    }
}

fn cmd_converge(args: &ConvergeArgs, out: &mut dyn Write) -> CmdResult {
    let cfg = args.common.load()?;
    let base = args.surface.resolve(&cfg.surface)?;
    let requested = if args.levels.is_empty() {
        cfg.levels.clone()
    } else {
        args.levels.clone()
    };
    let mut levels = requested.clone();
    levels.sort_unstable();
    levels.dedup();
    if levels.len() < 2 {
        return Err(Failure::usage("convergence needs at least two distinct levels"));
    }
    if levels != requested {
        let list: Vec<String> = levels.iter().map(usize::to_string).collect();
        writeln!(out, "note: levels reordered to {}", list.join(",")).map_err(Error::Io)?;
    }
    let target = sphere_target(&base, args.form, args.cluster as usize).map_err(|e| Failure::usage(e.to_string()))?;
    let range = cluster_range(args.form, args.cluster);
    let mut csv = String::from("level,target,lambda,abs_error\n");
    let mut errors = Vec::with_capacity(levels.len());
    for &level in &levels {
        let spec = base.with_level(level);
        spec.check()?;
        let (_, result) = form_spectrum(&spec, args.form, range.end, &cfg)?;
        let members = &result.eigenvalues[range.clone()];
        let lambda = members.iter().sum::<f64>() / members.len() as f64;
        let err = (lambda - target).abs();
        csv.push_str(&format!("{level},{target:.12e},{lambda:.12e},{err:.6e}\n"));
        errors.push(err);
    }
    emit(args.out.as_deref(), &csv, out)?;
    // Slack for eigenvalue noise far below any discretization error.
    let slack = 1e-9 * target;
    let monotone = errors.windows(2).all(|w| w[1] < w[0] + slack);
    if !monotone {
        return Err(Failure {
            code: EXIT_FAILURE,
            message: format!("error is not decreasing across levels {levels:?}: {errors:?}"),
        });
    }
    Ok(EXIT_OK)
}
