//! CLI for generating regular simplices and verifying point sets.
//!
//! Exit codes: 0 = pass, 1 = I/O failure, 2 = usage or parse error,
//! 3 = verification failure.

mod io;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use isoplex::batch::classify_batch;
use isoplex::{
    apply_motion, ConstructionMethod, PointSet, RigidMotion, SimplexSpec, ToleranceConfig,
    Verdict,
};

use io::{read_point_file, write_point_file, FileFormat, LoadedPoints};
use report::{analyze_report, print_verify_text, verify_report};

/// Error carrying the process exit code.
#[derive(Debug)]
enum CliError {
    /// I/O failure (exit 1).
    Io(String),
    /// Usage or parse error (exit 2).
    Usage(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Io(msg) | CliError::Usage(msg) => msg,
        }
    }
}

impl From<isoplex::Error> for CliError {
    fn from(err: isoplex::Error) -> Self {
        CliError::Usage(err.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "isoplex",
    version,
    about = "Generate regular simplices and verify point sets via their scatter matrix"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the n = p+1 vertices of a regular simplex to a file or stdout.
    Generate(GenerateArgs),
    /// Check whether point sets are regular simplices; exit 3 on failure.
    Verify(VerifyArgs),
    /// Dump full numeric diagnostics for a point set.
    Analyze(AnalyzeArgs),
    /// Apply a seeded rotation and/or a translation to a point set.
    Transform(TransformArgs),
    /// Add seeded Gaussian coordinate noise to a point set.
    Perturb(PerturbArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Incremental,
    Projection,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyMode {
    /// Both directions: distances and scatter must agree.
    Theorem,
    /// Distance route only.
    Distances,
    /// Scatter route only.
    Sphericity,
}

impl VerifyMode {
    fn as_str(self) -> &'static str {
        match self {
            VerifyMode::Theorem => "theorem",
            VerifyMode::Distances => "distances",
            VerifyMode::Sphericity => "sphericity",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportArg {
    Text,
    Json,
}

#[derive(Args)]
struct GenerateArgs {
    /// Ambient dimension p; the simplex has p+1 vertices.
    #[arg(long)]
    dim: usize,
    /// Scale parameter sigma^2 (squared edge length is 2*sigma^2).
    #[arg(long, group = "scale", required = true)]
    sigma2: Option<f64>,
    /// Edge length L (equivalent to sigma^2 = L^2/2).
    #[arg(long, group = "scale")]
    edge: Option<f64>,
    /// Construction method.
    #[arg(long, value_enum, default_value = "projection")]
    method: MethodArg,
    /// Seed for a Haar-random orientation; omit for the canonical one.
    #[arg(long)]
    seed: Option<u64>,
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    format: FileFormat,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ToleranceArgs {
    /// Relative tolerance for both the equidistance and sphericity checks.
    #[arg(long)]
    tol: Option<f64>,
    /// Tolerance for the projection-matrix checks.
    #[arg(long)]
    tol_projection: Option<f64>,
    /// Max |cosine| accepted as orthogonal.
    #[arg(long)]
    tol_ortho: Option<f64>,
}

impl ToleranceArgs {
    fn build(&self) -> CliResult<ToleranceConfig> {
        let defaults = ToleranceConfig::default();
        ToleranceConfig::new(
            self.tol.unwrap_or(defaults.equidist_rel),
            self.tol.unwrap_or(defaults.sphericity_rel),
            self.tol_projection.unwrap_or(defaults.projection_rel),
            self.tol_ortho.unwrap_or(defaults.ortho_cos),
        )
        .map_err(CliError::from)
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Point-set files (.csv or .json); processed in order.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Which check decides the exit code.
    #[arg(long, value_enum, default_value = "theorem")]
    mode: VerifyMode,
    /// Report format, written to stdout.
    #[arg(long, value_enum, default_value = "text")]
    report: ReportArg,
    #[command(flatten)]
    tolerances: ToleranceArgs,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Point-set file (.csv or .json).
    input: PathBuf,
    /// Report format, written to stdout.
    #[arg(long, value_enum, default_value = "json")]
    report: ReportArg,
    #[command(flatten)]
    tolerances: ToleranceArgs,
}

#[derive(Args)]
struct TransformArgs {
    /// Point-set file (.csv or .json).
    input: PathBuf,
    /// Apply the Haar-random rotation drawn from this seed.
    #[arg(long)]
    rotate_seed: Option<u64>,
    /// Translation vector, comma-separated, length p.
    #[arg(long)]
    translate: Option<String>,
    /// Output path; stdout when omitted. Format follows the input.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PerturbArgs {
    /// Point-set file (.csv or .json).
    input: PathBuf,
    /// Standard deviation of the added Gaussian noise (0 copies the input).
    #[arg(long)]
    noise_sigma: f64,
    /// Noise seed.
    #[arg(long, default_value = "0")]
    seed: u64,
    /// Output path; stdout when omitted. Format follows the input.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help/version are not errors
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}

fn run(command: Command) -> CliResult<u8> {
    match command {
        Command::Generate(args) => cmd_generate(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Transform(args) => cmd_transform(args),
        Command::Perturb(args) => cmd_perturb(args),
    }
}

fn cmd_generate(args: GenerateArgs) -> CliResult<u8> {
    let spec = match (args.sigma2, args.edge) {
        (Some(sigma2), None) => SimplexSpec::from_sigma2(args.dim, sigma2),
        (None, Some(edge)) => SimplexSpec::from_edge(args.dim, edge),
        // clap's arg group enforces exactly one
        _ => unreachable!("scale group admits exactly one spelling"),
    }?;
    let spec = spec.with_method(match args.method {
        MethodArg::Incremental => ConstructionMethod::Incremental,
        MethodArg::Projection => ConstructionMethod::Projection,
    });
    let spec = match args.seed {
        Some(seed) => spec.with_seed(seed),
        None => spec,
    };
    let points = isoplex::construct(&spec);
    let meta = io::GenerateMeta {
        method: spec.method().as_str(),
        sigma2: spec.sigma2(),
        seed: spec.seed(),
    };
    write_point_file(args.out.as_deref(), &points, args.format, Some(&meta))?;
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> CliResult<u8> {
    let tol = args.tolerances.build()?;

    // Parse everything first (reports must come out in input order), then
    // classify the parsed sets as one batch.
    let loaded: Vec<Result<LoadedPoints, CliError>> = args
        .inputs
        .iter()
        .map(|path| {
            let points = read_point_file(path)?;
            if points.set.len() < 2 {
                return Err(CliError::Usage(format!(
                    "{}: verification needs at least 2 points",
                    points.path.display()
                )));
            }
            Ok(points)
        })
        .collect();
    let parsed: Vec<&LoadedPoints> = loaded.iter().filter_map(|r| r.as_ref().ok()).collect();
    let sets: Vec<PointSet> = parsed.iter().map(|l| l.set.clone()).collect();
    let reports = classify_batch(&sets, &tol).map_err(CliError::from)?;

    let mut report_iter = parsed.iter().zip(reports);
    let mut exit = 0u8;
    for outcome in &loaded {
        match outcome {
            Ok(_) => {
                let (loaded_points, diagnostics) = report_iter.next().expect("one report per parsed input");
                let pass = match args.mode {
                    VerifyMode::Theorem => diagnostics.verdict == Verdict::RegularSimplex,
                    VerifyMode::Distances => diagnostics.equidistant,
                    VerifyMode::Sphericity => diagnostics.spherical,
                };
                match args.report {
                    ReportArg::Json => {
                        let doc = verify_report(
                            &diagnostics,
                            &tol,
                            args.mode.as_str(),
                            &loaded_points.digest,
                            pass,
                        );
                        println!("{}", report::to_json(&doc));
                    }
                    ReportArg::Text => {
                        print_verify_text(&diagnostics, args.mode.as_str(), &loaded_points.digest, pass);
                    }
                }
                if !pass && exit == 0 {
                    exit = 3;
                }
            }
            Err(err) => {
                eprintln!("error: {}", err.message());
                if exit == 0 {
                    exit = err.code();
                }
            }
        }
    }
    Ok(exit)
}

fn cmd_analyze(args: AnalyzeArgs) -> CliResult<u8> {
    let tol = args.tolerances.build()?;
    let loaded = read_point_file(&args.input)?;
    let doc = analyze_report(&loaded.set, &tol, &loaded.digest);
    match args.report {
        ReportArg::Json => println!("{}", report::to_json(&doc)),
        ReportArg::Text => report::print_analyze_text(&doc),
    }
    Ok(0)
}

fn cmd_transform(args: TransformArgs) -> CliResult<u8> {
    let loaded = read_point_file(&args.input)?;
    let dim = loaded.set.dim();

    let translation = match &args.translate {
        Some(spec) => Some(parse_translation(spec, dim)?),
        None => None,
    };
    let motion = match (args.rotate_seed, translation) {
        (None, None) => RigidMotion::identity(dim),
        (Some(seed), None) => isoplex::random_rotation(dim, seed),
        (None, Some(t)) => RigidMotion::translation_only(t)?,
        (Some(seed), Some(t)) => isoplex::random_rotation(dim, seed).with_translation(t)?,
    };
    let moved = apply_motion(&loaded.set, &motion)?;
    write_point_file(args.out.as_deref(), &moved, loaded.format, None)?;
    Ok(0)
}

fn parse_translation(spec: &str, dim: usize) -> CliResult<Vec<f64>> {
    let components: Result<Vec<f64>, _> = spec
        .split(',')
        .map(|token| token.trim().parse::<f64>())
        .collect();
    let t = components
        .map_err(|err| CliError::Usage(format!("invalid translation vector: {err}")))?;
    if t.len() != dim {
        return Err(CliError::Usage(format!(
            "translation has {} components but the points have dimension {dim}",
            t.len()
        )));
    }
    if !t.iter().all(|v| v.is_finite()) {
        return Err(CliError::Usage(
            "translation components must be finite".to_string(),
        ));
    }
    Ok(t)
}

fn cmd_perturb(args: PerturbArgs) -> CliResult<u8> {
    if !args.noise_sigma.is_finite() || args.noise_sigma < 0.0 {
        return Err(CliError::Usage(format!(
            "noise sigma must be nonnegative and finite, got {}",
            args.noise_sigma
        )));
    }
    if args.noise_sigma == 0.0 {
        // bit-for-bit copy, regardless of how the input was formatted
        let bytes = std::fs::read(&args.input)
            .map_err(|err| CliError::Io(format!("{}: {err}", args.input.display())))?;
        return io::write_bytes(args.out.as_deref(), &bytes).map(|()| 0);
    }
    let loaded = read_point_file(&args.input)?;
    let noisy = isoplex::sampling::add_gaussian_noise(&loaded.set, args.noise_sigma, args.seed)?;
    write_point_file(args.out.as_deref(), &noisy, loaded.format, None)?;
    Ok(0)
}
