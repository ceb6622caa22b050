//! `euler`: directional Euler characteristic transforms of meshes and images.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use euler_core::audit::{run_battery, BatteryConfig};
use euler_core::geometry::{EmbeddedComplex, LowerCellConvention};
use euler_core::io::config::parse_directions;
use euler_core::io::{self, InputFormat, OutputFormat, RunConfig};
use euler_core::transforms::{
    compute_bundle, invert_bundle, smooth_bundle, ShapeInput, TransformBundle, TransformKind, TransformOptions,
};

#[derive(Parser)]
#[command(name = "euler", version, about = "Exact Euler characteristic transforms of meshes and images")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Euler characteristic curve per direction.
    Ect(TransformArgs),
    /// Smoothed ECT; also accepts an ECT bundle.
    Sect(TransformArgs),
    /// χ of {g = level} below each height.
    Lect(TransformArgs),
    /// χ of {g ≥ level} below each height.
    Select(TransformArgs),
    /// Euler–Radon transform of image values.
    Ert(TransformArgs),
    /// Smoothed ERT; also accepts an ERT bundle.
    Sert(TransformArgs),
    /// Betti number curve of degree --k.
    Betti(TransformArgs),
    /// Recovers the ECT/ERT bundle from a SECT/SERT bundle.
    Invert(BundleArgs),
    /// Draws every curve of a bundle as SVG.
    Plot(BundleArgs),
    /// Runs the audit battery.
    Verify(VerifyArgs),
}

#[derive(Args, Clone)]
struct Common {
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Output formats.
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Format::Json, Format::Csv])]
    format: Vec<Format>,
    /// Worker threads; results do not depend on it.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Clone)]
struct TransformArgs {
    input: PathBuf,
    /// `axes`, `axes:N`, `grid:N`, or explicit `1,0;1,1`.
    #[arg(long, default_value = "axes")]
    directions: String,
    /// SECT/SERT window W, e.g. `5/2`.
    #[arg(long)]
    window: Option<String>,
    /// Level s for lect/select.
    #[arg(long)]
    level: Option<String>,
    /// Homology degree for betti.
    #[arg(long, default_value_t = 0)]
    k: usize,
    /// How image edges and corners inherit pixel values.
    #[arg(long, default_value = "upper", value_parser = parse_convention)]
    convention: LowerCellConvention,
    /// Largest denominator kept when reading decimal input.
    #[arg(long, default_value_t = 1_000_000)]
    denom_bound: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct BundleArgs {
    input: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct VerifyArgs {
    #[arg(long, default_value = "builtin")]
    fixtures: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn parse_convention(s: &str) -> std::result::Result<LowerCellConvention, String> {
    s.parse().map_err(|e: euler_core::Error| e.to_string())
}

/// Audit failures exit with 2, everything else with 1.
struct AuditFailed;

fn formats(common: &Common) -> Vec<OutputFormat> {
    common
        .format
        .iter()
        .map(|f| match f {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
        })
        .collect()
}

fn file_name(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}

fn emit(bundle: &TransformBundle, common: &Common, config: Option<&RunConfig>) -> Result<()> {
    let mut written = io::write_curves(bundle, &common.out, &formats(common))
        .with_context(|| format!("writing to {}", common.out.display()))?;
    if let Some(cfg) = config {
        let path = common.out.join("config.json");
        std::fs::write(&path, cfg.to_json())?;
        written.push(path);
    }
    for p in written {
        println!("{}", p.display());
    }
    Ok(())
}

fn transform(kind: TransformKind, args: &TransformArgs) -> Result<()> {
    let format = InputFormat::detect(&args.input)?;
    let config = RunConfig {
        input: args.input.clone(),
        format,
        directions: args.directions.clone(),
        transform: kind,
        window: args.window.clone(),
        level: args.level.clone(),
        betti_k: (kind == TransformKind::Betti).then_some(args.k),
        denom_bound: args.denom_bound,
        convention: args.convention,
        out: args.common.out.clone(),
        seed: args.common.seed,
        workers: args.common.workers,
    }
    .normalized()?;
    config.validate()?;
    let workers = args.common.workers;
    let read = || format!("reading {}", args.input.display());
    let (input, source_convention) = match format {
        InputFormat::Bundle => {
            if !kind.is_smoothed() {
                bail!("{} needs a mesh or image; bundles are accepted by sect, sert, invert and plot", kind.name());
            }
            let bundle = io::read_bundle(&args.input).with_context(read)?;
            let expected = if kind == TransformKind::Sert { TransformKind::Ert } else { TransformKind::Ect };
            if bundle.kind != expected {
                bail!("{} expects an {} bundle, got {}", kind.name(), expected.name(), bundle.kind.name());
            }
            let smoothed = smooth_bundle(&bundle, config.window()?.as_ref(), workers)?;
            return emit(&smoothed, &args.common, Some(&config));
        }
        InputFormat::Mesh(f) => (ShapeInput::Mesh(io::parse_mesh(&args.input, f, args.denom_bound).with_context(read)?), None),
        InputFormat::Image(f) => {
            let (complex, function) = io::parse_image(&args.input, f, args.denom_bound, args.convention).with_context(read)?;
            (ShapeInput::Image { complex, function }, Some(args.convention))
        }
    };
    let ambient = match &input {
        ShapeInput::Mesh(k) => k.ambient_dim(),
        ShapeInput::Image { complex, .. } => complex.ambient_dim(),
    };
    let directions = parse_directions(&args.directions, ambient, args.denom_bound)?;
    let opts = TransformOptions { level: config.level()?, window: config.window()?, betti_k: Some(args.k) };
    let mut bundle = compute_bundle(&input, kind, &directions, &opts, workers)?;
    bundle.metadata.source = file_name(&args.input);
    bundle.metadata.convention = source_convention;
    bundle.metadata.denom_bound = Some(args.denom_bound);
    emit(&bundle, &args.common, Some(&config))
}

fn invert(args: &BundleArgs) -> Result<()> {
    let bundle = io::read_bundle(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    emit(&invert_bundle(&bundle)?, &args.common, None)
}

fn plot(args: &BundleArgs) -> Result<()> {
    let bundle = io::read_bundle(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    std::fs::create_dir_all(&args.common.out)?;
    for (i, (d, c)) in bundle.directions.iter().zip(&bundle.curves).enumerate() {
        let comps: Vec<String> = d.components().iter().map(euler_core::geometry::rational::fmt_rational).collect();
        let title = format!("{} v=({})", bundle.kind.name(), comps.join(", "));
        let path = args.common.out.join(format!("{}-{i}.svg", bundle.kind.name()));
        io::render_svg(c, &title, &path)?;
        println!("{}", path.display());
    }
    Ok(())
}

fn verify(args: &VerifyArgs) -> Result<std::result::Result<(), AuditFailed>> {
    if args.fixtures != "builtin" {
        bail!("unknown fixture set {:?}; only `builtin` is available", args.fixtures);
    }
    let outcome = run_battery(&BatteryConfig { seed: args.common.seed, workers: args.common.workers })?;
    let text = outcome.to_text();
    std::fs::create_dir_all(&args.common.out)?;
    let fmts = formats(&args.common);
    if fmts.contains(&OutputFormat::Json) {
        std::fs::write(args.common.out.join("report.json"), outcome.to_json())?;
    }
    std::fs::write(args.common.out.join("report.txt"), &text)?;
    print!("{text}");
    Ok(if outcome.passed() { Ok(()) } else { Err(AuditFailed) })
}

fn run(cli: Cli) -> Result<std::result::Result<(), AuditFailed>> {
    let kind_args = |k: TransformKind, a: &TransformArgs| transform(k, a).map(Ok);
    match &cli.command {
        Command::Ect(a) => kind_args(TransformKind::Ect, a),
        Command::Sect(a) => kind_args(TransformKind::Sect, a),
        Command::Lect(a) => kind_args(TransformKind::Lect, a),
        Command::Select(a) => kind_args(TransformKind::Select, a),
        Command::Ert(a) => kind_args(TransformKind::Ert, a),
        Command::Sert(a) => kind_args(TransformKind::Sert, a),
        Command::Betti(a) => kind_args(TransformKind::Betti, a),
        Command::Invert(a) => invert(a).map(Ok),
        Command::Plot(a) => plot(a).map(Ok),
        Command::Verify(a) => verify(a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(AuditFailed)) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
