//! `canal`: build, evaluate, verify and export canal hypersurfaces.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid configuration,
//! 3 numeric breakdown. `CANAL_THREADS` caps the number of worker threads.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use canal_core::analysis::{self, Pair, TheoremReport};
use canal_core::curvature::Route;
use canal_core::io::{self, JobConfig, JobError, EXIT_CONFIG, EXIT_VERIFY};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

#[derive(Parser)]
#[command(name = "canal", version, about = "Canal and tubular hypersurfaces in Minkowski 4-space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the configuration of a builtin example (beta1 or beta2).
    Example {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample the patch and write it as JSON.
    Build(JobArgs),
    /// Write the curvature CSV of the patch.
    Curvature(JobArgs),
    /// Check curvature relations; exits with 1 when one fails.
    Verify(JobArgs),
    /// Report the flat and minimal classifications.
    Classify(JobArgs),
    /// Write the OBJ of the projected slice and its curvature CSV.
    Export(JobArgs),
}

#[derive(Args, Default)]
struct JobArgs {
    /// key = value configuration file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Builtin center curve.
    #[arg(long)]
    example: Option<String>,
    #[arg(long = "curve-x1", allow_hyphen_values = true)]
    x1: Option<String>,
    #[arg(long = "curve-x2", allow_hyphen_values = true)]
    x2: Option<String>,
    #[arg(long = "curve-x3", allow_hyphen_values = true)]
    x3: Option<String>,
    #[arg(long = "curve-x4", allow_hyphen_values = true)]
    x4: Option<String>,
    /// Radius expression in s.
    #[arg(long, allow_hyphen_values = true)]
    radius: Option<String>,
    /// Family as jN,lM, for example j1,l-1.
    #[arg(long)]
    family: Option<String>,
    /// Sign branch, + or -.
    #[arg(long, allow_hyphen_values = true)]
    branch: Option<String>,
    /// auto, standard or alt.
    #[arg(long)]
    variant: Option<String>,
    /// First free direction of a null-cone envelope.
    #[arg(long, allow_hyphen_values = true)]
    null_first: Option<String>,
    /// Second free direction of a null-cone envelope.
    #[arg(long, allow_hyphen_values = true)]
    null_second: Option<String>,
    /// Node counts as SxTxW.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    range_s: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    range_t: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    range_w: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    slice_w: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    slice_t: Option<String>,
    /// Coordinate dropped in the OBJ projection, x1..x4.
    #[arg(long)]
    projection: Option<String>,
    /// Output file, or output stem for export.
    #[arg(long)]
    out: Option<String>,
    /// Comma-separated checks: kh, kh-numeric, oracle, weingarten-st, weingarten-sw, weingarten-tw, flat, minimal.
    #[arg(long)]
    check: Option<String>,
    /// symbolic, fd or fd:<step>.
    #[arg(long)]
    derivatives: Option<String>,
}

impl JobArgs {
    fn load(&self) -> Result<JobConfig, JobError> {
        let mut cfg = JobConfig::default();
        if let Some(path) = &self.config {
            cfg.apply_text(&read(path)?)?;
        }
        let flags = [
            ("example", &self.example),
            ("x1", &self.x1),
            ("x2", &self.x2),
            ("x3", &self.x3),
            ("x4", &self.x4),
            ("radius", &self.radius),
            ("family", &self.family),
            ("branch", &self.branch),
            ("variant", &self.variant),
            ("null_first", &self.null_first),
            ("null_second", &self.null_second),
            ("grid", &self.grid),
            ("range_s", &self.range_s),
            ("range_t", &self.range_t),
            ("range_w", &self.range_w),
            ("slice_w", &self.slice_w),
            ("slice_t", &self.slice_t),
            ("projection", &self.projection),
            ("out", &self.out),
            ("check", &self.check),
            ("derivatives", &self.derivatives),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        Ok(cfg)
    }
}

fn read(path: &Path) -> Result<String, JobError> {
    fs::read_to_string(path).map_err(|source| JobError::Io { context: format!("reading {}", path.display()), source })
}

fn write(path: &Path, contents: &str) -> Result<(), JobError> {
    fs::write(path, contents).map_err(|source| JobError::Io { context: format!("writing {}", path.display()), source })
}

/// Writes to `out` when given, otherwise to stdout.
fn emit(out: Option<&str>, contents: &str) -> Result<(), JobError> {
    match out {
        Some(p) => write(Path::new(p), contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn run_check(name: &str, cfg: &JobConfig) -> Result<TheoremReport, JobError> {
    let patch = || cfg.build(|c, curve| Ok(c.grid_spec(curve)));
    let report = match name {
        "kh" => analysis::check_kh_relation(&patch()?, Route::ClosedForm)?,
        "kh-numeric" => analysis::check_kh_relation(&patch()?, Route::Numeric)?,
        "oracle" => analysis::check_route_agreement(&patch()?)?,
        "weingarten-st" => analysis::weingarten_check(&patch()?, Pair::St)?,
        "weingarten-sw" => analysis::weingarten_check(&patch()?, Pair::Sw)?,
        "weingarten-tw" => analysis::weingarten_check(&patch()?, Pair::Tw)?,
        "flat" | "minimal" => {
            let curve = cfg.curve()?;
            let config = cfg.canal_config(&curve)?;
            let c = if name == "flat" {
                analysis::classify_flat(&curve, &config)?
            } else {
                analysis::classify_minimal(&curve, &config)?
            };
            analysis::classification_report(&c)
        }
        _ => {
            return Err(JobError::BadValue {
                key: "check".into(),
                value: name.into(),
                message: "unknown check".into(),
            })
        }
    };
    Ok(report)
}

fn verify(cfg: &JobConfig) -> Result<i32, JobError> {
    let names: Vec<String> =
        if cfg.checks.is_empty() { vec!["kh".into(), "weingarten-tw".into()] } else { cfg.checks.clone() };
    let mut entries = Vec::new();
    let mut all_pass = true;
    for name in &names {
        let rep = run_check(name, cfg)?;
        eprintln!(
            "{} {name}: max residual {:e} (tolerance {:e}, {} nodes, {} skipped)",
            if rep.pass { "PASS" } else { "FAIL" },
            rep.max_residual,
            rep.tolerance,
            rep.nodes,
            rep.skipped
        );
        all_pass &= rep.pass;
        entries.push(json!({ "check": name, "report": rep }));
    }
    let doc = json!({ "pass": all_pass, "checks": entries });
    emit(cfg.out.as_deref(), &format!("{}\n", serde_json::to_string_pretty(&doc).expect("json")))?;
    Ok(if all_pass { 0 } else { EXIT_VERIFY })
}

fn classify(cfg: &JobConfig) -> Result<i32, JobError> {
    let curve = cfg.curve()?;
    let config = cfg.canal_config(&curve)?;
    let flat = analysis::classify_flat(&curve, &config)?;
    let minimal = analysis::classify_minimal(&curve, &config)?;
    for c in [&flat, &minimal] {
        eprintln!(
            "{:?}: {} (max |b''| {:e}, radius residual {:e}, sampled {:e})",
            c.theorem,
            if c.holds { "yes" } else { "no" },
            c.max_bending,
            c.radius_residual,
            c.sampled
        );
    }
    let doc = json!({ "flat": flat, "minimal": minimal });
    emit(cfg.out.as_deref(), &format!("{}\n", serde_json::to_string_pretty(&doc).expect("json")))?;
    Ok(0)
}

fn export(cfg: &JobConfig) -> Result<i32, JobError> {
    let patch = cfg.build(JobConfig::slice_spec)?;
    let obj = io::export_obj(&patch, cfg.projection)?;
    let csv = io::curvature_csv(&patch)?;
    let stem = cfg.out.clone().unwrap_or_else(|| "canal".into());
    let stem = stem.strip_suffix(".obj").unwrap_or(&stem);
    write(Path::new(&format!("{stem}.obj")), &obj)?;
    write(Path::new(&format!("{stem}.csv")), &csv)?;
    Ok(0)
}

fn run(cli: Cli) -> Result<i32, JobError> {
    match cli.command {
        Command::Example { name, out } => {
            let cfg = JobConfig::example(&name)?;
            emit(out.as_deref().and_then(Path::to_str), &cfg.to_text())?;
            Ok(0)
        }
        Command::Build(args) => {
            let cfg = args.load()?;
            let patch = cfg.build(|c, curve| Ok(c.grid_spec(curve)))?;
            emit(cfg.out.as_deref(), &io::patch_to_json(&patch))?;
            Ok(0)
        }
        Command::Curvature(args) => {
            let cfg = args.load()?;
            let patch = cfg.build(|c, curve| Ok(c.grid_spec(curve)))?;
            emit(cfg.out.as_deref(), &io::curvature_csv(&patch)?)?;
            Ok(0)
        }
        Command::Verify(args) => verify(&args.load()?),
        Command::Classify(args) => classify(&args.load()?),
        Command::Export(args) => export(&args.load()?),
    }
}

/// Sizes the worker pool from `CANAL_THREADS`, capped by the available cores.
fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("CANAL_THREADS") else {
        return Ok(());
    };
    let n: usize = value.trim().parse().ok().filter(|n| *n > 0).ok_or(format!("CANAL_THREADS must be a positive integer, got {value:?}"))?;
    let cores = std::thread::available_parallelism().map(|c| c.get()).unwrap_or(1);
    rayon::ThreadPoolBuilder::new().num_threads(n.min(cores)).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_CONFIG as u8);
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
