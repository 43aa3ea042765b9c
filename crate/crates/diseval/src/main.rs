use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use diseval::bench::EntryError;
use diseval::manifest::pair_directories;
use diseval::report::emit_report;
use diseval::split::{emit_complexity, emit_split, ground_truths, measure, split_measured, write_bin_lists};
use diseval::{run_benchmark, BenchConfig, Error, Format, Manifest, Mode, Report};
use diseval_core::hce::{DEFAULT_EPSILON, DEFAULT_GAMMA, DEFAULT_TAU};
use diseval_core::metrics::DEFAULT_BETA_SQ;
use diseval_core::EvalConfig;

#[derive(Parser)]
#[command(name = "diseval", version, about = "Evaluate binary segmentation predictions against ground-truth masks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full metric battery (max-F, weighted F, MAE, S, mean E, HCE) per image and aggregated
    Metrics(EvalArgs),
    /// Human correction effort only
    Hce(EvalArgs),
    /// Object complexity (IPQ, contour and dominant-point counts) of ground-truth masks
    Complexity(ComplexityArgs),
    /// Rank ground truths by IPQ × P_num and cut them into difficulty bins
    Split(SplitArgs),
    /// Re-render a JSON report in another format
    Report(ReportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    #[value(name = "md")]
    Markdown,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Markdown => Format::Markdown,
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
}

#[derive(Args)]
struct WorkerArgs {
    /// Worker threads (default: one per core)
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,
}

impl WorkerArgs {
    fn count(&self) -> usize {
        self.workers.map_or(0, |w| w as usize)
    }
}

#[derive(Args)]
struct EvalArgs {
    /// Prediction image or directory
    #[arg(long, requires = "gt", conflicts_with = "manifest")]
    pred: Option<PathBuf>,
    /// Ground-truth image or directory
    #[arg(long, requires = "pred")]
    gt: Option<PathBuf>,
    /// CSV or JSON list of (id, pred_path, gt_path, group, subset)
    #[arg(long, conflicts_with = "gt", required_unless_present = "pred")]
    manifest: Option<PathBuf>,
    /// Relaxation rounds
    #[arg(long, default_value_t = DEFAULT_GAMMA)]
    gamma: u32,
    /// Dominant-point tolerance in pixels
    #[arg(long, default_value_t = DEFAULT_EPSILON, value_parser = non_negative)]
    epsilon: f64,
    /// Prediction binarization threshold for HCE (value >= tau)
    #[arg(long, default_value_t = DEFAULT_TAU, value_parser = unit_interval)]
    tau: f64,
    /// β² of the max F-measure
    #[arg(long, default_value_t = DEFAULT_BETA_SQ, value_parser = positive)]
    beta_sq: f64,
    /// Include per-image wall times (makes output run-dependent)
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    workers: WorkerArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ComplexityArgs {
    /// Ground-truth image or directory
    #[arg(long, required_unless_present = "manifest", conflicts_with = "manifest")]
    gt: Option<PathBuf>,
    /// Manifest whose ground-truth paths are measured
    #[arg(long)]
    manifest: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_EPSILON, value_parser = non_negative)]
    epsilon: f64,
    #[command(flatten)]
    workers: WorkerArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SplitArgs {
    #[command(flatten)]
    source: ComplexityArgs,
    /// Number of bins
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// Also write bin_<i>.txt id lists into this directory
    #[arg(long)]
    lists: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    /// JSON report produced by `metrics` or `hce`
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    output: OutputArgs,
}

fn non_negative(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{}", e))?;
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err("must be a finite number >= 0".into())
    }
}

fn positive(s: &str) -> Result<f64, String> {
    let v = non_negative(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err("must be > 0".into())
    }
}

fn unit_interval(s: &str) -> Result<f64, String> {
    let v = non_negative(s)?;
    if v <= 1.0 {
        Ok(v)
    } else {
        Err("must lie in [0, 1]".into())
    }
}

/// A run that cannot produce a report at all.
struct Fatal(String);

impl From<Error> for Fatal {
    fn from(e: Error) -> Self {
        Fatal(e.to_string())
    }
}

fn write_output(out: &OutputArgs, bytes: &[u8]) -> Result<(), Fatal> {
    match &out.out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| Fatal(format!("{}: {}", path.display(), e))),
        None => std::io::stdout().write_all(bytes).map_err(|e| Fatal(format!("stdout: {}", e))),
    }
}

fn unpaired(ids: &[String], kind: &str, message: &str) -> Vec<EntryError> {
    ids.iter().map(|id| EntryError { id: id.clone(), kind: kind.into(), message: message.into() }).collect()
}

/// Builds the work list; stems found on one side only become error entries.
fn inputs(pred: Option<&Path>, gt: Option<&Path>, manifest: Option<&Path>) -> Result<(Manifest, Vec<EntryError>), Fatal> {
    if let Some(m) = manifest {
        return Ok((Manifest::load(m)?, Vec::new()));
    }
    let (Some(pred), Some(gt)) = (pred, gt) else {
        return Err(Fatal("give --manifest, or both --pred and --gt".into()));
    };
    if pred.is_file() && gt.is_file() {
        return Ok((Manifest::single(pred, gt)?, Vec::new()));
    }
    if pred.is_dir() && gt.is_dir() {
        let p = pair_directories(pred, gt)?;
        let mut errors = unpaired(&p.missing_prediction, "missing_prediction", "ground truth has no prediction");
        errors.extend(unpaired(&p.missing_ground_truth, "missing_ground_truth", "prediction has no ground truth"));
        return Ok((p.manifest, errors));
    }
    for path in [pred, gt] {
        if !path.exists() {
            return Err(Error::FileNotFound(path.into()).into());
        }
    }
    Err(Fatal("--pred and --gt must both be files or both be directories".into()))
}

fn evaluate(args: &EvalArgs, mode: Mode) -> Result<bool, Fatal> {
    let (manifest, unmatched) = inputs(args.pred.as_deref(), args.gt.as_deref(), args.manifest.as_deref())?;
    let config = BenchConfig {
        eval: EvalConfig { gamma: args.gamma, epsilon: args.epsilon, tau: args.tau, beta_sq: args.beta_sq, ..EvalConfig::default() },
        workers: args.workers.count(),
        mode,
    };
    let mut output = run_benchmark(&manifest, &config)?;
    output.errors.extend(unmatched);
    output.errors.sort_by(|a, b| a.id.cmp(&b.id));
    let report = Report::new(&config, output, args.timings);
    write_output(&args.output, &emit_report(&report, args.output.format.into()))?;
    Ok(report.errors.is_empty())
}

fn ground_truth_list(args: &ComplexityArgs) -> Result<Vec<(String, PathBuf)>, Fatal> {
    if let Some(m) = &args.manifest {
        let m = Manifest::load(m)?;
        return Ok(m.entries().iter().map(|e| (e.id.clone(), e.gt_path.clone())).collect());
    }
    let gt = args.gt.as_deref().expect("clap requires --gt or --manifest");
    if gt.is_file() {
        let id = gt.file_stem().and_then(|s| s.to_str()).unwrap_or("image").to_string();
        return Ok(vec![(id, gt.to_path_buf())]);
    }
    Ok(ground_truths(gt)?)
}

fn run(cli: Cli) -> Result<bool, Fatal> {
    match cli.command {
        Command::Metrics(args) => evaluate(&args, Mode::Full),
        Command::Hce(args) => evaluate(&args, Mode::HceOnly),
        Command::Complexity(args) => {
            let report = measure(&ground_truth_list(&args)?, args.epsilon, args.workers.count())?;
            write_output(&args.output, &emit_complexity(&report, args.output.format.into()))?;
            Ok(report.errors.is_empty())
        }
        Command::Split(args) => {
            let src = &args.source;
            let report = measure(&ground_truth_list(src)?, src.epsilon, src.workers.count())?;
            let listing = split_measured(&report, args.k)?;
            if let Some(dir) = &args.lists {
                write_bin_lists(&listing, dir)?;
            }
            write_output(&src.output, &emit_split(&listing, src.output.format.into()))?;
            Ok(listing.errors.is_empty())
        }
        Command::Report(args) => {
            let bytes = std::fs::read(&args.input).map_err(|e| Fatal(format!("{}: {}", args.input.display(), e)))?;
            let report = Report::from_json(&bytes)?;
            write_output(&args.output, &emit_report(&report, args.output.format.into()))?;
            Ok(report.errors.is_empty())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("diseval: some entries failed; see the errors section of the report");
            ExitCode::from(1)
        }
        Err(Fatal(message)) => {
            eprintln!("diseval: {}", message);
            ExitCode::from(2)
        }
    }
}
