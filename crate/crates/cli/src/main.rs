use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use superbethe::config::{load_config, parse_config, RunConfig, DEFAULT_CONFIG};
use superbethe::report::{emit_report, Report};
use superbethe::run_suite;
use superbethe_core::bethe::{build_bethe, build_dual_bethe, BetheSpec};
use superbethe_core::{EpsScalar, Rational};

/// Exact verification of Bethe-vector identities on gl(2|1) and gl(1|2) chains.
#[derive(Parser)]
#[command(name = "superbethe", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured suites and print a summary.
    Verify(VerifyArgs),
    /// Run the configured suites and write the JSON report.
    Report(ReportArgs),
    /// Bethe vector utilities.
    #[command(subcommand)]
    Bethe(BetheCommand),
}

#[derive(Args)]
struct RunArgs {
    /// Run configuration (JSON). The built-in default run is used when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Restrict to these suites (repeatable).
    #[arg(long = "suite", value_name = "NAME")]
    suites: Vec<String>,
    #[arg(long)]
    max_a: Option<usize>,
    #[arg(long)]
    max_b: Option<usize>,
    /// Also write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print every check, not only failures.
    #[arg(long, short)]
    verbose: bool,
}

#[derive(Args)]
struct ReportArgs {
    #[command(flatten)]
    run: RunArgs,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum BetheCommand {
    /// Print the sparse entries of 𝔹_{a,b}(ū;v̄) (or the dual vector) as JSON.
    Eval(EvalArgs),
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    config: PathBuf,
    /// Index of the chain in the configuration.
    #[arg(long, default_value_t = 0)]
    chain: usize,
    /// Parameters ū, comma separated or repeated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    u: Vec<String>,
    /// Parameters v̄, comma separated or repeated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    v: Vec<String>,
    /// Evaluate the dual vector ℂ_{a,b} instead.
    #[arg(long)]
    dual: bool,
}

fn load(run: &RunArgs) -> Result<RunConfig, String> {
    let mut cfg = match &run.config {
        Some(p) => load_config(p).map_err(|e| e.to_string())?,
        None => parse_config(DEFAULT_CONFIG).map_err(|e| e.to_string())?,
    };
    if let Some(s) = run.seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn finish(report: &Report) -> ExitCode {
    if report.all_zero() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let mut cfg = load(&args.run)?;
    if !args.suites.is_empty() {
        cfg.select_suites(&args.suites).map_err(|e| e.to_string())?;
    }
    cfg.set_caps(args.max_a, args.max_b).map_err(|e| e.to_string())?;
    let report = run_suite(&cfg);
    for rec in &report.checks {
        if args.verbose || !rec.residual_is_zero {
            let status = if rec.residual_is_zero { "ok  " } else { "FAIL" };
            let detail = rec.error.as_deref().unwrap_or(&rec.residual_sample);
            println!("{status} {}/{} {:?} {detail}", rec.suite, rec.name, rec.parameters);
        }
    }
    for suite in &cfg.suites {
        let recs: Vec<_> = report.checks.iter().filter(|r| &r.suite == suite).collect();
        let zero = recs.iter().filter(|r| r.residual_is_zero).count();
        println!("{suite}: {zero}/{} residuals zero", recs.len());
    }
    if let Some(sc) = &report.sign_convention {
        println!("gl(1|2) sign convention: {sc}");
    }
    println!("{} checks, {} failed", report.summary.checks, report.summary.failed);
    if let Some(out) = &args.out {
        emit_report(&report, out).map_err(|e| format!("cannot write {}: {e}", out.display()))?;
    }
    Ok(finish(&report))
}

fn report(args: ReportArgs) -> Result<ExitCode, String> {
    let cfg = load(&args.run)?;
    let report = run_suite(&cfg);
    emit_report(&report, &args.out).map_err(|e| format!("cannot write {}: {e}", args.out.display()))?;
    Ok(finish(&report))
}

fn params(xs: &[String], flag: &str) -> Result<Vec<EpsScalar>, String> {
    xs.iter()
        .map(|s| s.parse::<Rational>().map(EpsScalar::from).map_err(|_| format!("--{flag}: `{s}` is not a rational")))
        .collect()
}

fn eval(args: EvalArgs) -> Result<ExitCode, String> {
    let cfg = load_config(&args.config).map_err(|e| e.to_string())?;
    let chain = cfg.chains.get(args.chain).ok_or_else(|| format!("no chain {} in the configuration", args.chain))?;
    let spec = BetheSpec::new(params(&args.u, "u")?, params(&args.v, "v")?);
    let entries = if args.dual {
        build_dual_bethe(chain, &spec).and_then(|b| b.value.rational_entries())
    } else {
        build_bethe(chain, &spec).and_then(|b| b.value.rational_entries())
    }
    .map_err(|e| e.to_string())?;
    let map: serde_json::Map<String, serde_json::Value> =
        entries.into_iter().map(|(k, x)| (k, serde_json::Value::String(x.to_string()))).collect();
    println!("{}", serde_json::Value::Object(map));
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Report(a) => report(a),
        Command::Bethe(BetheCommand::Eval(a)) => eval(a),
    };
    out.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}
