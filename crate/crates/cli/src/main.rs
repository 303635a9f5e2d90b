use std::path::PathBuf;
use std::process::ExitCode;

use bspec::{parse, resolve, run, Model, Report, RunConfig};
use bspec_core::Config;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "bspec",
    version,
    about = "Check spectra of Bishop spaces and compute their limits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    bounds: Bounds,
}

#[derive(Args)]
struct Bounds {
    /// Cap on candidates visited while enumerating threads.
    #[arg(long, global = true, default_value_t = 10_000)]
    thread_bound: usize,
    /// Depth limit for synthesized certificates.
    #[arg(long, global = true, default_value_t = 8)]
    cert_depth: usize,
    /// Largest search space for uniqueness checks.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    uniq_bound: u128,
    /// Seed for randomized instances.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Run the object checks, or a named suite.
    Check {
        file: PathBuf,
        #[arg(long)]
        suite: Option<String>,
    },
    /// Compute a direct or inverse limit and check its laws.
    Limit {
        file: PathBuf,
        #[arg(long, group = "side", value_name = "SPECTRUM")]
        direct: Option<String>,
        #[arg(long, group = "side", value_name = "SPECTRUM")]
        inverse: Option<String>,
    },
    /// Check a cofinality isomorphism or a duality.
    Iso {
        file: PathBuf,
        #[arg(long, group = "kind", value_name = "SUBSET")]
        cofinal: Option<String>,
        #[arg(long, group = "kind", value_name = "POOLSET")]
        duality: Option<String>,
    },
    /// Write the JSON report of a run.
    Report {
        file: PathBuf,
        #[arg(long, value_name = "PATH")]
        json: PathBuf,
        #[arg(long)]
        suite: Option<String>,
    },
    /// Print a document in canonical form.
    Fmt { file: PathBuf },
}

fn color() -> bool {
    std::env::var("BSPEC_COLOR").is_ok_and(|v| matches!(v.as_str(), "1" | "always" | "true" | "yes"))
}

fn load(file: &PathBuf, cfg: &RunConfig) -> Result<Model, String> {
    let text = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let doc = parse(&text).map_err(|e| format!("{}:{e}", file.display()))?;
    resolve(&doc, cfg.core.cert_depth).map_err(|e| format!("{}:{e}", file.display()))
}

fn finish(prelude: &str, report: &Report) -> ExitCode {
    print!("{prelude}{}", report.to_human(color()));
    if report.has_failures() {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        core: Config {
            thread_bound: cli.bounds.thread_bound,
            uniq_bound: cli.bounds.uniq_bound,
            cert_depth: cli.bounds.cert_depth,
            ..Config::default()
        },
        seed: cli.bounds.seed,
    };
    let result = match &cli.command {
        Command::Check { file, suite } => load(file, &cfg)
            .and_then(|m| run(&m, suite.as_deref(), &cfg).map_err(|e| e.to_string()))
            .map(|r| finish("", &r)),
        Command::Limit { file, direct, inverse } => load(file, &cfg).and_then(|m| {
            let (name, is_direct) = match (direct, inverse) {
                (Some(n), _) => (n, true),
                (None, Some(n)) => (n, false),
                (None, None) => return Err("one of --direct or --inverse is required".into()),
            };
            let (export, r) = bspec::runner::limit(&m, name, is_direct, &cfg).map_err(|e| e.to_string())?;
            Ok(finish(&export, &r))
        }),
        Command::Iso { file, cofinal, duality } => load(file, &cfg).and_then(|m| {
            if cofinal.is_none() && duality.is_none() {
                return Err("one of --cofinal or --duality is required".into());
            }
            let (lines, r) =
                bspec::runner::iso(&m, cofinal.as_deref(), duality.as_deref(), &cfg).map_err(|e| e.to_string())?;
            Ok(finish(&lines, &r))
        }),
        Command::Report { file, json, suite } => load(file, &cfg).and_then(|m| {
            let r = run(&m, suite.as_deref(), &cfg).map_err(|e| e.to_string())?;
            std::fs::write(json, r.to_json()).map_err(|e| format!("{}: {e}", json.display()))?;
            let s = r.summary();
            println!("{} passed, {} failed, {} skipped", s.pass, s.fail, s.skipped);
            Ok(if r.has_failures() {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            })
        }),
        Command::Fmt { file } => std::fs::read_to_string(file)
            .map_err(|e| format!("{}: {e}", file.display()))
            .and_then(|t| parse(&t).map_err(|e| format!("{}:{e}", file.display())))
            .map(|doc| {
                print!("{doc}");
                ExitCode::SUCCESS
            }),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
