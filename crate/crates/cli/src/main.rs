use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use clap::Parser;
use rs_extend_cli::runner::{EXIT_CONFIG, EXIT_PASS};
use rs_extend_cli::{list_catalog, run, write_atomic, Envelope, Experiment, ExperimentConfig, RunReport};

/// Run extension-operator verification experiments.
#[derive(Debug, Parser)]
#[command(name = "rs-extend", version)]
struct Args {
    /// Experiment configuration (JSON).
    #[arg(long, required_unless_present = "list")]
    config: Option<PathBuf>,
    /// Output directory for report.json and CSV artifacts.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Overrides the sampler seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Check to run; repeatable, replaces the configured list.
    #[arg(long = "check")]
    checks: Vec<String>,
    /// Print the catalog of maps, gammas, motions and checks as JSON.
    #[arg(long)]
    list: bool,
}

fn threads() -> Result<usize> {
    if let Ok(v) = std::env::var("RS_EXTEND_THREADS") {
        let n: usize = v
            .parse()
            .with_context(|| format!("RS_EXTEND_THREADS={v:?} is not a count"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("building thread pool")?;
    }
    Ok(rayon::current_num_threads())
}

fn setup(args: &Args) -> Result<(ExperimentConfig, Experiment, usize)> {
    let threads = threads()?;
    let path = args.config.as_ref().context("--config is required")?;
    let cfg = ExperimentConfig::load(path)?;
    let exp = Experiment::from_config(&cfg, args.seed, &args.checks)?;
    std::fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    Ok((cfg, exp, threads))
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_PASS };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if args.list {
        let json = serde_json::to_string_pretty(&list_catalog()).expect("catalog serializes");
        // A closed pipe (e.g. `| head`) is not an error worth reporting.
        let _ = writeln!(std::io::stdout(), "{json}");
        return ExitCode::SUCCESS;
    }
    let started = Instant::now();
    let (cfg, exp, threads) = match setup(&args) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let (payload, artifacts) = run(&cfg, &exp);
    for rep in &payload.checks {
        eprintln!(
            "{:<22} {:?}  worst margin {:e}",
            rep.name, rep.verdict, rep.worst_margin
        );
    }
    let code = payload.exit_code;
    let report = RunReport {
        envelope: Envelope {
            tool: "rs-extend",
            version: env!("CARGO_PKG_VERSION"),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            elapsed_seconds: started.elapsed().as_secs_f64(),
            threads,
        },
        payload,
    };
    let written = (|| -> Result<()> {
        for a in &artifacts {
            write_atomic(&args.out.join(&a.name), a.contents.as_bytes())?;
        }
        let json = serde_json::to_vec_pretty(&report)?;
        write_atomic(&args.out.join("report.json"), &json)
    })();
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(EXIT_CONFIG);
    }
    ExitCode::from(code)
}
