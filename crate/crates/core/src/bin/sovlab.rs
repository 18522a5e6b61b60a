use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sovlab::cli::{describe, run, RunConfig, Suite};

#[derive(Parser)]
#[command(name = "sovlab", version, about = "Verification suites for separation of variables in gl(n) spin chains")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the enabled suites and write a JSON report.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Restrict to these suites (repeatable); overrides the config list.
        #[arg(long = "suite")]
        suites: Vec<Suite>,
        /// Working precision of the numeric suites, in decimal digits.
        #[arg(long)]
        precision: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print dimensions, pattern counts and predicted costs.
    Describe {
        #[arg(long)]
        config: PathBuf,
    },
}

fn load(path: &PathBuf) -> sovlab::Result<RunConfig> {
    RunConfig::from_json(&fs::read_to_string(path)?)
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn real_main() -> sovlab::Result<ExitCode> {
    match Cli::parse().cmd {
        Cmd::Describe { config } => {
            print!("{}", describe(&load(&config)?)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Run { config, suites, precision, seed, jobs, out } => {
            let mut cfg = load(&config)?;
            if !suites.is_empty() {
                cfg.set_suites(&suites);
            }
            if let Some(p) = precision {
                cfg.precision = p;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let out = out.or_else(|| cfg.out.clone()).ok_or_else(|| sovlab::Error::Config("no output path: pass --out or set \"out\" in the config".into()))?;
            cfg.out = Some(out.clone());
            let mut pool = rayon::ThreadPoolBuilder::new();
            if let Some(j) = jobs {
                pool = pool.num_threads(j.max(1));
            }
            let pool = pool.build().map_err(|e| sovlab::Error::Config(format!("thread pool: {e}")))?;
            let report = pool.install(|| run(&cfg))?;
            fs::write(&out, report.to_json()?)?;
            for s in &report.suites {
                eprintln!("{:<10} {:<18} worst {:>10}  {:.2}s", s.suite.to_string(), format!("{:?}", s.status), s.worst_residual, s.wall_time_s);
            }
            Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}
