//! `fbandit` command line: `run`, `verify`, `oracle` and `preset`.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use super::run::{oracle_report, render_verify, run_experiment, ExperimentOutput};
use super::{ConfigError, ExperimentConfig, HarnessError, DEFAULT_VERIFY_TRIALS};
use crate::concentration::run_suite;
use crate::env::{paper_preset, PresetName, PresetOptions};

#[derive(Debug, Parser)]
#[command(name = "fbandit", version, about = "Factored and dueling bandit simulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run an experiment config and write results.csv and summary.csv.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Output directory, overrides the config.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        reps: Option<u64>,
        #[arg(long)]
        horizon: Option<u64>,
    },
    /// Run the Monte Carlo concentration checks and print one row per check.
    Verify {
        #[arg(long, default_value_t = DEFAULT_VERIFY_TRIALS)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the gap table and kappa of a config's environment as JSON.
    Oracle {
        #[arg(long)]
        config: PathBuf,
    },
    /// Write a ready-made config.
    Preset {
        /// rank1-fig2, duel-fig3 or duel-figC
        #[arg(long)]
        name: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        arms: Option<usize>,
        #[arg(long)]
        horizon: Option<u64>,
        /// Peak mean u* v* (rank1-fig2 only).
        #[arg(long)]
        peak: Option<f64>,
        #[arg(long)]
        reps: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn read_config(path: &PathBuf) -> Result<ExperimentConfig, HarnessError> {
    let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    Ok(ExperimentConfig::from_json(&text)?)
}

fn execute(command: Command) -> Result<i32, HarnessError> {
    match command {
        Command::Run {
            config,
            out,
            seed,
            reps,
            horizon,
        } => {
            let mut config = read_config(&config)?;
            config.output = out.or(config.output);
            config.seed = seed.unwrap_or(config.seed);
            config.repetitions = reps.unwrap_or(config.repetitions);
            config.horizon = horizon.unwrap_or(config.horizon);
            match run_experiment(&config)? {
                ExperimentOutput::Regret {
                    results,
                    summary,
                    rows,
                } => {
                    for r in rows {
                        println!(
                            "{:<14} reps={} T={} mean_regret={:.3} stderr={:.3}",
                            r.algo, r.reps, r.final_t, r.mean_regret, r.stderr_regret
                        );
                    }
                    println!("wrote {} and {}", results.display(), summary.display());
                    Ok(0)
                }
                ExperimentOutput::Verify { path, report } => {
                    print!("{}", render_verify(&report));
                    println!("wrote {}", path.display());
                    Ok(if report.passed() { 0 } else { 1 })
                }
            }
        }
        Command::Verify { trials, seed, out } => {
            if trials == 0 {
                return Err(ConfigError::ZeroTrials.into());
            }
            let report = run_suite(&[0.05, 0.1], trials, seed)?;
            let text = render_verify(&report);
            print!("{text}");
            if let Some(path) = out {
                fs::write(&path, &text).map_err(|e| HarnessError::io(&path, e))?;
            }
            if !report.passed() {
                eprintln!("fbandit: at least one concentration check failed");
                return Ok(1);
            }
            Ok(0)
        }
        Command::Oracle { config } => {
            let report = oracle_report(&read_config(&config)?)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            Ok(0)
        }
        Command::Preset {
            name,
            out,
            arms,
            horizon,
            peak,
            reps,
            seed,
        } => {
            let name: PresetName = name.parse()?;
            let options = PresetOptions {
                arms,
                horizon,
                peak,
                repetitions: reps,
                seed,
            };
            let config = paper_preset(name, &options)?;
            fs::write(&out, config.to_json()).map_err(|e| HarnessError::io(&out, e))?;
            Ok(0)
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code: 0 on success, 1 on validation failures, 2 on I/O
/// failures.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("fbandit: {e}");
            e.exit_code()
        }
    }
}
