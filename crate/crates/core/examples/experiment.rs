//! Builds the `duel-fig3` preset at desk scale, runs it through the harness
//! and prints the summary file.
//!
//! ```text
//! cargo run --release --example experiment [output-dir]
//! ```
//!
//! The same run from the command line:
//!
//! ```text
//! fbandit preset --name duel-fig3 --arms 8 --horizon 20000 --reps 10 --out duel.json
//! fbandit run --config duel.json --out results/
//! ```

use std::path::PathBuf;

use factored_bandits::env::{paper_preset, PresetName, PresetOptions};
use factored_bandits::harness::{run_experiment, ExperimentOutput};

fn main() {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("fbandit-duel-fig3"));
    let options = PresetOptions {
        arms: Some(8),
        horizon: Some(20_000),
        repetitions: Some(10),
        ..Default::default()
    };
    let mut config = paper_preset(PresetName::DuelFig3, &options).unwrap();
    config.output = Some(out);
    println!("{}", config.to_json());

    match run_experiment(&config) {
        Ok(ExperimentOutput::Regret { results, summary, .. }) => {
            print!("{}", std::fs::read_to_string(&summary).unwrap());
            println!("per-checkpoint curves in {}", results.display());
        }
        Ok(ExperimentOutput::Verify { .. }) => unreachable!("duel preset"),
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(e.exit_code());
        }
    }
}
