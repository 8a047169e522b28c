// A miniature end-to-end experiment written to a temporary directory.
//
// The full-size run is `censor-detect run-all` with default flags.

use std::error::Error;

use censor_detect::censor::Strategy;
use censor_detect::pipeline::{self, ExperimentConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let dir = tempfile::tempdir()?;
    let config = ExperimentConfig {
        n_graphs: 10,
        n_nodes: 120,
        gammas: vec![0.2, 0.5],
        strategies: vec![Strategy::Uniform, Strategy::Icm],
        folds: 5,
        repeats: 2,
        master_seed: 2024,
        out_dir: dir.path().to_path_buf(),
        ..ExperimentConfig::default()
    };
    let report = pipeline::run_experiment(&config)?;
    for s in &report.summaries {
        println!("{:<14} accuracy {:.3} +/- {:.3}", s.cell.to_string(), s.mean_accuracy, s.std_accuracy);
    }
    for a in &report.aborted {
        println!("{:<14} aborted: {}", a.cell.to_string(), a.reason);
    }
    print!("{}", std::fs::read_to_string(dir.path().join(pipeline::SELECTED_FILE))?);
    print!("{}", std::fs::read_to_string(dir.path().join(pipeline::FIG4_FILE))?);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
