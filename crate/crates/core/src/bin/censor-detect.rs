use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::error;

use censor_detect::pipeline::{self, ExperimentConfig};
use censor_detect::Error;

#[derive(Parser)]
#[command(version, about = "Simulate reply-graph censorship and train a detector")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the reply-graphs
    Generate,
    /// Censor every graph under every (strategy, gamma) cell
    Censor,
    /// Extract feature vectors for base and censored graphs
    Featurize,
    /// Cross-validate a detector per cell
    Evaluate,
    /// Greedy forward feature selection per cell
    SelectFeatures,
    /// Every stage in sequence
    RunAll,
    /// Plot-ready CSVs from features and results
    PlotData,
}

/// Overrides applied on top of the config file, if any.
#[derive(Args)]
struct Flags {
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    graphs: Option<String>,
    #[arg(long, global = true)]
    nodes: Option<String>,
    #[arg(long, global = true)]
    alpha: Option<String>,
    /// Comma-separated, e.g. 0.1,0.2
    #[arg(long, global = true)]
    gammas: Option<String>,
    /// uniform, icm, a comma list, or both
    #[arg(long, global = true)]
    strategy: Option<String>,
    #[arg(long, global = true)]
    icm_p: Option<String>,
    #[arg(long, global = true)]
    seed_fraction: Option<String>,
    #[arg(long, global = true)]
    svm_c: Option<String>,
    #[arg(long, global = true)]
    svm_g: Option<String>,
    #[arg(long, global = true)]
    folds: Option<String>,
    #[arg(long, global = true)]
    repeats: Option<String>,
    #[arg(long, global = true)]
    seed: Option<String>,
    #[arg(long, global = true)]
    out: Option<String>,
}

impl Flags {
    fn config(&self) -> censor_detect::Result<ExperimentConfig> {
        let mut config = match &self.config {
            Some(path) => ExperimentConfig::from_file(path)?,
            None => ExperimentConfig::default(),
        };
        let overrides = [
            ("graphs", &self.graphs),
            ("nodes", &self.nodes),
            ("alpha", &self.alpha),
            ("gammas", &self.gammas),
            ("strategy", &self.strategy),
            ("icm_p", &self.icm_p),
            ("seed_fraction", &self.seed_fraction),
            ("svm_c", &self.svm_c),
            ("svm_g", &self.svm_g),
            ("folds", &self.folds),
            ("repeats", &self.repeats),
            ("seed", &self.seed),
            ("out", &self.out),
        ];
        for (key, value) in overrides {
            if let Some(v) = value {
                config.set(key, v)?;
            }
        }
        config.validate()?;
        Ok(config)
    }
}

fn run(command: &Command, config: &ExperimentConfig) -> censor_detect::Result<()> {
    match command {
        Command::Generate => {
            pipeline::generate_stage(config)?;
        }
        Command::Censor => {
            let graphs = pipeline::load_graphs(config)?;
            let cells = pipeline::censor_stage(config, &graphs)?;
            if cells.iter().all(|c| c.graphs.is_err()) {
                return Err(Error::AllCellsAborted(cells.len()));
            }
        }
        Command::Featurize => {
            let graphs = pipeline::load_graphs(config)?;
            let cells = pipeline::load_censored(config, &graphs)?;
            pipeline::featurize_stage(config, &graphs, &cells)?;
        }
        Command::Evaluate => {
            let table = pipeline::read_features(&config.out_dir)?;
            let evaluation = pipeline::evaluate_stage(config, &table)?;
            for s in &evaluation.summaries {
                println!("{},{:.4},{:.4}", s.cell, s.mean_accuracy, s.std_accuracy);
            }
            if evaluation.summaries.is_empty() {
                return Err(Error::AllCellsAborted(evaluation.aborted.len()));
            }
        }
        Command::SelectFeatures => {
            let table = pipeline::read_features(&config.out_dir)?;
            for (cell, result) in pipeline::select_stage(config, &table)? {
                println!("{cell},{}", result.names().join(";"));
            }
        }
        Command::PlotData => {
            let table = pipeline::read_features(&config.out_dir)?;
            let records = pipeline::read_results(&config.out_dir)?;
            pipeline::plot_stage(config, &table, &records)?;
        }
        Command::RunAll => {
            let report = pipeline::run_experiment(config)?;
            for s in &report.summaries {
                println!("{},{:.4},{:.4}", s.cell, s.mean_accuracy, s.std_accuracy);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let config = match cli.flags.config() {
        Ok(config) => config,
        Err(e) => {
            error!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(&cli.command, &config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            error!("{e}");
            ExitCode::from(2)
        }
    }
}
