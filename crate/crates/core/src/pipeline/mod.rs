//! The full experiment: generate, censor, featurize, evaluate, select.
//!
//! Each stage reads its inputs from and writes its outputs to the run
//! directory, so the stages can also be driven one at a time. Every random
//! choice is seeded from a labeled path under the master seed, which makes
//! the outputs independent of scheduling.

mod config;
mod tables;

pub use config::{Cell, ExperimentConfig, DEFAULT_GAMMAS};
pub use tables::{
    accuracy_csv, features_header, mean_ci95, parse_results_csv, parse_selected_features, results_csv,
    selected_features_text, trend_csv, EvalRecord, FeatureRow, FeatureTable, ACCURACY_HEADER, RESULTS_HEADER,
    TREND_HEADER,
};

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use log::{info, warn};
use rayon::prelude::*;

use crate::atomic::write_atomic;
use crate::censor::{censor, parse_manifest, CensorshipPlan, CensorshipResult};
use crate::error::{Error, Result};
use crate::features::{self, extract_with_diagnostics, feature_names, FeatureVector};
use crate::graph::{read_edge_list, write_edge_list_file, DirectedMultigraph};
use crate::learn::{greedy_forward_selection, repeated_stratified_cv, LabeledDataset, SelectionResult};
use crate::netgen::{generate, GenerationConfig};
use crate::seed::derive_seed;
use crate::seed_path;

pub const FEATURES_FILE: &str = "features.csv";
pub const RESULTS_FILE: &str = "results.csv";
pub const SELECTED_FILE: &str = "selected_features.txt";
pub const MANIFEST_FILE: &str = "manifest.txt";
pub const FIG2_FILE: &str = "fig2_topology.csv";
pub const FIG3_FILE: &str = "fig3_powerlaw.csv";
pub const FIG4_FILE: &str = "fig4_accuracy.csv";
const ABORTED_FILE: &str = "aborted.txt";

pub fn graph_seed(config: &ExperimentConfig, graph_id: usize) -> u64 {
    derive_seed(config.master_seed, &seed_path!["graph", graph_id])
}

pub fn censor_seed(config: &ExperimentConfig, cell: Cell, graph_id: usize) -> u64 {
    derive_seed(
        config.master_seed,
        &seed_path!["censor", cell.strategy.as_str(), cell.gamma, graph_id],
    )
}

pub fn cv_seed(config: &ExperimentConfig, cell: Cell) -> u64 {
    derive_seed(config.master_seed, &seed_path!["cv", cell.strategy.as_str(), cell.gamma])
}

pub fn selection_seed(config: &ExperimentConfig, cell: Cell) -> u64 {
    derive_seed(config.master_seed, &seed_path!["select", cell.strategy.as_str(), cell.gamma])
}

fn graph_stem(graph_id: usize) -> String {
    format!("graph_{graph_id:03}")
}

pub fn graph_path(config: &ExperimentConfig, graph_id: usize) -> PathBuf {
    config.out_dir.join("graphs").join(format!("{}.edges", graph_stem(graph_id)))
}

pub fn cell_dir(config: &ExperimentConfig, cell: Cell) -> PathBuf {
    config.out_dir.join("censored").join(cell.slug())
}

pub fn removal_manifest_path(config: &ExperimentConfig, cell: Cell, graph_id: usize) -> PathBuf {
    cell_dir(config, cell).join(format!("{}.removed", graph_stem(graph_id)))
}

/// A cell that was dropped from the run, with the reason.
#[derive(Debug, Clone, PartialEq)]
pub struct AbortedCell {
    pub cell: Cell,
    pub reason: String,
}

/// Censored variants of every graph for one cell, or why there are none.
#[derive(Debug, Clone)]
pub struct CensoredCell {
    pub cell: Cell,
    pub graphs: std::result::Result<Vec<DirectedMultigraph>, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub cell: Cell,
    pub mean_accuracy: f64,
    pub std_accuracy: f64,
    pub max_kkt_violation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub records: Vec<EvalRecord>,
    pub summaries: Vec<CellSummary>,
    pub aborted: Vec<AbortedCell>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub records: Vec<EvalRecord>,
    pub summaries: Vec<CellSummary>,
    pub selections: Vec<(Cell, SelectionResult)>,
    pub aborted: Vec<AbortedCell>,
    pub features: FeatureTable,
}

impl EvalReport {
    pub fn summary(&self, strategy: crate::censor::Strategy, gamma: f64) -> Option<&CellSummary> {
        self.summaries
            .iter()
            .find(|s| s.cell.strategy == strategy && (s.cell.gamma - gamma).abs() < 1e-12)
    }
}

/// Generates `n_graphs` graphs and writes each as an edge list plus a
/// `.meta` sidecar.
pub fn generate_stage(config: &ExperimentConfig) -> Result<Vec<DirectedMultigraph>> {
    config.validate()?;
    info!("generating {} graphs with {} nodes", config.n_graphs, config.n_nodes);
    (0..config.n_graphs)
        .into_par_iter()
        .map(|i| {
            let generated = generate(&GenerationConfig::new(config.n_nodes, config.alpha, graph_seed(config, i))?)?;
            let path = graph_path(config, i);
            write_edge_list_file(&generated.graph, &path)?;
            generated.write_metadata_file(&path.with_extension("meta"))?;
            Ok(generated.graph)
        })
        .collect()
}

pub fn load_graphs(config: &ExperimentConfig) -> Result<Vec<DirectedMultigraph>> {
    (0..config.n_graphs).map(|i| read_edge_list(&graph_path(config, i))).collect()
}

fn plan_for(config: &ExperimentConfig, cell: Cell, graph_id: usize) -> CensorshipPlan {
    CensorshipPlan {
        strategy: cell.strategy,
        gamma: cell.gamma,
        icm_transmission_p: config.icm_p,
        icm_seed_fraction: config.icm_seed_fraction,
        rng_seed: censor_seed(config, cell, graph_id),
    }
}

/// Censors every graph under every cell. A failure on any graph aborts that
/// cell only: its directory then holds `aborted.txt` instead of removal
/// manifests and censored edge lists.
pub fn censor_stage(config: &ExperimentConfig, graphs: &[DirectedMultigraph]) -> Result<Vec<CensoredCell>> {
    config.validate()?;
    config
        .cells()
        .into_iter()
        .map(|cell| {
            let dir = cell_dir(config, cell);
            let outcomes: Vec<Result<CensorshipResult>> = graphs
                .par_iter()
                .enumerate()
                .map(|(i, g)| censor(g, &plan_for(config, cell, i)))
                .collect();
            if let Some((i, e)) = outcomes.iter().enumerate().find_map(|(i, o)| o.as_ref().err().map(|e| (i, e))) {
                let reason = format!("graph {i}: {e}");
                warn!("cell {cell} aborted: {reason}");
                write_atomic(&dir.join(ABORTED_FILE), format!("{reason}\n").as_bytes())?;
                return Ok(CensoredCell {
                    cell,
                    graphs: Err(reason),
                });
            }
            let mut censored = Vec::with_capacity(graphs.len());
            for (i, result) in outcomes.into_iter().enumerate() {
                let result = result?;
                let manifest = removal_manifest_path(config, cell, i);
                result.write_manifest_file(&graphs[i], &manifest)?;
                write_edge_list_file(&result.censored_graph, &manifest.with_extension("edges"))?;
                censored.push(result.censored_graph);
            }
            // a stale marker from an earlier run would shadow these manifests
            let _ = std::fs::remove_file(dir.join(ABORTED_FILE));
            Ok(CensoredCell {
                cell,
                graphs: Ok(censored),
            })
        })
        .collect()
}

/// Rebuilds the censored graphs from removal manifests on disk.
pub fn load_censored(config: &ExperimentConfig, graphs: &[DirectedMultigraph]) -> Result<Vec<CensoredCell>> {
    config
        .cells()
        .into_iter()
        .map(|cell| {
            let aborted = cell_dir(config, cell).join(ABORTED_FILE);
            if aborted.exists() {
                let reason = std::fs::read_to_string(&aborted).map_err(|e| Error::file(&aborted, e))?;
                return Ok(CensoredCell {
                    cell,
                    graphs: Err(reason.trim().to_string()),
                });
            }
            let censored = graphs
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    let path = removal_manifest_path(config, cell, i);
                    let text = std::fs::read_to_string(&path).map_err(|e| Error::file(&path, e))?;
                    let name = path.display().to_string();
                    let removed = parse_manifest(&text, &name)?;
                    for (line, &(src, dst, idx)) in removed.iter().enumerate() {
                        let edge = g.edges().get(idx).ok_or_else(|| Error::parse(&name, line + 1, "edge index out of range"))?;
                        if (edge.src, edge.dst) != (src, dst) {
                            return Err(Error::parse(&name, line + 1, "edge does not match the graph"));
                        }
                    }
                    let indices: Vec<usize> = removed.iter().map(|r| r.2).collect();
                    g.without_edges(&indices)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(CensoredCell {
                cell,
                graphs: Ok(censored),
            })
        })
        .collect()
}

fn extract_checked(g: &DirectedMultigraph) -> Result<FeatureVector> {
    let extraction = extract_with_diagnostics(g)?;
    extraction.check()?;
    Ok(extraction.features)
}

/// Extracts the base feature set once and every live cell's censored
/// features. Extraction failures on censored graphs abort the cell.
pub fn featurize_stage(
    config: &ExperimentConfig,
    graphs: &[DirectedMultigraph],
    cells: &[CensoredCell],
) -> Result<(FeatureTable, Vec<AbortedCell>)> {
    info!("extracting base features");
    let base: Vec<FeatureVector> = graphs.par_iter().map(extract_checked).collect::<Result<_>>()?;
    let mut rows: Vec<FeatureRow> = base
        .into_iter()
        .enumerate()
        .map(|(graph_id, features)| FeatureRow {
            graph_id,
            cell: None,
            features,
        })
        .collect();
    let mut aborted = Vec::new();
    for c in cells {
        let censored = match &c.graphs {
            Ok(g) => g,
            Err(reason) => {
                aborted.push(AbortedCell {
                    cell: c.cell,
                    reason: reason.clone(),
                });
                continue;
            }
        };
        info!("extracting features for {}", c.cell);
        let extracted: Result<Vec<FeatureVector>> = censored.par_iter().map(extract_checked).collect();
        match extracted {
            Ok(vectors) => rows.extend(vectors.into_iter().enumerate().map(|(graph_id, features)| FeatureRow {
                graph_id,
                cell: Some(c.cell),
                features,
            })),
            Err(e) => {
                warn!("cell {} aborted: {e}", c.cell);
                aborted.push(AbortedCell {
                    cell: c.cell,
                    reason: e.to_string(),
                });
            }
        }
    }
    let table = FeatureTable { rows };
    write_atomic(&config.out_dir.join(FEATURES_FILE), table.to_csv().as_bytes())?;
    Ok((table, aborted))
}

/// Untouched rows (label 0) against the cell's censored rows (label 1).
pub fn cell_dataset(table: &FeatureTable, cell: Cell) -> Result<LabeledDataset> {
    let rows: Vec<&FeatureRow> = table.base().chain(table.for_cell(cell)).collect();
    LabeledDataset::new(
        rows.iter().map(|r| r.features.as_slice().to_vec()).collect(),
        rows.iter().map(|r| r.is_censored()).collect(),
        feature_names(),
    )
}

fn missing_rows(cell: Cell) -> AbortedCell {
    AbortedCell {
        cell,
        reason: "no censored feature rows".into(),
    }
}

/// Repeated stratified CV for every cell that has feature rows.
pub fn evaluate_stage(config: &ExperimentConfig, table: &FeatureTable) -> Result<Evaluation> {
    config.validate()?;
    let params = config.svm_params();
    let outcomes: Vec<(Cell, Result<crate::learn::CvReport>)> = config
        .cells()
        .into_par_iter()
        .filter(|&cell| table.for_cell(cell).next().is_some())
        .map(|cell| {
            let report = cell_dataset(table, cell)
                .and_then(|data| repeated_stratified_cv(&data, config.folds, config.repeats, &params, cv_seed(config, cell)));
            (cell, report)
        })
        .collect();

    let mut evaluation = Evaluation {
        records: Vec::new(),
        summaries: Vec::new(),
        aborted: Vec::new(),
    };
    for cell in config.cells() {
        let Some((_, outcome)) = outcomes.iter().find(|(c, _)| *c == cell) else {
            evaluation.aborted.push(missing_rows(cell));
            continue;
        };
        match outcome {
            Ok(report) => {
                info!("{cell}: mean accuracy {:.4}", report.mean_accuracy());
                evaluation.records.extend(report.records.iter().map(|r| EvalRecord {
                    cell,
                    repeat: r.repeat,
                    fold: r.fold,
                    accuracy: r.accuracy,
                }));
                evaluation.summaries.push(CellSummary {
                    cell,
                    mean_accuracy: report.mean_accuracy(),
                    std_accuracy: report.std_accuracy(),
                    max_kkt_violation: report.max_kkt_violation(),
                });
            }
            Err(e) => {
                warn!("cell {cell} aborted during evaluation: {e}");
                evaluation.aborted.push(AbortedCell {
                    cell,
                    reason: e.to_string(),
                });
            }
        }
    }
    write_atomic(&config.out_dir.join(RESULTS_FILE), results_csv(&evaluation.records).as_bytes())?;
    Ok(evaluation)
}

/// Greedy forward selection on each cell's full dataset.
pub fn select_stage(config: &ExperimentConfig, table: &FeatureTable) -> Result<Vec<(Cell, SelectionResult)>> {
    config.validate()?;
    let params = config.svm_params();
    let live: Vec<Cell> = config
        .cells()
        .into_iter()
        .filter(|&cell| table.for_cell(cell).next().is_some())
        .collect();
    let selections: Vec<(Cell, SelectionResult)> = live
        .into_par_iter()
        .map(|cell| {
            let data = cell_dataset(table, cell)?;
            let result = greedy_forward_selection(&data, config.folds, &params, selection_seed(config, cell))?;
            info!("{cell}: selected {:?}", result.names());
            Ok((cell, result))
        })
        .collect::<Result<_>>()?;
    let lines: Vec<(Cell, Vec<String>)> = selections.iter().map(|(c, r)| (*c, r.names())).collect();
    write_atomic(&config.out_dir.join(SELECTED_FILE), selected_features_text(&lines).as_bytes())?;
    Ok(selections)
}

/// Plot-ready CSVs: topological feature trends, power-law fit trends and
/// accuracy curves, each with means and 95% intervals.
pub fn plot_stage(config: &ExperimentConfig, table: &FeatureTable, records: &[EvalRecord]) -> Result<()> {
    let topology = [
        features::ASSORT,
        features::CLUSTERING,
        features::AVGDEG,
        features::DIA,
        features::RAD,
        features::BETCENT,
    ];
    let powerlaw = [
        features::IN_ALPHA_FIT,
        features::OUT_ALPHA_FIT,
        features::IN_LIKELIHOOD_FIT,
        features::OUT_LIKELIHOOD_FIT,
    ];
    let out = &config.out_dir;
    write_atomic(&out.join(FIG2_FILE), trend_csv(table, &config.strategies, &topology).as_bytes())?;
    write_atomic(&out.join(FIG3_FILE), trend_csv(table, &config.strategies, &powerlaw).as_bytes())?;
    write_atomic(&out.join(FIG4_FILE), accuracy_csv(records).as_bytes())?;
    Ok(())
}

/// Config echo, every derived seed, and the status of each cell.
pub fn run_manifest(config: &ExperimentConfig, aborted: &[AbortedCell]) -> String {
    let mut out = String::from("[config]\n");
    out.push_str(&config.to_key_values());
    out.push_str("[seeds]\n");
    for i in 0..config.n_graphs {
        writeln!(out, "graph.{i}={}", graph_seed(config, i)).unwrap();
    }
    for cell in config.cells() {
        let (s, g) = (cell.strategy, cell.gamma);
        writeln!(out, "cv.{s}.{g}={}", cv_seed(config, cell)).unwrap();
        writeln!(out, "select.{s}.{g}={}", selection_seed(config, cell)).unwrap();
        for i in 0..config.n_graphs {
            writeln!(out, "censor.{s}.{g}.{i}={}", censor_seed(config, cell, i)).unwrap();
        }
    }
    out.push_str("[cells]\n");
    for cell in config.cells() {
        match aborted.iter().find(|a| a.cell == cell) {
            Some(a) => writeln!(out, "{cell}=aborted: {}", a.reason).unwrap(),
            None => writeln!(out, "{cell}=ok").unwrap(),
        }
    }
    out
}

/// Runs every stage and writes all artifacts under `config.out_dir`.
///
/// Cells that abort are listed in the report and the manifest; if every
/// cell aborts the artifacts are still written and
/// [`Error::AllCellsAborted`] is returned.
pub fn run_experiment(config: &ExperimentConfig) -> Result<EvalReport> {
    config.validate()?;
    let graphs = generate_stage(config)?;
    let censored = censor_stage(config, &graphs)?;
    let (features, mut aborted) = featurize_stage(config, &graphs, &censored)?;
    let evaluation = evaluate_stage(config, &features)?;
    for a in evaluation.aborted {
        if !aborted.iter().any(|x| x.cell == a.cell) {
            aborted.push(a);
        }
    }
    aborted.sort_by_key(|a| config.cells().iter().position(|c| *c == a.cell));
    let selections = select_stage(config, &features)?;
    plot_stage(config, &features, &evaluation.records)?;
    write_atomic(&config.out_dir.join(MANIFEST_FILE), run_manifest(config, &aborted).as_bytes())?;

    let cells = config.cells().len();
    if aborted.len() == cells {
        return Err(Error::AllCellsAborted(cells));
    }
    Ok(EvalReport {
        records: evaluation.records,
        summaries: evaluation.summaries,
        selections,
        aborted,
        features,
    })
}

/// Reads a stage's CSV input from the run directory.
pub fn read_results(out_dir: &Path) -> Result<Vec<EvalRecord>> {
    let path = out_dir.join(RESULTS_FILE);
    let text = std::fs::read_to_string(&path).map_err(|e| Error::file(&path, e))?;
    parse_results_csv(&text, &path.display().to_string())
}

pub fn read_features(out_dir: &Path) -> Result<FeatureTable> {
    FeatureTable::read(&out_dir.join(FEATURES_FILE))
}
