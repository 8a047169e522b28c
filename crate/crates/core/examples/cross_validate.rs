// Repeated stratified cross-validation on untouched vs. censored graphs.

use std::error::Error;

use censor_detect::censor::{censor, CensorshipPlan};
use censor_detect::features::{extract_features, feature_names};
use censor_detect::learn::{repeated_stratified_cv, LabeledDataset, SvmParams};
use censor_detect::netgen::{generate, GenerationConfig};
use censor_detect::{derive_seed, seed_path};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for i in 0..20usize {
        let g = generate(&GenerationConfig::new(150, 2.0, derive_seed(1, &seed_path!["graph", i]))?)?.graph;
        let censored = censor(&g, &CensorshipPlan::uniform(0.5, derive_seed(1, &seed_path!["censor", i])))?;
        rows.push(extract_features(&g)?.as_slice().to_vec());
        labels.push(false);
        rows.push(extract_features(&censored.censored_graph)?.as_slice().to_vec());
        labels.push(true);
    }
    let data = LabeledDataset::new(rows, labels, feature_names())?;
    let report = repeated_stratified_cv(&data, 5, 3, &SvmParams::default(), 42)?;
    println!(
        "{} folds, mean accuracy {:.3} +/- {:.3}, worst KKT violation {:.1e}",
        report.records.len(),
        report.mean_accuracy(),
        report.std_accuracy(),
        report.max_kkt_violation()
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
