// Greedy forward feature selection: which features reveal ICM censorship?

use std::error::Error;

use censor_detect::censor::{censor, CensorshipPlan};
use censor_detect::features::{extract_features, feature_names};
use censor_detect::learn::{greedy_forward_selection, LabeledDataset, SvmParams};
use censor_detect::netgen::{generate, GenerationConfig};
use censor_detect::{derive_seed, seed_path};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for i in 0..20usize {
        let g = generate(&GenerationConfig::new(150, 2.0, derive_seed(2, &seed_path!["graph", i]))?)?.graph;
        let censored = censor(&g, &CensorshipPlan::icm(0.3, derive_seed(2, &seed_path!["censor", i])))?;
        rows.push(extract_features(&g)?.as_slice().to_vec());
        labels.push(false);
        rows.push(extract_features(&censored.censored_graph)?.as_slice().to_vec());
        labels.push(true);
    }
    let data = LabeledDataset::new(rows, labels, feature_names())?;
    let result = greedy_forward_selection(&data, 5, &SvmParams::default(), 7)?;
    println!("baseline {:.3}", result.baseline);
    for step in &result.steps {
        println!("+ {:<20} accuracy {:.3}", step.feature, step.accuracy);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
