// The 60-dimensional feature vector before and after censorship.

use std::error::Error;

use censor_detect::censor::{censor, CensorshipPlan};
use censor_detect::features::{extract_with_diagnostics, feature_names, TOPOLOGICAL_FEATURES};
use censor_detect::netgen::{generate, GenerationConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let g = generate(&GenerationConfig::new(300, 2.0, 5)?)?.graph;
    let censored = censor(&g, &CensorshipPlan::icm(0.3, 5))?.censored_graph;

    let before = extract_with_diagnostics(&g)?;
    let after = extract_with_diagnostics(&censored)?;
    before.check()?;
    after.check()?;

    let names = feature_names();
    println!("{:<20}{:>14}{:>14}", "feature", "original", "icm 0.3");
    for i in 0..TOPOLOGICAL_FEATURES {
        println!("{:<20}{:>14.4}{:>14.4}", names[i], before.features[i], after.features[i]);
    }
    println!(
        "components {} -> {}, first eigenvalues {:?}",
        before.diagnostics.component_count,
        after.diagnostics.component_count,
        &after.features.spectrum()[..4]
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
