// Censor the same graph uniformly and along repost cascades.

use std::error::Error;

use censor_detect::censor::{censor, select_icm_seeds, CensorshipPlan, DEFAULT_ICM_SEED_FRACTION};
use censor_detect::netgen::{generate, GenerationConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let g = generate(&GenerationConfig::new(1000, 2.0, 3)?)?.graph;
    println!("{} edges; cascade seeds {:?}", g.edge_count(), select_icm_seeds(&g, DEFAULT_ICM_SEED_FRACTION));

    for gamma in [0.1, 0.3] {
        let uniform = censor(&g, &CensorshipPlan::uniform(gamma, 11))?;
        let icm = censor(&g, &CensorshipPlan::icm(gamma, 11))?;
        println!(
            "gamma {gamma}: uniform removed {}, icm removed {} in {} cascades",
            uniform.removed_edges.len(),
            icm.removed_edges.len(),
            icm.runs_used
        );
        assert_eq!(uniform.removed_edges.len(), icm.removed_edges.len());
    }

    let icm = censor(&g, &CensorshipPlan::icm(0.1, 11))?;
    println!("{}", icm.manifest(&g).lines().take(3).collect::<Vec<_>>().join("\n"));
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
