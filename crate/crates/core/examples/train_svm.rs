// Train the RBF SVM on a toy problem and inspect the solution.

use std::error::Error;

use censor_detect::learn::{svm_predict, svm_train, LabeledDataset, SvmParams};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // XOR needs a narrow kernel and a loose margin penalty.
    let data = LabeledDataset::unnamed(
        vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0], vec![1.0, 0.0]],
        vec![false, false, true, true],
    )?;
    let model = svm_train(&data, &SvmParams::new(100.0, 5.0))?;
    println!(
        "{} support vectors, bias {:.4}, dual objective {:.6}, KKT violation {:.2e}, {} updates",
        model.support_vectors().len(),
        model.bias(),
        model.dual_objective(),
        model.kkt_violation(),
        model.updates()
    );
    for (row, &label) in data.rows().iter().zip(data.labels()) {
        let predicted = svm_predict(&model, row)?;
        println!("{row:?} -> {predicted} (decision {:+.4})", model.decision_function(row)?);
        assert_eq!(predicted, label);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
