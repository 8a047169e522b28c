mod common;

use censor_detect::learn::{svm_train, LabeledDataset, SvmParams};
use censor_detect::SimRng;
use rand::{Rng, SeedableRng};

fn xor() -> LabeledDataset {
    LabeledDataset::unnamed(
        vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0], vec![1.0, 0.0]],
        vec![false, false, true, true],
    )
    .unwrap()
}

fn noisy_blobs(n: usize, d: usize, seed: u64) -> LabeledDataset {
    let mut rng = SimRng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for i in 0..n {
        let label = i % 2 == 0;
        let shift = if label { 0.6 } else { 0.0 };
        rows.push((0..d).map(|j| shift * (j % 2) as f64 + rng.gen::<f64>() * (1.0 + j as f64)).collect());
        labels.push(label);
    }
    LabeledDataset::unnamed(rows, labels).unwrap()
}

fn check_against_oracle(data: &LabeledDataset, params: &SvmParams) {
    let model = svm_train(data, params).unwrap();
    let oracle = common::qp_dual_oracle(data.rows(), data.labels(), params.c, params.gamma);
    let ours = model.dual_objective();
    assert!(ours >= oracle - 1e-4, "smo {ours} below oracle {oracle}");
    assert!((ours - oracle).abs() <= 1e-4, "smo {ours} vs oracle {oracle}");
    assert!(model.kkt_violation() <= params.tolerance);
}

#[test]
fn xor_is_learned_and_matches_qp_oracle() {
    let data = xor();
    let params = SvmParams::new(100.0, 5.0);
    let model = svm_train(&data, &params).unwrap();
    for (row, &label) in data.rows().iter().zip(data.labels()) {
        assert_eq!(model.predict(row).unwrap(), label);
    }
    check_against_oracle(&data, &params);
}

#[test]
fn small_datasets_match_qp_oracle() {
    for seed in 0..6u64 {
        let data = noisy_blobs(20 + 6 * seed as usize, 3, seed);
        check_against_oracle(&data, &SvmParams::default());
        check_against_oracle(&data, &SvmParams::new(10.0, 2.0));
    }
}

#[test]
fn duplicated_rows_give_the_same_decision_function() {
    // Without multipliers at the box bound, doubling every row leaves the
    // optimal decision function unchanged.
    let data = xor();
    let params = SvmParams::new(100.0, 5.0);
    let single = svm_train(&data, &params).unwrap();
    let twice: Vec<usize> = (0..data.len()).chain(0..data.len()).collect();
    let double = svm_train(&data.subset(&twice), &params).unwrap();
    for i in 0..=10 {
        for j in 0..=10 {
            let probe = [i as f64 / 10.0, j as f64 / 10.0];
            let a = single.decision_function(&probe).unwrap();
            let b = double.decision_function(&probe).unwrap();
            assert!((a - b).abs() <= 1e-6, "{probe:?}: {a} vs {b}");
        }
    }
}

#[test]
fn affine_rescaling_of_a_feature_does_not_change_predictions() {
    let data = noisy_blobs(40, 3, 11);
    let params = SvmParams::new(10.0, 2.0);
    let transform = |r: &[f64]| vec![r[0], 250.0 * r[1] - 17.0, r[2] * 0.001 + 3.0];
    let rescaled = LabeledDataset::unnamed(
        data.rows().iter().map(|r| transform(r)).collect(),
        data.labels().to_vec(),
    )
    .unwrap();
    let a = svm_train(&data, &params).unwrap();
    let b = svm_train(&rescaled, &params).unwrap();
    let mut rng = SimRng::seed_from_u64(5);
    for _ in 0..200 {
        let probe: Vec<f64> = (0..3).map(|j| rng.gen::<f64>() * (1.0 + j as f64)).collect();
        assert_eq!(a.predict(&probe).unwrap(), b.predict(&transform(&probe)).unwrap());
    }
}
