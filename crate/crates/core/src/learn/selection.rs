use rayon::prelude::*;

use crate::error::Result;
use crate::learn::cv::{evaluate_folds, stratified_folds};
use crate::learn::{LabeledDataset, SvmParams};
use crate::seed::rng_for;
use crate::seed_path;

/// Smallest CV accuracy gain that admits another feature.
pub const MIN_IMPROVEMENT: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionStep {
    pub feature: String,
    pub column: usize,
    /// CV accuracy of the selected set after adding this feature.
    pub accuracy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionResult {
    /// Majority-class rate, the accuracy of the empty feature set.
    pub baseline: f64,
    pub steps: Vec<SelectionStep>,
}

impl SelectionResult {
    pub fn names(&self) -> Vec<String> {
        self.steps.iter().map(|s| s.feature.clone()).collect()
    }
}

/// Greedy forward search: repeatedly add the feature whose inclusion gives
/// the best `k`-fold CV accuracy, until no candidate improves on the current
/// set by at least [`MIN_IMPROVEMENT`]. Ties go to the lower column.
///
/// All candidates are scored on one fixed set of folds.
pub fn greedy_forward_selection(
    data: &LabeledDataset,
    k: usize,
    params: &SvmParams,
    seed: u64,
) -> Result<SelectionResult> {
    let canonical = data.subset(&data.canonical_order());
    let mut rng = rng_for(seed, &seed_path!["selection"]);
    let folds = stratified_folds(canonical.labels(), k, &mut rng)?;

    let (neg, pos) = canonical.class_counts();
    let baseline = neg.max(pos) as f64 / canonical.len() as f64;
    let mut current = baseline;
    let mut selected: Vec<usize> = Vec::new();
    let mut steps = Vec::new();

    while selected.len() < canonical.dim() {
        let candidates: Vec<usize> = (0..canonical.dim()).filter(|c| !selected.contains(c)).collect();
        let scores: Vec<f64> = candidates
            .par_iter()
            .map(|&c| {
                let mut columns = selected.clone();
                columns.push(c);
                let per_fold = evaluate_folds(&canonical.select_columns(&columns), &folds, params)?;
                Ok(per_fold.iter().map(|(acc, _)| acc).sum::<f64>() / per_fold.len() as f64)
            })
            .collect::<Result<_>>()?;
        let mut best = 0;
        for (i, &s) in scores.iter().enumerate() {
            if s > scores[best] {
                best = i;
            }
        }
        if scores[best] - current < MIN_IMPROVEMENT {
            break;
        }
        let column = candidates[best];
        selected.push(column);
        current = scores[best];
        steps.push(SelectionStep {
            feature: canonical.feature_names()[column].clone(),
            column,
            accuracy: current,
        });
    }
    Ok(SelectionResult { baseline, steps })
}
