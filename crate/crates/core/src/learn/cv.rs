use rand::seq::SliceRandom;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::learn::{svm_train, LabeledDataset, SvmParams};
use crate::seed::{rng_for, SimRng};
use crate::seed_path;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CvRecord {
    pub repeat: usize,
    pub fold: usize,
    pub accuracy: f64,
    /// KKT violation of the model trained for this fold.
    pub kkt_violation: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CvReport {
    pub records: Vec<CvRecord>,
}

impl CvReport {
    pub fn mean_accuracy(&self) -> f64 {
        if self.records.is_empty() {
            return f64::NAN;
        }
        self.records.iter().map(|r| r.accuracy).sum::<f64>() / self.records.len() as f64
    }

    /// Sample standard deviation of the per-fold accuracies.
    pub fn std_accuracy(&self) -> f64 {
        let n = self.records.len();
        if n < 2 {
            return 0.0;
        }
        let mean = self.mean_accuracy();
        let ss: f64 = self.records.iter().map(|r| (r.accuracy - mean).powi(2)).sum();
        (ss / (n - 1) as f64).sqrt()
    }

    pub fn max_kkt_violation(&self) -> f64 {
        self.records.iter().map(|r| r.kkt_violation).fold(0.0, f64::max)
    }
}

fn check_fold_count(labels: &[bool], k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 folds, got {k}")));
    }
    for label in [false, true] {
        let count = labels.iter().filter(|&&l| l == label).count();
        if count < k {
            return Err(Error::InsufficientClassRows { label, count, folds: k });
        }
    }
    Ok(())
}

/// Shuffles each class and deals its rows round-robin into `k` folds,
/// continuing the deal across classes so fold sizes also stay within one.
pub fn stratified_folds(labels: &[bool], k: usize, rng: &mut SimRng) -> Result<Vec<Vec<usize>>> {
    check_fold_count(labels, k)?;
    let mut folds = vec![Vec::new(); k];
    let mut next = 0;
    for label in [false, true] {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == label).collect();
        members.shuffle(rng);
        for i in members {
            folds[next % k].push(i);
            next += 1;
        }
    }
    for fold in &mut folds {
        fold.sort_unstable();
    }
    Ok(folds)
}

/// Trains on everything outside each fold and scores the fold.
/// Returns `(accuracy, kkt_violation)` per fold.
pub(crate) fn evaluate_folds(
    data: &LabeledDataset,
    folds: &[Vec<usize>],
    params: &SvmParams,
) -> Result<Vec<(f64, f64)>> {
    let mut fold_of = vec![usize::MAX; data.len()];
    for (f, fold) in folds.iter().enumerate() {
        for &i in fold {
            fold_of[i] = f;
        }
    }
    folds
        .par_iter()
        .enumerate()
        .map(|(f, test)| {
            let train: Vec<usize> = (0..data.len()).filter(|&i| fold_of[i] != f).collect();
            let model = svm_train(&data.subset(&train), params)?;
            let mut correct = 0;
            for &i in test {
                if model.predict(&data.rows()[i])? == data.labels()[i] {
                    correct += 1;
                }
            }
            Ok((correct as f64 / test.len() as f64, model.kkt_violation()))
        })
        .collect()
}

/// `repeats` rounds of stratified `k`-fold CV.
///
/// Rows are put in a canonical order before shuffling, so the folds (and
/// therefore the accuracies) depend on the row contents and the seed only,
/// not on the order rows were supplied in. Scaling is fit inside each
/// training split.
pub fn repeated_stratified_cv(
    data: &LabeledDataset,
    k: usize,
    repeats: usize,
    params: &SvmParams,
    master_seed: u64,
) -> Result<CvReport> {
    check_fold_count(data.labels(), k)?;
    let canonical = data.subset(&data.canonical_order());
    let mut records = Vec::with_capacity(k * repeats);
    for repeat in 0..repeats {
        let mut rng = rng_for(master_seed, &seed_path!["repeat", repeat]);
        let folds = stratified_folds(canonical.labels(), k, &mut rng)?;
        for (fold, (accuracy, kkt_violation)) in evaluate_folds(&canonical, &folds, params)?.into_iter().enumerate() {
            records.push(CvRecord {
                repeat,
                fold,
                accuracy,
                kkt_violation,
            });
        }
    }
    Ok(CvReport { records })
}
