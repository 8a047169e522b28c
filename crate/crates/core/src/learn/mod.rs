//! Censored-vs-uncensored classification.
//!
//! A soft-margin SVM with an RBF kernel, trained by SMO on min-max scaled
//! inputs, evaluated with repeated stratified k-fold cross-validation, plus
//! greedy forward feature selection on top of the same CV loop.

mod cv;
mod scaler;
mod selection;
mod svm;

pub use cv::{repeated_stratified_cv, stratified_folds, CvRecord, CvReport};
pub use scaler::MinMaxScaler;
pub use selection::{greedy_forward_selection, SelectionResult, SelectionStep, MIN_IMPROVEMENT};
pub use svm::{svm_predict, svm_train, SvmModel, SvmParams, DEFAULT_C, DEFAULT_G, DEFAULT_TOLERANCE};

use crate::error::{Error, Result};

/// Rows of equal dimension with binary labels; `true` is the censored class.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    rows: Vec<Vec<f64>>,
    labels: Vec<bool>,
    feature_names: Vec<String>,
}

impl LabeledDataset {
    pub fn new(rows: Vec<Vec<f64>>, labels: Vec<bool>, feature_names: Vec<String>) -> Result<Self> {
        if rows.len() != labels.len() {
            return Err(Error::InvalidParameter(format!(
                "{} rows but {} labels",
                rows.len(),
                labels.len()
            )));
        }
        let d = feature_names.len();
        for row in &rows {
            if row.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: row.len(),
                });
            }
        }
        Ok(LabeledDataset {
            rows,
            labels,
            feature_names,
        })
    }

    /// Generic names `f0..f{d-1}`.
    pub fn unnamed(rows: Vec<Vec<f64>>, labels: Vec<bool>) -> Result<Self> {
        let d = rows.first().map_or(0, Vec::len);
        Self::new(rows, labels, (0..d).map(|i| format!("f{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.feature_names.len()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn labels(&self) -> &[bool] {
        &self.labels
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn class_counts(&self) -> (usize, usize) {
        let positives = self.labels.iter().filter(|&&l| l).count();
        (self.labels.len() - positives, positives)
    }

    /// Rows at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> LabeledDataset {
        LabeledDataset {
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            feature_names: self.feature_names.clone(),
        }
    }

    /// Restriction to the feature columns in `columns`, in that order.
    pub fn select_columns(&self, columns: &[usize]) -> LabeledDataset {
        LabeledDataset {
            rows: self
                .rows
                .iter()
                .map(|r| columns.iter().map(|&c| r[c]).collect())
                .collect(),
            labels: self.labels.clone(),
            feature_names: columns.iter().map(|&c| self.feature_names[c].clone()).collect(),
        }
    }

    /// Row indices sorted by (label, feature values), the order in which
    /// CV and training see the data regardless of input order.
    pub(crate) fn canonical_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| {
            self.labels[a].cmp(&self.labels[b]).then_with(|| {
                self.rows[a]
                    .iter()
                    .zip(&self.rows[b])
                    .map(|(x, y)| x.total_cmp(y))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
        });
        order
    }
}
