//! Binary soft-margin SVM with RBF kernel, trained by SMO.
//!
//! The solver works on the dual
//!
//! ```text
//! min_a  1/2 aᵀQa - eᵀa    s.t.  yᵀa = 0,  0 <= a_i <= C
//! Q_ij = y_i y_j K(x_i, x_j),  K(x, z) = exp(-g ||x - z||²)
//! ```
//!
//! using maximal-gain (second order) working-pair selection. It stops once
//! the maximal KKT violation `m(a) - M(a)` drops below the tolerance. Inputs
//! are min-max scaled with statistics from the training rows; the scaler
//! travels with the model.

use crate::error::{Error, Result};
use crate::learn::{LabeledDataset, MinMaxScaler};

pub const DEFAULT_C: f64 = 1.0;
pub const DEFAULT_G: f64 = 0.01;
pub const DEFAULT_TOLERANCE: f64 = 1e-3;
pub const DEFAULT_MAX_UPDATES: usize = 1_000_000;

const TAU: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvmParams {
    /// Box constraint `C`.
    pub c: f64,
    /// RBF width `g`.
    pub gamma: f64,
    pub tolerance: f64,
    pub max_updates: usize,
}

impl Default for SvmParams {
    fn default() -> Self {
        SvmParams {
            c: DEFAULT_C,
            gamma: DEFAULT_G,
            tolerance: DEFAULT_TOLERANCE,
            max_updates: DEFAULT_MAX_UPDATES,
        }
    }
}

impl SvmParams {
    pub fn new(c: f64, gamma: f64) -> Self {
        SvmParams {
            c,
            gamma,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0) || !(self.gamma > 0.0) || !(self.tolerance > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "SVM needs C > 0, g > 0 and tolerance > 0 (got {}, {}, {})",
                self.c, self.gamma, self.tolerance
            )));
        }
        Ok(())
    }
}

fn rbf(gamma: f64, a: &[f64], b: &[f64]) -> f64 {
    let d2: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    (-gamma * d2).exp()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvmModel {
    /// Scaled training rows with non-zero multipliers.
    support_vectors: Vec<Vec<f64>>,
    /// `alpha_i * y_i` per support vector.
    dual_coefficients: Vec<f64>,
    bias: f64,
    kernel_gamma: f64,
    complexity_c: f64,
    scaler: MinMaxScaler,
    /// Largest KKT violation over the training rows, in margin units.
    kkt_violation: f64,
    dual_objective: f64,
    updates: usize,
}

impl SvmModel {
    pub fn support_vectors(&self) -> &[Vec<f64>] {
        &self.support_vectors
    }

    pub fn dual_coefficients(&self) -> &[f64] {
        &self.dual_coefficients
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    pub fn kernel_gamma(&self) -> f64 {
        self.kernel_gamma
    }

    pub fn complexity_c(&self) -> f64 {
        self.complexity_c
    }

    pub fn scaler(&self) -> &MinMaxScaler {
        &self.scaler
    }

    /// Largest violation of the margin conditions on the training rows:
    /// `y f(x) >= 1` for `alpha = 0`, `y f(x) = 1` for `0 < alpha < C`,
    /// `y f(x) <= 1` for `alpha = C`.
    pub fn kkt_violation(&self) -> f64 {
        self.kkt_violation
    }

    /// Dual objective `eᵀa - 1/2 aᵀQa` at the solution.
    pub fn dual_objective(&self) -> f64 {
        self.dual_objective
    }

    /// SMO pair updates performed.
    pub fn updates(&self) -> usize {
        self.updates
    }

    fn decision_scaled(&self, x: &[f64]) -> f64 {
        self.support_vectors
            .iter()
            .zip(&self.dual_coefficients)
            .map(|(sv, &coef)| coef * rbf(self.kernel_gamma, sv, x))
            .sum::<f64>()
            + self.bias
    }

    /// Signed decision value of a raw (unscaled) row.
    pub fn decision_function(&self, x: &[f64]) -> Result<f64> {
        Ok(self.decision_scaled(&self.scaler.transform(x)?))
    }

    /// `true` (censored) for a strictly positive decision value.
    pub fn predict(&self, x: &[f64]) -> Result<bool> {
        Ok(self.decision_function(x)? > 0.0)
    }
}

pub fn svm_predict(model: &SvmModel, x: &[f64]) -> Result<bool> {
    model.predict(x)
}

/// Trains on `data` (raw features; scaling happens here).
pub fn svm_train(data: &LabeledDataset, params: &SvmParams) -> Result<SvmModel> {
    params.validate()?;
    if data.dim() == 0 {
        return Err(Error::InvalidParameter("dataset has no features".into()));
    }
    let (neg, pos) = data.class_counts();
    if neg == 0 || pos == 0 {
        return Err(Error::SingleClass);
    }
    let scaler = MinMaxScaler::fit(data.rows())?;
    let xs: Vec<Vec<f64>> = data
        .rows()
        .iter()
        .map(|r| scaler.transform(r))
        .collect::<Result<_>>()?;
    let y: Vec<f64> = data.labels().iter().map(|&l| if l { 1.0 } else { -1.0 }).collect();
    let n = xs.len();

    let mut kernel = vec![0.0f64; n * n];
    for i in 0..n {
        kernel[i * n + i] = 1.0;
        for j in 0..i {
            let k = rbf(params.gamma, &xs[i], &xs[j]);
            kernel[i * n + j] = k;
            kernel[j * n + i] = k;
        }
    }
    let k = |i: usize, j: usize| kernel[i * n + j];

    let c = params.c;
    let mut alpha = vec![0.0f64; n];
    // gradient of the dual objective: Qa - e
    let mut grad = vec![-1.0f64; n];
    let in_up = |t: usize, a: &[f64]| (y[t] > 0.0 && a[t] < c) || (y[t] < 0.0 && a[t] > 0.0);
    let in_low = |t: usize, a: &[f64]| (y[t] > 0.0 && a[t] > 0.0) || (y[t] < 0.0 && a[t] < c);

    let mut updates = 0;
    loop {
        // i: maximal violator from the "up" set
        let mut i = usize::MAX;
        let mut g_max = f64::NEG_INFINITY;
        for t in 0..n {
            if in_up(t, &alpha) && -y[t] * grad[t] > g_max {
                g_max = -y[t] * grad[t];
                i = t;
            }
        }
        // j: largest objective decrease from the "low" set
        let mut j = usize::MAX;
        let mut g_min = f64::INFINITY;
        let mut best_gain = f64::INFINITY;
        for t in 0..n {
            if !in_low(t, &alpha) {
                continue;
            }
            let v = -y[t] * grad[t];
            g_min = g_min.min(v);
            if i != usize::MAX && v < g_max {
                let b = g_max - v;
                let mut a = k(i, i) + k(t, t) - 2.0 * k(i, t);
                if a <= 0.0 {
                    a = TAU;
                }
                let gain = -(b * b) / a;
                if gain < best_gain {
                    best_gain = gain;
                    j = t;
                }
            }
        }
        if i == usize::MAX || j == usize::MAX || g_max - g_min < params.tolerance {
            break;
        }
        if updates == params.max_updates {
            return Err(Error::SmoIterationLimit(params.max_updates));
        }
        updates += 1;

        let (old_i, old_j) = (alpha[i], alpha[j]);
        let qij = y[i] * y[j] * k(i, j);
        if y[i] != y[j] {
            let mut quad = k(i, i) + k(j, j) + 2.0 * qij;
            if quad <= 0.0 {
                quad = TAU;
            }
            let delta = (-grad[i] - grad[j]) / quad;
            let diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if diff > 0.0 {
                if alpha[j] < 0.0 {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = -diff;
            }
            if diff > 0.0 {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = c - diff;
                }
            } else if alpha[j] > c {
                alpha[j] = c;
                alpha[i] = c + diff;
            }
        } else {
            let mut quad = k(i, i) + k(j, j) - 2.0 * qij;
            if quad <= 0.0 {
                quad = TAU;
            }
            let delta = (grad[i] - grad[j]) / quad;
            let sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if sum > c {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = sum - c;
                }
            } else if alpha[j] < 0.0 {
                alpha[j] = 0.0;
                alpha[i] = sum;
            }
            if sum > c {
                if alpha[j] > c {
                    alpha[j] = c;
                    alpha[i] = sum - c;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = sum;
            }
        }

        let (di, dj) = (alpha[i] - old_i, alpha[j] - old_j);
        for t in 0..n {
            grad[t] += y[t] * (y[i] * k(t, i) * di + y[j] * k(t, j) * dj);
        }
    }

    // offset: mean over free multipliers, else midpoint of the feasible range
    let (mut upper, mut lower) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut free_sum, mut free_count) = (0.0, 0usize);
    for t in 0..n {
        let yg = y[t] * grad[t];
        if alpha[t] >= c {
            if y[t] < 0.0 {
                upper = upper.min(yg);
            } else {
                lower = lower.max(yg);
            }
        } else if alpha[t] <= 0.0 {
            if y[t] > 0.0 {
                upper = upper.min(yg);
            } else {
                lower = lower.max(yg);
            }
        } else {
            free_sum += yg;
            free_count += 1;
        }
    }
    let rho = if free_count > 0 {
        free_sum / free_count as f64
    } else {
        (upper + lower) / 2.0
    };

    let mut kkt_violation = 0.0f64;
    for t in 0..n {
        // y f(x_t) = (Qa)_t - y_t rho = grad_t + 1 - y_t rho
        let margin = grad[t] + 1.0 - y[t] * rho;
        let v = if alpha[t] <= 0.0 {
            (1.0 - margin).max(0.0)
        } else if alpha[t] >= c {
            (margin - 1.0).max(0.0)
        } else {
            (margin - 1.0).abs()
        };
        kkt_violation = kkt_violation.max(v);
    }
    let dual_objective = 0.5 * alpha.iter().zip(&grad).map(|(a, g)| a * (1.0 - g)).sum::<f64>();

    let mut support_vectors = Vec::new();
    let mut dual_coefficients = Vec::new();
    for (t, x) in xs.into_iter().enumerate() {
        if alpha[t] > 0.0 {
            support_vectors.push(x);
            dual_coefficients.push(alpha[t] * y[t]);
        }
    }
    Ok(SvmModel {
        support_vectors,
        dual_coefficients,
        bias: -rho,
        kernel_gamma: params.gamma,
        complexity_c: c,
        scaler,
        kkt_violation,
        dual_objective,
        updates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dataset(rows: &[[f64; 2]], labels: &[bool]) -> LabeledDataset {
        LabeledDataset::unnamed(rows.iter().map(|r| r.to_vec()).collect(), labels.to_vec()).unwrap()
    }

    fn xor() -> LabeledDataset {
        dataset(
            &[[0.0, 0.0], [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]],
            &[false, false, true, true],
        )
    }

    fn training_accuracy(model: &SvmModel, data: &LabeledDataset) -> f64 {
        let correct = data
            .rows()
            .iter()
            .zip(data.labels())
            .filter(|(r, &l)| model.predict(r).unwrap() == l)
            .count();
        correct as f64 / data.len() as f64
    }

    #[test]
    fn two_points_are_separated() {
        let data = dataset(&[[0.0, 0.0], [1.0, 1.0]], &[false, true]);
        let model = svm_train(&data, &SvmParams::default()).unwrap();
        assert_eq!(training_accuracy(&model, &data), 1.0);
        assert!(!model.support_vectors().is_empty());
    }

    #[test]
    fn xor_is_learned_with_wide_kernel() {
        let data = xor();
        let model = svm_train(&data, &SvmParams::new(100.0, 5.0)).unwrap();
        assert_eq!(training_accuracy(&model, &data), 1.0);
        assert!(model.kkt_violation() < 1e-3);
    }

    #[test]
    fn single_class_is_rejected() {
        let data = dataset(&[[0.0, 0.0], [1.0, 1.0]], &[true, true]);
        assert!(matches!(svm_train(&data, &SvmParams::default()), Err(Error::SingleClass)));
    }

    #[test]
    fn dimension_mismatch_on_predict() {
        let model = svm_train(&xor(), &SvmParams::new(100.0, 5.0)).unwrap();
        assert!(matches!(
            svm_predict(&model, &[0.0]),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn support_vector_predicts_its_own_label() {
        let data = dataset(
            &[[0.0, 0.0], [0.2, 0.1], [0.1, 0.3], [2.0, 2.0], [2.2, 1.8], [1.9, 2.3]],
            &[false, false, false, true, true, true],
        );
        let model = svm_train(&data, &SvmParams::new(10.0, 1.0)).unwrap();
        for (row, &label) in data.rows().iter().zip(data.labels()) {
            assert_eq!(model.predict(row).unwrap(), label);
        }
    }

    #[test]
    fn exact_tie_predicts_negative_class() {
        // symmetric pair: the midpoint is equidistant and the bias is zero
        let data = dataset(&[[0.0, 0.0], [1.0, 1.0]], &[false, true]);
        let model = svm_train(&data, &SvmParams::new(1.0, 0.5)).unwrap();
        assert!(model.bias().abs() < 1e-15);
        let f = model.decision_function(&[0.5, 0.5]).unwrap();
        assert!(f.abs() < 1e-15, "decision {f}");
        assert!(!model.predict(&[0.5, 0.5]).unwrap());
    }

    #[test]
    fn multipliers_respect_box() {
        let data = xor();
        let params = SvmParams::new(0.5, 0.1);
        let model = svm_train(&data, &params).unwrap();
        for &coef in model.dual_coefficients() {
            assert!(coef.abs() <= params.c + 1e-12);
        }
        assert!(model.kkt_violation() < 1e-3);
    }
}
