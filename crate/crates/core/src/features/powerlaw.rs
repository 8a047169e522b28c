//! Discrete power-law fit of a degree sequence with `x_min = 1`.
//!
//! The model is `P(k) = k^(-alpha) / H(alpha)` on `1..=K` with
//! `H(alpha) = sum_{k=1}^{K} k^(-alpha)`. The fitted exponent maximizes this
//! truncated likelihood exactly; the closed-form continuous approximation
//! `1 + n / sum ln(x / 0.5)` only brackets the search and stands in when the
//! sample sits entirely on `x_min`, where the likelihood has no interior
//! maximum.

use crate::error::{Error, Result};

/// Exponent search interval.
pub const ALPHA_MIN: f64 = 1.0 + 1e-6;
pub const ALPHA_MAX: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub alpha_hat: f64,
    /// Total negative log-likelihood of the positive samples at `alpha_hat`.
    pub neg_log_likelihood: f64,
    /// Positive samples used (zeros are discarded).
    pub n_used: usize,
}

/// Closed-form discrete approximation `1 + n / sum ln(x_i / 0.5)` over the
/// positive entries.
pub fn discrete_approximation_alpha(degrees: &[usize]) -> Result<f64> {
    let (n, log_sum) = positive_stats(degrees, |x| (x / 0.5).ln())?;
    Ok(1.0 + n as f64 / log_sum)
}

fn positive_stats(degrees: &[usize], f: impl Fn(f64) -> f64) -> Result<(usize, f64)> {
    let mut n = 0;
    let mut sum = 0.0;
    for &d in degrees.iter().filter(|&&d| d > 0) {
        n += 1;
        sum += f(d as f64);
    }
    if n == 0 {
        return Err(Error::DegenerateDegreeSequence);
    }
    Ok((n, sum))
}

/// `(ln H(alpha), E_alpha[ln k])` under the law truncated at `support_max`.
fn log_normalizer_and_mean_log(alpha: f64, support_max: usize) -> (f64, f64) {
    let mut h = 0.0;
    let mut weighted = 0.0;
    for k in 1..=support_max {
        let lk = (k as f64).ln();
        let w = (-alpha * lk).exp();
        h += w;
        weighted += w * lk;
    }
    (h.ln(), weighted / h)
}

/// Negative log-likelihood of a sample with `n` positive entries and
/// `log_sum = sum ln x_i`.
pub fn truncated_neg_log_likelihood(alpha: f64, n: usize, log_sum: f64, support_max: usize) -> f64 {
    let (log_h, _) = log_normalizer_and_mean_log(alpha, support_max);
    n as f64 * log_h + alpha * log_sum
}

/// Maximum-likelihood power-law fit with support `1..=support_max`.
///
/// `support_max` is raised to the largest observed degree if needed so every
/// sample has positive probability.
pub fn powerlaw_mle(degrees: &[usize], support_max: usize) -> Result<PowerLawFit> {
    let (n, log_sum) = positive_stats(degrees, f64::ln)?;
    let observed_max = degrees.iter().copied().max().unwrap_or(1);
    let support_max = support_max.max(observed_max).max(1);

    let alpha_hat = if log_sum == 0.0 || support_max == 1 {
        // every sample equals x_min
        discrete_approximation_alpha(degrees)?
    } else {
        // The score n·E_alpha[ln k] - log_sum is strictly decreasing in alpha,
        // so bisection on its sign finds the unique maximizer.
        let target = log_sum / n as f64;
        let score = |a: f64| log_normalizer_and_mean_log(a, support_max).1 - target;
        if score(ALPHA_MIN) <= 0.0 {
            ALPHA_MIN
        } else if score(ALPHA_MAX) >= 0.0 {
            ALPHA_MAX
        } else {
            let (mut lo, mut hi) = (ALPHA_MIN, ALPHA_MAX);
            // start from the closed form when it lands inside the bracket
            let guess = 1.0 + n as f64 / positive_stats(degrees, |x| (x / 0.5).ln())?.1;
            if guess > lo && guess < hi {
                if score(guess) > 0.0 {
                    lo = guess;
                } else {
                    hi = guess;
                }
            }
            while hi - lo > 1e-12 {
                let mid = 0.5 * (lo + hi);
                if score(mid) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        }
    };
    Ok(PowerLawFit {
        alpha_hat,
        neg_log_likelihood: truncated_neg_log_likelihood(alpha_hat, n, log_sum, support_max),
        n_used: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netgen::sample_powerlaw_degree_sequence;

    /// Maximizer of the truncated log-likelihood over a 1e-3 grid on [1.01, 6],
    /// evaluated term by term.
    fn grid_oracle(degrees: &[usize], support_max: usize) -> f64 {
        let xs: Vec<f64> = degrees.iter().filter(|&&d| d > 0).map(|&d| d as f64).collect();
        let log_sum: f64 = xs.iter().map(|x| x.ln()).sum();
        let mut best = (f64::NEG_INFINITY, 0.0);
        let mut i = 0;
        loop {
            let a = 1.01 + i as f64 * 1e-3;
            if a > 6.0 + 1e-12 {
                break;
            }
            let h: f64 = (1..=support_max).map(|k| (k as f64).powf(-a)).sum();
            let ll = -(xs.len() as f64) * h.ln() - a * log_sum;
            if ll > best.0 {
                best = (ll, a);
            }
            i += 1;
        }
        best.1
    }

    #[test]
    fn closed_form_values() {
        let all_ones = 1.0 + 1.0 / std::f64::consts::LN_2;
        for n in [1, 5, 100] {
            let a = discrete_approximation_alpha(&vec![1; n]).unwrap();
            assert!((a - all_ones).abs() < 1e-12);
        }
        assert!((all_ones - 2.4427).abs() < 1e-4);

        let a = discrete_approximation_alpha(&[1, 1, 2, 4]).unwrap();
        let want = 1.0 + 4.0 / (7.0 * std::f64::consts::LN_2);
        assert!((a - want).abs() < 1e-12);
        assert!((want - 1.8244).abs() < 1e-4);
    }

    #[test]
    fn all_ones_falls_back_to_closed_form() {
        let fit = powerlaw_mle(&[1, 1, 1, 1], 999).unwrap();
        assert!((fit.alpha_hat - (1.0 + 1.0 / std::f64::consts::LN_2)).abs() < 1e-12);
        assert_eq!(fit.n_used, 4);
    }

    #[test]
    fn zeros_are_discarded() {
        let a = powerlaw_mle(&[0, 1, 1], 10).unwrap();
        let b = powerlaw_mle(&[1, 1], 10).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.n_used, 2);
        assert_eq!(
            discrete_approximation_alpha(&[0, 1, 1]).unwrap(),
            discrete_approximation_alpha(&[1, 1]).unwrap()
        );
    }

    #[test]
    fn degenerate_sequences_error() {
        assert!(matches!(powerlaw_mle(&[0, 0], 10), Err(Error::DegenerateDegreeSequence)));
        assert!(matches!(powerlaw_mle(&[], 10), Err(Error::DegenerateDegreeSequence)));
    }

    #[test]
    fn small_sample_matches_grid() {
        let fit = powerlaw_mle(&[1, 1, 2, 4], 999).unwrap();
        let grid = grid_oracle(&[1, 1, 2, 4], 999);
        assert!((fit.alpha_hat - grid).abs() < 5e-3, "{} vs {grid}", fit.alpha_hat);
    }

    #[test]
    fn likelihood_is_maximal_at_fit() {
        let degrees = sample_powerlaw_degree_sequence(500, 2.0, 499, 8).unwrap();
        let fit = powerlaw_mle(&degrees, 499).unwrap();
        let log_sum: f64 = degrees.iter().map(|&d| (d as f64).ln()).sum();
        for da in [-0.05, -1e-3, 1e-3, 0.05] {
            let other = truncated_neg_log_likelihood(fit.alpha_hat + da, 500, log_sum, 499);
            assert!(other >= fit.neg_log_likelihood);
        }
    }

    #[test]
    fn recovers_generating_exponent() {
        let degrees = sample_powerlaw_degree_sequence(20_000, 2.0, 999, 1).unwrap();
        let fit = powerlaw_mle(&degrees, 999).unwrap();
        assert!((fit.alpha_hat - 2.0).abs() < 0.03, "alpha_hat {}", fit.alpha_hat);
    }

    #[test]
    fn random_sequences_match_grid_oracle() {
        for seed in 0..20u64 {
            let alpha = 1.6 + 0.1 * (seed % 10) as f64;
            let degrees = sample_powerlaw_degree_sequence(300, alpha, 299, seed).unwrap();
            let fit = powerlaw_mle(&degrees, 299).unwrap();
            let grid = grid_oracle(&degrees, 299);
            assert!((fit.alpha_hat - grid).abs() <= 5e-3, "seed {seed}: {} vs {grid}", fit.alpha_hat);
        }
    }
}
