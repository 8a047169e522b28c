//! Power-law reply-graph generation.
//!
//! In- and out-degree sequences are drawn independently from a truncated
//! discrete power law, their stub totals are equalized, and the pair is
//! realized as a directed multigraph with the configuration model.

use std::fmt::Write as _;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::atomic::write_atomic;
use crate::error::{Error, Result};
use crate::graph::{DirectedMultigraph, Edge};
use crate::seed::{derive_seed, rng_for, SeedLabel};
use crate::seed_path;

/// Paired in/out degree sequences over the same `n` nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequencePair {
    pub in_seq: Vec<usize>,
    pub out_seq: Vec<usize>,
}

impl DegreeSequencePair {
    pub fn new(in_seq: Vec<usize>, out_seq: Vec<usize>) -> Result<Self> {
        if in_seq.len() != out_seq.len() {
            return Err(Error::InvalidParameter(format!(
                "in/out sequences differ in length ({} vs {})",
                in_seq.len(),
                out_seq.len()
            )));
        }
        Ok(DegreeSequencePair { in_seq, out_seq })
    }

    pub fn len(&self) -> usize {
        self.in_seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.in_seq.is_empty()
    }

    pub fn in_sum(&self) -> usize {
        self.in_seq.iter().sum()
    }

    pub fn out_sum(&self) -> usize {
        self.out_seq.iter().sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.in_sum() == self.out_sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenerationConfig {
    pub n: usize,
    pub alpha: f64,
    pub seed: u64,
}

impl GenerationConfig {
    pub fn new(n: usize, alpha: f64, seed: u64) -> Result<Self> {
        let config = GenerationConfig { n, alpha, seed };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidParameter(format!("n must be >= 2, got {}", self.n)));
        }
        if !(self.alpha > 1.0) || !self.alpha.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "alpha must be a finite value > 1, got {}",
                self.alpha
            )));
        }
        Ok(())
    }

    /// Largest sampled degree.
    pub fn k_max(&self) -> usize {
        self.n - 1
    }
}

/// Cumulative distribution of `P(k) ∝ k^(-alpha)` on `1..=k_max`.
fn truncated_powerlaw_cdf(alpha: f64, k_max: usize) -> Vec<f64> {
    let weights: Vec<f64> = (1..=k_max).map(|k| (k as f64).powf(-alpha)).collect();
    let total: f64 = weights.iter().sum();
    let mut acc = 0.0;
    let mut cdf: Vec<f64> = weights
        .iter()
        .map(|w| {
            acc += w;
            acc / total
        })
        .collect();
    *cdf.last_mut().unwrap() = 1.0;
    cdf
}

/// `n` i.i.d. draws from the discrete power law on `1..=k_max`, by inverse
/// CDF.
pub fn sample_powerlaw_degree_sequence(
    n: usize,
    alpha: f64,
    k_max: usize,
    seed: u64,
) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    if !(alpha > 1.0) || !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!("alpha must be > 1, got {alpha}")));
    }
    if k_max == 0 {
        return Err(Error::InvalidParameter("k_max must be >= 1".into()));
    }
    let cdf = truncated_powerlaw_cdf(alpha, k_max);
    let mut rng = rng_for(seed, &seed_path!["powerlaw"]);
    Ok((0..n)
        .map(|_| {
            let u: f64 = rng.gen();
            cdf.partition_point(|&c| c <= u).min(k_max - 1) + 1
        })
        .collect())
}

/// Raises the smaller stub total to match the larger one by +1 increments at
/// uniformly chosen positions. The larger sequence is never touched.
pub fn balance_sequences(pair: DegreeSequencePair, seed: u64) -> DegreeSequencePair {
    let (in_sum, out_sum) = (pair.in_sum(), pair.out_sum());
    if in_sum == out_sum || pair.is_empty() {
        return pair;
    }
    let mut rng = rng_for(seed, &seed_path!["balance"]);
    let DegreeSequencePair {
        mut in_seq,
        mut out_seq,
    } = pair;
    let (smaller, deficit) = if in_sum < out_sum {
        (&mut in_seq, out_sum - in_sum)
    } else {
        (&mut out_seq, in_sum - out_sum)
    };
    let n = smaller.len();
    for _ in 0..deficit {
        smaller[rng.gen_range(0..n)] += 1;
    }
    DegreeSequencePair { in_seq, out_seq }
}

/// Configuration-model realization of a degree sequence pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    pub graph: DirectedMultigraph,
    /// Self-loop pairings the swap repair could not resolve; these edges
    /// were dropped, so their endpoints are each one stub short.
    pub residual_self_loops_deleted: usize,
}

/// Pairs out-stubs with a uniformly permuted list of in-stubs.
///
/// Self-loop pairings are repaired by swapping in-stubs with uniformly chosen
/// other pairs (accepted only if neither result is a loop), with a shared
/// budget of 100 attempts per initial self-loop. Loops that survive are
/// deleted. Parallel edges are kept.
pub fn configuration_model(pair: &DegreeSequencePair, seed: u64) -> Result<Realization> {
    if !pair.is_balanced() {
        return Err(Error::InvalidParameter(format!(
            "unbalanced degree sequences: in sum {} != out sum {}",
            pair.in_sum(),
            pair.out_sum()
        )));
    }
    let n = pair.len();
    let expand = |seq: &[usize]| -> Vec<usize> {
        seq.iter()
            .enumerate()
            .flat_map(|(v, &d)| std::iter::repeat(v).take(d))
            .collect()
    };
    let out_stubs = expand(&pair.out_seq);
    let mut in_stubs = expand(&pair.in_seq);
    let mut rng = rng_for(seed, &seed_path!["cm"]);
    in_stubs.shuffle(&mut rng);

    let m = out_stubs.len();
    let is_loop = |i: usize, in_stubs: &[usize]| out_stubs[i] == in_stubs[i];
    let pending: Vec<usize> = (0..m).filter(|&i| is_loop(i, &in_stubs)).collect();
    let budget = 100 * pending.len();
    let mut attempts = 0;
    if m > 1 {
        'repair: for &i in &pending {
            // an earlier swap may already have fixed this one
            while is_loop(i, &in_stubs) {
                if attempts == budget {
                    break 'repair;
                }
                attempts += 1;
                let mut j = rng.gen_range(0..m - 1);
                if j >= i {
                    j += 1;
                }
                if out_stubs[i] != in_stubs[j] && out_stubs[j] != in_stubs[i] {
                    in_stubs.swap(i, j);
                }
            }
        }
    }

    let mut edges = Vec::with_capacity(m);
    let mut residual = 0;
    for (&src, &dst) in out_stubs.iter().zip(&in_stubs) {
        if src == dst {
            residual += 1;
        } else {
            edges.push(Edge::new(src, dst));
        }
    }
    if residual > 0 {
        log::debug!("configuration model deleted {residual} residual self-loops of {m} stubs");
    }
    Ok(Realization {
        graph: DirectedMultigraph::new(n, edges)?,
        residual_self_loops_deleted: residual,
    })
}

/// A generated reply-graph with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedGraph {
    pub config: GenerationConfig,
    /// Balanced sequences fed to the configuration model.
    pub sequences: DegreeSequencePair,
    pub graph: DirectedMultigraph,
    pub residual_self_loops_deleted: usize,
}

impl GeneratedGraph {
    /// Sidecar metadata as `key=value` lines.
    pub fn metadata(&self) -> String {
        let mut out = String::new();
        writeln!(out, "n={}", self.config.n).unwrap();
        writeln!(out, "alpha={}", self.config.alpha).unwrap();
        writeln!(out, "seed={}", self.config.seed).unwrap();
        writeln!(out, "residual_self_loops_deleted={}", self.residual_self_loops_deleted).unwrap();
        out
    }

    pub fn write_metadata_file(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.metadata().as_bytes())
    }
}

/// Samples both sequences, balances them and realizes the graph.
pub fn generate(config: &GenerationConfig) -> Result<GeneratedGraph> {
    config.validate()?;
    let sub = |name: &str| derive_seed(config.seed, &[SeedLabel::from(name)]);
    let in_seq = sample_powerlaw_degree_sequence(config.n, config.alpha, config.k_max(), sub("in"))?;
    let out_seq = sample_powerlaw_degree_sequence(config.n, config.alpha, config.k_max(), sub("out"))?;
    let sequences = balance_sequences(DegreeSequencePair::new(in_seq, out_seq)?, sub("balance"));
    let realization = configuration_model(&sequences, sub("cm"))?;
    Ok(GeneratedGraph {
        config: config.clone(),
        sequences,
        graph: realization.graph,
        residual_self_loops_deleted: realization.residual_self_loops_deleted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{degree_sequences, write_edge_list};
    use proptest::prelude::*;
    use statrs::distribution::{ChiSquared, ContinuousCDF};

    /// Truncated power-law pmf computed directly, independent of the sampler's CDF.
    fn oracle_pmf(alpha: f64, k_max: usize) -> Vec<f64> {
        let z: f64 = (1..=k_max).map(|k| 1.0 / (k as f64).powf(alpha)).sum();
        (1..=k_max).map(|k| 1.0 / (k as f64).powf(alpha) / z).collect()
    }

    #[test]
    fn single_draw_in_support() {
        for seed in 0..50 {
            let s = sample_powerlaw_degree_sequence(1, 2.5, 7, seed).unwrap();
            assert_eq!(s.len(), 1);
            assert!((1..=7).contains(&s[0]));
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(sample_powerlaw_degree_sequence(0, 2.0, 10, 0).is_err());
        assert!(sample_powerlaw_degree_sequence(10, 1.0, 10, 0).is_err());
        assert!(sample_powerlaw_degree_sequence(10, 2.0, 0, 0).is_err());
        assert!(GenerationConfig::new(1, 2.0, 0).is_err());
        assert!(GenerationConfig::new(10, 0.5, 0).is_err());
    }

    #[test]
    fn steep_law_mass_at_one() {
        let n = 10_000;
        let k_max = n - 1;
        let p1 = oracle_pmf(10.0, k_max)[0];
        let s = sample_powerlaw_degree_sequence(n, 10.0, k_max, 11).unwrap();
        let frac = s.iter().filter(|&&k| k == 1).count() as f64 / n as f64;
        let se = (p1 * (1.0 - p1) / n as f64).sqrt();
        assert!((frac - p1).abs() <= 3.0 * se, "frac {frac} vs p1 {p1} (se {se})");
    }

    #[test]
    fn chi_square_goodness_of_fit() {
        let n = 10_000;
        let k_max = n - 1;
        let pmf = oracle_pmf(2.0, k_max);
        let s = sample_powerlaw_degree_sequence(n, 2.0, k_max, 3).unwrap();
        let mut counts = vec![0usize; k_max + 1];
        for k in s {
            counts[k] += 1;
        }
        // single-k bins while the expectation is >= 5, then one pooled tail
        let mut stat = 0.0;
        let mut bins = 0;
        let mut k = 1;
        while k <= k_max && pmf[k - 1] * n as f64 >= 5.0 {
            let e = pmf[k - 1] * n as f64;
            stat += (counts[k] as f64 - e).powi(2) / e;
            bins += 1;
            k += 1;
        }
        let tail_e: f64 = pmf[k - 1..].iter().sum::<f64>() * n as f64;
        let tail_o: usize = counts[k..].iter().sum();
        stat += (tail_o as f64 - tail_e).powi(2) / tail_e;
        bins += 1;
        let critical = ChiSquared::new((bins - 1) as f64).unwrap().inverse_cdf(0.99);
        assert!(stat < critical, "chi2 {stat} >= {critical} with {bins} bins");
    }

    #[test]
    fn balance_raises_smaller_side() {
        let pair = DegreeSequencePair::new(vec![1, 2, 3], vec![1, 1, 1]).unwrap();
        let out = balance_sequences(pair, 5);
        assert_eq!(out.in_seq, vec![1, 2, 3]);
        assert_eq!(out.out_sum(), 6);
        assert!(out.out_seq.iter().all(|&d| d >= 1));
    }

    #[test]
    fn balance_is_identity_when_balanced() {
        let pair = DegreeSequencePair::new(vec![2, 2], vec![3, 1]).unwrap();
        assert_eq!(balance_sequences(pair.clone(), 9), pair);
    }

    #[test]
    fn cm_single_forced_edge() {
        let pair = DegreeSequencePair::new(vec![1, 0], vec![0, 1]).unwrap();
        let r = configuration_model(&pair, 0).unwrap();
        assert_eq!(r.graph.edges(), &[Edge::new(1, 0)]);
        assert_eq!(r.residual_self_loops_deleted, 0);
    }

    #[test]
    fn cm_unfixable_self_loop_is_deleted() {
        let pair = DegreeSequencePair::new(vec![1], vec![1]).unwrap();
        let r = configuration_model(&pair, 0).unwrap();
        assert_eq!(r.graph.edge_count(), 0);
        assert_eq!(r.residual_self_loops_deleted, 1);

        // both stubs belong to node 0: every swap recreates the loop
        let pair = DegreeSequencePair::new(vec![2, 0], vec![2, 0]).unwrap();
        let r = configuration_model(&pair, 0).unwrap();
        assert_eq!(r.graph.edge_count(), 0);
        assert_eq!(r.residual_self_loops_deleted, 2);
    }

    #[test]
    fn cm_rejects_unbalanced() {
        let pair = DegreeSequencePair::new(vec![1, 1], vec![1, 0]).unwrap();
        assert!(configuration_model(&pair, 0).is_err());
    }

    #[test]
    fn cm_preserves_degrees_on_random_inputs() {
        let mut exact = 0;
        for seed in 0..50u64 {
            let n = 200;
            let a = sample_powerlaw_degree_sequence(n, 2.0, n - 1, seed).unwrap();
            let b = sample_powerlaw_degree_sequence(n, 2.0, n - 1, seed + 1000).unwrap();
            let pair = balance_sequences(DegreeSequencePair::new(a, b).unwrap(), seed);
            let r = configuration_model(&pair, seed).unwrap();
            assert!(r.graph.edges().iter().all(|e| e.src != e.dst));
            assert_eq!(r.graph.edge_count() + r.residual_self_loops_deleted, pair.out_sum());
            if r.residual_self_loops_deleted == 0 {
                // recount from the emitted edges
                let mut indeg = vec![0; n];
                let mut outdeg = vec![0; n];
                for e in r.graph.edges() {
                    indeg[e.dst] += 1;
                    outdeg[e.src] += 1;
                }
                assert_eq!(indeg, pair.in_seq);
                assert_eq!(outdeg, pair.out_seq);
                exact += 1;
            }
        }
        assert!(exact > 40, "only {exact}/50 realizations were exact");
    }

    #[test]
    fn generation_is_deterministic() {
        let config = GenerationConfig::new(300, 2.0, 77).unwrap();
        let a = generate(&config).unwrap();
        let b = generate(&config).unwrap();
        assert_eq!(write_edge_list(&a.graph), write_edge_list(&b.graph));
        let c = generate(&GenerationConfig::new(300, 2.0, 78).unwrap()).unwrap();
        assert_ne!(a.graph, c.graph);
    }

    #[test]
    fn metadata_lines() {
        let g = generate(&GenerationConfig::new(10, 2.0, 5).unwrap()).unwrap();
        let meta = g.metadata();
        let lines: Vec<&str> = meta.lines().collect();
        assert_eq!(lines[0], "n=10");
        assert_eq!(lines[1], "alpha=2");
        assert_eq!(lines[2], "seed=5");
        assert!(lines[3].starts_with("residual_self_loops_deleted="));
    }

    proptest! {
        #[test]
        fn balance_preserves_larger_side(
            a in prop::collection::vec(0usize..20, 1..30),
            extra in prop::collection::vec(0usize..20, 30),
            seed in any::<u64>(),
        ) {
            let b: Vec<usize> = extra[..a.len()].to_vec();
            let pair = DegreeSequencePair::new(a.clone(), b.clone()).unwrap();
            let out = balance_sequences(pair, seed);
            prop_assert!(out.is_balanced());
            if a.iter().sum::<usize>() >= b.iter().sum::<usize>() {
                prop_assert_eq!(&out.in_seq, &a);
            } else {
                prop_assert_eq!(&out.out_seq, &b);
            }
            for (x, y) in out.in_seq.iter().zip(&a).chain(out.out_seq.iter().zip(&b)) {
                prop_assert!(x >= y);
            }
        }

        #[test]
        fn cm_never_emits_self_loops(
            degs in prop::collection::vec((0usize..6, 0usize..6), 1..40),
            seed in any::<u64>(),
        ) {
            let (a, b): (Vec<_>, Vec<_>) = degs.into_iter().unzip();
            let pair = balance_sequences(DegreeSequencePair::new(a, b).unwrap(), seed);
            let r = configuration_model(&pair, seed).unwrap();
            prop_assert!(r.graph.edges().iter().all(|e| e.src != e.dst));
            prop_assert_eq!(r.graph.edge_count() + r.residual_self_loops_deleted, pair.out_sum());
            let (indeg, outdeg) = degree_sequences(&r.graph);
            for v in 0..pair.len() {
                prop_assert!(indeg[v] <= pair.in_seq[v] && outdeg[v] <= pair.out_seq[v]);
            }
        }
    }
}
