//! The 60-dimensional reply-graph feature vector.
//!
//! | index  | name                 |
//! |--------|----------------------|
//! | 0      | `avgdeg`             |
//! | 1      | `assort`             |
//! | 2      | `dia`                |
//! | 3      | `rad`                |
//! | 4      | `clustering`         |
//! | 5      | `betcent`            |
//! | 6      | `in_alpha_fit`       |
//! | 7      | `in_likelihood_fit`  |
//! | 8      | `out_alpha_fit`      |
//! | 9      | `out_likelihood_fit` |
//! | 10..60 | `spec0`..`spec49`    |

mod powerlaw;
mod spectral;
mod topology;

pub use powerlaw::{
    discrete_approximation_alpha, powerlaw_mle, truncated_neg_log_likelihood, PowerLawFit, ALPHA_MAX, ALPHA_MIN,
};
pub use spectral::{laplacian_spectrum, laplacian_spectrum_prefix, NEGATIVE_TOLERANCE};
pub use topology::{
    assortativity, average_betweenness, average_clustering, average_degree, betweenness_centrality,
    diameter_and_radius, local_clustering,
};

use std::ops::Index;

use crate::error::{Error, Result};
use crate::graph::DirectedMultigraph;

pub const TOPOLOGICAL_FEATURES: usize = 10;
pub const SPECTRAL_FEATURES: usize = 50;
pub const FEATURE_COUNT: usize = TOPOLOGICAL_FEATURES + SPECTRAL_FEATURES;

pub const TOPOLOGICAL_NAMES: [&str; TOPOLOGICAL_FEATURES] = [
    "avgdeg",
    "assort",
    "dia",
    "rad",
    "clustering",
    "betcent",
    "in_alpha_fit",
    "in_likelihood_fit",
    "out_alpha_fit",
    "out_likelihood_fit",
];

pub const AVGDEG: usize = 0;
pub const ASSORT: usize = 1;
pub const DIA: usize = 2;
pub const RAD: usize = 3;
pub const CLUSTERING: usize = 4;
pub const BETCENT: usize = 5;
pub const IN_ALPHA_FIT: usize = 6;
pub const IN_LIKELIHOOD_FIT: usize = 7;
pub const OUT_ALPHA_FIT: usize = 8;
pub const OUT_LIKELIHOOD_FIT: usize = 9;

/// Column names in canonical order.
pub fn feature_names() -> Vec<String> {
    TOPOLOGICAL_NAMES
        .iter()
        .map(|s| s.to_string())
        .chain((0..SPECTRAL_FEATURES).map(|i| format!("spec{i}")))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeatureVector([f64; FEATURE_COUNT]);

impl FeatureVector {
    pub fn from_values(values: &[f64]) -> Result<Self> {
        let array: [f64; FEATURE_COUNT] = values.try_into().map_err(|_| Error::DimensionMismatch {
            expected: FEATURE_COUNT,
            got: values.len(),
        })?;
        if let Some(i) = array.iter().position(|x| !x.is_finite()) {
            return Err(Error::FeatureInvariant(format!("feature {i} is not finite")));
        }
        Ok(FeatureVector(array))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn spectrum(&self) -> &[f64] {
        &self.0[TOPOLOGICAL_FEATURES..]
    }
}

impl Index<usize> for FeatureVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Side quantities needed to audit a feature vector.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureDiagnostics {
    pub component_count: usize,
    /// Eigenvalues of the full spectrum at or below `NEGATIVE_TOLERANCE`.
    pub zero_eigenvalues: usize,
    pub spectrum_trace: f64,
    /// Sum of degrees in the simple projection (equals the Laplacian trace).
    pub projection_degree_sum: usize,
    pub min_eigenvalue: f64,
    pub in_fit: PowerLawFit,
    pub out_fit: PowerLawFit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extraction {
    pub features: FeatureVector,
    pub diagnostics: FeatureDiagnostics,
}

impl Extraction {
    /// Range, eccentricity and spectral identities every vector must satisfy.
    /// Returns one message per violation.
    pub fn violations(&self) -> Vec<String> {
        let f = &self.features;
        let d = &self.diagnostics;
        let mut out = Vec::new();
        if !(-1.0..=1.0).contains(&f[ASSORT]) {
            out.push(format!("assort {} outside [-1, 1]", f[ASSORT]));
        }
        if !(0.0..=1.0).contains(&f[CLUSTERING]) {
            out.push(format!("clustering {} outside [0, 1]", f[CLUSTERING]));
        }
        if !(0.0..=1.0).contains(&f[BETCENT]) {
            out.push(format!("betcent {} outside [0, 1]", f[BETCENT]));
        }
        let (dia, rad) = (f[DIA], f[RAD]);
        if !(rad <= dia && dia <= 2.0 * rad) && !(dia == 0.0 && rad == 0.0) {
            out.push(format!("eccentricity bounds violated: dia {dia}, rad {rad}"));
        }
        if d.min_eigenvalue < 0.0 {
            out.push(format!("negative eigenvalue {}", d.min_eigenvalue));
        }
        let trace_tol = 1e-9 * (d.projection_degree_sum as f64).max(1.0);
        if (d.spectrum_trace - d.projection_degree_sum as f64).abs() > trace_tol {
            out.push(format!(
                "trace {} != degree sum {}",
                d.spectrum_trace, d.projection_degree_sum
            ));
        }
        if d.zero_eigenvalues != d.component_count {
            out.push(format!(
                "{} zero eigenvalues for {} components",
                d.zero_eigenvalues, d.component_count
            ));
        }
        out
    }

    pub fn check(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::FeatureInvariant(v.join("; ")))
        }
    }
}

/// Feature vector plus audit quantities.
pub fn extract_with_diagnostics(g: &DirectedMultigraph) -> Result<Extraction> {
    let n = g.node_count();
    if n < SPECTRAL_FEATURES {
        return Err(Error::GraphTooSmall {
            node_count: n,
            requested: SPECTRAL_FEATURES,
        });
    }
    let ug = g.undirected_projection();
    let (indeg, outdeg) = g.degree_sequences();
    let support_max = n - 1;
    let in_fit = powerlaw_mle(&indeg, support_max)?;
    let out_fit = powerlaw_mle(&outdeg, support_max)?;
    let (dia, rad) = diameter_and_radius(&ug)?;
    let spectrum = laplacian_spectrum(&ug)?;

    let mut values = Vec::with_capacity(FEATURE_COUNT);
    values.extend([
        average_degree(g),
        assortativity(&ug),
        dia as f64,
        rad as f64,
        average_clustering(&ug),
        average_betweenness(&ug),
        in_fit.alpha_hat,
        in_fit.neg_log_likelihood,
        out_fit.alpha_hat,
        out_fit.neg_log_likelihood,
    ]);
    values.extend_from_slice(&spectrum[..SPECTRAL_FEATURES]);

    let diagnostics = FeatureDiagnostics {
        component_count: ug.connected_components().len(),
        zero_eigenvalues: spectrum.iter().filter(|&&x| x <= NEGATIVE_TOLERANCE).count(),
        spectrum_trace: spectrum.iter().sum(),
        projection_degree_sum: ug.degrees().iter().sum(),
        min_eigenvalue: spectrum.first().copied().unwrap_or(0.0),
        in_fit,
        out_fit,
    };
    Ok(Extraction {
        features: FeatureVector::from_values(&values)?,
        diagnostics,
    })
}

/// The feature vector of `g`; requires at least 50 nodes.
pub fn extract_features(g: &DirectedMultigraph) -> Result<FeatureVector> {
    Ok(extract_with_diagnostics(g)?.features)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;
    use crate::netgen::{generate, GenerationConfig};

    #[test]
    fn names_follow_canonical_order() {
        let names = feature_names();
        assert_eq!(names.len(), FEATURE_COUNT);
        assert_eq!(names[0], "avgdeg");
        assert_eq!(names[9], "out_likelihood_fit");
        assert_eq!(names[10], "spec0");
        assert_eq!(names[59], "spec49");
    }

    #[test]
    fn vector_has_sixty_entries_and_passes_audit() {
        let g = generate(&GenerationConfig::new(200, 2.0, 3).unwrap()).unwrap().graph;
        let ex = extract_with_diagnostics(&g).unwrap();
        assert_eq!(ex.features.as_slice().len(), 60);
        assert!(ex.violations().is_empty(), "{:?}", ex.violations());
    }

    #[test]
    fn rejects_graphs_below_fifty_nodes() {
        let g = DirectedMultigraph::from_pairs(49, &[(0, 1)]).unwrap();
        assert!(matches!(extract_features(&g), Err(Error::GraphTooSmall { .. })));
    }

    #[test]
    fn isomorphic_graphs_share_features() {
        let g = generate(&GenerationConfig::new(120, 2.0, 8).unwrap()).unwrap().graph;
        // reverse node ids and reverse edge order
        let n = g.node_count();
        let relabeled: Vec<Edge> = g
            .edges()
            .iter()
            .rev()
            .map(|e| Edge::new(n - 1 - e.src, n - 1 - e.dst))
            .collect();
        let h = DirectedMultigraph::new(n, relabeled).unwrap();
        let (a, b) = (extract_features(&g).unwrap(), extract_features(&h).unwrap());
        for i in 0..FEATURE_COUNT {
            assert!((a[i] - b[i]).abs() < 1e-9, "feature {i}: {} vs {}", a[i], b[i]);
        }
    }

    #[test]
    fn from_values_validates() {
        assert!(FeatureVector::from_values(&[0.0; 59]).is_err());
        let mut v = [0.0; 60];
        v[3] = f64::NAN;
        assert!(FeatureVector::from_values(&v).is_err());
    }
}
