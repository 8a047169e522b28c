//! Combinatorial Laplacian spectrum `L = D - A` of the simple projection.
//!
//! The spectrum of a disconnected graph is the union of its components'
//! spectra, so each component is decomposed on its own. Isolated nodes and
//! single edges have closed forms; larger components go through a dense
//! symmetric eigenvalue solve.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::UndirectedSimpleGraph;

/// Eigenvalues below `-NEGATIVE_TOLERANCE` indicate a numerical failure;
/// anything between that and zero is clamped to zero.
pub const NEGATIVE_TOLERANCE: f64 = 1e-9;

/// Ascending spectrum of one connected component. Its smallest eigenvalue
/// is exactly zero; the solver's round-off there is replaced by 0.0, since
/// min-max scaling would otherwise blow it up into a noise feature.
fn component_spectrum(ug: &UndirectedSimpleGraph, members: &[usize]) -> Result<Vec<f64>> {
    let mut spectrum: Vec<f64> = match members.len() {
        1 => vec![0.0],
        2 => vec![0.0, 2.0],
        k => {
            let sub = ug.induced_subgraph(members);
            let mut lap = DMatrix::<f64>::zeros(k, k);
            for v in 0..k {
                lap[(v, v)] = sub.degree(v) as f64;
                for &w in sub.neighbors(v) {
                    lap[(v, w)] = -1.0;
                }
            }
            lap.symmetric_eigenvalues().iter().copied().collect()
        }
    };
    spectrum.sort_by(f64::total_cmp);
    if spectrum[0].abs() > NEGATIVE_TOLERANCE {
        return Err(Error::FeatureInvariant(format!(
            "component Laplacian has smallest eigenvalue {}",
            spectrum[0]
        )));
    }
    spectrum[0] = 0.0;
    Ok(spectrum)
}

/// Full Laplacian spectrum, ascending, clamped to be non-negative.
pub fn laplacian_spectrum(ug: &UndirectedSimpleGraph) -> Result<Vec<f64>> {
    let mut spectrum = Vec::with_capacity(ug.node_count());
    for members in ug.connected_components() {
        spectrum.extend(component_spectrum(ug, &members)?);
    }
    spectrum.sort_by(f64::total_cmp);
    if let Some(&min) = spectrum.first() {
        if min < -NEGATIVE_TOLERANCE {
            return Err(Error::FeatureInvariant(format!(
                "Laplacian eigenvalue {min} below -{NEGATIVE_TOLERANCE}"
            )));
        }
    }
    for x in &mut spectrum {
        *x = x.max(0.0);
    }
    Ok(spectrum)
}

/// The `count` smallest Laplacian eigenvalues, ascending.
pub fn laplacian_spectrum_prefix(ug: &UndirectedSimpleGraph, count: usize) -> Result<Vec<f64>> {
    if ug.node_count() < count {
        return Err(Error::GraphTooSmall {
            node_count: ug.node_count(),
            requested: count,
        });
    }
    let mut spectrum = laplacian_spectrum(ug)?;
    spectrum.truncate(count);
    Ok(spectrum)
}
