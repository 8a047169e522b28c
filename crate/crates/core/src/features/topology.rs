//! Topological summaries of a reply-graph.
//!
//! Everything except [`average_degree`] runs on the undirected simple
//! projection.

use std::collections::VecDeque;

use crate::error::Result;
use crate::graph::{largest_connected_component, DirectedMultigraph, UndirectedSimpleGraph};

/// `2|E| / |V|` counting parallel edges; 0 for a graph without nodes.
pub fn average_degree(g: &DirectedMultigraph) -> f64 {
    if g.node_count() == 0 {
        return 0.0;
    }
    2.0 * g.edge_count() as f64 / g.node_count() as f64
}

/// Degree assortativity: Pearson correlation of endpoint degrees over every
/// edge taken in both orientations.
///
/// Returns 0.0 with fewer than two edges or when endpoint degrees have no
/// variance.
pub fn assortativity(ug: &UndirectedSimpleGraph) -> f64 {
    let m = ug.edge_count();
    if m < 2 {
        return 0.0;
    }
    let deg = ug.degrees();
    // Both orientations make the two marginals identical, so one mean and
    // one variance serve both sides.
    let (mut sum, mut sum_sq, mut cross) = (0.0f64, 0.0f64, 0.0f64);
    for (a, b) in ug.edges() {
        let (da, db) = (deg[a] as f64, deg[b] as f64);
        sum += da + db;
        sum_sq += da * da + db * db;
        cross += 2.0 * da * db;
    }
    let count = 2.0 * m as f64;
    let mean = sum / count;
    let var = sum_sq / count - mean * mean;
    if var <= 1e-12 * mean.max(1.0).powi(2) {
        return 0.0;
    }
    let cov = cross / count - mean * mean;
    (cov / var).clamp(-1.0, 1.0)
}

/// Largest and smallest eccentricity within the largest connected component.
///
/// A single-node component yields `(0, 0)`; an empty graph is an error.
pub fn diameter_and_radius(ug: &UndirectedSimpleGraph) -> Result<(usize, usize)> {
    let lcc = largest_connected_component(ug)?;
    let n = lcc.node_count();
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    let (mut diameter, mut radius) = (0, usize::MAX);
    for source in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[source] = 0;
        queue.push_back(source);
        let mut ecc = 0;
        while let Some(v) = queue.pop_front() {
            ecc = dist[v];
            for &w in lcc.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        diameter = diameter.max(ecc);
        radius = radius.min(ecc);
    }
    Ok((diameter, radius))
}

/// Local clustering coefficient of every node; 0 below degree two.
pub fn local_clustering(ug: &UndirectedSimpleGraph) -> Vec<f64> {
    let n = ug.node_count();
    let mut mark = vec![usize::MAX; n];
    (0..n)
        .map(|v| {
            let nbrs = ug.neighbors(v);
            let k = nbrs.len();
            if k < 2 {
                return 0.0;
            }
            for &u in nbrs {
                mark[u] = v;
            }
            // each neighbor-neighbor edge is seen from both ends
            let links: usize = nbrs
                .iter()
                .map(|&u| ug.neighbors(u).iter().filter(|&&w| mark[w] == v).count())
                .sum();
            links as f64 / (k * (k - 1)) as f64
        })
        .collect()
}

/// Mean local clustering coefficient over all nodes.
pub fn average_clustering(ug: &UndirectedSimpleGraph) -> f64 {
    if ug.node_count() == 0 {
        return 0.0;
    }
    local_clustering(ug).iter().sum::<f64>() / ug.node_count() as f64
}

/// Brandes betweenness per node, endpoints excluded, normalized by the
/// `(n-1)(n-2)/2` pairs that could route through a node. All zeros below
/// three nodes.
pub fn betweenness_centrality(ug: &UndirectedSimpleGraph) -> Vec<f64> {
    let n = ug.node_count();
    let mut centrality = vec![0.0f64; n];
    if n < 3 {
        return centrality;
    }
    let mut order = Vec::with_capacity(n);
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![usize::MAX; n];
    let mut delta = vec![0.0f64; n];
    let mut queue = VecDeque::with_capacity(n);

    for s in 0..n {
        order.clear();
        sigma.iter_mut().for_each(|x| *x = 0.0);
        dist.iter_mut().for_each(|x| *x = usize::MAX);
        delta.iter_mut().for_each(|x| *x = 0.0);
        sigma[s] = 1.0;
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in ug.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                }
            }
        }
        for &w in order.iter().rev() {
            for &v in ug.neighbors(w) {
                if dist[v] != usize::MAX && dist[v] + 1 == dist[w] {
                    delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
                }
            }
            if w != s {
                centrality[w] += delta[w];
            }
        }
    }
    // every unordered pair was counted from both ends
    let pairs = ((n - 1) * (n - 2)) as f64;
    centrality.iter_mut().for_each(|c| *c /= pairs);
    centrality
}

pub fn average_betweenness(ug: &UndirectedSimpleGraph) -> f64 {
    if ug.node_count() == 0 {
        return 0.0;
    }
    betweenness_centrality(ug).iter().sum::<f64>() / ug.node_count() as f64
}
