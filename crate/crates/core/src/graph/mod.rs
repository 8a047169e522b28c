//! Reply-graph representation.
//!
//! A reply-graph is a directed multigraph over users `0..node_count`: edge
//! `(src, dst)` records one post by `src` shown in the timeline of `dst`.
//! Parallel edges are distinct posts and are kept individually. The edge list
//! is canonical; adjacency structures are derived views.
//!
//! Metrics that ignore direction and multiplicity run on the
//! [`UndirectedSimpleGraph`] projection.

mod edge_list;

pub use edge_list::{parse_edge_list, read_edge_list, write_edge_list, write_edge_list_file};

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Dense node identifier in `0..node_count`.
pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub src: NodeId,
    pub dst: NodeId,
}

impl Edge {
    pub fn new(src: NodeId, dst: NodeId) -> Self {
        Edge { src, dst }
    }
}

impl From<(NodeId, NodeId)> for Edge {
    fn from((src, dst): (NodeId, NodeId)) -> Self {
        Edge { src, dst }
    }
}

/// Directed multigraph without self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedMultigraph {
    node_count: usize,
    edges: Vec<Edge>,
}

impl DirectedMultigraph {
    /// Validates ids and rejects self-loops.
    pub fn new(node_count: usize, edges: Vec<Edge>) -> Result<Self> {
        for e in &edges {
            for id in [e.src, e.dst] {
                if id >= node_count {
                    return Err(Error::NodeOutOfRange { id, node_count });
                }
            }
            if e.src == e.dst {
                return Err(Error::SelfLoop(e.src));
            }
        }
        Ok(DirectedMultigraph { node_count, edges })
    }

    pub fn from_pairs(node_count: usize, pairs: &[(NodeId, NodeId)]) -> Result<Self> {
        Self::new(node_count, pairs.iter().copied().map(Edge::from).collect())
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Copy of the graph without the edges at `indices` (positions in
    /// [`edges`](Self::edges)). Remaining edges keep their relative order.
    pub fn without_edges(&self, indices: &[usize]) -> Result<Self> {
        let mut drop = vec![false; self.edges.len()];
        for &i in indices {
            if i >= drop.len() {
                return Err(Error::InvalidParameter(format!(
                    "edge index {i} out of range for {} edges",
                    drop.len()
                )));
            }
            drop[i] = true;
        }
        let edges = self
            .edges
            .iter()
            .zip(&drop)
            .filter(|(_, &d)| !d)
            .map(|(e, _)| *e)
            .collect();
        Ok(DirectedMultigraph {
            node_count: self.node_count,
            edges,
        })
    }

    /// Edge indices grouped by source node, each group in edge-list order.
    pub fn out_edge_indices(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.node_count];
        for (i, e) in self.edges.iter().enumerate() {
            out[e.src].push(i);
        }
        out
    }

    /// `(in, out)` degrees counting multiplicity.
    pub fn degree_sequences(&self) -> (Vec<usize>, Vec<usize>) {
        let mut indeg = vec![0; self.node_count];
        let mut outdeg = vec![0; self.node_count];
        for e in &self.edges {
            outdeg[e.src] += 1;
            indeg[e.dst] += 1;
        }
        (indeg, outdeg)
    }

    pub fn undirected_projection(&self) -> UndirectedSimpleGraph {
        UndirectedSimpleGraph::from_edges(
            self.node_count,
            self.edges.iter().map(|e| (e.src, e.dst)),
        )
    }
}

/// `(in, out)` degree sequences of `g`.
pub fn degree_sequences(g: &DirectedMultigraph) -> (Vec<usize>, Vec<usize>) {
    g.degree_sequences()
}

/// Collapses direction and multiplicity.
pub fn undirected_simple_projection(g: &DirectedMultigraph) -> UndirectedSimpleGraph {
    g.undirected_projection()
}

/// Simple undirected graph stored as sorted, deduplicated neighbor lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedSimpleGraph {
    adjacency: Vec<Vec<NodeId>>,
}

impl UndirectedSimpleGraph {
    /// Builds the simple graph spanned by `pairs`; self-pairs are ignored and
    /// repeated or reversed pairs collapse.
    ///
    /// # Panics
    ///
    /// Panics if a pair names a node outside `0..node_count`.
    pub fn from_edges<I>(node_count: usize, pairs: I) -> Self
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut adjacency = vec![Vec::new(); node_count];
        for (a, b) in pairs {
            assert!(a < node_count && b < node_count, "node id out of range");
            if a != b {
                adjacency[a].push(b);
                adjacency[b].push(a);
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        UndirectedSimpleGraph { adjacency }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Each undirected edge once, as `(a, b)` with `a < b`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }

    /// Connected components, each sorted ascending, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<NodeId>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut members = Vec::new();
            while let Some(v) = queue.pop_front() {
                members.push(v);
                for &w in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        components
    }

    /// Induced subgraph on `nodes` (ascending), relabeled `0..nodes.len()`
    /// in that order.
    pub fn induced_subgraph(&self, nodes: &[NodeId]) -> UndirectedSimpleGraph {
        let mut relabel = vec![usize::MAX; self.node_count()];
        for (new, &old) in nodes.iter().enumerate() {
            relabel[old] = new;
        }
        let adjacency = nodes
            .iter()
            .map(|&old| {
                let mut list: Vec<NodeId> = self.adjacency[old]
                    .iter()
                    .filter_map(|&w| (relabel[w] != usize::MAX).then_some(relabel[w]))
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        UndirectedSimpleGraph { adjacency }
    }

    /// BFS hop distances from `source`; `usize::MAX` marks unreachable nodes.
    pub fn bfs_distances(&self, source: NodeId) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.node_count()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// Induced subgraph on the largest connected component.
///
/// Ties between equally large components go to the one holding the smallest
/// node id. Node ids are relabeled contiguously in ascending original order.
pub fn largest_connected_component(ug: &UndirectedSimpleGraph) -> Result<UndirectedSimpleGraph> {
    if ug.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let components = ug.connected_components();
    // components are ordered by minimum id, so the first maximum wins ties
    let mut best = &components[0];
    for c in &components[1..] {
        if c.len() > best.len() {
            best = c;
        }
    }
    Ok(ug.induced_subgraph(best))
}
