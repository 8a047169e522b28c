//! Edge censorship strategies.
//!
//! Both strategies delete exactly `floor(gamma * |E|)` edges and never touch
//! nodes. `Uniform` picks edges uniformly without replacement. `Icm` deletes
//! whole repost cascades: independent-cascade runs from the highest
//! out-degree users are accumulated until the budget is met.

use std::fmt;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use rand::Rng;

use crate::atomic::write_atomic;
use crate::error::{Error, Result};
use crate::graph::{DirectedMultigraph, NodeId};
use crate::seed::{rng_for, SimRng};
use crate::seed_path;

/// Runs attempted before an ICM budget is declared unreachable.
pub const MAX_ICM_RUNS: usize = 10_000;

pub const DEFAULT_ICM_P: f64 = 0.1;
pub const DEFAULT_ICM_SEED_FRACTION: f64 = 0.005;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    Uniform,
    Icm,
}

impl Strategy {
    pub const ALL: [Strategy; 2] = [Strategy::Uniform, Strategy::Icm];

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Uniform => "uniform",
            Strategy::Icm => "icm",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Strategy::Uniform),
            "icm" => Ok(Strategy::Icm),
            other => Err(Error::InvalidParameter(format!("unknown strategy `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CensorshipPlan {
    pub strategy: Strategy,
    pub gamma: f64,
    pub icm_transmission_p: f64,
    pub icm_seed_fraction: f64,
    pub rng_seed: u64,
}

impl CensorshipPlan {
    pub fn uniform(gamma: f64, rng_seed: u64) -> Self {
        CensorshipPlan {
            strategy: Strategy::Uniform,
            gamma,
            icm_transmission_p: DEFAULT_ICM_P,
            icm_seed_fraction: DEFAULT_ICM_SEED_FRACTION,
            rng_seed,
        }
    }

    pub fn icm(gamma: f64, rng_seed: u64) -> Self {
        CensorshipPlan {
            strategy: Strategy::Icm,
            ..Self::uniform(gamma, rng_seed)
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_gamma(self.gamma)?;
        if !(0.0..=1.0).contains(&self.icm_transmission_p) {
            return Err(Error::InvalidParameter(format!(
                "transmission probability must be in [0, 1], got {}",
                self.icm_transmission_p
            )));
        }
        if !(self.icm_seed_fraction > 0.0 && self.icm_seed_fraction <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "seed fraction must be in (0, 1], got {}",
                self.icm_seed_fraction
            )));
        }
        Ok(())
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("gamma must be in (0, 1], got {gamma}")))
    }
}

/// `floor(gamma * edge_count)`, robust to decimal gammas whose binary
/// product lands a hair below an integer (e.g. `0.29 * 100`).
pub fn edge_budget(gamma: f64, edge_count: usize) -> usize {
    let exact = gamma * edge_count as f64;
    let rounded = exact.round();
    if (exact - rounded).abs() <= 1e-9 * rounded.max(1.0) {
        rounded as usize
    } else {
        exact.floor() as usize
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CensorshipResult {
    pub censored_graph: DirectedMultigraph,
    /// Indices into the original edge list. Uniform removals are ascending;
    /// ICM removals are in cascade discovery order.
    pub removed_edges: Vec<usize>,
    /// ICM runs consumed (0 for uniform).
    pub runs_used: usize,
}

impl CensorshipResult {
    /// Removed-edge manifest: `<src>\t<dst>\t<edge_index>` per removed edge.
    pub fn manifest(&self, original: &DirectedMultigraph) -> String {
        let mut out = String::with_capacity(self.removed_edges.len() * 14);
        for &i in &self.removed_edges {
            let e = original.edges()[i];
            writeln!(out, "{}\t{}\t{}", e.src, e.dst, i).unwrap();
        }
        out
    }

    pub fn write_manifest_file(&self, original: &DirectedMultigraph, path: &Path) -> Result<()> {
        write_atomic(path, self.manifest(original).as_bytes())
    }
}

/// Parses a removed-edge manifest into `(src, dst, edge_index)` triples.
pub fn parse_manifest(text: &str, source_name: &str) -> Result<Vec<(NodeId, NodeId, usize)>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, line)| {
            let f: Vec<&str> = line.split('\t').collect();
            let parsed = (f.len() == 3)
                .then(|| Some((f[0].parse().ok()?, f[1].parse().ok()?, f[2].parse().ok()?)))
                .flatten();
            parsed.ok_or_else(|| {
                Error::parse(source_name, i + 1, "expected `<src>\\t<dst>\\t<edge_index>`")
            })
        })
        .collect()
}

/// Deletes `floor(gamma * |E|)` edges chosen uniformly without replacement.
pub fn censor_uniform(g: &DirectedMultigraph, gamma: f64, seed: u64) -> Result<CensorshipResult> {
    check_gamma(gamma)?;
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let budget = edge_budget(gamma, g.edge_count());
    let mut rng = rng_for(seed, &seed_path!["uniform"]);
    let mut removed = rand::seq::index::sample(&mut rng, g.edge_count(), budget).into_vec();
    removed.sort_unstable();
    Ok(CensorshipResult {
        censored_graph: g.without_edges(&removed)?,
        removed_edges: removed,
        runs_used: 0,
    })
}

/// The `max(1, round(fraction * n))` highest out-degree nodes; ties go to
/// the lower id.
pub fn select_icm_seeds(g: &DirectedMultigraph, fraction: f64) -> Vec<NodeId> {
    let n = g.node_count();
    if n == 0 {
        return Vec::new();
    }
    let k = ((fraction * n as f64).round() as usize).clamp(1, n);
    let (_, outdeg) = g.degree_sequences();
    let mut order: Vec<NodeId> = (0..n).collect();
    order.sort_by(|&a, &b| outdeg[b].cmp(&outdeg[a]).then(a.cmp(&b)));
    order.truncate(k);
    order
}

/// Reusable state for repeated cascades over one graph.
struct CascadeRunner<'g> {
    graph: &'g DirectedMultigraph,
    out_edges: Vec<Vec<usize>>,
    active: Vec<bool>,
    touched: Vec<NodeId>,
}

impl<'g> CascadeRunner<'g> {
    fn new(graph: &'g DirectedMultigraph) -> Self {
        CascadeRunner {
            graph,
            out_edges: graph.out_edge_indices(),
            active: vec![false; graph.node_count()],
            touched: Vec::new(),
        }
    }

    /// One synchronous-round cascade; calls `on_edge` for every successful
    /// transmission in discovery order.
    fn run(&mut self, seeds: &[NodeId], p: f64, rng: &mut SimRng, mut on_edge: impl FnMut(usize)) {
        for &v in &self.touched {
            self.active[v] = false;
        }
        self.touched.clear();

        let mut frontier = Vec::with_capacity(seeds.len());
        for &s in seeds {
            if !self.active[s] {
                self.active[s] = true;
                self.touched.push(s);
                frontier.push(s);
            }
        }
        let mut next = Vec::new();
        while !frontier.is_empty() {
            for &v in &frontier {
                for &ei in &self.out_edges[v] {
                    // one independent coin per parallel edge
                    if rng.gen::<f64>() < p {
                        on_edge(ei);
                        let w = self.graph.edges()[ei].dst;
                        if !self.active[w] {
                            self.active[w] = true;
                            self.touched.push(w);
                            next.push(w);
                        }
                    }
                }
            }
            std::mem::swap(&mut frontier, &mut next);
            next.clear();
        }
    }
}

/// One independent-cascade run from `seeds`; returns the indices of edges
/// that transmitted, in discovery order.
pub fn run_icm_cascade(g: &DirectedMultigraph, seeds: &[NodeId], p: f64, seed: u64) -> Result<Vec<usize>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "transmission probability must be in [0, 1], got {p}"
        )));
    }
    if seeds.is_empty() {
        return Err(Error::InvalidParameter("cascade needs at least one seed".into()));
    }
    if let Some(&bad) = seeds.iter().find(|&&s| s >= g.node_count()) {
        return Err(Error::NodeOutOfRange {
            id: bad,
            node_count: g.node_count(),
        });
    }
    let mut rng = rng_for(seed, &seed_path!["cascade"]);
    let mut runner = CascadeRunner::new(g);
    let mut edges = Vec::new();
    runner.run(seeds, p, &mut rng, |e| edges.push(e));
    Ok(edges)
}

/// Edges whose source is reachable from `seeds`; the most any cascade can
/// ever cover.
fn reachable_edge_count(g: &DirectedMultigraph, seeds: &[NodeId], out_edges: &[Vec<usize>]) -> usize {
    let mut seen = vec![false; g.node_count()];
    let mut stack: Vec<NodeId> = Vec::new();
    for &s in seeds {
        if !seen[s] {
            seen[s] = true;
            stack.push(s);
        }
    }
    let mut count = 0;
    while let Some(v) = stack.pop() {
        count += out_edges[v].len();
        for &ei in &out_edges[v] {
            let w = g.edges()[ei].dst;
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    count
}

/// Deletes the union of repeated cascades from the top out-degree seeds.
///
/// Runs share the seed set but draw fresh coins. Edges already in the union
/// may be traversed again without counting twice. The last run's new edges
/// are kept only up to the budget, earliest discovered first.
pub fn censor_icm(g: &DirectedMultigraph, plan: &CensorshipPlan) -> Result<CensorshipResult> {
    plan.validate()?;
    if plan.strategy != Strategy::Icm {
        return Err(Error::InvalidParameter("censor_icm requires the icm strategy".into()));
    }
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let budget = edge_budget(plan.gamma, g.edge_count());
    let seeds = select_icm_seeds(g, plan.icm_seed_fraction);
    let mut runner = CascadeRunner::new(g);

    // Budgets above the reachable edge count (or any budget with p = 0) can
    // never be met; the run limit would be exhausted with the same outcome.
    let reachable = reachable_edge_count(g, &seeds, &runner.out_edges);
    if budget > 0 && (plan.icm_transmission_p == 0.0 || reachable < budget) {
        return Err(Error::CascadeBudgetUnreachable {
            budget,
            reached: 0,
            runs: MAX_ICM_RUNS,
        });
    }

    let mut rng = rng_for(plan.rng_seed, &seed_path!["icm"]);
    let mut in_union = vec![false; g.edge_count()];
    let mut removed = Vec::with_capacity(budget);
    let mut runs = 0;
    while removed.len() < budget {
        if runs == MAX_ICM_RUNS {
            return Err(Error::CascadeBudgetUnreachable {
                budget,
                reached: removed.len(),
                runs,
            });
        }
        runs += 1;
        runner.run(&seeds, plan.icm_transmission_p, &mut rng, |ei| {
            if removed.len() < budget && !in_union[ei] {
                in_union[ei] = true;
                removed.push(ei);
            }
        });
    }
    Ok(CensorshipResult {
        censored_graph: g.without_edges(&removed)?,
        removed_edges: removed,
        runs_used: runs,
    })
}

/// Dispatches on `plan.strategy`.
pub fn censor(g: &DirectedMultigraph, plan: &CensorshipPlan) -> Result<CensorshipResult> {
    match plan.strategy {
        Strategy::Uniform => {
            plan.validate()?;
            censor_uniform(g, plan.gamma, plan.rng_seed)
        }
        Strategy::Icm => censor_icm(g, plan),
    }
}
