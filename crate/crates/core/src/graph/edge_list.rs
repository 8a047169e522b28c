//! Edge-list text format.
//!
//! ```text
//! # nodes=4
//! 0	1
//! 2	3
//! ```
//!
//! The header is mandatory, edges follow in canonical order one per line
//! (`<src>\t<dst>`), parallel edges repeat, lines end in LF.

use std::fmt::Write as _;
use std::path::Path;

use super::{DirectedMultigraph, Edge};
use crate::atomic::write_atomic;
use crate::error::{Error, Result};

/// Serializes `g` in the edge-list format.
pub fn write_edge_list(g: &DirectedMultigraph) -> String {
    let mut out = String::with_capacity(16 + g.edge_count() * 10);
    writeln!(out, "# nodes={}", g.node_count()).unwrap();
    for e in g.edges() {
        writeln!(out, "{}\t{}", e.src, e.dst).unwrap();
    }
    out
}

pub fn write_edge_list_file(g: &DirectedMultigraph, path: &Path) -> Result<()> {
    write_atomic(path, write_edge_list(g).as_bytes())
}

pub fn parse_edge_list(text: &str, source_name: &str) -> Result<DirectedMultigraph> {
    let mut lines = text.split('\n').enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::parse(source_name, 1, "missing header"))?;
    let node_count: usize = header
        .strip_prefix("# nodes=")
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| Error::parse(source_name, 1, "expected `# nodes=<n>`"))?;

    let mut edges = Vec::new();
    for (i, line) in lines {
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split('\t');
        let parsed = match (fields.next(), fields.next(), fields.next()) {
            (Some(a), Some(b), None) => a.parse().ok().zip(b.parse().ok()),
            _ => None,
        };
        let (src, dst) =
            parsed.ok_or_else(|| Error::parse(source_name, i + 1, "expected `<src>\\t<dst>`"))?;
        edges.push(Edge::new(src, dst));
    }
    DirectedMultigraph::new(node_count, edges)
}

pub fn read_edge_list(path: &Path) -> Result<DirectedMultigraph> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::file(path, e))?;
    parse_edge_list(&text, &path.display().to_string())
}
