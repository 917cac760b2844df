//! Slow reference implementations used to cross-check the fast paths.

use std::collections::HashSet;

use crate::canon::canonical_code;
use crate::error::Result;
use crate::graph::Graph;

/// Canonical codes of every minor of `g`, obtained by closing `{g}` under
/// single vertex deletions, edge deletions and edge contractions.
pub fn minor_closure(g: &Graph) -> Result<HashSet<Vec<u8>>> {
    let mut seen = HashSet::new();
    let mut stack = vec![g.clone()];
    seen.insert(canonical_code(g)?);
    while let Some(h) = stack.pop() {
        let mut next = Vec::new();
        for v in 1..=h.n() {
            next.push(h.delete_vertex(v)?);
        }
        for (u, v) in h.edges() {
            next.push(h.delete_edge(u, v)?);
            next.push(h.contract_edge(u, v)?);
        }
        for m in next {
            if seen.insert(canonical_code(&m)?) {
                stack.push(m);
            }
        }
    }
    Ok(seen)
}

/// `h ≤ g` decided through [`minor_closure`].
pub fn is_minor_by_closure(h: &Graph, g: &Graph) -> Result<bool> {
    if h.n() > g.n() || h.edge_count() > g.edge_count() {
        return Ok(false);
    }
    Ok(minor_closure(g)?.contains(&canonical_code(h)?))
}

/// All labelled graphs on `n` vertices, in edge-subset order.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    let mut pairs = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            pairs.push((u, v));
        }
    }
    assert!(pairs.len() < 32, "too many graphs to list");
    let mut out = Vec::with_capacity(1 << pairs.len());
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        out.push(Graph::new(n, &edges)?);
    }
    Ok(out)
}

/// One representative per isomorphism class on `n` vertices.
pub fn unlabelled_graphs(n: usize) -> Result<Vec<Graph>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in all_graphs(n)? {
        if seen.insert(canonical_code(&g)?) {
            out.push(g);
        }
    }
    Ok(out)
}
