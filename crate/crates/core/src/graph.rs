//! Labelled simple graphs on vertex set `{1, …, n}` with `n ≤ 64`.
//!
//! Adjacency is stored as one `u64` row per vertex. The public API speaks in
//! 1-based labels; the `row`/`mask` helpers used inside the crate are 0-based.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

#[inline]
pub(crate) fn bit(i: usize) -> u64 {
    1u64 << i
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a mask, lowest first.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph from 1-based edge pairs. Duplicate edges collapse.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            g.add_edge_raw(u - 1, v - 1);
        }
        Ok(g)
    }

    pub(crate) fn from_rows(adj: Vec<u64>) -> Graph {
        debug_assert!(adj.len() <= MAX_VERTICES);
        Graph { n: adj.len(), adj }
    }

    pub(crate) fn add_edge_raw(&mut self, u: usize, v: usize) {
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub(crate) fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub(crate) fn row(&self, i: usize) -> u64 {
        self.adj[i]
    }

    pub(crate) fn vertex_mask(&self) -> u64 {
        full_mask(self.n)
    }

    /// Adjacency test on 1-based labels; out-of-range labels are never adjacent.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && v >= 1 && u <= self.n && v <= self.n && self.adj[u - 1] & bit(v - 1) != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(|r| r.count_ones() as usize).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges as 1-based pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in bits(self.adj[u] & !full_mask(u + 1)) {
                out.push((u + 1, v + 1));
            }
        }
        out
    }

    pub fn isolated_count(&self) -> usize {
        self.adj.iter().filter(|&&r| r == 0).count()
    }

    /// Removes vertex `v` and relabels the rest order-preservingly.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        if v == 0 || v > self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(self.delete_vertex_raw(v - 1))
    }

    pub(crate) fn delete_vertex_raw(&self, v: usize) -> Graph {
        let adj = (0..self.n)
            .filter(|&u| u != v)
            .map(|u| squeeze(self.adj[u], v))
            .collect();
        Graph::from_rows(adj)
    }

    /// Removes edge `u-v`; the vertex set is unchanged.
    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        let mut g = self.clone();
        g.adj[u - 1] &= !bit(v - 1);
        g.adj[v - 1] &= !bit(u - 1);
        Ok(g)
    }

    /// Merges the endpoints of edge `u-v` into the smaller label. Loops and
    /// parallel edges are dropped and the result is relabelled to `1..n-1`.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        let (keep, gone) = if u < v {
            (u - 1, v - 1)
        } else {
            (v - 1, u - 1)
        };
        let mut rows = self.adj.clone();
        let merged = (rows[keep] | rows[gone]) & !bit(keep) & !bit(gone);
        for w in bits(rows[gone]) {
            rows[w] &= !bit(gone);
            if w != keep {
                rows[w] |= bit(keep);
            }
        }
        rows[keep] = merged;
        let g = Graph::from_rows(rows);
        Ok(g.delete_vertex_raw(gone))
    }

    /// Vertices of the connected component containing 0-based vertex `v`.
    pub(crate) fn component_mask(&self, v: usize) -> u64 {
        reach(&self.adj, v, self.vertex_mask())
    }

    /// Component vertex masks, ordered by smallest vertex.
    pub(crate) fn component_masks(&self) -> Vec<u64> {
        let mut left = self.vertex_mask();
        let mut out = Vec::new();
        while left != 0 {
            let v = left.trailing_zeros() as usize;
            let c = self.component_mask(v);
            out.push(c);
            left &= !c;
        }
        out
    }

    /// Induced subgraph on a 0-based vertex mask, relabelled in increasing order.
    pub(crate) fn induced(&self, mask: u64) -> Graph {
        let keep: Vec<usize> = bits(mask).collect();
        let adj = keep
            .iter()
            .map(|&u| {
                let mut row = 0u64;
                for (j, &w) in keep.iter().enumerate() {
                    if self.adj[u] & bit(w) != 0 {
                        row |= bit(j);
                    }
                }
                row
            })
            .collect();
        Graph::from_rows(adj)
    }

    /// Connected components as induced graphs, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Graph> {
        self.component_masks()
            .into_iter()
            .map(|m| self.induced(m))
            .collect()
    }

    pub fn component_count(&self) -> usize {
        self.component_masks().len()
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.component_mask(0) == self.vertex_mask()
    }

    pub fn is_acyclic(&self) -> bool {
        self.edge_count() + self.component_count() == self.n
    }

    /// Connected, at least 3 vertices and no cutvertex. `K_1` and `K_2` do not qualify.
    pub fn is_two_connected(&self) -> bool {
        if self.n < 3 || !self.is_connected() {
            return false;
        }
        let all = self.vertex_mask();
        (0..self.n).all(|v| {
            let rest = all & !bit(v);
            let start = rest.trailing_zeros() as usize;
            reach(&self.adj, start, rest) == rest
        })
    }

    /// Vertex-disjoint union; `other` is relabelled by offset `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|r| r << self.n));
        Ok(Graph::from_rows(adj))
    }

    /// `copies` disjoint copies of `self`.
    pub fn repeat(&self, copies: usize) -> Result<Graph> {
        let mut g = Graph::empty(0)?;
        for _ in 0..copies {
            g = g.disjoint_union(self)?;
        }
        Ok(g)
    }

    /// The graph with isolated vertices removed, labels compacted in order.
    pub fn strip_isolated(&self) -> Graph {
        let mask = self
            .adj
            .iter()
            .enumerate()
            .filter(|(_, r)| **r != 0)
            .fold(0u64, |m, (i, _)| m | bit(i));
        self.induced(mask)
    }

    /// Relabels vertex `i` (1-based) to `perm[i-1]` (1-based).
    pub fn permute(&self, perm: &[usize]) -> Result<Graph> {
        check_permutation(perm, self.n)?;
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            for v in bits(self.adj[u]) {
                adj[perm[u] - 1] |= bit(perm[v] - 1);
            }
        }
        Ok(Graph::from_rows(adj))
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::NotAPermutation(n));
    }
    let mut seen = 0u64;
    for &p in perm {
        if p == 0 || p > n || seen & bit(p - 1) != 0 {
            return Err(Error::NotAPermutation(n));
        }
        seen |= bit(p - 1);
    }
    Ok(())
}

/// Drops bit `v` from `row`, shifting higher bits down by one.
#[inline]
fn squeeze(row: u64, v: usize) -> u64 {
    let low = row & full_mask(v);
    let high = if v + 1 >= 64 { 0 } else { row >> (v + 1) };
    low | (high << v)
}

/// Vertices reachable from `start` inside `within`.
pub(crate) fn reach(adj: &[u64], start: usize, within: u64) -> u64 {
    let mut seen = bit(start) & within;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u64;
        for v in bits(frontier) {
            next |= adj[v];
        }
        next &= within & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, {:?})", self.n, self.edges())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "edges({};", self.n)?;
        for (i, (u, v)) in self.edges().into_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, ")")
    }
}
