//! Depth-first search spanning forests.

use crate::error::Result;
use crate::graph::{bit, check_permutation, Graph};

/// A DFS spanning forest. All vertex labels are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DfsForest {
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    roots: Vec<usize>,
}

impl DfsForest {
    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v - 1]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v - 1]
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    /// Largest depth of any vertex; 0 for the empty forest.
    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    pub fn is_ancestor(&self, anc: usize, mut v: usize) -> bool {
        while let Some(p) = self.parent(v) {
            if p == anc {
                return true;
            }
            v = p;
        }
        false
    }

    /// Every edge of `g` outside the forest joins a vertex to one of its ancestors.
    pub fn back_edge_property(&self, g: &Graph) -> bool {
        g.edges().into_iter().all(|(u, v)| {
            self.parent(u) == Some(v)
                || self.parent(v) == Some(u)
                || self.is_ancestor(u, v)
                || self.is_ancestor(v, u)
        })
    }
}

/// Runs DFS on `g`. `order` lists the vertices by visiting priority: roots are
/// taken in that order, and neighbours are explored in that order too.
pub fn dfs_forest(g: &Graph, order: &[usize]) -> Result<DfsForest> {
    let n = g.n();
    check_permutation(order, n)?;
    let mut rank = vec![0usize; n];
    for (r, &v) in order.iter().enumerate() {
        rank[v - 1] = r;
    }
    let mut parent = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut roots = Vec::new();
    let mut seen = 0u64;
    for &root in order {
        let r = root - 1;
        if seen & bit(r) != 0 {
            continue;
        }
        roots.push(root);
        seen |= bit(r);
        let mut stack = vec![r];
        while let Some(&top) = stack.last() {
            let next = crate::graph::bits(g.row(top) & !seen).min_by_key(|&w| rank[w]);
            match next {
                Some(w) => {
                    seen |= bit(w);
                    parent[w] = Some(top + 1);
                    depth[w] = depth[top] + 1;
                    stack.push(w);
                }
                None => {
                    stack.pop();
                }
            }
        }
    }
    Ok(DfsForest {
        parent,
        depth,
        roots,
    })
}

/// DFS with the natural order `1..=n`.
pub fn dfs_forest_natural(g: &Graph) -> DfsForest {
    let order: Vec<usize> = (1..=g.n()).collect();
    dfs_forest(g, &order).expect("natural order is a permutation")
}
