//! Minor containment and the structural family predicates.
//!
//! `H < G` is decided by backtracking over branch-set assignments. The
//! non-isolated vertices of `H` are placed one at a time (highest degree
//! first, then always the vertex with most already-placed neighbours); each
//! gets a connected set of unused `G`-vertices touching the branch sets of its
//! placed neighbours. Every isolated vertex of `H` needs one spare vertex of
//! `G`, which the size bound accounts for.

use crate::graph::{bit, bits, full_mask, Graph};

/// A witness for `H < G`: one branch set of `G`-vertices per vertex of `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorModel {
    /// `branch_sets[i]` realises vertex `i + 1` of `H`; labels are 1-based.
    pub branch_sets: Vec<Vec<usize>>,
}

impl MinorModel {
    /// Checks disjointness, connectivity and edge coverage against `h` and `g`.
    pub fn is_valid(&self, h: &Graph, g: &Graph) -> bool {
        if self.branch_sets.len() != h.n() {
            return false;
        }
        let mut masks = Vec::with_capacity(h.n());
        let mut used = 0u64;
        for set in &self.branch_sets {
            let mut m = 0u64;
            for &v in set {
                if v == 0 || v > g.n() {
                    return false;
                }
                m |= bit(v - 1);
            }
            if m == 0 || m & used != 0 {
                return false;
            }
            let start = m.trailing_zeros() as usize;
            if crate::graph::reach(g.rows(), start, m) != m {
                return false;
            }
            used |= m;
            masks.push(m);
        }
        h.edges().into_iter().all(|(a, b)| {
            let ma = masks[a - 1];
            let mb = masks[b - 1];
            bits(ma).any(|x| g.row(x) & mb != 0)
        })
    }
}

/// `H` preprocessed for repeated containment queries.
#[derive(Debug, Clone)]
pub struct Pattern {
    graph: Graph,
    order: Vec<usize>,
    back: Vec<Vec<usize>>,
    forward: Vec<bool>,
    isolated: Vec<usize>,
    edges: usize,
}

impl Pattern {
    pub fn new(h: &Graph) -> Pattern {
        let n = h.n();
        let mut isolated = Vec::new();
        let mut rest = 0u64;
        for v in 0..n {
            if h.row(v) == 0 {
                isolated.push(v);
            } else {
                rest |= bit(v);
            }
        }
        let mut order = Vec::new();
        let mut placed = 0u64;
        while rest != 0 {
            let next = bits(rest)
                .max_by_key(|&v| {
                    (
                        (h.row(v) & placed).count_ones(),
                        h.row(v).count_ones(),
                        std::cmp::Reverse(v),
                    )
                })
                .unwrap();
            order.push(next);
            placed |= bit(next);
            rest &= !bit(next);
        }
        let pos_of = |v: usize| order.iter().position(|&x| x == v).unwrap();
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| bits(h.row(v)).map(pos_of).filter(|&j| j < i).collect())
            .collect();
        let forward = order
            .iter()
            .enumerate()
            .map(|(i, &v)| bits(h.row(v)).map(pos_of).any(|j| j > i))
            .collect();
        Pattern {
            graph: h.clone(),
            order,
            back,
            forward,
            isolated,
            edges: h.edge_count(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Branch sets (0-based masks, indexed by `H`-vertex) of a model in `g`.
    pub(crate) fn find_masks(&self, g_rows: &[u64]) -> Option<Vec<u64>> {
        let n_g = g_rows.len();
        if self.graph.n() > n_g {
            return None;
        }
        if self.edges > 0 {
            let e_g = g_rows
                .iter()
                .map(|r| r.count_ones() as usize)
                .sum::<usize>()
                / 2;
            if self.edges > e_g {
                return None;
            }
        }
        let mut search = Search {
            pat: self,
            rows: g_rows,
            all: full_mask(n_g),
            branches: vec![0; self.order.len()],
            nbrs: vec![0; self.order.len()],
        };
        if !search.place(0, 0) {
            return None;
        }
        let mut masks = vec![0u64; self.graph.n()];
        let mut used = 0u64;
        for (i, &v) in self.order.iter().enumerate() {
            masks[v] = search.branches[i];
            used |= search.branches[i];
        }
        let mut spare = bits(search.all & !used);
        for &v in &self.isolated {
            masks[v] = bit(spare.next().expect("size bound reserves spares"));
        }
        Some(masks)
    }

    pub fn occurs_in(&self, g: &Graph) -> bool {
        self.find_masks(g.rows()).is_some()
    }

    pub(crate) fn occurs_in_rows(&self, rows: &[u64]) -> bool {
        self.find_masks(rows).is_some()
    }
}

struct Search<'a> {
    pat: &'a Pattern,
    rows: &'a [u64],
    all: u64,
    branches: Vec<u64>,
    nbrs: Vec<u64>,
}

impl Search<'_> {
    fn place(&mut self, pos: usize, used: u64) -> bool {
        let total = self.pat.order.len();
        if pos == total {
            return true;
        }
        let remaining_after = total - pos - 1 + self.pat.isolated.len();
        let free = self.all & !used;
        let avail = free.count_ones() as usize;
        if avail < remaining_after + 1 {
            return false;
        }
        let max_size = avail - remaining_after;
        // the branch set must touch the first placed neighbour's branch set
        let roots = match self.pat.back[pos].first() {
            Some(&j) => self.nbrs[j] & free,
            None => free,
        };
        let mut earlier = 0u64;
        for r in bits(roots) {
            let allowed = free & !earlier;
            let s = bit(r);
            let ext = self.rows[r] & allowed & !s;
            if self.grow(pos, used, max_size, allowed, s, self.rows[r], ext, 0) {
                return true;
            }
            earlier |= s;
        }
        false
    }

    #[allow(clippy::too_many_arguments)]
    fn grow(
        &mut self,
        pos: usize,
        used: u64,
        max_size: usize,
        allowed: u64,
        set: u64,
        set_nbrs: u64,
        ext: u64,
        excl: u64,
    ) -> bool {
        if self.accepts(pos, used, set, set_nbrs) {
            self.branches[pos] = set;
            self.nbrs[pos] = set_nbrs;
            if self.place(pos + 1, used | set) {
                return true;
            }
        }
        if set.count_ones() as usize >= max_size {
            return false;
        }
        let mut ext = ext;
        let mut excl = excl;
        while ext != 0 {
            let w = ext.trailing_zeros() as usize;
            ext &= ext - 1;
            let grown = set | bit(w);
            let next_ext = (ext | (self.rows[w] & allowed)) & !excl & !grown;
            if self.grow(
                pos,
                used,
                max_size,
                allowed,
                grown,
                set_nbrs | self.rows[w],
                next_ext,
                excl,
            ) {
                return true;
            }
            excl |= bit(w);
        }
        false
    }

    fn accepts(&self, pos: usize, used: u64, set: u64, set_nbrs: u64) -> bool {
        if !self.pat.back[pos].iter().all(|&j| set & self.nbrs[j] != 0) {
            return false;
        }
        !self.pat.forward[pos] || set_nbrs & self.all & !used & !set != 0
    }
}

/// A minor model of `h` in `g`, if `h < g`.
pub fn find_minor_model(h: &Graph, g: &Graph) -> Option<MinorModel> {
    Pattern::new(h)
        .find_masks(g.rows())
        .map(|masks| MinorModel {
            branch_sets: masks
                .into_iter()
                .map(|m| bits(m).map(|v| v + 1).collect())
                .collect(),
        })
}

pub fn is_minor(h: &Graph, g: &Graph) -> bool {
    Pattern::new(h).occurs_in(g)
}

/// Every component is a path (`K_1` and the empty graph included).
pub fn is_path_forest(h: &Graph) -> bool {
    h.max_degree() <= 2 && h.is_acyclic()
}

/// Every component is a star `K_{1,m}`, `m ≥ 0`.
pub fn is_star_forest(h: &Graph) -> bool {
    h.is_acyclic()
        && h.edges()
            .into_iter()
            .all(|(u, v)| h.degree(u).min(h.degree(v)) <= 1)
}

pub fn is_matching_graph(h: &Graph) -> bool {
    h.max_degree() <= 1
}

/// One star plus isolated vertices.
pub fn is_star_plus_isolated(h: &Graph) -> bool {
    is_star_forest(h) && h.components().iter().filter(|c| c.edge_count() > 0).count() <= 1
}

pub fn has_at_most_one_edge(h: &Graph) -> bool {
    h.edge_count() <= 1
}

/// Every component is a caterpillar: a tree whose non-leaf vertices induce a path.
pub fn is_caterpillar_forest(h: &Graph) -> bool {
    if !h.is_acyclic() {
        return false;
    }
    let inner = (0..h.n())
        .filter(|&v| h.row(v).count_ones() != 1)
        .fold(0u64, |m, v| m | bit(v));
    h.induced(inner).max_degree() <= 2
}

/// A path forest, or a path forest after deleting one vertex.
pub fn is_apex_path_forest(h: &Graph) -> bool {
    is_path_forest(h) || (0..h.n()).any(|v| is_path_forest(&h.delete_vertex_raw(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::generate;

    fn g(s: &str) -> Graph {
        generate(s).unwrap()
    }

    fn check(h: &str, host: &str, expect: bool) {
        let (h, host) = (g(h), g(host));
        let m = find_minor_model(&h, &host);
        assert_eq!(m.is_some(), expect, "{h:?} < {host:?}");
        assert_eq!(is_minor(&h, &host), expect);
        if let Some(m) = m {
            assert!(m.is_valid(&h, &host), "{m:?}");
        }
    }

    #[test]
    fn model_examples() {
        check("complete:3", "path:10", false);
        check("path:4", "complete:4", true);
        check("star:3", "comb:3", true);
        check("matching:2", "complete:3", false);
        check("path:3", "complete:3", true);
        check("cycle:4", "complete:4", true);
    }

    #[test]
    fn more_models() {
        check("complete:4", "cycle:6", false);
        check("complete:3", "cycle:6", true);
        check("complete:4", "biclique:3,3", true);
        check("complete:5", "complete:4+iso:5", false);
        check("biclique:3,3", "complete:5", false);
        check("matching:3", "path:6", true);
        check("matching:3", "path:5", false);
        check("star:3", "path:10", false);
        check("iso:3", "path:3", true);
        check("iso:4", "path:3", false);
        check("path:3+iso:1", "path:3", false);
        check("path:3+iso:1", "path:4", true);
        check("complete:3+iso:2", "fan:4", true);
        check("iso:0", "iso:0", true);
        check("iso:0", "complete:3", true);
    }

    #[test]
    fn invalid_models_rejected() {
        let h = g("path:3");
        let host = g("path:4");
        let bad = MinorModel {
            branch_sets: vec![vec![1], vec![3], vec![4]],
        };
        assert!(!bad.is_valid(&h, &host));
        let overlap = MinorModel {
            branch_sets: vec![vec![1], vec![1, 2], vec![3]],
        };
        assert!(!overlap.is_valid(&h, &host));
        let split = MinorModel {
            branch_sets: vec![vec![1, 3], vec![2], vec![4]],
        };
        assert!(!split.is_valid(&h, &host));
    }

    #[test]
    fn family_predicates() {
        assert!(is_path_forest(&g("matching:3")));
        assert!(!is_path_forest(&g("star:3")));
        assert!(is_path_forest(&g("path:4+iso:2")));
        assert!(is_path_forest(&g("iso:0")));

        assert!(is_star_forest(&g("path:3")));
        assert!(!is_star_forest(&g("path:4")));
        assert!(is_star_forest(&g("star:3+path:2")));
        assert!(!is_star_forest(&g("complete:3")));

        assert!(is_matching_graph(&g("matching:2")));
        assert!(!is_matching_graph(&g("path:3")));
        assert!(is_matching_graph(&g("iso:5")));

        assert!(is_star_plus_isolated(&g("star:4+iso:2")));
        assert!(!is_star_plus_isolated(&g("matching:2")));
        assert!(is_star_plus_isolated(&g("iso:3")));

        assert!(has_at_most_one_edge(&g("path:2+iso:3")));
        assert!(!has_at_most_one_edge(&g("path:3")));
        assert!(has_at_most_one_edge(&g("iso:0")));

        assert!(is_caterpillar_forest(&g("comb:4")));
        let spider = g("edges(7;1-2,2-3,1-4,4-5,1-6,6-7)");
        assert!(!is_caterpillar_forest(&spider));
        assert!(is_caterpillar_forest(&g("star:5")));
        assert!(!is_caterpillar_forest(&g("cycle:4")));
        assert!(is_caterpillar_forest(&g("path:2+iso:1")));

        assert!(is_apex_path_forest(&g("fan:5")));
        assert!(!is_apex_path_forest(&g("complete:4")));
        assert!(is_apex_path_forest(&g("path:6")));
        assert!(is_apex_path_forest(&g("star:7")));
        assert!(is_apex_path_forest(&g("matching:2+star:3")));
        assert!(!is_apex_path_forest(&g("star:3+star:3")));
    }
}
