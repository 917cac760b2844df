//! Canonical codes for small graphs.
//!
//! Colour refinement followed by individualisation of one vertex at a time,
//! keeping the lexicographically largest adjacency code over all discrete
//! leaves. Twin vertices (same neighbourhood apart from each other) are
//! exchanged by an automorphism, so only one twin per class is branched on.

use crate::error::{Error, Result};
use crate::graph::{bit, bits, Graph};

pub const MAX_CANON_VERTICES: usize = 16;

/// A byte string equal for two graphs iff they are isomorphic.
pub fn canonical_code(g: &Graph) -> Result<Vec<u8>> {
    let n = g.n();
    if n > MAX_CANON_VERTICES {
        return Err(Error::CanonLimit(n));
    }
    let colors = refine(g, vec![0; n]);
    let mut best: Option<Vec<u8>> = None;
    search(g, colors, &mut best);
    Ok(best.unwrap_or_else(|| vec![0]))
}

/// The canonical representative: `g` relabelled so its code is the maximum.
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    let code = canonical_code(g)?;
    Ok(decode(&code))
}

fn decode(code: &[u8]) -> Graph {
    let n = code[0] as usize;
    let mut rows = vec![0u64; n];
    let mut k = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            if code[1 + k / 8] & (1 << (k % 8)) != 0 {
                rows[i] |= bit(j);
                rows[j] |= bit(i);
            }
            k += 1;
        }
    }
    Graph::from_rows(rows)
}

fn refine(g: &Graph, mut colors: Vec<usize>) -> Vec<usize> {
    let n = g.n();
    let mut cells = distinct(&colors);
    loop {
        let mut sig: Vec<(usize, Vec<usize>, usize)> = (0..n)
            .map(|u| {
                let mut nb: Vec<usize> = bits(g.row(u)).map(|w| colors[w]).collect();
                nb.sort_unstable();
                (colors[u], nb, u)
            })
            .collect();
        sig.sort();
        let mut next = vec![0usize; n];
        let mut c = 0usize;
        for i in 0..n {
            if i > 0 && (sig[i].0 != sig[i - 1].0 || sig[i].1 != sig[i - 1].1) {
                c += 1;
            }
            next[sig[i].2] = c;
        }
        colors = next;
        let now = distinct(&colors);
        if now == cells {
            return colors;
        }
        cells = now;
    }
}

fn distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn leaf_code(g: &Graph, colors: &[usize]) -> Vec<u8> {
    let n = g.n();
    let mut at = vec![0usize; n];
    for (u, &c) in colors.iter().enumerate() {
        at[c] = u;
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let mut code = vec![0u8; 1 + pairs.div_ceil(8)];
    code[0] = n as u8;
    let mut k = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            if g.row(at[i]) & bit(at[j]) != 0 {
                code[1 + k / 8] |= 1 << (k % 8);
            }
            k += 1;
        }
    }
    code
}

fn search(g: &Graph, colors: Vec<usize>, best: &mut Option<Vec<u8>>) {
    let n = g.n();
    if distinct(&colors) == n {
        let code = leaf_code(g, &colors);
        if best.as_ref().is_none_or(|b| code > *b) {
            *best = Some(code);
        }
        return;
    }
    // first colour class with more than one vertex
    let mut size = vec![0usize; n];
    for &c in &colors {
        size[c] += 1;
    }
    let target = (0..n).find(|&c| size[c] > 1).unwrap();
    let cell: Vec<usize> = (0..n).filter(|&u| colors[u] == target).collect();
    let mut tried: Vec<usize> = Vec::new();
    for &v in &cell {
        if tried.iter().any(|&t| twins(g, t, v)) {
            continue;
        }
        tried.push(v);
        let split: Vec<usize> = colors
            .iter()
            .enumerate()
            .map(|(u, &c)| {
                if c > target || (c == target && u != v) {
                    c + 1
                } else {
                    c
                }
            })
            .collect();
        search(g, refine(g, split), best);
    }
}

fn twins(g: &Graph, a: usize, b: usize) -> bool {
    g.row(a) & !bit(b) == g.row(b) & !bit(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::generate;
    use std::collections::HashSet;

    #[test]
    fn relabelled_path_matches() {
        let p = generate("path:3").unwrap();
        let q = Graph::new(3, &[(2, 1), (1, 3)]).unwrap();
        assert_eq!(canonical_code(&p).unwrap(), canonical_code(&q).unwrap());
        let k3 = generate("complete:3").unwrap();
        assert_ne!(canonical_code(&p).unwrap(), canonical_code(&k3).unwrap());
    }

    fn count_classes(n: usize) -> usize {
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .collect();
        let mut codes = HashSet::new();
        for mask in 0u32..(1 << pairs.len()) {
            let e: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &p)| p)
                .collect();
            codes.insert(canonical_code(&Graph::new(n, &e).unwrap()).unwrap());
        }
        codes.len()
    }

    #[test]
    fn unlabelled_counts() {
        // classical counts of unlabelled graphs
        assert_eq!(count_classes(3), 4);
        assert_eq!(count_classes(4), 11);
        assert_eq!(count_classes(5), 34);
    }

    #[test]
    fn form_is_isomorphic_and_stable() {
        let g = generate("comb:3+iso:1").unwrap();
        let f = canonical_form(&g).unwrap();
        assert_eq!(f.n(), g.n());
        assert_eq!(f.degrees().iter().sum::<usize>(), 10);
        assert_eq!(canonical_form(&f).unwrap(), f);
    }

    #[test]
    fn symmetric_graphs_at_the_limit() {
        let a = generate("matching:8").unwrap();
        let b = generate("iso:16").unwrap();
        assert_ne!(canonical_code(&a).unwrap(), canonical_code(&b).unwrap());
        assert!(canonical_code(&generate("complete:16").unwrap()).is_ok());
        assert_eq!(
            canonical_code(&generate("iso:17").unwrap()),
            Err(Error::CanonLimit(17))
        );
    }

    #[test]
    fn empty() {
        assert_eq!(canonical_code(&Graph::empty(0).unwrap()).unwrap(), vec![0]);
        assert_eq!(canonical_form(&Graph::empty(0).unwrap()).unwrap().n(), 0);
    }
}
