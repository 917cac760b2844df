//! Exact counts of class members.
//!
//! Brute force walks the candidate edges `(1,2), (1,3), …, (n-1,n)` in
//! lexicographic order, branching on exclusion then inclusion. Minor-closed
//! classes are closed under subgraphs, so once including an edge creates an
//! excluded minor the whole include-subtree is dropped.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::canon::canonical_code;
use crate::classify::ClassSpec;
use crate::error::{Error, Result};
use crate::gfun;
use crate::graph::{bit, bits, Graph};

/// Largest `n` accepted by [`count_members`].
pub const MAX_COUNT_N: usize = 10;
/// Largest `n` accepted by [`apex_count`].
pub const MAX_APEX_N: usize = 8;

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::SizeCap { n, cap })
    } else {
        Ok(())
    }
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

struct SubsetTree<'a> {
    spec: &'a ClassSpec,
    pairs: Vec<(usize, usize)>,
    rows: Vec<u64>,
}

impl<'a> SubsetTree<'a> {
    /// `None` when even the edgeless graph on `n` vertices is excluded.
    fn new(spec: &'a ClassSpec, n: usize) -> Option<SubsetTree<'a>> {
        let rows = vec![0u64; n];
        if !spec.contains_rows(&rows) {
            return None;
        }
        Some(SubsetTree {
            spec,
            pairs: pairs(n),
            rows,
        })
    }

    fn walk(&mut self, k: usize, visit: &mut impl FnMut(&[u64])) -> u64 {
        if k == self.pairs.len() {
            visit(&self.rows);
            return 1;
        }
        let mut total = self.walk(k + 1, visit);
        let (u, v) = self.pairs[k];
        self.rows[u] |= bit(v);
        self.rows[v] |= bit(u);
        if self.spec.contains_rows_with_edges(&self.rows) {
            total += self.walk(k + 1, visit);
        }
        self.rows[u] &= !bit(v);
        self.rows[v] &= !bit(u);
        total
    }

    /// Surviving partial graphs after the first `depth` edge decisions.
    fn frontier(&mut self, k: usize, depth: usize, out: &mut Vec<Vec<u64>>) {
        if k == depth {
            out.push(self.rows.clone());
            return;
        }
        self.frontier(k + 1, depth, out);
        let (u, v) = self.pairs[k];
        self.rows[u] |= bit(v);
        self.rows[v] |= bit(u);
        if self.spec.contains_rows_with_edges(&self.rows) {
            self.frontier(k + 1, depth, out);
        }
        self.rows[u] &= !bit(v);
        self.rows[v] &= !bit(u);
    }
}

/// Number of labelled graphs on `{1..n}` with no excluded minor.
pub fn count_members(spec: &ClassSpec, n: usize) -> Result<BigUint> {
    check_cap(n, MAX_COUNT_N)?;
    Ok(match SubsetTree::new(spec, n) {
        Some(mut t) => BigUint::from(t.walk(0, &mut |_| {})),
        None => BigUint::zero(),
    })
}

/// [`count_members`] with the subset tree split across `workers` threads.
/// The result does not depend on `workers`.
pub fn count_members_parallel(spec: &ClassSpec, n: usize, workers: usize) -> Result<BigUint> {
    check_cap(n, MAX_COUNT_N)?;
    let workers = workers.max(1);
    let Some(mut tree) = SubsetTree::new(spec, n) else {
        return Ok(BigUint::zero());
    };
    if workers == 1 {
        return Ok(BigUint::from(tree.walk(0, &mut |_| {})));
    }
    let depth = (usize::BITS - (workers - 1).leading_zeros()) as usize + 3;
    let depth = depth.min(tree.pairs.len());
    let mut states = Vec::new();
    tree.frontier(0, depth, &mut states);
    let total: u64 = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let states = &states;
                let pairs = tree.pairs.clone();
                scope.spawn(move || {
                    states
                        .iter()
                        .skip(w)
                        .step_by(workers)
                        .map(|rows| {
                            let mut t = SubsetTree {
                                spec,
                                pairs: pairs.clone(),
                                rows: rows.clone(),
                            };
                            t.walk(depth, &mut |_| {})
                        })
                        .sum::<u64>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker")).sum()
    });
    Ok(BigUint::from(total))
}

/// Calls `f` on every member on `{1..n}`, in subset-tree order.
pub fn for_each_member(spec: &ClassSpec, n: usize, mut f: impl FnMut(&Graph)) -> Result<()> {
    check_cap(n, MAX_COUNT_N)?;
    if let Some(mut t) = SubsetTree::new(spec, n) {
        t.walk(0, &mut |rows| f(&Graph::from_rows(rows.to_vec())));
    }
    Ok(())
}

/// Members on `{1..n}` with no isolated vertex.
pub fn count_members_without_isolated(spec: &ClassSpec, n: usize) -> Result<BigUint> {
    check_cap(n, MAX_COUNT_N)?;
    let mut count = 0u64;
    if let Some(mut t) = SubsetTree::new(spec, n) {
        t.walk(0, &mut |rows| {
            if rows.iter().all(|&r| r != 0) {
                count += 1;
            }
        });
    }
    Ok(BigUint::from(count))
}

/// Packs the edge set of a graph on at most 11 vertices into a `u64`.
pub(crate) fn edge_key(rows: &[u64]) -> u64 {
    let mut key = 0u64;
    let mut k = 0;
    for u in 0..rows.len() {
        for v in u + 1..rows.len() {
            if rows[u] & bit(v) != 0 {
                key |= 1 << k;
            }
            k += 1;
        }
    }
    key
}

/// Number of labelled graphs on `{1..n}` having a vertex whose deletion
/// leaves a member of the class. For `n = 0` the empty graph counts iff it
/// is a member itself.
///
/// Every such graph arises from a member on `n - 1` vertices by inserting a
/// vertex at some label and choosing its neighbourhood; the distinct results
/// are collected by edge set.
pub fn apex_count(spec: &ClassSpec, n: usize) -> Result<BigUint> {
    check_cap(n, MAX_APEX_N)?;
    if n == 0 {
        return Ok(if spec.contains(&Graph::empty(0)?) {
            BigUint::one()
        } else {
            BigUint::zero()
        });
    }
    let mut seen: HashSet<u64> = HashSet::new();
    for_each_member(spec, n - 1, |base| {
        for v in 0..n {
            // base vertex i sits at label i, or i+1 when i >= v
            let place = |i: usize| if i < v { i } else { i + 1 };
            let mut rows = vec![0u64; n];
            for i in 0..n - 1 {
                for j in bits(base.row(i)) {
                    rows[place(i)] |= bit(place(j));
                }
            }
            for nbrs in 0u64..(1 << (n - 1)) {
                let mut r = rows.clone();
                for i in bits(nbrs) {
                    let w = place(i);
                    r[v] |= bit(w);
                    r[w] |= bit(v);
                }
                seen.insert(edge_key(&r));
            }
        }
    })?;
    Ok(BigUint::from(seen.len()))
}

/// Apex count by testing every labelled graph on `{1..n}`; membership of the
/// vertex-deleted graphs is memoised by edge set.
pub fn apex_count_brute(spec: &ClassSpec, n: usize) -> Result<BigUint> {
    check_cap(n, MAX_APEX_N)?;
    if n == 0 {
        return apex_count(spec, 0);
    }
    let ps = pairs(n);
    let mut memo: HashMap<u64, bool> = HashMap::new();
    let mut count = 0u64;
    for mask in 0u64..(1 << ps.len()) {
        let mut g = Graph::empty(n)?;
        for (i, &(u, v)) in ps.iter().enumerate() {
            if mask & (1 << i) != 0 {
                g.add_edge_raw(u, v);
            }
        }
        let apex = (0..n).any(|v| {
            let h = g.delete_vertex_raw(v);
            *memo
                .entry(edge_key(h.rows()))
                .or_insert_with(|| spec.contains(&h))
        });
        if apex {
            count += 1;
        }
    }
    Ok(BigUint::from(count))
}

/// One representative per isomorphism class of trees on `n` vertices,
/// grown leaf by leaf from smaller trees.
pub fn unlabelled_trees(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![Graph::empty(1).expect("one vertex")];
    for size in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..size - 1 {
                let mut rows = t.rows().to_vec();
                rows.push(bit(v));
                rows[v] |= bit(size - 1);
                let g = Graph::from_rows(rows);
                let code = canonical_code(&g).expect("trees stay under the canonical limit");
                if seen.insert(code) {
                    next.push(g);
                }
            }
        }
        level = next;
    }
    level
}

/// Bell numbers via the Bell triangle.
pub fn bell(n: usize) -> BigUint {
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().unwrap().clone());
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    row[0].clone()
}

/// `n (n-2) (n-4) …` down to 1 or 2; `0!! = 1`.
pub fn double_factorial(n: usize) -> BigUint {
    (1..=n)
        .rev()
        .step_by(2)
        .fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Labelled graphs of maximum degree 1: `I(n) = I(n-1) + (n-1) I(n-2)`.
pub fn matchings_count(n: usize) -> BigUint {
    let (mut a, mut b) = (BigUint::one(), BigUint::one());
    for k in 2..=n {
        let c = &b + BigUint::from(k - 1) * &a;
        a = b;
        b = c;
    }
    if n == 0 {
        a
    } else {
        b
    }
}

pub fn path_forest_count(n: usize) -> BigUint {
    gfun::path_forest_series(n.max(1)).counts()[n].clone()
}

pub fn star_forest_count(n: usize) -> BigUint {
    gfun::star_forest_series(n.max(1)).counts()[n].clone()
}

pub fn forest_count(n: usize) -> BigUint {
    gfun::forest_series(n.max(1)).counts()[n].clone()
}

/// One star plus isolated vertices: `1 + C(n,2) + n 2^{n-1} - n²` for `n ≥ 1`.
pub fn star_class_count(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    let n_big = BigUint::from(n);
    let pairs = BigUint::from(n * (n - 1) / 2);
    BigUint::one() + pairs + &n_big * (BigUint::one() << (n - 1)) - &n_big * &n_big
}

/// A closed-form count `n ↦ g_n`.
pub type CountFormula = fn(usize) -> BigUint;

/// Classes with a closed-form count, as (name, excluded minors, count).
pub const KNOWN_FAMILIES: [(&str, &str, CountFormula); 5] = [
    ("matchings", "path:3", matchings_count),
    ("forests", "complete:3", forest_count),
    ("path forests", "complete:3, star:3", path_forest_count),
    ("star forests", "path:4, complete:3", star_forest_count),
    (
        "star class",
        "matching:2, complete:3, path:4",
        star_class_count,
    ),
];

fn obstruction_codes(spec: &ClassSpec) -> Option<BTreeSet<Vec<u8>>> {
    crate::classify::minimize_obstructions(spec)
        .excluded()
        .iter()
        .map(|h| canonical_code(h).ok())
        .collect()
}

/// The closed form for `spec` if it denotes one of [`KNOWN_FAMILIES`].
pub fn formula_for(spec: &ClassSpec) -> Option<(&'static str, CountFormula)> {
    let codes = obstruction_codes(spec)?;
    KNOWN_FAMILIES.iter().find_map(|&(name, ex, f)| {
        let family = ClassSpec::parse(ex).expect("family spec parses");
        (obstruction_codes(&family)? == codes).then_some((name, f))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Provenance {
    Brute,
    Formula,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Brute => "brute",
            Provenance::Formula => "formula",
        }
    }
}

/// Exact counts `g_n` for one class, with where each came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub spec: String,
    entries: BTreeMap<usize, (BigUint, BTreeSet<Provenance>)>,
}

impl CountTable {
    pub fn new(spec: impl Into<String>) -> CountTable {
        CountTable {
            spec: spec.into(),
            entries: BTreeMap::new(),
        }
    }

    /// Brute-force counts for every `n` in `range`.
    pub fn brute(spec: &ClassSpec, range: impl IntoIterator<Item = usize>) -> Result<CountTable> {
        let mut t = CountTable::new(spec.canonical());
        for n in range {
            t.insert(n, count_members(spec, n)?, Provenance::Brute)?;
        }
        Ok(t)
    }

    /// Counts from a closed form for every `n` in `range`.
    pub fn formula(
        name: impl Into<String>,
        range: impl IntoIterator<Item = usize>,
        f: impl Fn(usize) -> BigUint,
    ) -> CountTable {
        let mut t = CountTable::new(name);
        for n in range {
            t.insert(n, f(n), Provenance::Formula).expect("fresh table");
        }
        t
    }

    /// Records a count; a second provenance for the same `n` must agree.
    pub fn insert(&mut self, n: usize, count: BigUint, prov: Provenance) -> Result<()> {
        match self.entries.get_mut(&n) {
            Some((c, provs)) => {
                if *c != count {
                    return Err(Error::CountConflict {
                        n,
                        existing: c.to_string(),
                        new: count.to_string(),
                    });
                }
                provs.insert(prov);
            }
            None => {
                self.entries.insert(n, (count, BTreeSet::from([prov])));
            }
        }
        Ok(())
    }

    pub fn get(&self, n: usize) -> Option<&BigUint> {
        self.entries.get(&n).map(|(c, _)| c)
    }

    pub fn provenance(&self, n: usize) -> Option<&BTreeSet<Provenance>> {
        self.entries.get(&n).map(|(_, p)| p)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.entries.iter().map(|(&n, (c, _))| (n, c))
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.entries.keys().copied().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }
}
