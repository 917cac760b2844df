//! Excluded-minor class specifications and their growth classification.
//!
//! A class `Ex(H_1, …, H_k)` contains every member of a family `F` iff no
//! `H_i` lies in the minor-closure of `F`. The decision chain below asks this
//! for paths, star forests, matchings, stars and single edges, in that order.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::dsl::{parse_list, GraphExpr};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::minor::{
    has_at_most_one_edge, is_apex_path_forest, is_caterpillar_forest, is_matching_graph, is_minor,
    is_path_forest, is_star_forest, is_star_plus_isolated, Pattern,
};

/// A nonempty list of excluded minors.
#[derive(Clone)]
pub struct ClassSpec {
    excluded: Vec<Graph>,
    exprs: Vec<GraphExpr>,
    patterns: Vec<Pattern>,
}

impl ClassSpec {
    pub fn new(excluded: Vec<Graph>) -> Result<ClassSpec> {
        let exprs = excluded.iter().map(GraphExpr::from_graph).collect();
        ClassSpec::build(excluded, exprs)
    }

    pub fn from_exprs(exprs: Vec<GraphExpr>) -> Result<ClassSpec> {
        let excluded = exprs
            .iter()
            .map(GraphExpr::eval)
            .collect::<Result<Vec<_>>>()?;
        ClassSpec::build(excluded, exprs)
    }

    /// Parses a comma-separated list of graph expressions.
    pub fn parse(src: &str) -> Result<ClassSpec> {
        if src.trim().is_empty() {
            return Err(Error::EmptySpec);
        }
        ClassSpec::from_exprs(parse_list(src)?)
    }

    fn build(excluded: Vec<Graph>, exprs: Vec<GraphExpr>) -> Result<ClassSpec> {
        if excluded.is_empty() {
            return Err(Error::EmptySpec);
        }
        let patterns = excluded.iter().map(Pattern::new).collect();
        Ok(ClassSpec {
            excluded,
            exprs,
            patterns,
        })
    }

    pub fn excluded(&self) -> &[Graph] {
        &self.excluded
    }

    pub fn exprs(&self) -> &[GraphExpr] {
        &self.exprs
    }

    /// The expressions printed in order, joined by `", "`.
    pub fn canonical(&self) -> String {
        self.exprs
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn contains(&self, g: &Graph) -> bool {
        self.contains_rows(g.rows())
    }

    pub(crate) fn contains_rows(&self, rows: &[u64]) -> bool {
        !self.patterns.iter().any(|p| p.occurs_in_rows(rows))
    }

    /// Membership check for a graph whose edgeless version is already known
    /// to be a member, so only excluded minors with edges need testing.
    pub(crate) fn contains_rows_with_edges(&self, rows: &[u64]) -> bool {
        !self
            .patterns
            .iter()
            .filter(|p| p.graph().edge_count() > 0)
            .any(|p| p.occurs_in_rows(rows))
    }

    /// The spec with every isolated vertex removed from every excluded minor.
    pub fn strip_isolated(&self) -> ClassSpec {
        ClassSpec::new(self.excluded.iter().map(Graph::strip_isolated).collect()).expect("nonempty")
    }
}

impl fmt::Debug for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ex({})", self.canonical())
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl PartialEq for ClassSpec {
    fn eq(&self, other: &Self) -> bool {
        self.excluded == other.excluded
    }
}

/// Tunable limits for the constructive parts of the classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Largest tree size tried when searching for the semi-factorial `k`.
    pub semifactorial_cap: usize,
    /// Only consider components of maximum degree at most `s`, the order of
    /// the smallest excluded star forest.
    pub degree_restricted: bool,
    /// Largest pattern size enumerated for the polynomial case.
    pub pattern_cap: usize,
    /// Largest `n` brute-forced to locate the empirical polynomial threshold.
    pub empirical_n_max: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            semifactorial_cap: 8,
            degree_restricted: true,
            pattern_cap: 8,
            empirical_n_max: 7,
        }
    }
}

/// `g_n` for `n ≥ threshold` as `Σ coeffs[m] · C(n, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialGrowth {
    /// Number of labelled patterns on `m` vertices, i.e. coefficients on the
    /// binomial basis `C(n,0), C(n,1), …`.
    pub coeffs: Vec<BigUint>,
    /// Threshold from the witnesses: `max(s+r, 2k+l, 2ks+m)`.
    pub threshold: usize,
    /// Smallest `n` from which brute-force counts up to
    /// `empirical_n_max` agree with the polynomial.
    pub empirical_threshold: Option<usize>,
}

impl PolynomialGrowth {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, n: usize) -> BigUint {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| c * binomial(n, m))
            .sum()
    }
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrowthCategory {
    /// `n! ≤ g_n ≤ c^n n!`
    Factorial,
    /// `B(n) ≤ g_n ≤ ε^n n^n` for every `ε > 0`.
    AlmostFactorial,
    /// `g_n ≍ n^{(1-1/k) n}` up to exponential factors. When
    /// `lower_bound_only` is set the search cap was reached and `k` may be larger.
    SemiFactorial {
        k: usize,
        lower_bound_only: bool,
    },
    /// `2^{n-1} ≤ g_n ≤ c^n`
    Exponential,
    Polynomial(PolynomialGrowth),
    /// `g_n = value` for all `n ≥ threshold`.
    Constant {
        value: u8,
        threshold: usize,
    },
}

impl GrowthCategory {
    pub fn tag(&self) -> &'static str {
        match self {
            GrowthCategory::Factorial => "Factorial",
            GrowthCategory::AlmostFactorial => "AlmostFactorial",
            GrowthCategory::SemiFactorial { .. } => "SemiFactorial",
            GrowthCategory::Exponential => "Exponential",
            GrowthCategory::Polynomial(_) => "Polynomial",
            GrowthCategory::Constant { .. } => "Constant",
        }
    }
}

/// Which branch of the decision chain a spec falls into, without parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainStep {
    Factorial,
    AlmostFactorial,
    SemiFactorial,
    Exponential,
    Polynomial,
    Constant,
}

impl ChainStep {
    pub fn tag(self) -> &'static str {
        match self {
            ChainStep::Factorial => "Factorial",
            ChainStep::AlmostFactorial => "AlmostFactorial",
            ChainStep::SemiFactorial => "SemiFactorial",
            ChainStep::Exponential => "Exponential",
            ChainStep::Polynomial => "Polynomial",
            ChainStep::Constant => "Constant",
        }
    }
}

pub fn chain_step(spec: &ClassSpec) -> ChainStep {
    let none = |p: fn(&Graph) -> bool| !spec.excluded().iter().any(p);
    if none(is_path_forest) {
        ChainStep::Factorial
    } else if none(is_star_forest) {
        ChainStep::AlmostFactorial
    } else if none(is_matching_graph) {
        ChainStep::SemiFactorial
    } else if none(is_star_plus_isolated) {
        ChainStep::Exponential
    } else if none(has_at_most_one_edge) {
        ChainStep::Polynomial
    } else {
        ChainStep::Constant
    }
}

pub fn classify(spec: &ClassSpec) -> Result<GrowthCategory> {
    classify_with(spec, &ClassifyOptions::default())
}

pub fn classify_with(spec: &ClassSpec, opts: &ClassifyOptions) -> Result<GrowthCategory> {
    Ok(match chain_step(spec) {
        ChainStep::Factorial => GrowthCategory::Factorial,
        ChainStep::AlmostFactorial => GrowthCategory::AlmostFactorial,
        ChainStep::SemiFactorial => {
            let (k, lower_bound_only) = semifactorial_k_with(spec, opts)?;
            GrowthCategory::SemiFactorial {
                k,
                lower_bound_only,
            }
        }
        ChainStep::Exponential => GrowthCategory::Exponential,
        ChainStep::Polynomial => GrowthCategory::Polynomial(polynomial_of_with(spec, opts)?),
        ChainStep::Constant => {
            let value = if spec.excluded().iter().any(|h| h.edge_count() == 0) {
                0
            } else {
                1
            };
            let threshold = spec
                .excluded()
                .iter()
                .filter(|h| has_at_most_one_edge(h))
                .map(Graph::n)
                .max()
                .expect("constant category has a witness");
            GrowthCategory::Constant { value, threshold }
        }
    })
}

fn require(spec: &ClassSpec, step: ChainStep) -> Result<()> {
    let actual = chain_step(spec);
    if actual != step {
        return Err(Error::WrongCategory {
            expected: step.tag(),
            actual: actual.tag(),
        });
    }
    Ok(())
}

/// The largest order `k` of a connected graph with unbounded multiplicity.
pub fn semifactorial_k(spec: &ClassSpec) -> Result<usize> {
    semifactorial_k_with(spec, &ClassifyOptions::default()).map(|(k, _)| k)
}

/// Connected `C` has unbounded multiplicity iff no excluded `H` is a minor of
/// `c·C`, with `c` the number of components of `H`: a connected minor lives
/// inside one copy, so further copies never help.
pub fn has_unbounded_multiplicity(spec: &ClassSpec, c: &Graph) -> bool {
    spec.excluded().iter().all(|h| {
        let copies = c.repeat(h.component_count());
        match copies {
            Ok(host) => !is_minor(h, &host),
            // beyond 64 vertices: every component fits a separate copy
            Err(_) => !h.components().iter().all(|part| is_minor(part, c)),
        }
    })
}

/// Returns `(k, lower_bound_only)`.
///
/// Unbounded multiplicity passes to connected minors, and every connected
/// graph has a spanning tree, so it suffices to search trees by size; sizes
/// are tried upwards until one has no qualifying tree.
pub fn semifactorial_k_with(spec: &ClassSpec, opts: &ClassifyOptions) -> Result<(usize, bool)> {
    require(spec, ChainStep::SemiFactorial)?;
    let degree_cap = if opts.degree_restricted {
        spec.excluded()
            .iter()
            .filter(|h| is_star_forest(h))
            .map(Graph::n)
            .min()
    } else {
        None
    };
    let mut k = 1;
    for t in 1..=opts.semifactorial_cap {
        let hit = crate::enumerate::unlabelled_trees(t).iter().any(|tree| {
            degree_cap.is_none_or(|d| tree.max_degree() <= d)
                && spec.contains(tree)
                && has_unbounded_multiplicity(spec, tree)
        });
        if !hit {
            return Ok((k, false));
        }
        k = t;
    }
    Ok((k, true))
}

pub fn polynomial_of(spec: &ClassSpec) -> Result<PolynomialGrowth> {
    polynomial_of_with(spec, &ClassifyOptions::default())
}

/// Counts the labelled patterns of the class with isolated vertices stripped
/// from every excluded minor. `g_n` equals the pattern polynomial from the
/// witness threshold on.
pub fn polynomial_of_with(spec: &ClassSpec, opts: &ClassifyOptions) -> Result<PolynomialGrowth> {
    require(spec, ChainStep::Polynomial)?;
    let max_iso = spec
        .excluded()
        .iter()
        .map(Graph::isolated_count)
        .max()
        .unwrap_or(0);
    let matchings: Vec<(usize, usize)> = spec
        .excluded()
        .iter()
        .filter(|h| is_matching_graph(h))
        .map(|h| (h.edge_count(), h.isolated_count()))
        .collect();
    let stars: Vec<(usize, usize)> = spec
        .excluded()
        .iter()
        .filter(|h| is_star_plus_isolated(h))
        .map(|h| (h.n() - h.isolated_count(), h.isolated_count()))
        .collect();
    let threshold = matchings
        .iter()
        .flat_map(|&(k, l)| {
            stars
                .iter()
                .map(move |&(s, r)| (s + r).max(2 * k + l).max(2 * k * s + max_iso))
        })
        .min()
        .expect("polynomial category has both witnesses");

    let stripped = spec.strip_isolated();
    let mut coeffs: Vec<BigUint> = Vec::new();
    let mut m = 0;
    loop {
        if m > opts.pattern_cap {
            return Err(Error::PatternCap {
                cap: opts.pattern_cap,
            });
        }
        coeffs.push(crate::enumerate::count_members_without_isolated(
            &stripped, m,
        )?);
        let len = coeffs.len();
        if len >= 3 && coeffs[len - 1].is_zero() && coeffs[len - 2].is_zero() {
            break;
        }
        m += 1;
    }
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    let mut poly = PolynomialGrowth {
        coeffs,
        threshold,
        empirical_threshold: None,
    };
    let n_max = opts.empirical_n_max.min(crate::enumerate::MAX_COUNT_N);
    let mut from = None;
    for n in (0..=n_max).rev() {
        if crate::enumerate::count_members(spec, n)? == poly.eval(n) {
            from = Some(n);
        } else {
            break;
        }
    }
    poly.empirical_threshold = from;
    Ok(poly)
}

/// Every excluded minor is 2-connected, which guarantees a growth constant.
/// `false` only means this criterion does not apply.
pub fn exists_growth_constant(spec: &ClassSpec) -> bool {
    spec.excluded().iter().all(Graph::is_two_connected)
}

/// The class contains all paths, but neither all caterpillars nor the whole
/// apex class of path forests.
pub fn gamma_one_test(spec: &ClassSpec) -> bool {
    let ex = spec.excluded();
    !ex.iter().any(is_path_forest)
        && ex.iter().any(is_caterpillar_forest)
        && ex.iter().any(is_apex_path_forest)
}

/// Drops every excluded graph that has another listed graph as a minor.
/// Of several isomorphic copies the first is kept.
pub fn minimize_obstructions(spec: &ClassSpec) -> ClassSpec {
    let mut keep: Vec<usize> = Vec::new();
    let ex = spec.excluded();
    for (j, h) in ex.iter().enumerate() {
        if keep.iter().any(|&i| is_minor(&ex[i], h)) {
            continue;
        }
        keep.retain(|&i| !is_minor(h, &ex[i]));
        keep.push(j);
    }
    keep.sort_unstable();
    let graphs = keep.iter().map(|&i| ex[i].clone()).collect();
    let exprs = keep.iter().map(|&i| spec.exprs()[i].clone()).collect();
    ClassSpec::build(graphs, exprs).expect("at least one graph survives")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> ClassSpec {
        ClassSpec::parse(s).unwrap()
    }

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn chain_examples() {
        assert_eq!(
            classify(&spec("complete:3")).unwrap(),
            GrowthCategory::Factorial
        );
        assert_eq!(
            classify(&spec("path:5")).unwrap(),
            GrowthCategory::AlmostFactorial
        );
        assert_eq!(
            classify(&spec("path:3")).unwrap(),
            GrowthCategory::SemiFactorial {
                k: 2,
                lower_bound_only: false
            }
        );
        assert_eq!(
            classify(&spec("matching:2")).unwrap(),
            GrowthCategory::Exponential
        );
        assert_eq!(
            classify(&spec("complete:2+iso:1")).unwrap(),
            GrowthCategory::Constant {
                value: 1,
                threshold: 3
            }
        );
        assert_eq!(
            classify(&spec("complete:1")).unwrap(),
            GrowthCategory::Constant {
                value: 0,
                threshold: 1
            }
        );
    }

    #[test]
    fn polynomial_example() {
        let GrowthCategory::Polynomial(p) = classify(&spec("matching:2, star:3")).unwrap() else {
            panic!("expected polynomial");
        };
        assert_eq!(p.coeffs, big(&[1, 0, 1, 4]));
        assert_eq!(p.degree(), 3);
        assert_eq!(p.eval(3), BigUint::from(8u32));
        assert_eq!(p.eval(4), BigUint::from(23u32));
        // k = 2, l = 0, s = 4, r = 0
        assert_eq!(p.threshold, 16);
        assert_eq!(p.empirical_threshold, Some(0));
    }

    #[test]
    fn polynomial_with_isolated_allowance() {
        let base = polynomial_of(&spec("matching:2, star:3")).unwrap();
        let p = polynomial_of(&spec("matching:2+iso:1, star:3")).unwrap();
        assert_eq!(p.coeffs, base.coeffs);
        assert_eq!(p.threshold, base.threshold + 1);
        assert_eq!(p.empirical_threshold, Some(5));
    }

    #[test]
    fn literal_star_two_polynomial() {
        // star:2 is K_{1,2}: at most one edge survives
        let p = polynomial_of(&spec("matching:2, star:2")).unwrap();
        assert_eq!(p.coeffs, big(&[1, 0, 1]));
    }

    #[test]
    fn semifactorial_examples() {
        assert_eq!(semifactorial_k(&spec("path:3")).unwrap(), 2);
        assert_eq!(semifactorial_k(&spec("path:4, star:3")).unwrap(), 3);
        assert_eq!(semifactorial_k(&spec("path:3+iso:1")).unwrap(), 2);
        assert!(matches!(
            semifactorial_k(&spec("complete:3")),
            Err(Error::WrongCategory { .. })
        ));
        assert!(matches!(
            polynomial_of(&spec("path:3")),
            Err(Error::WrongCategory { .. })
        ));
    }

    #[test]
    fn semifactorial_cap_reports_partiality() {
        // components are paths and cycles on at most 6 vertices
        let s = spec("path:7, star:3");
        let opts = ClassifyOptions {
            semifactorial_cap: 3,
            ..ClassifyOptions::default()
        };
        assert_eq!(semifactorial_k_with(&s, &opts).unwrap(), (3, true));
        assert_eq!(
            semifactorial_k_with(&s, &ClassifyOptions::default()).unwrap(),
            (6, false)
        );
    }

    #[test]
    fn growth_constant_criterion() {
        assert!(exists_growth_constant(&spec("complete:3")));
        assert!(!exists_growth_constant(&spec("path:3")));
        assert!(exists_growth_constant(&spec("complete:4, biclique:2,3")));
    }

    #[test]
    fn gamma_one() {
        assert!(gamma_one_test(&spec("complete:3, star:3")));
        assert!(!gamma_one_test(&spec("complete:3")));
        assert!(!gamma_one_test(&spec("path:4")));
        // K_3 minus a vertex is a path, but forests hold every caterpillar
        assert!(!gamma_one_test(&spec("complete:3")));
        assert!(gamma_one_test(&spec("star:4")));
        assert!(gamma_one_test(&spec("complete:3, comb:6")));
        // comb:6 is a caterpillar but stays outside the apex class; fan:3 catches that
        assert!(!gamma_one_test(&spec("comb:6")));
        assert!(gamma_one_test(&spec("comb:6, fan:3")));
    }

    #[test]
    fn minimize() {
        assert_eq!(
            minimize_obstructions(&spec("complete:3, complete:4")),
            spec("complete:3")
        );
        assert_eq!(
            minimize_obstructions(&spec("complete:4, complete:3")),
            spec("complete:3")
        );
        let s = spec("path:4, star:3");
        assert_eq!(minimize_obstructions(&s), s);
        // P_3 = K_{1,2} sits inside K_{1,3}
        assert_eq!(
            minimize_obstructions(&spec("path:3, star:3")),
            spec("path:3")
        );
        let d = minimize_obstructions(&spec("complete:2, path:2"));
        assert_eq!(d.excluded().len(), 1);
        assert_eq!(d.canonical(), "complete:2");
    }

    #[test]
    fn empty_spec() {
        assert!(matches!(ClassSpec::parse(""), Err(Error::EmptySpec)));
        assert!(matches!(ClassSpec::new(vec![]), Err(Error::EmptySpec)));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(2, 5), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
    }
}
