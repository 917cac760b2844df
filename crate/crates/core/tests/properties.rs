use minorgrowth::canon::canonical_code;
use minorgrowth::classify::{
    classify, gamma_one_test, minimize_obstructions, semifactorial_k, ClassSpec,
};
use minorgrowth::dfs::dfs_forest;
use minorgrowth::dsl::{generate, parse_list, GraphExpr};
use minorgrowth::enumerate::{count_members, unlabelled_trees, CountTable};
use minorgrowth::gfun::{bounded_height_series, rho_sequence, rooted_tree_series};
use minorgrowth::growth::{apex_sandwich_check, gamma_sequence};
use minorgrowth::minor::{
    has_at_most_one_edge, is_apex_path_forest, is_caterpillar_forest, is_matching_graph, is_minor,
    is_path_forest, is_star_forest, is_star_plus_isolated,
};
use minorgrowth::Graph;
use proptest::prelude::*;
use proptest::sample::{select, subsequence};

fn graph(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut i = 0;
    for u in 1..=n {
        for v in u + 1..=n {
            if bits[i] {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Graph::new(n, &edges).unwrap()
}

fn arb_graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2)
            .prop_map(move |bits| graph(n, &bits))
    })
}

/// A graph with a permutation of its vertex labels.
fn arb_graph_and_order(lo: usize, hi: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    arb_graph(lo, hi).prop_flat_map(|g| {
        let order: Vec<usize> = (1..=g.n()).collect();
        (Just(g), Just(order).prop_shuffle())
    })
}

/// One deletion or contraction chosen by `pick`.
fn minor_step(g: &Graph, pick: usize) -> Graph {
    let edges = g.edges();
    let moves = g.n() + 2 * edges.len();
    if moves == 0 {
        return g.clone();
    }
    let k = pick % moves;
    if k < g.n() {
        g.delete_vertex(k + 1).unwrap()
    } else {
        let (u, v) = edges[(k - g.n()) / 2];
        if (k - g.n()).is_multiple_of(2) {
            g.delete_edge(u, v).unwrap()
        } else {
            g.contract_edge(u, v).unwrap()
        }
    }
}

fn spec(s: &str) -> ClassSpec {
    ClassSpec::parse(s).unwrap()
}

fn forbids(h: &str, g: &Graph) -> bool {
    !is_minor(&generate(h).unwrap(), g)
}

const POOL: [&str; 9] = [
    "complete:3",
    "path:4",
    "path:5",
    "star:3",
    "matching:2",
    "complete:2+iso:1",
    "cycle:4",
    "comb:3",
    "fan:3",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn dfs_non_tree_edges_are_back_edges((g, order) in arb_graph_and_order(1, 12)) {
        let f = dfs_forest(&g, &order).unwrap();
        prop_assert!(f.back_edge_property(&g));
        prop_assert_eq!(f.roots().len(), g.component_count());
    }

    #[test]
    fn dfs_height_gives_a_path_minor((g, order) in arb_graph_and_order(1, 12)) {
        let h = dfs_forest(&g, &order).unwrap().height();
        let path = generate(&format!("path:{}", h + 1)).unwrap();
        prop_assert!(is_minor(&path, &g));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_code_ignores_labels((g, perm) in arb_graph_and_order(0, 9)) {
        let h = g.permute(&perm).unwrap();
        prop_assert_eq!(canonical_code(&g).unwrap(), canonical_code(&h).unwrap());
    }

    #[test]
    fn components_reassemble(g in arb_graph(0, 10)) {
        let parts = g.components();
        prop_assert_eq!(parts.len(), g.component_count());
        prop_assert!(parts.iter().all(Graph::is_connected));
        let mut whole = Graph::empty(0).unwrap();
        for p in &parts {
            whole = whole.disjoint_union(p).unwrap();
        }
        prop_assert_eq!(whole.edge_count(), g.edge_count());
        prop_assert_eq!(canonical_code(&whole).unwrap(), canonical_code(&g).unwrap());
    }

    #[test]
    fn minor_chains_compose(c in arb_graph(1, 7), p1 in prop::collection::vec(any::<usize>(), 0..4), p2 in prop::collection::vec(any::<usize>(), 0..4)) {
        let b = p1.iter().fold(c.clone(), |g, &k| minor_step(&g, k));
        let a = p2.iter().fold(b.clone(), |g, &k| minor_step(&g, k));
        prop_assert!(is_minor(&b, &c));
        prop_assert!(is_minor(&a, &b));
        prop_assert!(is_minor(&a, &c));
    }

    #[test]
    fn classes_are_minor_closed(ex in select(POOL.to_vec()), g in arb_graph(0, 7), pick in any::<usize>()) {
        let s = spec(ex);
        if s.contains(&g) {
            prop_assert!(s.contains(&minor_step(&g, pick)));
        }
    }

    #[test]
    fn predicates_agree_with_minors(g in arb_graph(0, 6)) {
        let no_triangle = forbids("complete:3", &g);
        prop_assert_eq!(is_path_forest(&g), no_triangle && forbids("star:3", &g));
        prop_assert_eq!(is_star_forest(&g), no_triangle && forbids("path:4", &g));
        prop_assert_eq!(is_matching_graph(&g), forbids("path:3", &g));
        prop_assert_eq!(
            is_star_plus_isolated(&g),
            no_triangle && forbids("path:4", &g) && forbids("matching:2", &g)
        );
        prop_assert_eq!(has_at_most_one_edge(&g), forbids("path:3", &g) && forbids("matching:2", &g));
        // the smallest non-caterpillar tree has 7 vertices
        prop_assert_eq!(is_caterpillar_forest(&g), g.is_acyclic());
        if g.n() > 0 {
            let apex = (1..=g.n()).any(|v| is_path_forest(&g.delete_vertex(v).unwrap()));
            prop_assert_eq!(is_apex_path_forest(&g), apex);
        }
    }

    #[test]
    fn dsl_print_parse_fixpoint(ex in subsequence(POOL.to_vec(), 1..4)) {
        let exprs = parse_list(&ex.join(", ")).unwrap();
        for e in &exprs {
            let printed = e.to_string();
            let again: GraphExpr = printed.parse().unwrap();
            prop_assert_eq!(&again, e);
            prop_assert_eq!(again.to_string(), printed);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn classification_ignores_order(ex in subsequence(POOL.to_vec(), 1..4).prop_shuffle()) {
        let mut rev = ex.clone();
        rev.reverse();
        let a = classify(&spec(&ex.join(", "))).unwrap();
        let b = classify(&spec(&rev.join(", "))).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn minimizing_keeps_counts(ex in subsequence(POOL.to_vec(), 1..5)) {
        let s = spec(&ex.join(", "));
        let m = minimize_obstructions(&s);
        prop_assert!(m.excluded().len() <= s.excluded().len());
        for n in 0..=5 {
            prop_assert_eq!(count_members(&s, n).unwrap(), count_members(&m, n).unwrap());
        }
    }

    #[test]
    fn fewer_obstructions_never_fewer_members(ex in subsequence(POOL.to_vec(), 2..5), drop in any::<prop::sample::Index>()) {
        let s = spec(&ex.join(", "));
        let mut fewer = ex.clone();
        fewer.remove(drop.index(ex.len()));
        let t = spec(&fewer.join(", "));
        for n in 0..=5 {
            prop_assert!(count_members(&t, n).unwrap() >= count_members(&s, n).unwrap());
        }
    }
}

#[test]
fn bounded_height_series_grow_with_k() {
    let order = 12;
    let all = rooted_tree_series(order).counts();
    let mut prev = bounded_height_series(0, order).counts();
    for k in 1..=8 {
        let cur = bounded_height_series(k, order).counts();
        for n in 0..order {
            assert!(cur[n] >= prev[n], "k={k} n={n}");
            if n <= k + 1 {
                assert_eq!(cur[n], all[n], "k={k} n={n}");
            }
        }
        prev = cur;
    }
}

#[test]
fn root_intervals_nest() {
    let coarse = rho_sequence(8, 1e-6);
    let fine = rho_sequence(8, 1e-12);
    for (c, f) in coarse.iter().zip(&fine) {
        assert!(c.lo <= f.lo && f.hi <= c.hi);
        assert!(f.width() <= c.width());
    }
}

#[test]
fn gamma_k_approaches_e_from_below() {
    let rho = rho_sequence(10, 1e-12);
    let gaps: Vec<f64> = rho
        .iter()
        .map(|r| std::f64::consts::E - 1.0 / r.root())
        .collect();
    assert!(gaps.iter().all(|&d| d > 0.0));
    assert!(gaps.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn gamma_one_witnesses_grow_slowly() {
    for ex in ["complete:3, star:3", "star:3", "star:3, cycle:4"] {
        let s = spec(ex);
        assert!(gamma_one_test(&s), "{ex}");
        let t = CountTable::brute(&s, 1..=7).unwrap();
        let e7 = gamma_sequence(&t).at(7).unwrap();
        assert!(e7 <= 1.35, "{ex}: e_7 = {e7}");
    }
}

#[test]
fn large_gamma_one_obstruction_is_not_visible_at_seven() {
    // the class misses only graphs with a comb:3 minor, which need six vertices
    let s = spec("comb:3");
    assert!(gamma_one_test(&s));
    let t = CountTable::brute(&s, 1..=7).unwrap();
    assert!(gamma_sequence(&t).at(7).unwrap() > 1.35);
}

#[test]
fn exponential_class_estimates_fall() {
    let t = CountTable::brute(&spec("matching:2"), 1..=7).unwrap();
    let e = gamma_sequence(&t);
    assert!(e.at(7).unwrap() < e.at(4).unwrap());
}

#[test]
fn sandwich_on_small_classes() {
    for ex in ["complete:2", "path:3", "complete:3, star:3"] {
        let r = apex_sandwich_check(&spec(ex), 6).unwrap();
        assert!(r.holds(), "{ex}: {:?}", r.rows);
    }
}

#[test]
fn excluding_all_small_trees() {
    for t in [2, 3] {
        let exprs: Vec<String> = unlabelled_trees(t + 1)
            .iter()
            .map(|g| GraphExpr::from_graph(g).to_string())
            .collect();
        assert_eq!(semifactorial_k(&spec(&exprs.join(", "))).unwrap(), t);
    }
}
