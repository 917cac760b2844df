//! The acceptance checks as library functions, shared by the test suite and
//! the `verify` command.

use std::fmt::Display;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canon::canonical_code;
use crate::classify::{classify, ClassSpec, GrowthCategory};
use crate::dfs::dfs_forest;
use crate::dsl::generate;
use crate::enumerate::{
    apex_count, apex_count_brute, bell, double_factorial, for_each_member, forest_count,
    matchings_count, path_forest_count, star_class_count, star_forest_count, CountFormula,
    CountTable, KNOWN_FAMILIES,
};
use crate::error::{Error, Result};
use crate::gfun::{factorial, nu_root, rho_sequence, xi_root};
use crate::graph::Graph;
use crate::growth::{apex_sandwich_check, bound_audit, supermultiplicative_check};
use crate::minor::is_minor;
use crate::oracle::{all_graphs, minor_closure, unlabelled_graphs};

/// Brute-force depth: `Fast` enumerates up to 6 vertices, `Full` up to 7.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    Fast,
    Full,
}

impl Level {
    pub fn n_max(self) -> usize {
        match self {
            Level::Fast => 6,
            Level::Full => 7,
        }
    }

    /// Largest `n` in the apex sandwich.
    pub fn sandwich_n(self) -> usize {
        match self {
            Level::Fast => 4,
            Level::Full => 5,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Level::Fast => "fast",
            Level::Full => "full",
        }
    }
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Level> {
        match s {
            "fast" => Ok(Level::Fast),
            "full" => Ok(Level::Full),
            _ => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown level {s:?}, expected fast or full"),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub what: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    /// Number of individual comparisons made.
    pub checks: usize,
    pub failures: Vec<Failure>,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Recorder {
    checks: usize,
    failures: Vec<Failure>,
}

impl Recorder {
    fn new() -> Recorder {
        Recorder {
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(
        &mut self,
        ok: bool,
        what: impl Display,
        expected: impl Display,
        actual: impl Display,
    ) {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure {
                what: what.to_string(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: impl Display, expected: T, actual: T) {
        let ok = expected == actual;
        self.check(ok, what, format!("{expected:?}"), format!("{actual:?}"));
    }

    fn error(&mut self, what: impl Display, e: Error) {
        self.check(false, what, "no error", e);
    }

    fn finish(self, id: u8, name: &'static str, start: Instant) -> Outcome {
        Outcome {
            id,
            name,
            checks: self.checks,
            failures: self.failures,
            elapsed: start.elapsed(),
        }
    }
}

fn spec(s: &str) -> ClassSpec {
    ClassSpec::parse(s).expect("built-in spec parses")
}

const ROOT_TOL: f64 = 1e-12;

pub fn check_constants() -> Outcome {
    let start = Instant::now();
    let mut r = Recorder::new();
    let xi = xi_root(ROOT_TOL);
    let (xi_lo, xi_hi) = xi.inverse();
    r.check(
        xi.width() <= 1e-9,
        "root of x e^x = 1, width",
        "<= 1e-9",
        xi.width(),
    );
    r.check(
        xi.lo >= 0.5671 && xi.hi <= 0.5672,
        "root of x e^x = 1",
        "[0.5671, 0.5672]",
        format!("[{}, {}]", xi.lo, xi.hi),
    );
    r.check(
        xi_lo >= 1.7632 && xi_hi <= 1.7633,
        "xi",
        "[1.7632, 1.7633]",
        format!("[{xi_lo}, {xi_hi}]"),
    );
    r.check(
        (xi_lo - 1.76).abs() <= 1e-2,
        "xi against 1.76",
        "within 1e-2",
        xi_lo,
    );
    let nu = nu_root(ROOT_TOL);
    let (nu_lo, nu_hi) = nu.inverse();
    r.check(nu.width() <= 1e-9, "nu root width", "<= 1e-9", nu.width());
    r.check(
        nu_lo >= 2.23 && nu_hi <= 2.25,
        "nu",
        "[2.23, 2.25]",
        format!("[{nu_lo}, {nu_hi}]"),
    );
    r.check(
        (nu_lo - 2.24).abs() <= 1e-2,
        "nu against 2.24",
        "within 1e-2",
        nu_lo,
    );
    r.finish(1, "constants xi and nu", start)
}

pub fn check_rho_sequence() -> Outcome {
    let start = Instant::now();
    let mut r = Recorder::new();
    let rho = rho_sequence(10, ROOT_TOL);
    r.check(
        rho[0].lo == 1.0 && rho[0].hi == 1.0,
        "rho_0",
        "exactly 1",
        format!("{:?}", rho[0]),
    );
    let xi = xi_root(ROOT_TOL);
    r.check(
        (rho[1].root() - xi.root()).abs() <= 1e-9,
        "rho_1 against the root of x e^x = 1",
        xi.root(),
        rho[1].root(),
    );
    let inv_e = (-1.0f64).exp();
    for (k, w) in rho.windows(2).enumerate() {
        r.check(
            w[1].hi < w[0].lo,
            format_args!("rho_{} < rho_{}", k + 1, k),
            w[0].lo,
            w[1].hi,
        );
        let (g0, g1) = (1.0 / w[0].root(), 1.0 / w[1].root());
        r.check(
            g1 > g0,
            format_args!("gamma_{} > gamma_{}", k + 1, k),
            g0,
            g1,
        );
    }
    for (k, x) in rho.iter().enumerate() {
        r.check(x.lo > inv_e, format_args!("rho_{k} > 1/e"), inv_e, x.lo);
        let gamma = x.inverse().1;
        r.check(
            gamma < std::f64::consts::E,
            format_args!("gamma_{k} < e"),
            "< e",
            gamma,
        );
    }
    r.finish(2, "rho_k sequence", start)
}

fn seq(v: &[u64]) -> Vec<BigUint> {
    v.iter().map(|&x| BigUint::from(x)).collect()
}

pub fn check_oracle_equivalence(level: Level) -> Outcome {
    let start = Instant::now();
    let mut r = Recorder::new();
    let n_max = level.n_max();
    for (name, ex, formula) in KNOWN_FAMILIES {
        let table = CountTable::formula(name, 0..=n_max, formula);
        match CountTable::brute(&spec(ex), 0..=n_max) {
            Ok(brute) => {
                for n in 0..=n_max {
                    r.eq(
                        format_args!("{name} = Ex({ex}) at n={n}"),
                        table.get(n).cloned(),
                        brute.get(n).cloned(),
                    );
                }
            }
            Err(e) => r.error(format_args!("Ex({ex})"), e),
        }
    }
    let m: Vec<_> = (1..=n_max).map(matchings_count).collect();
    r.eq(
        "matchings, n=1..",
        seq(&[1, 2, 4, 10, 26, 76, 232])[..n_max].to_vec(),
        m,
    );
    let f: Vec<_> = (2..=6).map(forest_count).collect();
    r.eq("forests, n=2..6", seq(&[2, 7, 38, 291, 2932]), f);
    r.finish(3, "brute force equals formula counts", start)
}

pub fn check_estimates() -> Outcome {
    let start = Instant::now();
    let mut r = Recorder::new();
    for n in 2..=12 {
        let pairs = [
            ("path forests >= n!", path_forest_count(n), factorial(n)),
            ("star forests >= B(n)", star_forest_count(n), bell(n)),
            ("matchings >= n!!", matchings_count(n), double_factorial(n)),
            (
                "star class >= 2^(n-1)",
                star_class_count(n),
                BigUint::one() << (n - 1),
            ),
        ];
        for (what, count, bound) in pairs {
            r.check(
                count >= bound,
                format_args!("{what} at n={n}"),
                &bound,
                &count,
            );
        }
    }
    r.finish(4, "lower-bound estimates", start)
}

fn golden(ex: &str, expected: GrowthCategory) -> (String, GrowthCategory) {
    (ex.to_string(), expected)
}

pub fn check_classification(level: Level) -> Outcome {
    let start = Instant::now();
    let mut r = Recorder::new();
    let semi = |k| GrowthCategory::SemiFactorial {
        k,
        lower_bound_only: false,
    };
    let cases = [
        golden("complete:3", GrowthCategory::Factorial),
        golden("path:5", GrowthCategory::AlmostFactorial),
        golden("path:3", semi(2)),
        golden("path:4, star:3", semi(3)),
        golden("matching:2", GrowthCategory::Exponential),
        golden(
            "complete:2+iso:1",
            GrowthCategory::Constant {
                value: 1,
                threshold: 3,
            },
        ),
        golden(
            "complete:1",
            GrowthCategory::Constant {
                value: 0,
                threshold: 1,
            },
        ),
    ];
    let mut audited: Vec<(String, GrowthCategory)> = Vec::new();
    for (ex, expected) in cases {
        match classify(&spec(&ex)) {
            Ok(got) => {
                r.eq(format_args!("classify Ex({ex})"), &expected, &got);
                audited.push((ex, got));
            }
            Err(e) => r.error(format_args!("classify Ex({ex})"), e),
        }
    }
    // 1 + C(n,2) + 4 C(n,3): at most one edge, or one triangle or one P_3
    let poly = [
        ("matching:2, star:3", seq(&[1, 0, 1, 4])),
        ("matching:2, star:2", seq(&[1, 0, 1])),
    ];
    for (ex, coeffs) in poly {
        match classify(&spec(ex)) {
            Ok(GrowthCategory::Polynomial(p)) => {
                r.eq(format_args!("polynomial of Ex({ex})"), &coeffs, &p.coeffs);
                audited.push((ex.to_string(), GrowthCategory::Polynomial(p)));
            }
            Ok(other) => r.check(
                false,
                format_args!("classify Ex({ex})"),
                "Polynomial",
                other.tag(),
            ),
            Err(e) => r.error(format_args!("classify Ex({ex})"), e),
        }
    }
    for (ex, category) in audited {
        match CountTable::brute(&spec(&ex), 0..=level.n_max()) {
            Ok(table) => {
                for row in bound_audit(&category, &table).rows {
                    let relation = if row.bound == "P(n)" || row.bound == "const" {
                        "="
                    } else {
                        ">="
                    };
                    r.check(
                        row.holds,
                        format_args!("Ex({ex}) at n={}", row.n),
                        format_args!("{relation} {} ({})", row.value, row.bound),
                        &row.count,
                    );
                }
            }
            Err(e) => r.error(format_args!("counting Ex({ex})"), e),
        }
    }
    r.finish(5, "classification golden table", start)
}

pub fn check_apex_sandwich(level: Level) -> Outcome {
    let start = Instant::now();
    let mut r = Recorder::new();
    let n = level.sandwich_n();
    for ex in ["complete:2", "path:3"] {
        let s = spec(ex);
        match apex_sandwich_check(&s, n + 1) {
            Ok(report) => {
                for row in &report.rows {
                    r.check(
                        row.holds(),
                        format_args!("Ex({ex}) apex sandwich at n={}", row.n),
                        format_args!("{} <= x <= {}", row.lower, row.upper),
                        &row.apex,
                    );
                }
            }
            Err(e) => r.error(format_args!("Ex({ex}) apex sandwich"), e),
        }
        // the constructive count against the test-every-graph count
        for m in 0..=n.min(5) {
            match (apex_count(&s, m), apex_count_brute(&s, m)) {
                (Ok(a), Ok(b)) => r.eq(format_args!("Ex({ex}) apex count at n={m}"), b, a),
                (Err(e), _) | (_, Err(e)) => r.error(format_args!("Ex({ex}) apex count"), e),
            }
        }
    }
    r.finish(6, "apex sandwich", start)
}

/// Random graphs for the DFS criterion: at least 1000 graphs on 1 to 12 vertices.
pub const DFS_SAMPLES: usize = 1000;

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).expect("valid edges")
}

pub fn check_dfs(level: Level) -> Outcome {
    let start = Instant::now();
    let mut r = Recorder::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x05ee_ddf5);
    for i in 0..DFS_SAMPLES {
        let n = rng.gen_range(1..=12);
        let p = rng.gen_range(0.05..0.7);
        let g = random_graph(&mut rng, n, p);
        let mut order: Vec<usize> = (1..=n).collect();
        order.shuffle(&mut rng);
        let f = dfs_forest(&g, &order).expect("order is a permutation");
        r.check(
            f.back_edge_property(&g),
            format_args!("sample {i}: non-tree edges are back edges"),
            "true",
            &g,
        );
        let h = f.height();
        let path = generate(&format!("path:{}", h + 1)).expect("valid path");
        r.check(
            is_minor(&path, &g),
            format_args!("sample {i}: height {h} gives path:{}", h + 1),
            "minor",
            &g,
        );
    }
    for k in [4, 5] {
        let s = spec(&format!("path:{k}"));
        for n in 0..=level.n_max() {
            let mut worst = 0;
            let res = for_each_member(&s, n, |g| {
                let f = crate::dfs::dfs_forest_natural(g);
                worst = worst.max(f.height() + 1);
            });
            match res {
                Ok(()) => r.check(
                    worst < k,
                    format_args!("Ex(path:{k}) at n={n}: vertices on a root path"),
                    format_args!("<= {}", k - 1),
                    worst,
                ),
                Err(e) => r.error(format_args!("Ex(path:{k}) at n={n}"), e),
            }
        }
    }
    r.finish(7, "DFS invariants", start)
}

/// Random pairs with `|V(G)| = 6` in the minor-oracle criterion.
pub const MINOR_RANDOM_PAIRS: usize = 500;

/// Minor test against the closure oracle, with the minor test passed in so
/// a deliberately broken one can be checked to fail.
pub fn check_minor_oracle_with(minor_test: &dyn Fn(&Graph, &Graph) -> bool) -> Outcome {
    let start = Instant::now();
    let mut r = Recorder::new();
    let mut patterns = Vec::new();
    for n in 0..=5 {
        for h in unlabelled_graphs(n).expect("small n") {
            patterns.push((canonical_code(&h).expect("small n"), h));
        }
    }
    for n in 0..=5 {
        for g in all_graphs(n).expect("small n") {
            let closure = minor_closure(&g).expect("small n");
            for (code, h) in &patterns {
                let expected = closure.contains(code);
                let actual = minor_test(h, &g);
                r.check(
                    expected == actual,
                    format_args!("{h} minor of {g}"),
                    expected,
                    actual,
                );
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d_696e6f72);
    for _ in 0..MINOR_RANDOM_PAIRS {
        let p = rng.gen_range(0.2..0.8);
        let g = random_graph(&mut rng, 6, p);
        let (hn, hp) = (rng.gen_range(1..=6), rng.gen_range(0.1..0.7));
        let h = random_graph(&mut rng, hn, hp);
        let expected = minor_closure(&g)
            .expect("small n")
            .contains(&canonical_code(&h).expect("small n"));
        let actual = minor_test(&h, &g);
        r.check(
            expected == actual,
            format_args!("{h} minor of {g}"),
            expected,
            actual,
        );
    }
    r.finish(8, "minor test against deletion/contraction closure", start)
}

pub fn check_minor_oracle() -> Outcome {
    check_minor_oracle_with(&is_minor)
}

pub fn check_supermultiplicative() -> Outcome {
    let start = Instant::now();
    let mut r = Recorder::new();
    let families: [(&str, CountFormula); 2] = [
        ("forests", forest_count),
        ("path forests", path_forest_count),
    ];
    for (name, f) in families {
        let report = supermultiplicative_check(&CountTable::formula(name, 1..=7, f));
        r.eq(
            format_args!("{name}: pairs m <= n with m+n <= 7"),
            12,
            report.rows.len(),
        );
        for row in report.rows {
            r.check(
                row.verdict == crate::growth::Verdict::Certified,
                format_args!("{name}: f_{} >= f_{} f_{}", row.m + row.n, row.m, row.n),
                row.rhs,
                row.lhs,
            );
        }
    }
    r.finish(9, "supermultiplicativity", start)
}

/// Every criterion at the given level, in order.
pub fn run_all(level: Level) -> Vec<Outcome> {
    vec![
        check_constants(),
        check_rho_sequence(),
        check_oracle_equivalence(level),
        check_estimates(),
        check_classification(level),
        check_apex_sandwich(level),
        check_dfs(level),
        check_minor_oracle(),
        check_supermultiplicative(),
    ]
}
