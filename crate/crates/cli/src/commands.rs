//! The four commands, each producing a [`Report`].

use std::fmt;
use std::path::Path;
use std::time::Instant;

use minorgrowth::classify::{
    classify, exists_growth_constant, gamma_one_test, minimize_obstructions, ClassSpec,
    GrowthCategory,
};
use minorgrowth::enumerate::{
    count_members, count_members_parallel, formula_for, CountTable, Provenance, MAX_COUNT_N,
};
use minorgrowth::gfun::{nu_root, rho_sequence, xi_root};
use minorgrowth::growth::gamma_sequence;
use minorgrowth::verify::{run_all, Level};

use crate::cache::CountCache;
use crate::report::*;

#[derive(Debug)]
pub enum CliError {
    /// Bad input: DSL parse errors, empty specs, sizes over the caps.
    Input(minorgrowth::Error),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(e) => e.fmt(f),
            CliError::Io(e) => write!(f, "cache: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<minorgrowth::Error> for CliError {
    fn from(e: minorgrowth::Error) -> CliError {
        CliError::Input(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Io(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn report(command: &[String], spec: Option<String>, result: Payload, start: Instant) -> Report {
    Report {
        command: command.to_vec(),
        spec,
        result,
        version: env!("CARGO_PKG_VERSION").to_string(),
        elapsed_ms: millis(start.elapsed()),
    }
}

fn millis(d: std::time::Duration) -> String {
    format!("{:.3}", d.as_secs_f64() * 1000.0)
}

pub fn category(c: &GrowthCategory) -> Category {
    match c {
        GrowthCategory::Factorial => Category::Factorial,
        GrowthCategory::AlmostFactorial => Category::AlmostFactorial,
        GrowthCategory::SemiFactorial {
            k,
            lower_bound_only,
        } => Category::SemiFactorial {
            k: k.to_string(),
            lower_bound_only: *lower_bound_only,
        },
        GrowthCategory::Exponential => Category::Exponential,
        GrowthCategory::Polynomial(p) => Category::Polynomial {
            coefficients: p.coeffs.iter().map(|c| c.to_string()).collect(),
            degree: p.degree().to_string(),
            threshold: p.threshold.to_string(),
            empirical_threshold: p.empirical_threshold.map(|t| t.to_string()),
        },
        GrowthCategory::Constant { value, threshold } => Category::Constant {
            value: value.to_string(),
            threshold: threshold.to_string(),
        },
    }
}

pub fn cmd_classify(command: &[String], exclude: &str) -> CliResult<Report> {
    let start = Instant::now();
    let spec = ClassSpec::parse(exclude)?;
    let result = ClassifyResult {
        category: category(&classify(&spec)?),
        growth_constant_exists: exists_growth_constant(&spec),
        gamma_one: gamma_one_test(&spec),
        minimized: minimize_obstructions(&spec)
            .exprs()
            .iter()
            .map(|e| e.to_string())
            .collect(),
    };
    Ok(report(
        command,
        Some(spec.canonical()),
        Payload::Classify(result),
        start,
    ))
}

/// `a..b` (inclusive) or a single size.
pub fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("invalid size {t:?} in range {s:?}"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok((lo, hi))
}

pub fn cmd_count(
    command: &[String],
    exclude: &str,
    range: (usize, usize),
    cache_path: Option<&Path>,
    workers: usize,
) -> CliResult<Report> {
    let start = Instant::now();
    let spec = ClassSpec::parse(exclude)?;
    let (lo, hi) = range;
    if hi > MAX_COUNT_N {
        return Err(minorgrowth::Error::SizeCap {
            n: hi,
            cap: MAX_COUNT_N,
        }
        .into());
    }
    let key = spec.canonical();
    let mut cache = cache_path.map(CountCache::open);
    if let Some(c) = &cache {
        if c.rebuilt {
            eprintln!("warning: count cache failed its checksum and is being rebuilt");
        }
    }
    let formula = formula_for(&spec);
    let mut table = CountTable::new(key.clone());
    for n in lo..=hi {
        let cached = cache.as_ref().and_then(|c| c.get(&key, n));
        let count = match cached {
            Some(c) => c,
            None if workers > 1 => count_members_parallel(&spec, n, workers)?,
            None => count_members(&spec, n)?,
        };
        if let Some(c) = cache.as_mut() {
            c.insert(&key, n, &count);
        }
        table.insert(n, count, Provenance::Brute)?;
        if let Some((_, f)) = formula {
            table.insert(n, f(n), Provenance::Formula)?;
        }
    }
    if let Some(c) = cache.as_mut() {
        c.save()?;
    }
    let gamma = gamma_sequence(&table);
    let rows = table
        .iter()
        .map(|(n, count)| CountRow {
            n: n.to_string(),
            count: count.to_string(),
            provenance: table
                .provenance(n)
                .into_iter()
                .flatten()
                .map(|p| p.as_str().to_string())
                .collect(),
            gamma_estimate: gamma.at(n).map(|e| e.to_string()),
        })
        .collect();
    let result = CountResult {
        formula: formula.map(|(name, _)| name.to_string()),
        rows,
    };
    Ok(report(command, Some(key), Payload::Count(result), start))
}

pub fn cmd_constants(command: &[String], k_max: usize, tol: f64) -> CliResult<Report> {
    let start = Instant::now();
    let xi = xi_root(tol);
    let nu = nu_root(tol);
    let rho = rho_sequence(k_max, tol)
        .iter()
        .enumerate()
        .map(|(k, r)| {
            let (glo, ghi) = r.inverse();
            RhoRow {
                k: k.to_string(),
                rho: Interval::new(r.lo, r.hi),
                gamma: Interval::new(glo, ghi),
            }
        })
        .collect();
    let e = std::f64::consts::E.to_string();
    let known = vec![
        KnownConstant {
            class: "path forests".into(),
            spec: "complete:3, star:3".into(),
            gamma: "1".into(),
        },
        KnownConstant {
            class: "forests".into(),
            spec: "complete:3".into(),
            gamma: e.clone(),
        },
    ];
    let (xlo, xhi) = xi.inverse();
    let (nlo, nhi) = nu.inverse();
    let result = ConstantsResult {
        tol: tol.to_string(),
        xi_root: Interval::new(xi.lo, xi.hi),
        xi: Interval::new(xlo, xhi),
        nu_root: Interval::new(nu.lo, nu.hi),
        nu: Interval::new(nlo, nhi),
        rho,
        e,
        known,
    };
    Ok(report(command, None, Payload::Constants(result), start))
}

pub fn cmd_verify(command: &[String], level: Level) -> Report {
    let start = Instant::now();
    let criteria: Vec<CriterionResult> = run_all(level)
        .into_iter()
        .map(|o| CriterionResult {
            id: o.id.to_string(),
            name: o.name.to_string(),
            passed: o.passed(),
            checks: o.checks.to_string(),
            failures: o
                .failures
                .into_iter()
                .map(|f| FailureRow {
                    what: f.what,
                    expected: f.expected,
                    actual: f.actual,
                })
                .collect(),
            elapsed_ms: millis(o.elapsed),
        })
        .collect();
    let result = VerifyResult {
        level: level.as_str().to_string(),
        passed: criteria.iter().all(|c| c.passed),
        criteria,
    };
    report(command, None, Payload::Verify(result), start)
}
