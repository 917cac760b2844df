//! Growth-constant diagnostics and exact inequality checks on count tables.
//!
//! Every inequality is decided in integer or rational arithmetic; floats only
//! appear in the report columns.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::classify::{binomial, ClassSpec, GrowthCategory};
use crate::enumerate::{apex_count, bell, count_members, double_factorial, CountTable};
use crate::error::{Error, Result};
use crate::gfun::{factorial, over_factorial, rational_to_f64};

/// Natural log of a positive big integer.
pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits").ln();
    }
    let shift = bits - 900;
    (x >> shift).to_f64().expect("fits").ln() + shift as f64 * std::f64::consts::LN_2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trend {
    Start,
    Up,
    Down,
    Flat,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GammaPoint {
    pub n: usize,
    /// `(g_n / n!)^{1/n}`, or 0 when `g_n = 0`.
    pub estimate: f64,
    /// `g_n / (n g_{n-1})` when `g_{n-1}` is present and nonzero.
    pub ratio: Option<f64>,
    pub trend: Trend,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GammaEstimate {
    pub points: Vec<GammaPoint>,
}

impl GammaEstimate {
    pub fn at(&self, n: usize) -> Option<f64> {
        self.points.iter().find(|p| p.n == n).map(|p| p.estimate)
    }
}

/// `e_n = (g_n/n!)^{1/n}` for every `n ≥ 1` in the table. No extrapolation.
pub fn gamma_sequence(counts: &CountTable) -> GammaEstimate {
    let mut points: Vec<GammaPoint> = Vec::new();
    for (n, g) in counts.iter() {
        if n == 0 {
            continue;
        }
        let estimate = if g.is_zero() {
            0.0
        } else {
            ((ln_big(g) - ln_big(&factorial(n))) / n as f64).exp()
        };
        let ratio = counts
            .get(n - 1)
            .filter(|prev| !prev.is_zero())
            .map(|prev| {
                let q = BigRational::new(
                    BigInt::from(g.clone()),
                    BigInt::from(prev.clone() * BigUint::from(n)),
                );
                rational_to_f64(&q)
            });
        let trend = match points.last() {
            Some(p) if p.n + 1 == n => {
                if estimate > p.estimate {
                    Trend::Up
                } else if estimate < p.estimate {
                    Trend::Down
                } else {
                    Trend::Flat
                }
            }
            _ => Trend::Start,
        };
        points.push(GammaPoint {
            n,
            estimate,
            ratio,
            trend,
        });
    }
    GammaEstimate { points }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SandwichRow {
    pub n: usize,
    /// `2^n g_n`
    pub lower: BigUint,
    /// `|AG_{n+1}|`
    pub apex: BigUint,
    /// `(n+1) 2^n g_n`
    pub upper: BigUint,
}

impl SandwichRow {
    pub fn holds(&self) -> bool {
        self.lower <= self.apex && self.apex <= self.upper
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SandwichReport {
    pub rows: Vec<SandwichRow>,
}

impl SandwichReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(SandwichRow::holds)
    }
}

/// Largest `n_max` accepted by [`apex_sandwich_check`].
pub const MAX_SANDWICH_N: usize = 7;

/// `2^n g_n ≤ |AG_{n+1}| ≤ (n+1) 2^n g_n` for `0 ≤ n < n_max`.
pub fn apex_sandwich_check(spec: &ClassSpec, n_max: usize) -> Result<SandwichReport> {
    if n_max > MAX_SANDWICH_N {
        return Err(Error::SizeCap {
            n: n_max,
            cap: MAX_SANDWICH_N,
        });
    }
    let mut rows = Vec::new();
    for n in 0..n_max {
        let g = count_members(spec, n)?;
        let lower = (BigUint::one() << n) * &g;
        let upper = BigUint::from(n + 1) * &lower;
        rows.push(SandwichRow {
            n,
            lower,
            apex: apex_count(spec, n + 1)?,
            upper,
        });
    }
    Ok(SandwichReport { rows })
}

/// Terms of the series for `e²` used in the certified enclosure.
pub const E_SQUARED_TERMS: usize = 40;

/// Rational `lo < e² < hi` from the first `terms` terms of `Σ 2^k/k!` and a
/// geometric bound on the tail.
pub fn e_squared_bounds(terms: usize) -> (BigRational, BigRational) {
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    for k in 0..terms {
        sum += &term;
        term =
            term * BigRational::from_integer(2.into()) / BigRational::from_integer((k + 1).into());
    }
    // term = 2^K/K!; the tail is at most term / (1 - 2/(K+1))
    let k = terms as i64;
    let tail = &term * BigRational::new((k + 1).into(), (k - 1).into());
    let hi = &sum + tail;
    (sum, hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Certified,
    Refuted,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SupermultRow {
    pub m: usize,
    pub n: usize,
    /// `f_{m+n}` with `e²` at its midpoint, for display.
    pub lhs: f64,
    /// `f_m f_n` with `e²` at its midpoint, for display.
    pub rhs: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SupermultReport {
    pub e_squared: (BigRational, BigRational),
    pub rows: Vec<SupermultRow>,
}

impl SupermultReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.verdict == Verdict::Certified)
    }
}

/// `f_{m+n} ≥ f_m f_n` for `f_n = g_n/(e² n!)` and all `m, n ≥ 1` with
/// `m + n` in the table. With `a_n = g_n/n!` this reads
/// `a_{m+n} ≥ a_m a_n / e²`; it is certified against the lower end of the
/// `e²` enclosure and refuted against the upper end.
pub fn supermultiplicative_check(counts: &CountTable) -> SupermultReport {
    let (lo, hi) = e_squared_bounds(E_SQUARED_TERMS);
    let mid = (&lo + &hi) / BigRational::from_integer(2.into());
    let a = |n: usize| counts.get(n).map(|g| over_factorial(g, n));
    let n_max = counts.sizes().into_iter().max().unwrap_or(0);
    let mut rows = Vec::new();
    for total in 2..=n_max {
        let Some(a_total) = a(total) else { continue };
        for m in 1..total {
            let n = total - m;
            if m > n {
                break;
            }
            let (Some(am), Some(an)) = (a(m), a(n)) else {
                continue;
            };
            let prod = &am * &an;
            let verdict = if a_total >= &prod / &lo {
                Verdict::Certified
            } else if a_total < &prod / &hi {
                Verdict::Refuted
            } else {
                Verdict::Inconclusive
            };
            rows.push(SupermultRow {
                m,
                n,
                lhs: rational_to_f64(&(&a_total / &mid)),
                rhs: rational_to_f64(&(&prod / (&mid * &mid))),
                verdict,
            });
        }
    }
    SupermultReport {
        e_squared: (lo, hi),
        rows,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditRow {
    pub n: usize,
    /// Which bound: `n!`, `B(n)`, `n!!`, `2^(n-1)`, `1+C(n,2)`, `P(n)` or `const`.
    pub bound: &'static str,
    pub value: BigUint,
    pub count: BigUint,
    /// `count ≥ value`, or `count = value` for the eventual equalities.
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub category: &'static str,
    pub rows: Vec<AuditRow>,
    /// Semi-factorial only: `a_n = g_n / n^{(1-1/k) n}`, report-only.
    pub envelope: Vec<(usize, f64)>,
}

impl AuditReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

/// Checks the category's lower bound (or eventual equality) at every `n` in
/// the table.
pub fn bound_audit(category: &GrowthCategory, counts: &CountTable) -> AuditReport {
    let mut rows = Vec::new();
    let mut envelope = Vec::new();
    fn row(
        n: usize,
        bound: &'static str,
        value: BigUint,
        count: &BigUint,
        exact: bool,
    ) -> AuditRow {
        AuditRow {
            n,
            bound,
            holds: if exact {
                *count == value
            } else {
                *count >= value
            },
            value,
            count: count.clone(),
        }
    }
    for (n, g) in counts.iter() {
        match category {
            GrowthCategory::Factorial => {
                if n >= 2 {
                    rows.push(row(n, "n!", factorial(n), g, false));
                }
            }
            GrowthCategory::AlmostFactorial => rows.push(row(n, "B(n)", bell(n), g, false)),
            GrowthCategory::SemiFactorial { k, .. } => {
                rows.push(row(n, "n!!", double_factorial(n), g, false));
                if n >= 1 && !g.is_zero() {
                    let exponent = (1.0 - 1.0 / *k as f64) * n as f64 * (n as f64).ln();
                    envelope.push((n, (ln_big(g) - exponent).exp()));
                }
            }
            GrowthCategory::Exponential => {
                if n >= 1 {
                    rows.push(row(n, "2^(n-1)", BigUint::one() << (n - 1), g, false));
                }
            }
            GrowthCategory::Polynomial(p) => {
                rows.push(row(
                    n,
                    "1+C(n,2)",
                    BigUint::one() + binomial(n, 2),
                    g,
                    false,
                ));
                let from = p
                    .empirical_threshold
                    .map_or(p.threshold, |e| e.min(p.threshold));
                if n >= from {
                    rows.push(row(n, "P(n)", p.eval(n), g, true));
                }
            }
            GrowthCategory::Constant { value, threshold } => {
                if n >= *threshold {
                    rows.push(row(n, "const", BigUint::from(*value), g, true));
                }
            }
        }
    }
    AuditReport {
        category: category.tag(),
        rows,
        envelope,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;
    use crate::enumerate::{forest_count, path_forest_count};

    fn spec(s: &str) -> ClassSpec {
        ClassSpec::parse(s).unwrap()
    }

    #[test]
    fn forest_gamma() {
        let t = CountTable::formula("forests", 1..=6, forest_count);
        let e = gamma_sequence(&t);
        let e6 = e.at(6).unwrap();
        assert!((e6 - (2932.0f64 / 720.0).powf(1.0 / 6.0)).abs() < 1e-12);
        assert!((e6 - 1.26).abs() < 0.01);
        assert!(e.points.windows(2).all(|w| w[1].estimate >= w[0].estimate));
        assert!(e.points.iter().skip(2).all(|p| p.trend == Trend::Up));
        assert_eq!(e.points[0].trend, Trend::Start);
    }

    #[test]
    fn edgeless_gamma_decreases() {
        let t = CountTable::brute(&spec("complete:2"), 0..=6).unwrap();
        let e = gamma_sequence(&t);
        assert!(e.points.iter().skip(1).all(|p| p.trend == Trend::Down));
        assert!((e.at(3).unwrap() - (1.0f64 / 6.0).powf(1.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn path_forest_gamma_and_zero_marker() {
        let t = CountTable::formula("pf", 1..=4, path_forest_count);
        assert!((gamma_sequence(&t).at(4).unwrap() - 1.091).abs() < 1e-3);
        let z = CountTable::brute(&spec("complete:1"), 0..=3).unwrap();
        let e = gamma_sequence(&z);
        assert_eq!(e.at(2), Some(0.0));
        assert_eq!(e.points[1].ratio, None);
    }

    #[test]
    fn sandwich_edgeless() {
        let r = apex_sandwich_check(&spec("complete:2"), 5).unwrap();
        assert!(r.holds());
        let row3 = &r.rows[3];
        assert_eq!(
            (row3.lower.clone(), row3.apex.clone(), row3.upper.clone()),
            (
                BigUint::from(8u32),
                BigUint::from(23u32),
                BigUint::from(32u32)
            )
        );
        let row4 = &r.rows[4];
        assert_eq!(row4.apex, BigUint::from(66u32));
        assert_eq!(
            (row4.lower.clone(), row4.upper.clone()),
            (16u32.into(), 80u32.into())
        );
        assert_eq!(r.rows[0].apex, BigUint::one());
        assert!(apex_sandwich_check(&spec("complete:2"), 8).is_err());
    }

    #[test]
    fn e_squared_enclosure() {
        let (lo, hi) = e_squared_bounds(E_SQUARED_TERMS);
        let e2 = std::f64::consts::E * std::f64::consts::E;
        assert!((rational_to_f64(&lo) - e2).abs() < 1e-14);
        assert!(rational_to_f64(&(&hi - &lo)) < 1e-30);
        assert!(lo > BigRational::new(7389.into(), 1000.into()));
        assert!(hi < BigRational::new(7390.into(), 1000.into()));
    }

    #[test]
    fn supermultiplicative_forests() {
        let t = CountTable::formula("forests", 1..=7, forest_count);
        let r = supermultiplicative_check(&t);
        assert!(r.holds());
        let row = r.rows.iter().find(|x| x.m == 2 && x.n == 2).unwrap();
        assert!((row.lhs * 7.389056 - 38.0 / 24.0).abs() < 1e-4);
        assert!(row.lhs >= row.rhs);
        assert!(r.rows.iter().all(|x| x.m >= 1));
    }

    #[test]
    fn audit_examples() {
        let s = spec("complete:3");
        let t = CountTable::brute(&s, 0..=5).unwrap();
        let a = bound_audit(&classify(&s).unwrap(), &t);
        assert!(a.holds());
        let r5 = a.rows.iter().find(|r| r.n == 5).unwrap();
        assert_eq!(
            (r5.value.clone(), r5.count.clone()),
            (120u32.into(), 291u32.into())
        );

        let s = spec("path:5");
        let t = CountTable::brute(&s, 0..=5).unwrap();
        let a = bound_audit(&classify(&s).unwrap(), &t);
        assert!(a.holds());
        assert_eq!(
            a.rows.iter().find(|r| r.n == 5).unwrap().value,
            BigUint::from(52u32)
        );

        let s = spec("matching:2");
        let t = CountTable::brute(&s, 0..=5).unwrap();
        let a = bound_audit(&classify(&s).unwrap(), &t);
        assert!(a.holds());
        assert_eq!(
            a.rows.iter().find(|r| r.n == 5).unwrap().value,
            BigUint::from(16u32)
        );
    }

    #[test]
    fn audit_envelope_is_positive() {
        let s = spec("path:3");
        let t = CountTable::brute(&s, 0..=7).unwrap();
        let a = bound_audit(&classify(&s).unwrap(), &t);
        assert!(a.holds());
        assert_eq!(a.envelope.len(), 7);
        assert!(a.envelope.iter().all(|(_, v)| v.is_finite() && *v > 0.0));
    }
}
