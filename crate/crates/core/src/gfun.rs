//! Truncated exponential generating functions with exact rational
//! coefficients, and bisection for the roots that give growth constants.

use std::ops::{Add, Mul, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_ORDER: usize = 32;
pub const DEFAULT_TOL: f64 = 1e-12;

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Power series `c_0 + c_1 z + … + c_T z^T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigRational>,
}

impl Series {
    pub fn zero(order: usize) -> Series {
        Series {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Series {
        Series::monomial(order, 0, BigRational::one())
    }

    /// The series `z`.
    pub fn z(order: usize) -> Series {
        Series::monomial(order, 1, BigRational::one())
    }

    pub fn monomial(order: usize, k: usize, c: BigRational) -> Series {
        let mut s = Series::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// `e^z`, coefficients `1/n!`.
    pub fn exp_z(order: usize) -> Series {
        Series {
            coeffs: (0..=order)
                .map(|n| BigRational::new(BigInt::one(), BigInt::from(factorial(n))))
                .collect(),
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Series {
        assert!(!coeffs.is_empty(), "a series has at least c_0");
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn same_order(&self, other: &Series) -> Result<usize> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(self.order())
    }

    fn require_zero_constant(&self) -> Result<()> {
        if self.coeffs[0].is_zero() {
            Ok(())
        } else {
            Err(Error::NonzeroConstant)
        }
    }

    pub fn try_add(&self, other: &Series) -> Result<Series> {
        self.same_order(other)?;
        Ok(Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Series) -> Result<Series> {
        self.same_order(other)?;
        Ok(Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Cauchy product truncated at the common order.
    pub fn try_mul(&self, other: &Series) -> Result<Series> {
        let t = self.same_order(other)?;
        let mut out = Series::zero(t);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=t - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `exp(f)` for `f(0) = 0`, from `(exp f)' = f' exp f`:
    /// `n g_n = Σ_{k=1}^{n} k f_k g_{n-k}`.
    pub fn exp_series(&self) -> Result<Series> {
        self.require_zero_constant()?;
        let t = self.order();
        let mut g = Series::zero(t);
        g.coeffs[0] = BigRational::one();
        for n in 1..=t {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * BigRational::from_integer(k.into()) * &g.coeffs[n - k];
                }
            }
            g.coeffs[n] = acc / BigRational::from_integer(n.into());
        }
        Ok(g)
    }

    /// `self(inner(z))` for `inner(0) = 0`, by Horner's rule.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        let t = self.same_order(inner)?;
        inner.require_zero_constant()?;
        let mut acc = Series::zero(t);
        for c in self.coeffs.iter().rev() {
            acc = acc.try_mul(inner)?;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// `1/(1 - f)` for `f(0) = 0`: `h_n = Σ_{k=1}^{n} f_k h_{n-k}`.
    pub fn quasi_inverse(&self) -> Result<Series> {
        self.require_zero_constant()?;
        let t = self.order();
        let mut h = Series::zero(t);
        h.coeffs[0] = BigRational::one();
        for n in 1..=t {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &h.coeffs[n - k];
                }
            }
            h.coeffs[n] = acc;
        }
        Ok(h)
    }

    /// `n! · c_n` when it is a nonnegative integer.
    pub fn egf_count(&self, n: usize) -> Option<BigUint> {
        let v = &self.coeffs[n] * BigRational::from_integer(BigInt::from(factorial(n)));
        if v.is_integer() && !v.is_negative() {
            v.to_integer().to_biguint()
        } else {
            None
        }
    }

    /// Coefficients `n! c_n` for `n = 0..=T`. Panics if any is not a nonnegative integer.
    pub fn counts(&self) -> Vec<BigUint> {
        (0..=self.order())
            .map(|n| {
                self.egf_count(n)
                    .unwrap_or_else(|| panic!("coefficient {n} is not a count"))
            })
            .collect()
    }
}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl $tr for &Series {
            type Output = Series;
            fn $m(self, rhs: &Series) -> Series {
                self.$inner(rhs).expect("series orders differ")
            }
        }
    };
}
forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);

/// Rooted labelled trees of height at most `k`: `F_0 = z`, `F_{j+1} = z e^{F_j}`.
pub fn bounded_height_series(k: usize, order: usize) -> Series {
    let z = Series::z(order);
    let mut f = z.clone();
    for _ in 0..k {
        f = &z * &f.exp_series().expect("F_j(0) = 0");
    }
    f
}

/// All rooted labelled trees, as the height-bounded series at height `T`
/// (a tree on at most `T + 1` vertices has height at most `T`).
pub fn rooted_tree_series(order: usize) -> Series {
    bounded_height_series(order, order)
}

/// Labelled forests: `exp(T - T²/2)` with `T` the rooted-tree series.
pub fn forest_series(order: usize) -> Series {
    let t = rooted_tree_series(order);
    let half = BigRational::new(1.into(), 2.into());
    let unrooted = &t - &(&t * &t).scale(&half);
    unrooted.exp_series().expect("zero constant term")
}

/// Path forests: `exp(z + z²/(2(1-z)))`; a path on `k ≥ 2` vertices has `k!/2` labellings.
pub fn path_forest_series(order: usize) -> Series {
    let half = BigRational::new(1.into(), 2.into());
    let mut coeffs = vec![BigRational::zero(); order + 1];
    for (k, c) in coeffs.iter_mut().enumerate().skip(1) {
        *c = if k == 1 {
            BigRational::one()
        } else {
            half.clone()
        };
    }
    Series::from_coeffs(coeffs)
        .exp_series()
        .expect("zero constant term")
}

/// Star forests: `exp(z e^z - z²/2)`.
pub fn star_forest_series(order: usize) -> Series {
    let stars = &Series::z(order) * &Series::exp_z(order);
    let fix = Series::monomial(order, 2, BigRational::new(1.into(), 2.into()));
    (&stars - &fix).exp_series().expect("zero constant term")
}

/// Matchings: `exp(z + z²/2)`.
pub fn matching_series(order: usize) -> Series {
    let s = &Series::z(order) + &Series::monomial(order, 2, BigRational::new(1.into(), 2.into()));
    s.exp_series().expect("zero constant term")
}

/// Set partitions: `exp(e^z - 1)`.
pub fn bell_series(order: usize) -> Series {
    let inner = &Series::exp_z(order) - &Series::one(order);
    inner.exp_series().expect("zero constant term")
}

/// Sequences of rooted stars (rooted caterpillars): `1/(1 - z e^z)`.
pub fn caterpillar_series(order: usize) -> Series {
    (&Series::z(order) * &Series::exp_z(order))
        .quasi_inverse()
        .expect("zero constant term")
}

/// `F_k(x)` evaluated through `x ↦ x e^{F_{k-1}(x)}`.
pub fn eval_bounded_height(k: usize, x: f64) -> f64 {
    let mut y = x;
    for _ in 0..k {
        y = x * y.exp();
    }
    y
}

/// A bracketing interval around a root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    pub lo: f64,
    pub hi: f64,
}

impl RootResult {
    pub fn root(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// The interval `[1/hi, 1/lo]` containing the inverse of the root.
    pub fn inverse(&self) -> (f64, f64) {
        (1.0 / self.hi, 1.0 / self.lo)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Bisection on `[lo, hi]`. `f(lo)` and `f(hi)` must differ in sign; the
/// sign change is kept at every step until the width is at most `tol`.
pub fn smallest_positive_root(
    f: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<RootResult> {
    let (mut lo, mut hi) = (lo, hi);
    let flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(RootResult { lo, hi: lo });
    }
    if fhi == 0.0 {
        return Ok(RootResult { lo: hi, hi });
    }
    if !(flo.signum() != fhi.signum()) || flo.is_nan() || fhi.is_nan() {
        return Err(Error::NoSignChange { lo, hi });
    }
    let neg_at_lo = flo < 0.0;
    while hi - lo > tol {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(RootResult { lo: mid, hi: mid });
        }
        if (fm < 0.0) == neg_at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(RootResult { lo, hi })
}

/// The root of `x e^x = 1`; its inverse is ξ.
pub fn xi_root(tol: f64) -> RootResult {
    smallest_positive_root(|x| x * x.exp() - 1.0, 0.0, 1.0, tol).expect("bracket (0,1)")
}

/// The smallest positive root of `z e^{z/(1-z)} = 1`; its inverse is ν.
pub fn nu_root(tol: f64) -> RootResult {
    // f(0.9) = 0.9 e^9 - 1 > 0
    smallest_positive_root(|z| z * (z / (1.0 - z)).exp() - 1.0, 0.0, 0.9, tol)
        .expect("bracket (0,0.9)")
}

/// `ρ_k` with `F_k(ρ_k) = 1`, for `k = 0..=k_max`.
pub fn rho_sequence(k_max: usize, tol: f64) -> Vec<RootResult> {
    let lo = (-1.0f64).exp();
    (0..=k_max)
        .map(|k| {
            smallest_positive_root(|x| eval_bounded_height(k, x) - 1.0, lo, 1.0, tol)
                .expect("F_k(1/e) < 1 <= F_k(1)")
        })
        .collect()
}

/// Nearest `f64` to a rational, for reports.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        let (n, d) = (q.numer(), q.denom());
        let shift = n.bits().max(d.bits()).saturating_sub(1000) as usize;
        let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Exact `(g / n!)` as a rational.
pub fn over_factorial(g: &BigUint, n: usize) -> BigRational {
    BigRational::new(BigInt::from(g.clone()), BigInt::from(factorial(n)))
}
