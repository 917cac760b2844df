//! The JSON report. Every number is a decimal string so arbitrary-precision
//! counts and `f64` intervals survive any JSON consumer unchanged.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    /// The command line after the program name.
    pub command: Vec<String>,
    /// Canonical excluded-minor list, when the command takes one.
    pub spec: Option<String>,
    pub result: Payload,
    pub version: String,
    pub elapsed_ms: String,
}

impl Report {
    /// The report with timing blanked, for comparing runs.
    pub fn without_timing(&self) -> Report {
        Report {
            elapsed_ms: String::new(),
            result: match &self.result {
                Payload::Verify(v) => Payload::Verify(VerifyResult {
                    criteria: v
                        .criteria
                        .iter()
                        .map(|c| CriterionResult {
                            elapsed_ms: String::new(),
                            ..c.clone()
                        })
                        .collect(),
                    ..v.clone()
                }),
                other => other.clone(),
            },
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Classify(ClassifyResult),
    Count(CountResult),
    Constants(ConstantsResult),
    Verify(VerifyResult),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name")]
pub enum Category {
    Factorial,
    AlmostFactorial,
    SemiFactorial {
        k: String,
        lower_bound_only: bool,
    },
    Exponential,
    Polynomial {
        /// Coefficients on the basis `C(n,0), C(n,1), …`.
        coefficients: Vec<String>,
        degree: String,
        threshold: String,
        empirical_threshold: Option<String>,
    },
    Constant {
        value: String,
        threshold: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyResult {
    pub category: Category,
    pub growth_constant_exists: bool,
    pub gamma_one: bool,
    pub minimized: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountRow {
    pub n: String,
    pub count: String,
    pub provenance: Vec<String>,
    /// `(g_n/n!)^{1/n}`; absent for `n = 0`.
    pub gamma_estimate: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountResult {
    /// Name of the closed form used alongside brute force, if any.
    pub formula: Option<String>,
    pub rows: Vec<CountRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: String,
    pub hi: String,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Interval {
        Interval {
            lo: lo.to_string(),
            hi: hi.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhoRow {
    pub k: String,
    pub rho: Interval,
    pub gamma: Interval,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnownConstant {
    pub class: String,
    pub spec: String,
    pub gamma: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantsResult {
    pub tol: String,
    /// Root of `x e^x = 1`.
    pub xi_root: Interval,
    pub xi: Interval,
    /// Smallest positive root of `z e^{z/(1-z)} = 1`.
    pub nu_root: Interval,
    pub nu: Interval,
    pub rho: Vec<RhoRow>,
    /// Limit of `γ_k`.
    pub e: String,
    pub known: Vec<KnownConstant>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureRow {
    pub what: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: String,
    pub name: String,
    pub passed: bool,
    pub checks: String,
    pub failures: Vec<FailureRow>,
    pub elapsed_ms: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyResult {
    pub level: String,
    pub passed: bool,
    pub criteria: Vec<CriterionResult>,
}
