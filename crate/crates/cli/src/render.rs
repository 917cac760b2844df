//! Human-readable tables and CSV.

use std::fmt::Write;

use crate::report::*;

pub fn human(r: &Report) -> String {
    let mut out = String::new();
    if let Some(spec) = &r.spec {
        let _ = writeln!(out, "class      Ex({spec})");
    }
    match &r.result {
        Payload::Classify(c) => classify(&mut out, c),
        Payload::Count(c) => count(&mut out, c),
        Payload::Constants(c) => constants(&mut out, c),
        Payload::Verify(v) => verify(&mut out, v),
    }
    out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn classify(out: &mut String, c: &ClassifyResult) {
    let line = match &c.category {
        Category::Factorial => "Factorial".to_string(),
        Category::AlmostFactorial => "AlmostFactorial".to_string(),
        Category::SemiFactorial {
            k,
            lower_bound_only,
        } => {
            let bound = if *lower_bound_only {
                " (lower bound, search cap reached)"
            } else {
                ""
            };
            format!("SemiFactorial k={k}{bound}")
        }
        Category::Exponential => "Exponential".to_string(),
        Category::Polynomial {
            coefficients,
            degree,
            threshold,
            empirical_threshold,
        } => {
            let terms: Vec<String> = coefficients
                .iter()
                .enumerate()
                .filter(|(_, c)| c.as_str() != "0")
                .map(|(m, c)| format!("{c}·C(n,{m})"))
                .collect();
            let empirical = empirical_threshold
                .as_ref()
                .map(|t| format!(", matches counts from n={t}"))
                .unwrap_or_default();
            format!(
                "Polynomial degree {degree}: g_n = {} for n >= {threshold}{empirical}",
                terms.join(" + ")
            )
        }
        Category::Constant { value, threshold } => {
            format!("Constant: g_n = {value} for n >= {threshold}")
        }
    };
    let _ = writeln!(out, "category   {line}");
    let _ = writeln!(
        out,
        "growth constant exists (2-connected obstructions)  {}",
        yes_no(c.growth_constant_exists)
    );
    let _ = writeln!(
        out,
        "growth constant 1 test                            {}",
        yes_no(c.gamma_one)
    );
    let _ = writeln!(out, "minimal obstructions  {}", c.minimized.join(", "));
}

fn count(out: &mut String, c: &CountResult) {
    if let Some(f) = &c.formula {
        let _ = writeln!(out, "formula    {f}");
    }
    let _ = writeln!(
        out,
        "{:>3}  {:>22}  {:>10}  provenance",
        "n", "count", "gamma_n"
    );
    for row in &c.rows {
        let gamma = row
            .gamma_estimate
            .as_ref()
            .and_then(|g| g.parse::<f64>().ok())
            .map(|g| format!("{g:.6}"))
            .unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "{:>3}  {:>22}  {:>10}  {}",
            row.n,
            row.count,
            gamma,
            row.provenance.join("+")
        );
    }
}

fn interval(i: &Interval) -> String {
    format!("[{}, {}]", i.lo, i.hi)
}

fn constants(out: &mut String, c: &ConstantsResult) {
    let _ = writeln!(out, "root of x e^x = 1            {}", interval(&c.xi_root));
    let _ = writeln!(out, "xi                           {}", interval(&c.xi));
    let _ = writeln!(out, "root of z e^(z/(1-z)) = 1    {}", interval(&c.nu_root));
    let _ = writeln!(out, "nu                           {}", interval(&c.nu));
    let _ = writeln!(out, "\n{:>3}  {:<42}  gamma_k = 1/rho_k", "k", "rho_k");
    for row in &c.rho {
        let _ = writeln!(
            out,
            "{:>3}  {:<42}  {}",
            row.k,
            interval(&row.rho),
            interval(&row.gamma)
        );
    }
    let _ = writeln!(out, "limit of gamma_k: e = {}", c.e);
    let _ = writeln!(out, "\nknown growth constants");
    for k in &c.known {
        let _ = writeln!(out, "  {:<14} Ex({})  {}", k.class, k.spec, k.gamma);
    }
}

fn verify(out: &mut String, v: &VerifyResult) {
    for c in &v.criteria {
        let status = if c.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{status} [{}] {} ({} checks, {} ms)",
            c.id, c.name, c.checks, c.elapsed_ms
        );
        for f in &c.failures {
            let _ = writeln!(
                out,
                "    {}: expected {}, got {}",
                f.what, f.expected, f.actual
            );
        }
    }
    let _ = writeln!(
        out,
        "{} at level {}",
        if v.passed {
            "all criteria passed"
        } else {
            "verification FAILED"
        },
        v.level
    );
}

/// `n,count,provenance`, one row per size. Other payloads have no CSV form.
pub fn csv(r: &Report) -> Option<String> {
    let Payload::Count(c) = &r.result else {
        return None;
    };
    let mut out = String::from("n,count,provenance\n");
    for row in &c.rows {
        let _ = writeln!(out, "{},{},{}", row.n, row.count, row.provenance.join(";"));
    }
    Some(out)
}
