//! One test per acceptance criterion, run at the full level. Each test
//! writes a PASS/FAIL line straight to stderr so it shows without
//! `--nocapture`.

use std::io::Write;

use minorgrowth::verify::{self, Level, Outcome};

fn report(o: Outcome) {
    let status = if o.passed() { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr().lock();
    let _ = writeln!(
        err,
        "acceptance {status} [{}] {} ({} checks, {:.2?})",
        o.id, o.name, o.checks, o.elapsed
    );
    for f in o.failures.iter().take(10) {
        let _ = writeln!(
            err,
            "    {}: expected {}, got {}",
            f.what, f.expected, f.actual
        );
    }
    assert!(
        o.passed(),
        "{} failed with {} failures",
        o.name,
        o.failures.len()
    );
}

#[test]
fn constants_xi_and_nu() {
    let o = verify::check_constants();
    assert!(o.elapsed.as_secs_f64() < 1.0);
    report(o);
}

#[test]
fn rho_sequence_decreases_to_inverse_e() {
    let o = verify::check_rho_sequence();
    assert!(o.elapsed.as_secs_f64() < 5.0);
    report(o);
}

#[test]
fn brute_force_matches_formulas() {
    let o = verify::check_oracle_equivalence(Level::Full);
    assert!(o.elapsed.as_secs() < 60 * 5);
    report(o);
}

#[test]
fn lower_bound_estimates() {
    report(verify::check_estimates());
}

#[test]
fn classification_golden_table() {
    report(verify::check_classification(Level::Full));
}

#[test]
fn apex_sandwich() {
    report(verify::check_apex_sandwich(Level::Full));
}

#[test]
fn dfs_invariants() {
    report(verify::check_dfs(Level::Full));
}

#[test]
fn minor_test_matches_closure_oracle() {
    report(verify::check_minor_oracle());
}

#[test]
fn supermultiplicativity() {
    report(verify::check_supermultiplicative());
}
