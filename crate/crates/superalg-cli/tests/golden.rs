//! Golden-file tests: every stored report must reproduce on a clean build,
//! and identical invocations must agree byte for byte modulo the timing
//! field.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_superalg")
}

fn scenario(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/scenarios")
        .join(name);
    p.to_string_lossy().into_owned()
}

fn golden(name: &str) -> serde_json::Value {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    let text = std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    serde_json::from_str(&text).expect("golden file parses")
}

fn run(args: &[&str]) -> (serde_json::Value, bool) {
    let out = Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).expect("utf8 output");
    let mut v: serde_json::Value = serde_json::from_str(&stdout)
        .unwrap_or_else(|e| panic!("bad JSON from {args:?}: {e}\n{stdout}"));
    v["elapsed_ms"] = serde_json::json!(0);
    (v, out.status.success())
}

fn check(args: &[&str], golden_name: &str, expect_pass: bool) {
    let (got, ok) = run(args);
    assert_eq!(ok, expect_pass, "exit status for {args:?}");
    let want = golden(golden_name);
    assert_eq!(got, want, "report for {args:?} differs from {golden_name}");
}

#[test]
fn golden_rank_reports() {
    let s1 = scenario("clifford_rank.txt");
    check(
        &["orbit", "check-rank", "--scenario", &s1],
        "clifford_rank.json",
        true,
    );
    // the nilpotent odd coefficient fails constant rank, and the report says so
    let s2 = scenario("odd_point_rank.txt");
    check(
        &["orbit", "check-rank", "--scenario", &s2],
        "odd_point_rank.json",
        false,
    );
    // the full classification grid: zero and unit-plus-nilpotent pass, the
    // pure-nilpotent even coefficient fails
    let s = scenario("zero_functional_rank.txt");
    check(
        &["orbit", "check-rank", "--scenario", &s],
        "zero_functional_rank.json",
        true,
    );
    let s = scenario("soul_coefficient_rank.txt");
    check(
        &["orbit", "check-rank", "--scenario", &s],
        "soul_coefficient_rank.json",
        false,
    );
    let s = scenario("unit_plus_soul_rank.txt");
    check(
        &["orbit", "check-rank", "--scenario", &s],
        "unit_plus_soul_rank.json",
        true,
    );
}

#[test]
fn golden_running_example() {
    let s = scenario("running_isotropy.txt");
    check(
        &["orbit", "isotropy", "--scenario", &s],
        "running_isotropy.json",
        true,
    );
    let s = scenario("running_invariants.txt");
    check(
        &["orbit", "invariants", "--scenario", &s],
        "running_invariants.json",
        true,
    );
    let s = scenario("running_quotient.txt");
    check(
        &["orbit", "quotient-check", "--scenario", &s],
        "running_quotient.json",
        true,
    );
}

#[test]
fn golden_odd_heisenberg_quotient() {
    let s = scenario("oddheis_quotient.txt");
    check(
        &["orbit", "quotient-check", "--scenario", &s],
        "oddheis_quotient.json",
        true,
    );
}

#[test]
fn golden_kks_reports() {
    let s = scenario("clifford_kks.txt");
    check(
        &["kks", "matrix", "--scenario", &s],
        "clifford_kks_matrix.json",
        true,
    );
    check(
        &["kks", "kernel", "--scenario", &s],
        "clifford_kks_kernel.json",
        true,
    );
    check(
        &["kks", "closed", "--scenario", &s],
        "clifford_kks_closed.json",
        true,
    );
    let s = scenario("oddheis_kks.txt");
    check(
        &["kks", "matrix", "--scenario", &s],
        "oddheis_kks_matrix.json",
        true,
    );
    check(
        &["kks", "kernel", "--scenario", &s],
        "oddheis_kks_kernel.json",
        true,
    );
}

#[test]
fn golden_harmonic_reports() {
    check(&["plancherel", "--n", "1"], "plancherel_n1.json", true);
    check(&["plancherel", "--n", "2"], "plancherel_n2.json", true);
    check(&["plancherel", "--n", "3"], "plancherel_n3.json", true);
    check(&["rep", "clifford"], "rep_clifford.json", true);
    check(&["rep", "odd-heisenberg"], "rep_odd_heisenberg.json", true);
    check(
        &["rep", "odd-heisenberg", "--membership"],
        "rep_odd_heisenberg_membership.json",
        true,
    );
}

#[test]
fn golden_group_reports() {
    for p in ["eee", "ooe", "eoo", "oeo"] {
        check(
            &["heisenberg", "--parity", p, "brackets"],
            &format!("heisenberg_{p}_brackets.json"),
            true,
        );
    }
    check(
        &["heisenberg", "--parity", "ooe", "adstar"],
        "heisenberg_ooe_adstar.json",
        true,
    );
    check(
        &["heisenberg", "--parity", "eee", "adstar"],
        "heisenberg_eee_adstar.json",
        true,
    );
    check(&["gl", "--m", "1", "--n", "1"], "gl_1_1.json", true);
    check(&["gl", "--m", "2", "--n", "1"], "gl_2_1.json", true);
    check(
        &["forms", "--coords", "2", "--expr", "x1*dx2"],
        "forms_x1dx2.json",
        true,
    );
}

#[test]
fn reports_are_deterministic() {
    // two runs of the same command differ at most in the timing field
    let s = scenario("clifford_kks.txt");
    let (a, _) = run(&["kks", "matrix", "--scenario", &s]);
    let (b, _) = run(&["kks", "matrix", "--scenario", &s]);
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}

#[test]
fn usage_errors_exit_with_code_two() {
    let out = Command::new(bin())
        .args(["orbit", "nonsense", "--scenario", "/nonexistent"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(bin())
        .args(["kks"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}
