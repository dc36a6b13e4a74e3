use std::process::{Command, Output};

use igusa::ZetaFunction;

fn igusa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_igusa"))
        .args(args)
        .env_remove("IGUSA_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn zeta_of_x() {
    let out = igusa(&["zeta", "--poly", "0,1", "-p", "5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("(4) / (5 - t)"), "{}", stdout(&out));
}

#[test]
fn zeta_without_integral_roots_is_one() {
    let out = igusa(&["zeta", "--poly", "-1,2", "-p", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("(1) / (1)"));
}

#[test]
fn irreducible_quadratic_exits_2() {
    let out = igusa(&["zeta", "--poly", "1,0,1", "-p", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("x^2 + 1"));
}

#[test]
fn composite_prime_exits_3() {
    let out = igusa(&["zeta", "--poly", "0,1", "-p", "9"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(
        igusa(&["zeta", "--poly", "1,y", "-p", "3"]).status.code(),
        Some(64)
    );
    assert_eq!(
        igusa(&["zeta", "--poly", "5", "-p", "3"]).status.code(),
        Some(64)
    );
    assert_eq!(igusa(&["nope"]).status.code(), Some(64));
}

#[test]
fn counts_of_x_squared_minus_one() {
    let out = igusa(&["nm", "--poly", "-1,0,1", "-p", "2", "-u", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1 1 2 4\n");
}

#[test]
fn tree_of_x_is_a_three_node_stalk() {
    let out = igusa(&["tree", "--poly", "0,1", "-p", "3", "--dot"]);
    assert!(out.status.success());
    let dot = stdout(&out);
    assert!(dot.starts_with("digraph tree {"));
    assert_eq!(dot.matches("[label=").count(), 3);
    assert_eq!(dot.matches(" -> ").count(), 2);
    assert!(dot.contains("\"2/0 [1, 0, 2]\""));
}

#[test]
fn keystream_is_deterministic() {
    let args = ["keystream", "--poly", "-6,11,-6,1", "-p", "5", "-u", "10"];
    let a = igusa(&args);
    let b = igusa(&args);
    assert!(a.status.success());
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
    let counts = igusa::series::decode_counts(&a.stdout).unwrap();
    assert_eq!(counts.len(), 11);
}

#[test]
fn machine_output_round_trips() {
    for (poly, p) in [("0,1", "5"), ("-1,0,1", "2"), ("0,0,-3,1", "3")] {
        let out = igusa(&["zeta", "--poly", poly, "-p", p, "--format", "machine"]);
        assert!(out.status.success());
        let text = stdout(&out);
        let z = ZetaFunction::from_machine(&text).unwrap();
        assert_eq!(z.to_machine(), text);
    }
}

#[test]
fn poincare_of_x() {
    // H = (1 - t Z) / (1 - t) with Z = 4 / (5 - t) gives 5 / (5 - t)
    let out = igusa(&["poincare", "--poly", "0,1", "-p", "5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "H = (5) / (5 - t)\n");
}

#[test]
fn verify_fixed_corpus_passes() {
    let out = igusa(&["verify", "--budget", "20000"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains(" 0 failed"));
}

#[test]
fn verify_catches_injected_fault() {
    let out = igusa(&[
        "verify",
        "--poly",
        "0,1",
        "-p",
        "3",
        "--budget",
        "1000",
        "--inject-fault",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("tree-vs-spf"));
}

#[test]
fn seeded_verify_is_reproducible() {
    let args = [
        "verify", "--seed", "1", "--random", "15", "--budget", "5000",
    ];
    let a = igusa(&args);
    let b = igusa(&args);
    assert!(a.status.success(), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_budget_exits_4() {
    let out = igusa(&[
        "verify", "--poly", "0,1", "-p", "2", "--budget", "100", "--m-max", "10",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn bench_small_degrees() {
    let out = igusa(&["bench", "--degrees", "4,8"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 3);
}
