use std::process::Command;

use relcat::cli::run;

fn go(args: &[&str]) -> relcat::cli::Outcome {
    run(std::iter::once("relcat").chain(args.iter().copied()))
}

#[test]
fn arith_of_implication() {
    let out = go(&["arith", "p -> q", "--assign", "p=2,q=3"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout.trim(), "15");
}

#[test]
fn releq_contraction_after_symmetry() {
    let out = go(&["releq", "w[p]", "c[p,p] . w[p]"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("Equal"));
    assert!(out.stdout.contains("{(0,0), (0,1)} : 1 → 2"));
}

#[test]
fn releq_separates_identity_and_symmetry() {
    let out = go(&["releq", "id[p /\\ p]", "c[p,p]"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.starts_with("Unequal"), "{}", out.stdout);
}

#[test]
fn typecheck_prints_sequent() {
    let out = go(&["typecheck", "eps[p,q]"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.trim(), "p ∧ (p→q) ⊢ q");
    let bad = go(&["typecheck", "id[p] . id[q]"]);
    assert_eq!(bad.code, 2);
    assert!(!bad.stderr.is_empty());
}

#[test]
fn check_finds_symmetry_counterexample() {
    let out = go(&["check", "c[p,p] = id[p /\\ p]"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.starts_with("Fails"), "{}", out.stdout);
    let holds = go(&["check", "c[p,p] . w[p] = w[p]", "--json"]);
    assert_eq!(holds.code, 0);
    let v: serde_json::Value = serde_json::from_str(holds.stdout.trim()).unwrap();
    assert_eq!(v["verdict"], "holds");
}

#[test]
fn iso_verdicts() {
    let eq = go(&["iso", "(p /\\ q) -> r", "q -> (p -> r)"]);
    assert_eq!(eq.code, 0);
    assert!(eq.stdout.starts_with("S-EQUAL"), "{}", eq.stdout);
    let ne = go(&["iso", "p /\\ p", "p"]);
    assert_eq!(ne.code, 1);
    assert!(ne.stdout.starts_with("S-DIFFERENT"), "{}", ne.stdout);
}

#[test]
fn witness_verifies() {
    let out = go(&["witness-nonnatural"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
}

#[test]
fn axioms_lists_catalog() {
    let out = go(&["axioms", "--theory", "RMC", "--json"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(out.stdout.trim()).unwrap();
    assert!(v.to_string().contains("(εη ∧)"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_relcat");
    let ok = Command::new(bin)
        .args(["arith", "p", "--assign", "p=4"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).trim(), "4");
    let usage = Command::new(bin).arg("no-such-command").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}
