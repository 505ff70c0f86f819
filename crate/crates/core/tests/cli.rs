use std::process::{Command, Output};

use keller_core::harness::Report;

fn keller(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_keller")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    keller(args).status.code().expect("exit code")
}

fn json(args: &[&str]) -> (i32, String) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = keller(&full);
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn exit_codes_per_subcommand() {
    let cases: &[(&[&str], i32)] = &[
        (&["jac", "--vars", "x,y", "--map", "x+y^2", "--map", "y"], 0),
        (&["dgcd", "--vars", "x,y,z", "--map", "x", "--map", "y"], 0),
        (&["dgcd", "--vars", "x,y", "--map", "x^2"], 1),
        (&["sqfree", "--vars", "x", "--poly", "x^2+1"], 0),
        (&["sqfree", "--vars", "x", "--poly", "x^2"], 1),
        (&["irreducible", "--vars", "x", "--poly", "x^2+1"], 0),
        (&["irreducible", "--vars", "x", "--poly", "x^2-1"], 1),
        (&["gcd", "--vars", "x", "--poly", "x^2-1", "--poly", "x-1"], 0),
        (&["gcd", "--vars", "x", "--poly", "x"], 2),
        (&["factor", "--vars", "x,y", "--poly", "x^2-y^2"], 0),
        (&["keller", "--vars", "x,y", "--map", "x+y^2", "--map", "y"], 0),
        (&["keller", "--vars", "x,y", "--map", "x^2", "--map", "y"], 1),
        (&["witness", "--vars", "x", "--map", "x^3+3*x", "--g", "x^2+1"], 0),
        (&["witness", "--vars", "x", "--map", "x", "--g", "x", "--max-degree", "2"], 3),
        (&["thm24", "--vars", "x", "--map", "x^3+3*x", "--g", "x^2+1"], 0),
        (&["thm24", "--vars", "x", "--map", "x^2", "--g", "x", "--max-degree", "0"], 3),
        (&["thm31", "--vars", "x,y", "--map", "x+y^2", "--map", "y", "--samples", "3"], 0),
        (&["thm31", "--vars", "x", "--map", "x^3+3*x", "--samples", "3"], 0),
        (&["thm31", "--vars", "x", "--map", "x^2", "--max-degree", "0", "--samples", "2"], 3),
        (&["membership", "--vars", "x,y", "--map", "x^2", "--map", "y", "--poly", "x^4+y"], 0),
        (&["membership", "--vars", "x,y", "--map", "x^2", "--poly", "x"], 1),
        (&["jc-falsify", "--vars", "x,y", "--map", "x+y^2", "--map", "y"], 0),
        (&["jc-falsify", "--vars", "x,y", "--map", "x^2", "--map", "y"], 2),
        (&["sqf-closed", "--vars", "x", "--map", "x^2", "--map", "x^3", "--samples", "4"], 1),
        (&["sqf-closed", "--vars", "x", "--map", "x", "--samples", "4"], 0),
        (&["root-closed", "--vars", "x", "--map", "x^2", "--map", "x^3"], 1),
        (&["root-closed", "--vars", "x", "--map", "x"], 0),
        (&["thm62", "--vars", "x", "--map", "x^2", "--map", "x^3"], 0),
        (&["jac", "--vars", "x", "--map", "x+"], 2),
        (&["jac", "--vars", "x,x", "--map", "x"], 2),
        (&["keller", "--vars", "x"], 2),
        (&["bogus"], 2),
        (&["--help"], 0),
    ];
    for (args, expected) in cases {
        assert_eq!(code(args), *expected, "keller {}", args.join(" "));
    }
}

#[test]
fn parse_errors_are_positioned() {
    let out = keller(&["sqfree", "--vars", "x,y", "--poly", "x^2 + * y"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("byte 6"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn seeded_json_is_byte_identical() {
    let args = ["thm31", "--vars", "x,y", "--map", "x+y^3", "--map", "y", "--samples", "5", "--seed", "9"];
    let (c1, a) = json(&args);
    let (c2, b) = json(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let (_, other) = json(&["thm31", "--vars", "x,y", "--map", "x+y^3", "--map", "y", "--samples", "5", "--seed", "10"]);
    assert_ne!(a, other);
}

#[test]
fn json_reports_round_trip_and_verify() {
    for args in [
        &["witness", "--vars", "x", "--map", "x^3+3*x", "--g", "x^2+1"][..],
        &["membership", "--vars", "x,y", "--map", "x^2", "--map", "y", "--poly", "x^4+y"],
        &["root-closed", "--vars", "x", "--map", "x^2", "--map", "x^3"],
        &["sqf-closed", "--vars", "x", "--map", "x^2", "--map", "x^3", "--samples", "4", "--seed", "3"],
    ] {
        let (_, text) = json(args);
        let report = Report::from_json(&text).unwrap();
        assert_eq!(report.to_json(), text);
        assert!(!report.certificates.is_empty(), "{}", args[0]);
        assert!(report.verify_certificates().unwrap(), "{}", args[0]);
    }
}

#[test]
fn documented_witness_example() {
    let (code, text) = json(&["witness", "--vars", "x", "--map", "x^3+3*x", "--g", "x^2+1"]);
    assert_eq!(code, 0);
    let report = Report::from_json(&text).unwrap();
    assert_eq!(report.verdict["witness"], "T^2 + 4");
    assert_eq!(report.verdict["certificate"], "x^2 + 4");
}
