//! CLI contract tests: exit codes, output shapes, and the parser round trip.

use std::process::Command;

use num::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use greenring::cli::parse_poly;
use greenring::presented::{BasisLabel, RingElement, RingKind, RingSpec};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_greenring"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn mul_project_convert_examples() {
    let (code, stdout, _) = run(&["mul", "--kind", "radford", "--n", "2", "--m", "2", "X1", "Z"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "2*X1\n");

    let (code, stdout, _) = run(&["mul", "--kind", "grothendieck", "--n", "2", "--m", "2", "X1", "X1"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "2 + 2*Y\n");

    let (code, stdout, _) = run(&["project", "stable", "--n", "2", "--m", "2", "X1"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "0\n");

    let (code, stdout, _) = run(&["project", "grothendieck", "--n", "2", "--m", "2", "Z"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "1 + Y\n");

    let (code, stdout, _) = run(&["convert", "--n", "4", "--to", "f", "z^2"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "y*F_1 + F_3\n");

    let (code, stdout, _) = run(&["convert", "--n", "4", "--to", "monomial", "F_3 + y*F_1"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "z^2\n");
}

#[test]
fn verify_group_like_passes_for_stable_n5() {
    let (code, stdout, _) = run(&["verify", "group-like", "--kind", "stable", "--n", "5", "--tol", "1e-9"]);
    assert_eq!(code, 0, "stdout: {stdout}");
    assert!(stdout.contains("result: PASS"));
    // --kind defaults to stable for verify when only --n is given.
    let (code, stdout, _) = run(&["verify", "group-like", "--n", "5", "--tol", "1e-9"]);
    assert_eq!(code, 0, "stdout: {stdout}");
    assert!(stdout.contains("stable n=5"));
}

#[test]
fn usage_errors_exit_2() {
    // Unknown flag: clap reports usage errors with exit code 2.
    let (code, _, _) = run(&["ring", "--bogus"]);
    assert_eq!(code, 2);
    // Missing --kind/--n.
    let (code, _, stderr) = run(&["ring"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("error"));
    // Bad expression.
    let (code, _, stderr) = run(&["mul", "--kind", "stable", "--n", "3", "F_2", "q+1"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown variable"));
    // Exponent overflow.
    let (code, _, stderr) = run(&["mul", "--kind", "stable", "--n", "3", "z^2000000", "z"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("exponent overflow"));
    // Invalid ring parameters.
    let (code, _, _) = run(&["ring", "--kind", "stable", "--n", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_fusion_fails_on_radford_green_ring() {
    // The Green ring itself is a based ring but not a fusion ring: the
    // projective ideal blocks transitivity and duality.
    let (code, stdout, _) = run(&[
        "verify", "fusion", "--kind", "radford", "--n", "2", "--m", "2", "--format", "json",
    ]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["pass"], serde_json::Value::Bool(false));
    assert!(!v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn gram_from_file_round_trips() {
    let dir = std::env::temp_dir();
    let ring_path = dir.join(format!("greenring_cli_ring_{}.json", std::process::id()));
    let (code, stdout, _) = run(&["ring", "--kind", "stable", "--n", "3", "--format", "json"]);
    assert_eq!(code, 0);
    std::fs::write(&ring_path, &stdout).unwrap();

    let (code, from_file, _) = run(&["gram", "--input", ring_path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(code, 0);
    let (code, from_kind, _) = run(&["gram", "--kind", "stable", "--n", "3", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(from_file, from_kind);
    std::fs::remove_file(&ring_path).ok();
}

#[test]
fn radical_of_degenerate_toy_ring() {
    let file = serde_json::json!({
        "format_version": 1,
        "labels": ["1", "e"],
        "unit": 0,
        "involution": null,
        "constants": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1]],
    });
    let dir = std::env::temp_dir();
    let path = dir.join(format!("greenring_cli_toy_{}.json", std::process::id()));
    std::fs::write(&path, serde_json::to_string_pretty(&file).unwrap()).unwrap();
    let (code, stdout, _) = run(&["radical", "--input", path.to_str().unwrap(), "--format", "json"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["nondegenerate"], serde_json::Value::Bool(false));
    assert_eq!(v["left_rank"], serde_json::Value::from(1));
    assert_eq!(v["left_radical"][0][1], serde_json::Value::from(1));
}

#[test]
fn thread_cap_env_is_honored() {
    let out = bin()
        .env("GREENRING_THREADS", "1")
        .args(["fpdim", "--kind", "stable", "--n", "6", "--format", "csv"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let with_cap = String::from_utf8_lossy(&out.stdout).into_owned();
    let (_, without_cap, _) = run(&["fpdim", "--kind", "stable", "--n", "6", "--format", "csv"]);
    assert_eq!(with_cap, without_cap);
}

#[test]
fn parser_round_trip_on_random_rendered_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let specs = [
        RingSpec::new(RingKind::RadfordGreen, 4, 3).unwrap(),
        RingSpec::new(RingKind::Grothendieck, 4, 3).unwrap(),
        RingSpec::new(RingKind::Stable, 5, 1).unwrap(),
    ];
    for spec in specs {
        let basis = spec.basis();
        for _ in 0..500 {
            let terms = rng.gen_range(0..=5);
            let coeffs: Vec<(BasisLabel, BigInt)> = (0..terms)
                .map(|_| {
                    let label = basis[rng.gen_range(0..basis.len())];
                    (label, BigInt::from(rng.gen_range(-9i64..=9)))
                })
                .collect();
            let e = RingElement::from_coeffs(spec, coeffs).unwrap();
            let rendered = e.to_string();
            let poly = parse_poly(&rendered, spec).unwrap();
            let back = spec.reduce(&poly).unwrap();
            assert_eq!(back, e, "round trip failed on {rendered:?}");
        }
    }
}
