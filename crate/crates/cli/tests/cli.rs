//! End-to-end tests of the binary: schemas, exit codes, reproducibility.

use std::process::{Command, Output};

fn lagmp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lagmp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = lagmp(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

#[test]
fn roots_with_zero_multiplicity() {
    let csv = stdout(&["roots", "--p", "3", "--alpha", "-1/1"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "kind,re,im");
    assert_eq!(lines[1], "zero,0,0");
    let mut reals: Vec<f64> = lines[2..]
        .iter()
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    reals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let sqrt3 = 3f64.sqrt();
    assert!((reals[0] - (3.0 - sqrt3)).abs() < 1e-9);
    assert!((reals[1] - (3.0 + sqrt3)).abs() < 1e-9);
}

#[test]
fn alpha_real_uses_the_rational_approximation() {
    let exact = stdout(&["power-sums", "--p", "3", "--alpha", "1/2", "--k-max", "4"]);
    let approx = stdout(&["power-sums", "--p", "3", "--alpha-real", "0.5", "--k-max", "4"]);
    assert_eq!(exact, approx);
    assert!(exact.starts_with("k,power_sum\n1,21/2\n"));
}

#[test]
fn certify_exit_codes() {
    let ok = lagmp(&["certify-theorem2", "--k", "4", "--format", "json"]);
    assert_eq!(ok.status.code(), Some(0));
    let body: serde_json::Value =
        serde_json::from_slice(&ok.stdout).expect("valid json certificate");
    assert_eq!(body["pass"], true);
    assert_eq!(body["k"], 4);

    // k above the cap is a parameter error
    let too_big = lagmp(&["certify-theorem2", "--k", "99"]);
    assert_eq!(too_big.status.code(), Some(2));

    // unknown flags are usage errors
    let bad_flag = lagmp(&["certify-theorem2", "--nope"]);
    assert_eq!(bad_flag.status.code(), Some(2));
}

#[test]
fn fg_identity_exact_matches() {
    let out = lagmp(&["fg-identity", "--p", "2", "--n", "3", "--exact", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let body: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(body["match"], true);
    assert_eq!(body["expected"], body["computed"]);
    assert_eq!(body["expected"][0], "6");

    // enumeration limit produces a parameter error
    let too_big = lagmp(&["fg-identity", "--p", "5", "--n", "5", "--exact"]);
    assert_eq!(too_big.status.code(), Some(2));
}

#[test]
fn fg_identity_monte_carlo_schema() {
    let body: serde_json::Value = serde_json::from_str(&stdout(&[
        "fg-identity", "--p", "2", "--n", "3", "--trials", "200", "--seed", "7", "--format",
        "json",
    ]))
    .unwrap();
    for field in [
        "p",
        "n",
        "law",
        "trials",
        "seed",
        "coeff_means",
        "coeff_stderrs",
        "reference_coeffs",
        "z_scores",
    ] {
        assert!(body.get(field).is_some(), "missing {field}");
    }
    assert_eq!(body["law"], "gaussian");
}

#[test]
fn paths_table_csv() {
    let csv = stdout(&["paths", "--k-max", "4", "--l-max", "1"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "k,l,j,count");
    // Narayana rows 1 | 1,1 | 1,3,1 | 1,6,6,1
    assert_eq!(lines[1], "1,1,1,1");
    assert!(lines.contains(&"3,1,2,3"));
    assert!(lines.contains(&"4,1,2,6"));
}

#[test]
fn mp_moments_closed_form_column_is_exact() {
    let csv = stdout(&["mp-moments", "--c", "-1/2", "--k-max", "3"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "k,closed_form,quadrature,abs_diff");
    assert!(lines[1].starts_with("0,1,"));
    assert!(lines[2].starts_with("1,1/2,"));
    // every quadrature value agrees to at least 1e-8
    for line in &lines[1..] {
        let diff: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(diff < 1e-8, "line {line}");
    }
}

#[test]
fn converge_header_matches_schema() {
    let csv = stdout(&["converge", "--c", "0", "--p-list", "10,20", "--k-max", "2"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "p,alpha,k,empirical_moment,mp_moment,abs_error");
    assert_eq!(lines.len(), 1 + 4);
    assert!(lines[1].starts_with("10,0,1,"));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = std::env::temp_dir();
    let a = dir.join("lagmp_cli_test_a.csv");
    let b = dir.join("lagmp_cli_test_b.csv");
    for (path, _) in [(&a, 0), (&b, 1)] {
        let out = lagmp(&[
            "wishart-esd",
            "--p",
            "8",
            "--n",
            "16",
            "--trials",
            "50",
            "--seed",
            "3",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert!(!bytes_a.is_empty());
    assert_eq!(bytes_a, bytes_b);
    let _ = std::fs::remove_file(&a);
    let _ = std::fs::remove_file(&b);
}

#[test]
fn fixed_point_residuals_are_tiny() {
    let csv = stdout(&["fixed-point", "--c", "1", "--grid", "20"]);
    for line in csv.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        let residual: f64 = fields[2].parse().unwrap();
        let identity: f64 = fields[4].parse().unwrap();
        assert!(residual.abs() <= 1e-12);
        assert!(identity.abs() <= 1e-12);
    }
}

#[test]
fn domain_errors_are_parameter_errors() {
    assert_eq!(lagmp(&["mp-moments", "--c", "-3/2"]).status.code(), Some(2));
    assert_eq!(lagmp(&["roots", "--p", "0", "--alpha", "1"]).status.code(), Some(2));
    assert_eq!(
        lagmp(&["converge", "--c", "0", "--p-list", ""]).status.code(),
        Some(2)
    );
}
