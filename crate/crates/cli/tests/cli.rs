use std::process::{Command, Output};

use serde_json::Value;

fn relbell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relbell")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = relbell(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Field of the first data row of a CSV table.
fn field(csv: &str, name: &str) -> String {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let i = header.iter().position(|h| *h == name).unwrap_or_else(|| panic!("no column {name}"));
    row[i].to_string()
}

fn num(csv: &str, name: &str) -> f64 {
    field(csv, name).parse().unwrap()
}

#[test]
fn wigner_at_rest_is_trivial() {
    let out = stdout(&["wigner", "--beta", "0", "--delta", "2", "--theta", "1", "--phi", "2"]);
    assert_eq!(num(&out, "omega"), 0.0);
}

#[test]
fn wigner_worked_point() {
    let out = stdout(&["wigner", "--cosh-alpha", "2", "--cosh-delta", "2", "--theta", "0", "--phi", "0", "--sign", "+"]);
    assert_eq!(field(&out, "omega"), "0.643501108793");
    assert_eq!(num(&out, "axis_y"), -1.0);
    let minus = stdout(&["wigner", "--cosh-alpha", "2", "--cosh-delta", "2", "--sign", "-"]);
    assert_eq!(num(&minus, "axis_y"), 1.0);
}

#[test]
fn domain_and_usage_errors_exit_2() {
    for args in [
        &["wigner", "--beta", "1.5"][..],
        &["wigner", "--beta", "-0.1"],
        &["wigner", "--theta", "4"],
        &["wigner", "--sign", "x"],
        &["chsh", "--state", "22"],
        &["chsh", "--state", "11", "--path", "closed"],
        &["correlate", "--a", "1,0", "--b", "0,0,1"],
        &["sweep", "--param", "beta", "--to", "1.0"],
        &["sweep", "--steps", "1"],
        &["sweep", "--param", "beta", "--beta", "0.3"],
        &["frobnicate"],
        &["wigner", "--beta", "0.5", "--cosh-alpha", "2"],
    ] {
        let out = relbell(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn boost_bell_examples() {
    let rest = stdout(&["boost-bell", "--state", "00", "--beta", "0"]);
    assert_eq!(num(&rest, "c00_re"), 1.0);
    for c in ["c01_re", "c10_re", "c11_re", "c00_im", "c11_im"] {
        assert_eq!(num(&rest, c), 0.0);
    }

    let worked = stdout(&["boost-bell", "--state", "00", "--cosh-alpha", "2", "--cosh-delta", "2", "--theta", "0"]);
    assert_eq!(field(&worked, "c00_re"), "0.800000000000");
    assert_eq!(field(&worked, "c11_re"), "-0.600000000000");

    for state in ["00", "01", "10", "11"] {
        let both = stdout(&[
            "boost-bell", "--state", state, "--beta", "0.8", "--delta", "2.5", "--theta", "1.1", "--phi", "0.7", "--path", "both",
        ]);
        assert_eq!(both.lines().count(), 3);
        assert!(num(&both, "max_deviation") <= 1e-10);
    }
}

#[test]
fn chsh_rest_frame() {
    let out = stdout(&["chsh", "--state", "00", "--canonical", "--beta", "0"]);
    assert_eq!(field(&out, "chsh_closed"), "2.82842712475");
    assert_eq!(field(&out, "chsh_matrix"), "2.82842712475");
}

#[test]
fn chsh_custom_settings_use_the_matrix_path() {
    let out = stdout(&[
        "chsh", "--state", "00", "--a", "0,0,1", "--a-prime", "1,0,0", "--b", "0,0,1", "--b-prime", "1,0,0",
    ]);
    assert_eq!(field(&out, "chsh_closed"), "");
    // singlet-like correlations: zz = 1, zx = 0, xz = 0, xx = 1 → 1 + 0 + 0 − 1
    assert!(num(&out, "chsh_matrix").abs() < 1e-12);
}

#[test]
fn correlate_paths_agree() {
    let out = stdout(&[
        "correlate", "--state", "01", "--beta", "0.6", "--delta", "1.5", "--theta", "0.8", "--phi", "2.0",
        "--a", "0.3,-0.4,0.5", "--b", "-1,2,0.5",
    ]);
    assert!(num(&out, "max_deviation") < 1e-12);
    let only = stdout(&["correlate", "--state", "11", "--a", "0,0,1", "--b", "0,0,1"]);
    assert_eq!(field(&only, "expectation_closed"), "");
    assert_eq!(num(&only, "expectation_matrix"), -1.0);
}

#[test]
fn sweep_reaches_the_universal_curve() {
    let out = stdout(&["sweep", "--param", "beta", "--from", "0", "--to", "0.999", "--steps", "200"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "beta,chsh_closed,chsh_matrix,universal_curve,q_minus,q_plus");
    assert_eq!(lines.len(), 201);
    let last: Vec<f64> = lines[200].split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(last[0], 0.999);
    assert!((last[1] - 2.087335105768).abs() < 1e-9);
    assert!((last[2] - last[3]).abs() < 1e-9);
}

#[test]
fn sweep_over_phi_switches_case() {
    let out = stdout(&["sweep", "--param", "phi", "--beta", "0.7", "--delta", "2", "--theta", "1", "--steps", "9", "--state", "01"]);
    for line in out.lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert!((v[1] - v[2]).abs() < 1e-10, "{line}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["sweep", "--param", "theta", "--beta", "0.9", "--delta", "3", "--phi", "0.4", "--steps", "17", "--state", "10"];
    assert_eq!(stdout(&args), stdout(&args));
    let m = ["maximize", "--state", "01", "--beta", "0.5", "--delta", "1", "--theta", "1", "--starts", "4", "--seed", "3"];
    assert_eq!(stdout(&m), stdout(&m));
}

#[test]
fn json_uses_csv_field_names() {
    let args = ["chsh", "--state", "01", "--beta", "0.3", "--delta", "1", "--theta", "0.5"];
    let csv = stdout(&args);
    let json: Value = serde_json::from_str(&stdout(&[&args[..], &["--format", "json"]].concat())).unwrap();
    let header: Vec<&str> = csv.lines().next().unwrap().split(',').collect();
    let keys: Vec<&str> = json.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(header, keys);
    assert!((json["chsh_matrix"].as_f64().unwrap() - num(&csv, "chsh_matrix")).abs() < 1e-11);
}

#[test]
fn maximize_dominates_canonical() {
    let out = stdout(&["maximize", "--state", "00", "--beta", "0.8", "--delta", "2", "--theta", "0.7", "--phi", "1.9", "--starts", "4"]);
    assert!(num(&out, "value") >= num(&out, "canonical_value") - 1e-12);
    let grid = stdout(&["maximize", "--method", "grid"]);
    assert!((num(&grid, "value") - 8f64.sqrt()).abs() < 1e-6);
}

#[test]
fn verify_acceptance_run_passes() {
    let out = relbell(&["verify", "--suite", "all", "--samples", "1000", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 15);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn verify_rejects_zero_samples() {
    assert_eq!(relbell(&["verify", "--suite", "oracle", "--samples", "0"]).status.code(), Some(2));
}
