use std::process::{Command, Output};

use fused_hecke::exactnum::{int, rat};
use fused_hecke::heckecore::ElementJson;
use fused_hecke::tensorrep::{fused_r_matrix, sigma_matrix, MatrixJson, RationalMatrix};
use fused_hecke::AlgebraElement;
use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fused-hecke")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn braided_equation_exit_zero() {
    let out = bin(&["verify-ybe", "--k", "2", "--n", "3", "--q", "3/2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["holds"], true);
    assert_eq!(v["form"], "braided");
}

#[test]
fn mixed_matrix_and_classical_forms() {
    for args in [
        vec!["verify-ybe", "--k", "1", "--l", "1", "--m", "2", "--q", "2"],
        vec!["verify-ybe", "--k", "2", "--N", "2", "--q", "5/3"],
        vec!["verify-ybe", "--k", "1", "--N", "2", "--mu", "7/2", "--nu", "-5/3"],
        vec!["verify-ybe", "--k", "2", "--n", "3", "--mu", "7/2", "--nu", "9/4"],
    ] {
        let out = bin(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["holds"], true, "{args:?}");
    }
}

#[test]
fn pole_and_parse_errors_exit_two() {
    let out = bin(&["compute-r", "--k", "2", "--N", "2", "--q", "2", "--u", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let out = bin(&["qnum", "--L", "2", "--q", "x"]);
    assert_eq!(out.status.code(), Some(2));
    let out = bin(&["bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let out = bin(&["qnum", "--L", "2", "--q", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn strand_bound_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_fused-hecke"))
        .args(["verify-ybe", "--k", "2", "--n", "3"])
        .env("FUSED_HECKE_MAX_STRANDS", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FUSED_HECKE_MAX_STRANDS"));
}

#[test]
fn matrix_csv_matches_library() {
    let out = bin(&["compute-sigma", "--k", "2", "--p", "1", "--N", "2", "--q", "3/2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let m = RationalMatrix::from_csv(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(m, sigma_matrix(2, 1, 2, &rat(3, 2)).unwrap());
}

#[test]
fn matrix_json_written_to_file() {
    let dir = std::env::temp_dir().join(format!("fused-hecke-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let out = bin(&["compute-r", "--k", "2", "--N", "2", "--q", "2", "--u", "3/7", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let j: MatrixJson = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(j.matrix().unwrap(), fused_r_matrix(2, 2, &rat(3, 7), &int(2)).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn algebra_element_output_parses() {
    let out = bin(&["compute-sigma", "--k", "2", "--p", "2", "--n", "2", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["kind"], "fused");
    let e: ElementJson = serde_json::from_value(v).unwrap();
    let x = AlgebraElement::from_json(&e).unwrap();
    assert_eq!(x.strands(), 4);
    assert!(!x.is_zero());
}

#[test]
fn reproduce_every_example() {
    for ex in ["k1-hecke", "k2-coefficients", "h22-product", "k2N2-matrices"] {
        for q in ["2", "3/2", "5/3"] {
            let out = bin(&["reproduce-paper", "--example", ex, "--q", q]);
            assert_eq!(out.status.code(), Some(0), "{ex} q={q}: {}", String::from_utf8_lossy(&out.stderr));
            assert_eq!(json(&out)["match"], true);
        }
    }
}

#[test]
fn verify_algebra_with_seed() {
    let out = bin(&["verify-algebra", "--k", "2", "--n", "2", "--q", "5/3", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn qnum_reports_numbers() {
    let out = bin(&["qnum", "--L", "2", "--q", "3", "--p", "1", "--a", "1/3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["q_int"], "10/3");
    assert_eq!(v["brace_int"], "10");
    assert_eq!(v["q_binomial"], "10/3");
    assert_eq!(v["q_pochhammer"], "0");
}
