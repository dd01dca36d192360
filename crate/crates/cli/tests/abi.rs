//! Command-line contract: exit codes, JSON schema and determinism.

use std::process::{Command, Output};

use serde_json::Value;

fn cmfactor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmfactor")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn gz_json_report() {
    let o = cmfactor(&["gz", "--d1", "-3", "--d2", "-163", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in ["d1", "d2", "lhs_log", "rhs_log", "residual", "product_integer", "factorization", "status"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["product_integer"], "-262537412640768000");
    assert_eq!(v["status"], "ok");
    let f: Vec<(u64, u64)> = v["factorization"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| (x["p"].as_u64().unwrap(), x["e"].as_u64().unwrap()))
        .collect();
    assert_eq!(f, vec![(2, 18), (3, 3), (5, 3), (23, 3), (29, 3)]);
}

#[test]
fn json_is_deterministic() {
    let args = ["gz", "--d1", "-7", "--d2", "-43", "--json", "--prec", "256"];
    let a = cmfactor(&args);
    let b = cmfactor(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    // ⌊256·log₁₀2⌋ = 77 significant digits
    let mant = v["lhs_log"].as_str().unwrap().split('e').next().unwrap().replace(['.', '-'], "");
    assert_eq!(mant.len(), 77);
}

#[test]
fn out_file_matches_stdout() {
    let path = std::env::temp_dir().join(format!("cmfactor-out-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let o = cmfactor(&["yz", "--d1", "-7", "--d2", "-15", "--json", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, stdout(&o));
}

#[test]
fn hypothesis_violation_exit_code() {
    let o = cmfactor(&["yz", "--d1", "-7", "--d2", "-7"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("coprime"));
    let o = cmfactor(&["yz", "--d1", "-3", "--d2", "-7"]);
    assert_eq!(o.status.code(), Some(3));
    let o = cmfactor(&["class-poly", "--d", "-12"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn precision_exhausted_exit_code() {
    let o = cmfactor(&["gz", "--d1", "-3", "--d2", "-163", "--prec", "8"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn borcherds_check() {
    let o = cmfactor(&["borcherds-check", "--case", "weber", "--order", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = cmfactor(&["borcherds-check", "--case", "eta2", "--order", "4", "--order2", "6"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn rho_listing() {
    let o = cmfactor(&["rho", "--d1", "-3", "--d2", "-163", "--m", "21"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("Diff(t) = {p3(ramified)}"), "{s}");
    assert!(s.contains("contribution = 1·log3"), "{s}");
}

#[test]
fn class_poly_and_whittaker() {
    let o = cmfactor(&["class-poly", "--d", "-4"]);
    assert_eq!(stdout(&o).trim(), "X - 1728");
    let o = cmfactor(&["whittaker", "--a", "0", "--ord", "3"]);
    assert!(stdout(&o).contains("W(0) = 1\n"));
    let o = cmfactor(&["whittaker", "--a", "1", "--ord", "0"]);
    assert!(stdout(&o).contains("W(0) = 0\n"));
}

#[test]
fn threads_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_cmfactor"))
        .args(["gz", "--d1", "-4", "--d2", "-7"])
        .env("CMFACTOR_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors() {
    let o = cmfactor(&["gz", "--d1", "x", "--d2", "-7"]);
    assert_eq!(o.status.code(), Some(1));
    let o = cmfactor(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
}
