//! End-to-end tests of the `k3mod` binary: exit codes, JSON and CSV output.

use std::path::Path;
use std::process::{Command, Output};

use k3mod::invariants::r96;
use k3mod::io::surface_params_to_json;
use k3mod::weierstrass::SurfaceParams;
use serde_json::Value;
use tempfile::TempDir;

fn k3mod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3mod")).args(args).output().expect("binary runs")
}

fn write_params(dir: &TempDir, name: &str, u: &SurfaceParams) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, surface_params_to_json(u)).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn minimal_i2() -> SurfaceParams {
    SurfaceParams::from_monomials(&[(0, 1), (8, -3)], &[(0, 1), (10, 1), (12, 2)]).unwrap()
}

#[test]
fn classify_minimal_i2_model() {
    let dir = TempDir::new().unwrap();
    let input = write_params(&dir, "i2.json", &minimal_i2());
    let out = k3mod(&["classify", "--input", &input]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = stdout_json(&out);
    assert_eq!(report["in_U"], Value::Bool(true));
    let places = report["places"].as_array().unwrap();
    let i2: Vec<_> = places.iter().filter(|p| p["kodaira"] == "I2").collect();
    assert_eq!(i2.len(), 1);
    assert_eq!(i2[0]["place"], "x");
    assert_eq!(report["euler_sum"], 24);
}

#[test]
fn classify_non_minimal_exits_one() {
    let dir = TempDir::new().unwrap();
    let u = SurfaceParams::from_monomials(&[(4, 1)], &[(6, 1)]).unwrap();
    let input = write_params(&dir, "nm.json", &u);
    let out = k3mod(&["classify", "--input", &input]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["in_U"], Value::Bool(false));
}

#[test]
fn malformed_input_exits_two_and_names_the_field() {
    let dir = TempDir::new().unwrap();
    let truncated = dir.path().join("t.json");
    std::fs::write(&truncated, "{\"g2\": [\"1\", \"0\"").unwrap();
    let out = k3mod(&["classify", "--input", truncated.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let bad = dir.path().join("bad.json");
    let mut v: Value = serde_json::from_str(&surface_params_to_json(&minimal_i2())).unwrap();
    v["g3"][4] = Value::String("seven".into());
    std::fs::write(&bad, v.to_string()).unwrap();
    let out = k3mod(&["invariant", "r96", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("g3[4]"));

    let out = k3mod(&["classify", "--input", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(k3mod(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn qseries_first_terms() {
    let out = k3mod(&["qseries", "--terms", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let rows = v["coefficients"].as_array().unwrap();
    let exps: Vec<i64> = rows.iter().map(|r| r["exponent"].as_i64().unwrap()).collect();
    let coeffs: Vec<&str> = rows.iter().map(|r| r["coefficient"].as_str().unwrap()).collect();
    assert_eq!(exps, vec![-1, 0, 1, 2]);
    assert_eq!(coeffs, vec!["1", "264", "8244", "139520"]);
}

#[test]
fn qseries_csv_output() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("e6.csv");
    let out = k3mod(&["qseries", "--terms", "3", "--series", "e6", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text, "exponent,coefficient\n0,1\n1,-504\n2,-16632\n");
}

#[test]
fn hilbert_oracle_columns_agree() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("h.csv");
    let out = k3mod(&["hilbert", "--max-degree", "24", "--oracle", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let mut reader = csv::Reader::from_path(&path).unwrap();
    let headers = reader.headers().unwrap().clone();
    assert_eq!(&headers, vec!["degree", "dim", "oracle"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 25);
    for r in &rows {
        assert_eq!(r[1], r[2], "degree {}", &r[0]);
    }
    assert_eq!(&rows[24][1], "16");
}

#[test]
fn hilbert_oracle_refused_beyond_bound() {
    let out = k3mod(&["hilbert", "--max-degree", "25", "--oracle"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("25"));
}

#[test]
fn hilbert_with_characters_json() {
    let out = k3mod(&["hilbert", "--max-degree", "8", "--with-characters"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    assert_eq!(rows[8]["dim"], "1");
    assert!(rows[8]["dim_with_characters"].is_string());
}

#[test]
fn invariant_r96_matches_library() {
    let dir = TempDir::new().unwrap();
    let u = SurfaceParams::from_i64(&[1, 0, 2, -1, 0, 3, 0, 0, 1], &[2, 1, 0, 0, -1, 0, 0, 4, 0, 0, 1, 0, 5]).unwrap();
    let input = write_params(&dir, "u.json", &u);
    let out = k3mod(&["invariant", "r96", "--input", &input]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    let expected = r96(&u).unwrap();
    assert_eq!(v["value"].as_str().unwrap(), expected.value.to_string());
    assert_eq!(v["declared_weight"], 96);
    assert_eq!(v["name"], "r96");
}

#[test]
fn invariant_on_degenerate_point_exits_one() {
    let dir = TempDir::new().unwrap();
    let u = SurfaceParams::from_monomials(&[(1, 1)], &[(1, 1)]).unwrap();
    let input = write_params(&dir, "d.json", &u);
    let out = k3mod(&["invariant", "delta264", "--input", &input]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn invariant_mod_p() {
    let dir = TempDir::new().unwrap();
    let input = write_params(&dir, "i2.json", &minimal_i2());
    let out = k3mod(&["invariant", "k552", "--input", &input, "--modulus", "1000003"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = k3mod(&["invariant", "k552", "--input", &input, "--modulus", "1000"]);
    assert_eq!(out.status.code(), Some(2));
}

fn run_verify(dir: &Path, name: &str) -> String {
    let path = dir.join(name);
    let out = k3mod(&[
        "verify",
        "--seed",
        "7",
        "--trials",
        "4",
        "--homogeneity-trials",
        "2",
        "--sl2-trials",
        "2",
        "--slices",
        "0",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn verify_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = run_verify(dir.path(), "a.json");
    let b = run_verify(dir.path(), "b.json");
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["seed"], "7");
    assert!(v["failures"].as_array().unwrap().is_empty());
}
