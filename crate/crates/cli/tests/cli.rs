use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use cluster_growth::unfolding::UnfoldingSpec;
use cluster_growth::ExchangeMatrix;
use serde_json::Value;

fn clgrowth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clgrowth")).args(args).output().expect("binary runs")
}

fn structured(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "structured"];
    all.extend_from_slice(args);
    let out = clgrowth(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("not JSON ({e}): {}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (out.status.code().unwrap(), v)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn a2_ball_saturates() {
    let (code, v) = structured(&["growth", "--family", "A", "--n", "2", "--radius", "10"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "Finite");
    assert_eq!(v["exit_code"], 0);
    assert_eq!(v["output"]["saturated"], true);
    assert_eq!(v["output"]["vertices_visited"], 5);
    assert_eq!(v["output"]["classification"]["kind"], "Finite");
    assert!(v["input_digest"].as_str().unwrap().starts_with("sha256:"));
    assert!(v.get("wall_time_ms").is_none());
}

#[test]
fn text_output_ends_with_the_status() {
    let out = clgrowth(&["growth", "--family", "A", "--n", "2", "--radius", "10"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.trim_end().ends_with("status: Finite"), "{text}");
}

#[test]
fn x6_certificate_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("x6.json");
    let cert = cert.to_str().unwrap();
    let (code, v) = structured(&["certify", "--case", "X6", "--out", cert]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "Valid");
    assert_eq!(v["output"]["verdict"]["status"], "Valid");
    let stored: Value = serde_json::from_str(&fs::read_to_string(cert).unwrap()).unwrap();
    assert_eq!(stored["epsilon"], "1/15");
    let (code, v) = structured(&["certify", "--replay", cert]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["status"], "Replayed");
    // a tampered certificate no longer replays
    let mut json: Value = serde_json::from_str(&fs::read_to_string(cert).unwrap()).unwrap();
    json["N"] = Value::from(9);
    fs::write(cert, json.to_string()).unwrap();
    let (code, _) = structured(&["certify", "--replay", cert]);
    assert_eq!(code, 1);
}

#[test]
fn weight_five_triangle_is_infinite() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "w5.diag", "v 3\ne 1 2 5\ne 2 3 1\ne 3 1 1\n");
    let (code, v) = structured(&["class", "--input", &f]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "InfiniteDetected");
}

#[test]
fn class_sizes() {
    let (code, v) = structured(&["class", "--family", "D~", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["output"]["size"], 10);
    let (_, v) = structured(&["class", "--family", "Gamma2", "--params", "1,1"]);
    assert_eq!(v["output"]["size"], 10);
}

#[test]
fn mutate_a_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "m.txt", "3\n0 1 -1\n-1 0 1\n1 -1 0\n");
    let out = clgrowth(&["mutate", "--input", &f, "--word", "1 2", "--seed"]);
    assert!(out.status.success());
    let (code, v) = structured(&["mutate", "--family", "Markov", "--word", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["output"]["b"], serde_json::json!([[0, -2, 2], [2, 0, -2], [-2, 2, 0]]));
}

#[test]
fn bad_input_exits_with_three() {
    assert_eq!(clgrowth(&["--bogus"]).status.code(), Some(3));
    assert_eq!(clgrowth(&["growth", "--family", "Nope", "--radius", "3"]).status.code(), Some(3));
    assert_eq!(clgrowth(&["mutate", "--family", "A", "--n", "3", "--word", "4"]).status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.txt", "2\n0 1\n1 0\n");
    let (code, v) = structured(&["mutate", "--input", &f, "--word", "1"]);
    assert_eq!(code, 3);
    assert_eq!(v["status"], "InputError");
    assert_eq!(clgrowth(&["--help"]).status.code(), Some(0));
}

#[test]
fn limits_exit_with_two() {
    let (code, v) = structured(&["growth", "--family", "X6", "--radius", "12", "--max-vertices", "1000"]);
    assert_eq!(code, 2);
    assert_eq!(v["output"]["truncated"], true);
    let (code, _) = structured(&["unfold", "verify", "--pair", "f4sp1-e7-11", "--max-nodes", "10"]);
    assert_eq!(code, 2);
}

#[test]
fn exponential_growth_exits_with_one() {
    let (code, v) = structured(&["growth", "--family", "Markov", "--radius", "10"]);
    assert_eq!(code, 1);
    assert_eq!(v["output"]["classification"]["kind"], "Exponential");
}

#[test]
fn structured_output_is_reproducible() {
    let args = ["growth", "--family", "X6", "--radius", "7"];
    let run = |threads: &str| {
        let mut a = vec!["--format", "structured", "--threads", threads];
        a.extend_from_slice(&args);
        clgrowth(&a).stdout
    };
    let one = run("1");
    assert_eq!(one, run("1"));
    // the command echo differs in the thread count only
    let strip = |bytes: Vec<u8>| {
        let mut v: Value = serde_json::from_slice(&bytes).unwrap();
        v["command"] = Value::Null;
        v
    };
    assert_eq!(strip(one), strip(run("4")));
}

#[test]
fn timings_are_opt_in() {
    let (_, v) = structured(&["--timings", "growth", "--family", "A", "--n", "3", "--radius", "5"]);
    assert!(v["wall_time_ms"].is_u64());
}

#[test]
fn config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.toml", "[growth]\nmax_vertices = 50\n");
    let (code, v) = structured(&["--config", &cfg, "growth", "--family", "Markov", "--radius", "10"]);
    assert_eq!(code, 2);
    assert_eq!(v["output"]["truncated"], true);
    // flags win over the file
    let (code, _) = structured(&["--config", &cfg, "growth", "--family", "Markov", "--radius", "10", "--max-vertices", "10000"]);
    assert_eq!(code, 1);
    let bad = write(dir.path(), "bad.toml", "[growth]\nmax_vertex = 50\n");
    assert_eq!(clgrowth(&["--config", &bad, "catalog", "list"]).status.code(), Some(3));
}

#[test]
fn unfolding_commands() {
    let (code, v) = structured(&["unfold", "verify", "--pair", "g2sp31-e6-11"]);
    assert_eq!(code, 0);
    assert_eq!(v["output"]["verdict"]["status"], "Verified");
    // emit, corrupt one entry of c, verify from the file
    let out = clgrowth(&["catalog", "emit", "--pair", "bt3-dt4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let body: String = text.lines().filter(|l| !l.starts_with("status:")).map(|l| format!("{l}\n")).collect();
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.unf", &body);
    assert_eq!(clgrowth(&["unfold", "verify", "--input", &good, "--depth", "4"]).status.code(), Some(0));
    let spec = UnfoldingSpec::parse(&body).unwrap();
    let mut rows = spec.c.rows();
    let (p, q) = (0..rows.len()).flat_map(|p| (0..rows.len()).map(move |q| (p, q))).find(|&(p, q)| rows[p][q] > 0).unwrap();
    rows[p][q] = -rows[p][q];
    rows[q][p] = -rows[q][p];
    let bad = UnfoldingSpec::new(spec.b, spec.partition, ExchangeMatrix::new(rows).unwrap()).unwrap();
    let bad = write(dir.path(), "bad.unf", &bad.to_text());
    let (code, v) = structured(&["unfold", "verify", "--input", &bad]);
    assert_eq!(code, 1);
    assert_eq!(v["output"]["verdict"]["status"], "Violation");
}

#[test]
fn catalog_browsing() {
    let out = clgrowth(&["catalog", "list"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for needle in ["E8^11", "Gamma3", "F4^(2,2)", "g2ss11-e8-11"] {
        assert!(text.contains(needle), "{needle}");
    }
    let out = clgrowth(&["catalog", "emit", "--family", "D", "--n", "4", "--diagram"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("v 4"), "{text}");
}

#[test]
fn published_formula_comparison_is_reported() {
    let (code, v) = structured(&["certify", "--case", "G2*+", "--published"]);
    assert_eq!(code, 0);
    let text = v["output"].to_string();
    assert!(text.contains("Scaled"), "{text}");
}
