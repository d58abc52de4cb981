use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypertoric")).args(args).env_remove("HYPERTORIC_GB_MAX_PAIRS").env_remove("HYPERTORIC_GB_MAX_BASIS").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn with_input(cmd: &str, file: &str, extra: &[&str]) -> Output {
    let path = fixture(file);
    let mut args = vec![cmd, "--input", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

#[test]
fn classify_e1() {
    let out = with_input("classify", "e1.json", &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let classes: Vec<(&Value, &str)> = v["classification"].as_array().unwrap().iter().map(|r| (&r["sign_vector"], r["class"].as_str().unwrap())).collect();
    let want = [("[]", "feasible-unbounded"), ("[1]", "feasible-bounded"), ("[2]", "infeasible"), ("[1,2]", "feasible-bounded")];
    for ((sv, c), (wsv, wc)) in classes.iter().zip(want) {
        assert_eq!(sv.to_string(), wsv);
        assert_eq!(*c, wc);
    }
    assert_eq!(v["diagnostics"]["simple"], true);
    assert_eq!(v["vertex_count"], 2);
}

#[test]
fn classify_e2_counts() {
    let v = json(&with_input("classify", "e2.json", &[]));
    assert_eq!((v["feasible_count"].as_u64(), v["feasible_bounded_count"].as_u64()), (Some(7), Some(3)));
    assert_eq!(v["face_count"], 19);
    assert_eq!(v["skeleton"]["edges"].as_array().unwrap().len(), 2);
}

#[test]
fn degenerate_input_exits_2() {
    let out = with_input("classify", "degenerate.json", &[]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "DegenerateHyperplane");
}

#[test]
fn malformed_and_missing_input_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"n\": 2}").unwrap();
    let out = run(&["classify", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "InvalidSequence");
    let out = run(&["classify", "--input", dir.path().join("absent.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "InputError");
}

#[test]
fn non_generic_algebra_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("ng.json");
    std::fs::write(&p, r#"{"n":2,"g_basis":[[1,-1]],"t":[0],"m_lift":[-1,0]}"#).unwrap();
    let out = run(&["algebra", "--input", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["error"]["kind"], "NonGenericParameter");
}

#[test]
fn resource_cap_exits_4() {
    let out = Command::new(env!("CARGO_BIN_EXE_hypertoric"))
        .args(["algebra", "--input", fixture("e2.json").to_str().unwrap()])
        .env("HYPERTORIC_GB_MAX_PAIRS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)["error"]["kind"], "ResourceLimit");
}

#[test]
fn dual_e1_is_clean() {
    let out = with_input("dual", "e1.json", &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["exchange"]["violations"].as_array().unwrap().len(), 0);
    assert_eq!(v["exchange"]["checked"], 4);
}

#[test]
fn dual_output_round_trips() {
    let v = json(&with_input("dual", "e1.json", &[]));
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("d.json");
    std::fs::write(&p, serde_json::to_string(&v["dual"]).unwrap()).unwrap();
    let back = json(&run(&["dual", "--input", p.to_str().unwrap()]));
    assert_eq!(back["exchange"]["violations"].as_array().unwrap().len(), 0);
    assert_eq!(back["dual"]["g_basis"], serde_json::json!([[1, -1]]));
}

#[test]
fn algebra_e1_both_sides_both_routes() {
    let out = with_input("algebra", "e1.json", &["--side", "both", "--route", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for a in v["algebras"].as_array().unwrap() {
        assert_eq!(a["total_dim"], 5);
        assert_eq!(a["cartan"], serde_json::json!([[1, 1], [1, 2]]));
    }
    assert_eq!(v["comparison"]["diffs"].as_array().unwrap().len(), 0);
    assert_eq!(v["presentation"].as_array().unwrap().len(), 2);
}

#[test]
fn algebra_whole_torus_and_e2() {
    let v = json(&with_input("algebra", "whole_torus.json", &[]));
    assert_eq!(v["algebras"][0]["total_dim"], 1);
    let v = json(&with_input("algebra", "e2.json", &["--side", "both"]));
    assert_eq!(v["comparison"]["betti_total"], 9);
    assert_eq!(v["comparison"]["derham_total"], 9);
}

#[test]
fn koszul_e1_and_e2() {
    let v = json(&with_input("koszul", "e1.json", &[]));
    assert_eq!(v["match"], true);
    assert_eq!(v["report"]["ext_totals"], serde_json::json!([[2, 1], [1, 1]]));
    let v = json(&with_input("koszul", "e2.json", &[]));
    assert_eq!((v["report"]["ext_grand_total"].as_u64(), v["report"]["dual_total_dim"].as_u64()), (Some(14), Some(14)));
}

#[test]
fn bside_text_matches_fixture() {
    let out = with_input("bside-report", "n2_diagonal.json", &["--text"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), std::fs::read_to_string(fixture("bside_n2_diagonal.txt")).unwrap());
    let v = json(&with_input("bside-report", "e1.json", &["--vertices"]));
    assert_eq!(v["order"], serde_json::json!([[1, 2], [1]]));
}

#[test]
fn selftest_runs_and_is_byte_identical() {
    let a = run(&["selftest", "--seed", "0", "--count", "8", "--n-max", "4"]);
    let b = run(&["selftest", "--seed", "0", "--count", "8", "--n-max", "4", "--jobs", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["failed"], 0);
    let empty = run(&["selftest", "--count", "0"]);
    assert_eq!(json(&empty)["passed"], 0);
    assert_eq!(empty.status.code(), Some(0));
}

#[test]
fn text_output_for_classify() {
    let out = with_input("classify", "e1.json", &["--text"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.lines().next().unwrap().starts_with("∅"));
    assert!(s.contains("vertices: 2"));
}
