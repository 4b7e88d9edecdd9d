use std::fs;

use bnfacets::cli::{run, EXIT_BUDGET, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["bnfacets"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}"))
}

#[test]
fn encode_collider() {
    let v = json(&["encode", "--dag", r#"{"a": "", "b": "", "c": "ab"}"#, "--as", "char"]);
    let vec = v["vector"].as_object().unwrap();
    let keys: Vec<&str> = vec.keys().map(String::as_str).collect();
    assert_eq!(keys, ["ac", "bc", "abc"]);
}

#[test]
fn encode_rejects_cycle() {
    let (code, _, err) = call(&["encode", "--dag", r#"{"a": "b", "b": "a"}"#]);
    assert_eq!(code, EXIT_USAGE);
    assert!(!err.is_empty());
}

#[test]
fn dag_counts() {
    for (n, want) in [("2", "3"), ("3", "25"), ("4", "543")] {
        let (code, out, _) = call(&["dags", "--n", n, "--count"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains(want), "{out}");
    }
    let (_, out, _) = call(&["dags", "--n", "4", "--classes", "--count"]);
    assert!(out.contains("185"), "{out}");
}

#[test]
fn setfn_round_trip() {
    let obj = json(&["se", "from-setfn", "--n", "3", "--setfn", r#"{"ab": "1", "abc": "3"}"#]);
    let obj_text = obj["objective"].to_string();
    let back = json(&["se", "to-setfn", "--n", "3", "--objective", &obj_text]);
    let m = back.to_string();
    assert!(m.contains(r#""ab":"1""#) && m.contains(r#""abc":"3""#), "{m}");
    let check = json(&["se", "check", "--n", "3", "--objective", &obj_text]);
    assert!(check.to_string().contains("true"));
}

#[test]
fn non_se_objective_reported() {
    let (code, out, err) = call(&["se", "check", "--n", "2", "--objective", r#"{"a|b": "1"}"#]);
    assert!(code == EXIT_OK || code == EXIT_FAILED, "{err}");
    assert!(out.contains("false"), "{out}");
}

#[test]
fn cluster_char_form() {
    let v = json(&["ineq", "cluster", "--n", "4", "--C", "abcd", "--k", "2", "--mode", "char"]);
    let obj = &v["objective"];
    for t in ["abc", "abd", "acd", "bcd"] {
        assert_eq!(obj[t], "1");
    }
    assert_eq!(obj["abcd"], "-2");
    assert_eq!(v["bound"], "2");
}

#[test]
fn cluster_text_form() {
    let (code, out, _) = call(&["--format", "text", "ineq", "cluster", "--n", "3", "--C", "abc", "--k", "1", "--mode", "char"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("<= 2"), "{out}");
}

#[test]
fn cluster_rejects_bad_level() {
    let (code, _, _) = call(&["ineq", "cluster", "--n", "3", "--C", "ab", "--k", "2"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn catalog_sizes() {
    let se = json(&["ineq", "catalog", "--which", "se4", "--orbits"]).to_string();
    let specific = json(&["ineq", "catalog", "--which", "specific4"]).to_string();
    assert!(se.contains("cluster-4-2"));
    assert!(specific.contains("specific-20"));
}

#[test]
fn identity_command() {
    let v = json(&["ineq", "identity", "--s", "3", "--k", "3", "--K", "2"]);
    let text = v.to_string();
    assert!(text.contains("\"4\"") || text.contains(":4"), "{text}");
}

#[test]
fn hull_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let (code, points, _) = call(&["polytope", "points", "--n", "3", "--space", "char"]);
    assert_eq!(code, EXIT_OK);
    let pfile = dir.path().join("points.json");
    fs::write(&pfile, &points).unwrap();
    let parg = format!("@{}", pfile.display());

    let h = json(&["polytope", "hull", "--input", &parg]);
    assert_eq!(h["inequalities"].as_array().unwrap().len(), 13);
    let hfile = dir.path().join("hrep.json");
    fs::write(&hfile, h.to_string()).unwrap();
    let v = json(&["polytope", "vertices", "--input", &format!("@{}", hfile.display())]);
    assert_eq!(v["points"].as_array().unwrap().len(), 11);

    let (code, matrix, _) = call(&["polytope", "hull", "--input", &parg, "--matrix"]);
    assert_eq!(code, EXIT_OK);
    let mfile = dir.path().join("hrep.txt");
    fs::write(&mfile, matrix).unwrap();
    let v2 = json(&["polytope", "vertices", "--input", &format!("@{}", mfile.display())]);
    assert_eq!(v2["points"], v["points"]);
}

#[test]
fn hull_cache_directory() {
    let dir = tempfile::tempdir().unwrap();
    let (_, points, _) = call(&["polytope", "points", "--n", "3"]);
    let pfile = dir.path().join("p.json");
    fs::write(&pfile, points).unwrap();
    let cache = dir.path().join("cache");
    let args = ["--cache-dir", cache.to_str().unwrap(), "polytope", "hull", "--input", &format!("@{}", pfile.display())];
    let first = json(&args);
    assert!(fs::read_dir(&cache).unwrap().count() >= 1);
    assert_eq!(json(&args), first);
    assert_eq!(first["inequalities"].as_array().unwrap().len(), 17);
}

#[test]
fn budget_exhaustion_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let (_, points, _) = call(&["polytope", "points", "--n", "4", "--space", "char"]);
    let pfile = dir.path().join("p.json");
    fs::write(&pfile, points).unwrap();
    let (code, _, err) = call(&["--budget", "rays=3", "polytope", "hull", "--input", &format!("@{}", pfile.display())]);
    assert_eq!(code, EXIT_BUDGET, "{err}");
}

#[test]
fn malformed_budget_is_usage_error() {
    let (code, _, _) = call(&["--budget", "lots", "dags", "--n", "3"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn lp_export_layout() {
    let (code, lp, _) = call(&["export-lp", "--n", "3", "--clusters", "--binary"]);
    assert_eq!(code, EXIT_OK);
    let order: Vec<usize> = ["Maximize", "Subject To", "Bounds", "Binaries", "End"]
        .iter()
        .map(|s| lp.find(s).unwrap_or_else(|| panic!("{s} missing")))
        .collect();
    assert!(order.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(lp.matches("convexity_").count(), 3);
    assert_eq!(lp.matches(" cut_").count(), 5);
}

#[test]
fn verify_pipelines() {
    let v = json(&["verify", "n3"]);
    assert_eq!(v["passed"], true);
    let (code, out, _) = call(&["--format", "text", "verify", "conjecture"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.trim_end().ends_with("PASSED"));
}

#[test]
fn unknown_pipeline_is_usage_error() {
    let (code, _, _) = call(&["verify", "n7"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn version_flag() {
    let (code, out, _) = call(&["--version"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains(env!("CARGO_PKG_VERSION")));
}
