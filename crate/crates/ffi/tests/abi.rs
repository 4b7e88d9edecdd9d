use std::ffi::{CStr, CString};
use std::ptr;

use bnfacets_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { bnf_string_free(s) };
    out
}

fn last_error() -> Option<String> {
    let p = bnf_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

#[test]
fn version_is_crate_version() {
    let v = unsafe { CStr::from_ptr(bnf_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn dag_counts() {
    let mut out = 0usize;
    for (n, want) in [(1, 1), (2, 3), (3, 25), (4, 543)] {
        assert_eq!(unsafe { bnf_dag_count(n, &mut out) }, BnfStatus::Ok);
        assert_eq!(out, want);
    }
    assert_eq!(unsafe { bnf_dag_count(0, &mut out) }, BnfStatus::InvalidArgument);
    assert!(last_error().is_some());
    assert_eq!(unsafe { bnf_dag_count(3, ptr::null_mut()) }, BnfStatus::NullPointer);
}

#[test]
fn encode_chain() {
    let json = CString::new(r#"{"a": "", "b": "a", "c": "b"}"#).unwrap();
    let mut dag = ptr::null_mut();
    assert_eq!(unsafe { bnf_dag_from_json(json.as_ptr(), &mut dag) }, BnfStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { bnf_dag_encode(dag, BnfEncoding::Char, &mut s) }, BnfStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v.to_string().matches(":1").count() + v.to_string().matches(":\"1\"").count(), 2, "{v}");
    assert_eq!(unsafe { bnf_dag_encode(dag, BnfEncoding::Fam, &mut s) }, BnfStatus::Ok);
    assert!(!take(s).is_empty());
    unsafe { bnf_dag_free(dag) };
}

#[test]
fn cyclic_dag_is_rejected() {
    let json = CString::new(r#"{"a": "b", "b": "a"}"#).unwrap();
    let mut dag = ptr::null_mut();
    assert_eq!(unsafe { bnf_dag_from_json(json.as_ptr(), &mut dag) }, BnfStatus::InvalidArgument);
    assert!(dag.is_null());
    assert!(last_error().unwrap().to_lowercase().contains("cycl"));
}

#[test]
fn malformed_json_is_parse_error() {
    let json = CString::new("{not json").unwrap();
    let mut dag = ptr::null_mut();
    assert_eq!(unsafe { bnf_dag_from_json(json.as_ptr(), &mut dag) }, BnfStatus::Parse);
    assert_eq!(unsafe { bnf_dag_from_json(ptr::null(), &mut dag) }, BnfStatus::NullPointer);
}

#[test]
fn cluster_inequality_json() {
    let c = CString::new("abc").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { bnf_cluster_inequality(3, c.as_ptr(), 2, 1, &mut s) }, BnfStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["space"], "char");
    assert_eq!(unsafe { bnf_cluster_inequality(3, c.as_ptr(), 2, 7, &mut s) }, BnfStatus::InvalidArgument);
}

#[test]
fn hull_of_n3_imsets() {
    let mut v = ptr::null_mut();
    assert_eq!(unsafe { bnf_vrep_dag_points(3, 1, &mut v) }, BnfStatus::Ok);
    assert_eq!(unsafe { bnf_vrep_len(v) }, 11);
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { bnf_hull(v, 0.0, &mut h) }, BnfStatus::Ok);
    assert_eq!(unsafe { bnf_hrep_facet_count(h) }, 13);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { bnf_hrep_to_json(h, &mut s) }, BnfStatus::Ok);
    assert!(take(s).starts_with('{'));
    unsafe {
        bnf_hrep_free(h);
        bnf_vrep_free(v);
    }
}

#[test]
fn hull_of_fam_points_n3() {
    let mut v = ptr::null_mut();
    assert_eq!(unsafe { bnf_vrep_dag_points(3, 0, &mut v) }, BnfStatus::Ok);
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { bnf_hull(v, 0.0, &mut h) }, BnfStatus::Ok);
    assert_eq!(unsafe { bnf_hrep_facet_count(h) }, 17);
    unsafe {
        bnf_hrep_free(h);
        bnf_vrep_free(v);
    }
}

#[test]
fn verify_n3_report() {
    let name = CString::new("n3").unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { bnf_verify(name.as_ptr(), false, 0.0, &mut r) }, BnfStatus::Ok);
    assert!(unsafe { bnf_report_passed(r) });
    assert!(unsafe { bnf_report_check_count(r) } > 5);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { bnf_report_to_json(r, &mut s) }, BnfStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["pipeline"], "n3");
    unsafe { bnf_report_free(r) };
}

#[test]
fn unknown_pipeline() {
    let name = CString::new("n9").unwrap();
    let mut r = ptr::null_mut();
    assert_ne!(unsafe { bnf_verify(name.as_ptr(), false, 0.0, &mut r) }, BnfStatus::Ok);
    assert!(r.is_null());
}

#[test]
fn cli_bridge() {
    let args: Vec<CString> = ["--format", "json", "dags", "--n", "3", "--count"].iter().map(|a| CString::new(*a).unwrap()).collect();
    let ptrs: Vec<_> = args.iter().map(|a| a.as_ptr()).collect();
    let mut s = ptr::null_mut();
    let mut code = -1;
    assert_eq!(unsafe { bnf_cli_run(ptrs.as_ptr(), ptrs.len(), &mut s, &mut code) }, BnfStatus::Ok);
    assert_eq!(code, 0);
    assert!(take(s).contains("25"));
}

#[test]
fn cli_bridge_usage_error() {
    let args = [CString::new("nonsense").unwrap()];
    let ptrs: Vec<_> = args.iter().map(|a| a.as_ptr()).collect();
    let mut s = ptr::null_mut();
    let mut code = -1;
    assert_eq!(unsafe { bnf_cli_run(ptrs.as_ptr(), 1, &mut s, &mut code) }, BnfStatus::Ok);
    assert_eq!(code, 2);
    unsafe { bnf_string_free(s) };
    assert!(last_error().is_some());
}

#[test]
fn free_functions_accept_null() {
    unsafe {
        bnf_string_free(ptr::null_mut());
        bnf_dag_free(ptr::null_mut());
        bnf_vrep_free(ptr::null_mut());
        bnf_hrep_free(ptr::null_mut());
        bnf_report_free(ptr::null_mut());
    }
    assert_eq!(unsafe { bnf_vrep_len(ptr::null()) }, 0);
    assert!(!unsafe { bnf_report_passed(ptr::null()) });
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/bnfacets.h");
    let src = include_str!("../src/lib.rs");
    let names: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(names.len() >= 15);
    for name in names {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
}

/// Compiles `examples/smoke.c` against the generated header and the static
/// library, when a C compiler is on the path.
#[test]
fn c_program_links_and_runs() {
    use std::process::Command;
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler, skipping");
        return;
    }
    let root = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libbnfacets_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new(&cc)
        .arg(root.join("examples/smoke.c"))
        .arg("-I")
        .arg(root.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("dags 543"), "{text}");
    assert!(text.contains("facets 13"), "{text}");
    assert!(text.contains("cyclic rejected"), "{text}");
}
