//! C ABI for bnfacets.
//!
//! Objects cross the boundary as opaque handles released by their `_free`
//! function. Every fallible call returns a [`BnfStatus`]; on failure the
//! message is kept per thread and read with [`bnf_last_error`]. Strings
//! returned through `char **` belong to the caller and are released with
//! [`bnf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use bnfacets::budget::Budget;
use bnfacets::dags::{all_dags, ground_set_of_json, Dag, MAX_ENUMERATED_NODES};
use bnfacets::encodings::{char_imset, fam_vector, standard_imset};
use bnfacets::ground::GroundSet;
use bnfacets::inequalities::{cluster_char, cluster_fam, Space};
use bnfacets::polyhedra::{facets_from_vertices, HRep, VRep};
use bnfacets::verify::{run_pipeline, VerificationReport, VerifyOptions};
use bnfacets::Error;

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BnfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Budget = 5,
    Computation = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BnfEncoding {
    Fam = 0,
    Char = 1,
    Standard = 2,
}

/// A DAG together with its ground set.
pub struct BnfDag {
    ground: GroundSet,
    dag: Dag,
}

pub struct BnfVrep(VRep);

pub struct BnfHrep(HRep);

pub struct BnfReport(VerificationReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> BnfStatus {
    match e {
        Error::Parse(_) | Error::Json(_) => BnfStatus::Parse,
        Error::Budget(_) => BnfStatus::Budget,
        Error::GroundSet(_)
        | Error::GroundMismatch { .. }
        | Error::NotAnIndex { .. }
        | Error::Cyclic
        | Error::InvalidArgument(_)
        | Error::Io(_) => BnfStatus::InvalidArgument,
        _ => BnfStatus::Computation,
    }
}

struct Fail(BnfStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> BnfStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BnfStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            BnfStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(BnfStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(BnfStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn out_arg<T>(p: *mut T, what: &str) -> Result<(), Fail> {
    if p.is_null() {
        return Err(Fail(BnfStatus::NullPointer, format!("{what} is null")));
    }
    Ok(())
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(BnfStatus::NullPointer, format!("{what} is null")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(BnfStatus::Computation, "output contains a nul byte".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn parse_json(text: &str) -> Result<serde_json::Value, Fail> {
    serde_json::from_str(text).map_err(|e| Fail(BnfStatus::Parse, e.to_string()))
}

fn budget(seconds: f64) -> Budget {
    if seconds > 0.0 && seconds.is_finite() {
        Budget::unlimited().with_time(Duration::from_secs_f64(seconds))
    } else {
        Budget::unlimited()
    }
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn bnf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version, static string.
#[no_mangle]
pub extern "C" fn bnf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn bnf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of DAGs over `n` nodes, `1 <= n <= 5`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bnf_dag_count(n: usize, out: *mut usize) -> BnfStatus {
    guard(|| {
        out_arg(out, "out")?;
        if !(1..=MAX_ENUMERATED_NODES).contains(&n) {
            return Err(Fail(BnfStatus::InvalidArgument, format!("n must be between 1 and {MAX_ENUMERATED_NODES}")));
        }
        *out = all_dags(n).len();
        Ok(())
    })
}

/// Parses `{"a": "", "b": "a"}`.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bnf_dag_from_json(json: *const c_char, out: *mut *mut BnfDag) -> BnfStatus {
    guard(|| {
        out_arg(out, "out")?;
        let v = parse_json(str_arg(json, "json")?)?;
        let ground = ground_set_of_json(&v)?;
        let dag = Dag::from_json(&ground, &v)?;
        *out = Box::into_raw(Box::new(BnfDag { ground, dag }));
        Ok(())
    })
}

/// # Safety
/// `dag` must be null or a handle from `bnf_dag_from_json`.
#[no_mangle]
pub unsafe extern "C" fn bnf_dag_free(dag: *mut BnfDag) {
    if !dag.is_null() {
        drop(Box::from_raw(dag));
    }
}

/// JSON object of the chosen encoding.
///
/// # Safety
/// `dag` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bnf_dag_encode(dag: *const BnfDag, encoding: BnfEncoding, out: *mut *mut c_char) -> BnfStatus {
    guard(|| {
        out_arg(out, "out")?;
        let d = ref_arg(dag, "dag")?;
        let v = match encoding {
            BnfEncoding::Fam => fam_vector(&d.dag).to_json(&d.ground),
            BnfEncoding::Char => char_imset(&d.dag).to_json(&d.ground),
            BnfEncoding::Standard => standard_imset(&d.dag).to_json(&d.ground),
        };
        write_string(out, v.to_string())
    })
}

/// Generalized cluster inequality over the letters `a..`, as JSON.
/// `mode` is 0 for family variables, 1 for characteristic imsets.
///
/// # Safety
/// `cluster` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bnf_cluster_inequality(
    n: usize,
    cluster: *const c_char,
    k: usize,
    mode: c_int,
    out: *mut *mut c_char,
) -> BnfStatus {
    guard(|| {
        out_arg(out, "out")?;
        let gs = GroundSet::letters(n)?;
        let c = gs.parse_subset(str_arg(cluster, "cluster")?)?;
        let space = match mode {
            0 => Space::Fam,
            1 => Space::Char,
            _ => return Err(Fail(BnfStatus::InvalidArgument, "mode must be 0 or 1".into())),
        };
        let ineq = match space {
            Space::Fam => cluster_fam(&gs, c, k)?,
            Space::Char => cluster_char(&gs, c, k)?,
        };
        write_string(out, ineq.to_json(&gs).to_string())
    })
}

/// Vertex list from JSON `{"dim": d, "points": [["0", "1/2"], ...]}`.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bnf_vrep_from_json(json: *const c_char, out: *mut *mut BnfVrep) -> BnfStatus {
    guard(|| {
        out_arg(out, "out")?;
        let v = parse_json(str_arg(json, "json")?)?;
        *out = Box::into_raw(Box::new(BnfVrep(VRep::from_json(&v)?)));
        Ok(())
    })
}

/// DAG-codes (`space` 0) or characteristic imsets (`space` 1) over `n` nodes.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bnf_vrep_dag_points(n: usize, space: c_int, out: *mut *mut BnfVrep) -> BnfStatus {
    guard(|| {
        out_arg(out, "out")?;
        if !(2..=MAX_ENUMERATED_NODES).contains(&n) {
            return Err(Fail(BnfStatus::InvalidArgument, format!("n must be between 2 and {MAX_ENUMERATED_NODES}")));
        }
        let pts: Vec<_> = match space {
            0 => all_dags(n).iter().map(|g| fam_vector(g).to_dense()).collect(),
            1 => all_dags(n).iter().map(|g| char_imset(g).to_dense()).collect(),
            _ => return Err(Fail(BnfStatus::InvalidArgument, "space must be 0 or 1".into())),
        };
        let dim = pts[0].len();
        *out = Box::into_raw(Box::new(BnfVrep(VRep::new(dim, pts)?)));
        Ok(())
    })
}

/// Number of distinct points.
///
/// # Safety
/// `vrep` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bnf_vrep_len(vrep: *const BnfVrep) -> usize {
    vrep.as_ref().map_or(0, |v| v.0.len())
}

/// # Safety
/// `vrep` must be null or a handle from this library.
#[no_mangle]
pub unsafe extern "C" fn bnf_vrep_free(vrep: *mut BnfVrep) {
    if !vrep.is_null() {
        drop(Box::from_raw(vrep));
    }
}

/// Facets of the convex hull; `seconds <= 0` means no time limit.
///
/// # Safety
/// `vrep` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bnf_hull(vrep: *const BnfVrep, seconds: f64, out: *mut *mut BnfHrep) -> BnfStatus {
    guard(|| {
        out_arg(out, "out")?;
        let v = ref_arg(vrep, "vrep")?;
        let h = facets_from_vertices(&v.0, &budget(seconds))?;
        *out = Box::into_raw(Box::new(BnfHrep(h)));
        Ok(())
    })
}

/// # Safety
/// `hrep` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bnf_hrep_facet_count(hrep: *const BnfHrep) -> usize {
    hrep.as_ref().map_or(0, |h| h.0.inequalities.len())
}

/// # Safety
/// `hrep` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bnf_hrep_equation_count(hrep: *const BnfHrep) -> usize {
    hrep.as_ref().map_or(0, |h| h.0.equations.len())
}

/// # Safety
/// `hrep` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bnf_hrep_to_json(hrep: *const BnfHrep, out: *mut *mut c_char) -> BnfStatus {
    guard(|| {
        out_arg(out, "out")?;
        write_string(out, ref_arg(hrep, "hrep")?.0.to_json().to_string())
    })
}

/// # Safety
/// `hrep` must be null or a handle from this library.
#[no_mangle]
pub unsafe extern "C" fn bnf_hrep_free(hrep: *mut BnfHrep) {
    if !hrep.is_null() {
        drop(Box::from_raw(hrep));
    }
}

/// Runs a verification pipeline (`n3`, `n4`, `theorem3`, `counterexample`,
/// `conjecture`). A failed check is not an error: inspect the report.
///
/// # Safety
/// `pipeline` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bnf_verify(
    pipeline: *const c_char,
    stretch: bool,
    seconds: f64,
    out: *mut *mut BnfReport,
) -> BnfStatus {
    guard(|| {
        out_arg(out, "out")?;
        let name = str_arg(pipeline, "pipeline")?;
        let opts = VerifyOptions {
            time_limit: (seconds > 0.0 && seconds.is_finite()).then(|| Duration::from_secs_f64(seconds)),
            stretch,
            ..Default::default()
        };
        *out = Box::into_raw(Box::new(BnfReport(run_pipeline(name, &opts)?)));
        Ok(())
    })
}

/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bnf_report_passed(report: *const BnfReport) -> bool {
    report.as_ref().is_some_and(|r| r.0.passed())
}

/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bnf_report_check_count(report: *const BnfReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.checks.len())
}

/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bnf_report_to_json(report: *const BnfReport, out: *mut *mut c_char) -> BnfStatus {
    guard(|| {
        out_arg(out, "out")?;
        write_string(out, ref_arg(report, "report")?.0.to_json().to_string())
    })
}

/// # Safety
/// `report` must be null or a handle from this library.
#[no_mangle]
pub unsafe extern "C" fn bnf_report_free(report: *mut BnfReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Runs the command line with `argv[0..argc]` (program name excluded).
/// Standard output is returned in `out`; the process exit code in
/// `exit_code`.
///
/// # Safety
/// `argv` must point to `argc` nul-terminated strings; `out` and
/// `exit_code` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn bnf_cli_run(
    argv: *const *const c_char,
    argc: usize,
    out: *mut *mut c_char,
    exit_code: *mut c_int,
) -> BnfStatus {
    guard(|| {
        out_arg(out, "out")?;
        out_arg(exit_code, "exit_code")?;
        if argv.is_null() && argc > 0 {
            return Err(Fail(BnfStatus::NullPointer, "argv is null".into()));
        }
        let mut args = vec!["bnfacets".to_string()];
        for i in 0..argc {
            args.push(str_arg(*argv.add(i), "argument")?.to_string());
        }
        let mut stdout = Vec::new();
        let mut stderr = Vec::new();
        let code = bnfacets::cli::run(args, &mut stdout, &mut stderr);
        if !stderr.is_empty() {
            set_error(String::from_utf8_lossy(&stderr).trim_end());
        }
        *exit_code = code;
        write_string(out, String::from_utf8_lossy(&stdout).into_owned())
    })
}
