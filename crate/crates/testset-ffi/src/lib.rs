//! C ABI for the testset core: opaque instance and result handles, status
//! codes mirroring the CLI exit codes, and JSON-based data exchange. The
//! header is generated into `include/testset.h` at build time.

use std::cell::RefCell;
use std::ffi::{c_char, c_long, CStr, CString};
use std::ptr;

use testset::error::Error;
use testset::instance::Instance;
use testset::io::{to_report_json, InstanceFile};
use testset::solvers::{exact, ich, sga, SolveResult, TieBreak};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum TsStatus {
    TsOk = 0,
    TsInvalidArgument = 2,
    TsInfeasible = 3,
    TsTooLarge = 4,
    TsIo = 5,
}

pub struct TsInstance(Instance);

pub struct TsSolveResult(SolveResult);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(sanitized).unwrap());
}

fn status_of(err: &Error) -> TsStatus {
    match err.exit_code() {
        3 => TsStatus::TsInfeasible,
        4 => TsStatus::TsTooLarge,
        5 => TsStatus::TsIo,
        _ => TsStatus::TsInvalidArgument,
    }
}

/// Message of the last error on this thread; valid until the next call.
#[no_mangle]
pub extern "C" fn ts_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a JSON instance document into a handle. On success writes the
/// handle to `out`; the caller frees it with `ts_instance_free`.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_instance_from_json(
    json: *const c_char,
    out: *mut *mut TsInstance,
) -> TsStatus {
    if json.is_null() || out.is_null() {
        set_error("null pointer");
        return TsStatus::TsInvalidArgument;
    }
    *out = ptr::null_mut();
    let text = match CStr::from_ptr(json).to_str() {
        Ok(t) => t,
        Err(_) => {
            set_error("instance JSON is not valid UTF-8");
            return TsStatus::TsInvalidArgument;
        }
    };
    let file: InstanceFile = match serde_json::from_str(text) {
        Ok(f) => f,
        Err(e) => {
            set_error(&e.to_string());
            return TsStatus::TsInvalidArgument;
        }
    };
    match file.to_instance() {
        Ok(instance) => {
            *out = Box::into_raw(Box::new(TsInstance(instance)));
            TsStatus::TsOk
        }
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    }
}

/// # Safety
/// `instance` must come from `ts_instance_from_json` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ts_instance_free(instance: *mut TsInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Number of items, or 0 for a null handle.
///
/// # Safety
/// `instance` must be a valid handle or null.
#[no_mangle]
pub unsafe extern "C" fn ts_instance_items(instance: *const TsInstance) -> usize {
    instance.as_ref().map_or(0, |i| i.0.n())
}

/// Number of tests, or 0 for a null handle.
///
/// # Safety
/// `instance` must be a valid handle or null.
#[no_mangle]
pub unsafe extern "C" fn ts_instance_tests(instance: *const TsInstance) -> usize {
    instance.as_ref().map_or(0, |i| i.0.num_tests())
}

/// Runs a solver (`"sga"`, `"ich"`, or `"exact"`) with natural-order
/// tie-breaking. On success writes a result handle to `out`; the caller
/// frees it with `ts_result_free`.
///
/// # Safety
/// All pointers must be valid; `algorithm` must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn ts_solve(
    instance: *const TsInstance,
    algorithm: *const c_char,
    out: *mut *mut TsSolveResult,
) -> TsStatus {
    if instance.is_null() || algorithm.is_null() || out.is_null() {
        set_error("null pointer");
        return TsStatus::TsInvalidArgument;
    }
    *out = ptr::null_mut();
    let instance = &(*instance).0;
    let alg = match CStr::from_ptr(algorithm).to_str() {
        Ok(a) => a,
        Err(_) => {
            set_error("algorithm name is not valid UTF-8");
            return TsStatus::TsInvalidArgument;
        }
    };
    let run = match alg {
        "sga" => sga(instance, &TieBreak::NaturalOrder),
        "ich" => ich(instance, &TieBreak::NaturalOrder),
        "exact" => match exact(instance, None) {
            Ok(Some(r)) => Ok(r),
            Ok(None) => Err(Error::invalid("exact: no test set found")),
            Err(e) => Err(e),
        },
        other => Err(Error::invalid(format!("unknown algorithm {other:?}"))),
    };
    match run {
        Ok(result) => {
            *out = Box::into_raw(Box::new(TsSolveResult(result)));
            TsStatus::TsOk
        }
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    }
}

/// # Safety
/// `result` must come from `ts_solve` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ts_result_free(result: *mut TsSolveResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Number of selected tests, or 0 for a null handle.
///
/// # Safety
/// `result` must be a valid handle or null.
#[no_mangle]
pub unsafe extern "C" fn ts_result_size(result: *const TsSolveResult) -> usize {
    result.as_ref().map_or(0, |r| r.0.size())
}

/// The i-th selected test index, or -1 when out of range.
///
/// # Safety
/// `result` must be a valid handle or null.
#[no_mangle]
pub unsafe extern "C" fn ts_result_test(result: *const TsSolveResult, i: usize) -> c_long {
    result
        .as_ref()
        .and_then(|r| r.0.selected.get(i))
        .map_or(-1, |&t| t as c_long)
}

/// Full run record as a JSON string. Free with `ts_string_free`.
///
/// # Safety
/// `result` must be a valid handle or null.
#[no_mangle]
pub unsafe extern "C" fn ts_result_report_json(result: *const TsSolveResult) -> *mut c_char {
    match result.as_ref() {
        Some(r) => {
            let json = to_report_json(&r.0).replace('\0', " ");
            CString::new(json).unwrap().into_raw()
        }
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `s` must come from `ts_result_report_json` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ts_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    fn json_instance() -> CString {
        CString::new(r#"{"n": 4, "tests": [[0,1],[0,2],[1,2]]}"#).unwrap()
    }

    #[test]
    fn round_trip_solve() {
        unsafe {
            let mut inst: *mut TsInstance = ptr::null_mut();
            let st = ts_instance_from_json(json_instance().as_ptr(), &mut inst);
            assert!(st == TsStatus::TsOk);
            assert_eq!(ts_instance_items(inst), 4);
            assert_eq!(ts_instance_tests(inst), 3);
            let alg = CString::new("sga").unwrap();
            let mut res: *mut TsSolveResult = ptr::null_mut();
            assert!(ts_solve(inst, alg.as_ptr(), &mut res) == TsStatus::TsOk);
            assert!(ts_result_size(res) >= 2);
            assert_eq!(ts_result_test(res, ts_result_size(res)), -1);
            let s = ts_result_report_json(res);
            assert!(!s.is_null());
            ts_string_free(s);
            ts_result_free(res);
            ts_instance_free(inst);
        }
    }

    #[test]
    fn bad_json_reports_error() {
        unsafe {
            let mut inst: *mut TsInstance = ptr::null_mut();
            let bad = CString::new("{").unwrap();
            let st = ts_instance_from_json(bad.as_ptr(), &mut inst);
            assert!(st == TsStatus::TsInvalidArgument);
            assert!(inst.is_null());
            let msg = CStr::from_ptr(ts_last_error());
            assert!(!msg.to_bytes().is_empty());
        }
    }

    #[test]
    fn infeasible_status() {
        unsafe {
            let mut inst: *mut TsInstance = ptr::null_mut();
            let json = CString::new(r#"{"n": 3, "tests": [[0]]}"#).unwrap();
            assert!(ts_instance_from_json(json.as_ptr(), &mut inst) == TsStatus::TsOk);
            let alg = CString::new("sga").unwrap();
            let mut res: *mut TsSolveResult = ptr::null_mut();
            assert!(ts_solve(inst, alg.as_ptr(), &mut res) == TsStatus::TsInfeasible);
            assert!(res.is_null());
            ts_instance_free(inst);
        }
    }
}
