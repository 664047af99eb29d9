//! C interface to the `gonality` crate.
//!
//! Curves and covers are opaque handles created from JSON and released with
//! the matching `*_free`. Every fallible call returns a [`GonStatus`]; on
//! failure `gon_last_error_message` describes the error on the calling
//! thread. Strings returned through `char **` must be released with
//! `gon_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gonality::constructions::{glue_nonsep_distinct, glue_nonsep_equal, Construction};
use gonality::oracle::{min_gonality_search, Budget, SearchOutcome};
use gonality::{strata, AdmissibleCover, CurveGraph, Error, Mode};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GonStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    BudgetExceeded = 5,
    Panic = 6,
}

/// Opaque dual graph.
pub struct GonCurve(CurveGraph);

/// Opaque admissible cover.
pub struct GonCover(AdmissibleCover);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: GonStatus, msg: impl Into<String>) -> GonStatus {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
    status
}

fn domain(e: Error) -> GonStatus {
    let status = match e {
        Error::BudgetExceeded(_) => GonStatus::BudgetExceeded,
        _ => GonStatus::Domain,
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning panics into `GonStatus::Panic`.
fn guard(f: impl FnOnce() -> GonStatus) -> GonStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(GonStatus::Panic, "internal panic"))
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, GonStatus> {
    if s.is_null() {
        return Err(fail(GonStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(GonStatus::InvalidUtf8, "string is not UTF-8"))
}

unsafe fn put<T>(out: *mut T, value: T) -> GonStatus {
    if out.is_null() {
        return fail(GonStatus::NullPointer, "null output pointer");
    }
    out.write(value);
    GonStatus::Ok
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> GonStatus {
    match CString::new(s) {
        Ok(c) => put(out, c.into_raw()),
        Err(_) => fail(GonStatus::Domain, "output contains a NUL byte"),
    }
}

macro_rules! try_ffi {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

unsafe fn borrow<'a, T>(p: *const T) -> Result<&'a T, GonStatus> {
    p.as_ref().ok_or_else(|| fail(GonStatus::NullPointer, "null handle"))
}

/// Message for the last failure on this thread. Valid until the next call
/// into this library from the same thread; never NULL.
#[no_mangle]
pub extern "C" fn gon_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` is NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gon_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a curve from JSON into `*out`.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gon_curve_from_json(json: *const c_char, out: *mut *mut GonCurve) -> GonStatus {
    guard(|| {
        let s = try_ffi!(text(json));
        match serde_json::from_str::<CurveGraph>(s) {
            Ok(c) => match c.check_structure() {
                Ok(()) => put(out, Box::into_raw(Box::new(GonCurve(c)))),
                Err(e) => domain(e),
            },
            Err(e) => fail(GonStatus::Parse, e.to_string()),
        }
    })
}

/// # Safety
/// `curve` is NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gon_curve_free(curve: *mut GonCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Arithmetic genus of a connected curve.
///
/// # Safety
/// `curve` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gon_curve_genus(curve: *const GonCurve, out: *mut u32) -> GonStatus {
    guard(|| match try_ffi!(borrow(curve)).0.arithmetic_genus() {
        Ok(g) => put(out, g),
        Err(e) => domain(e),
    })
}

/// # Safety
/// `curve` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gon_curve_is_stable(curve: *const GonCurve, out: *mut bool) -> GonStatus {
    guard(|| put(out, try_ffi!(borrow(curve)).0.is_stable().is_stable()))
}

/// Parses a cover from JSON into `*out`.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gon_cover_from_json(json: *const c_char, out: *mut *mut GonCover) -> GonStatus {
    guard(|| {
        let s = try_ffi!(text(json));
        match AdmissibleCover::from_json(s) {
            Ok(c) => put(out, Box::into_raw(Box::new(GonCover(c)))),
            Err(e) => fail(GonStatus::Parse, e.to_string()),
        }
    })
}

/// # Safety
/// `cover` is NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gon_cover_free(cover: *mut GonCover) {
    if !cover.is_null() {
        drop(Box::from_raw(cover));
    }
}

/// Validates in strict (`strict != 0`) or relaxed mode. When invalid, the
/// report is available from `gon_last_error_message`.
///
/// # Safety
/// `cover` is a live handle; `valid` is writable.
#[no_mangle]
pub unsafe extern "C" fn gon_cover_validate(cover: *const GonCover, strict: bool, valid: *mut bool) -> GonStatus {
    guard(|| {
        let cov = &try_ffi!(borrow(cover)).0;
        let report = cov.validate(if strict { Mode::Strict } else { Mode::Relaxed });
        if !report.valid {
            fail(GonStatus::Ok, report.to_string());
        }
        put(valid, report.valid)
    })
}

/// # Safety
/// `cover` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gon_cover_degree(cover: *const GonCover, out: *mut u32) -> GonStatus {
    guard(|| put(out, try_ffi!(borrow(cover)).0.degree()))
}

/// Arithmetic genus of the source curve.
///
/// # Safety
/// `cover` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gon_cover_genus(cover: *const GonCover, out: *mut u32) -> GonStatus {
    guard(|| match try_ffi!(borrow(cover)).0.genus_of_source() {
        Ok(g) => put(out, g),
        Err(e) => domain(e),
    })
}

/// Number of branch points, checked against `2g + 2k - 2` in strict mode.
///
/// # Safety
/// `cover` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gon_cover_branch_count(cover: *const GonCover, strict: bool, out: *mut u32) -> GonStatus {
    guard(|| {
        let mode = if strict { Mode::Strict } else { Mode::Relaxed };
        match try_ffi!(borrow(cover)).0.branch_count(mode) {
            Ok(b) => put(out, b),
            Err(e) => domain(e),
        }
    })
}

/// # Safety
/// `cover` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gon_cover_to_json(cover: *const GonCover, out: *mut *mut c_char) -> GonStatus {
    guard(|| put_string(out, try_ffi!(borrow(cover)).0.to_json()))
}

unsafe fn glue(
    cover: *const GonCover,
    first: *const c_char,
    second: *const c_char,
    out: *mut *mut GonCover,
    op: fn(&AdmissibleCover, &str, &str) -> gonality::Result<gonality::constructions::GluingReport>,
) -> GonStatus {
    guard(|| {
        let cov = &try_ffi!(borrow(cover)).0;
        let (a, b) = (try_ffi!(text(first)), try_ffi!(text(second)));
        match op(cov, a, b) {
            Ok(r) => put(out, Box::into_raw(Box::new(GonCover(r.output)))),
            Err(e) => domain(e),
        }
    })
}

/// Glues the marked points `first` and `second`, which lie over distinct
/// target points, into a node. The degree goes up by one.
///
/// # Safety
/// `cover` is a live handle, the labels are NUL-terminated, `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gon_glue_distinct(
    cover: *const GonCover,
    first: *const c_char,
    second: *const c_char,
    out: *mut *mut GonCover,
) -> GonStatus {
    glue(cover, first, second, out, glue_nonsep_distinct)
}

/// Glues the marked points `first` and `second`, which lie over the same
/// target point, into a node. The degree is unchanged.
///
/// # Safety
/// `cover` is a live handle, the labels are NUL-terminated, `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gon_glue_equal(
    cover: *const GonCover,
    first: *const c_char,
    second: *const c_char,
    out: *mut *mut GonCover,
) -> GonStatus {
    glue(cover, first, second, out, glue_nonsep_equal)
}

/// Applies a JSON construction descriptor (`{"op": "join", ...}`).
///
/// # Safety
/// `descriptor` is NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gon_construct_json(descriptor: *const c_char, out: *mut *mut GonCover) -> GonStatus {
    guard(|| {
        let s = try_ffi!(text(descriptor));
        let construction: Construction = match serde_json::from_str(s) {
            Ok(c) => c,
            Err(e) => return fail(GonStatus::Parse, e.to_string()),
        };
        match construction.apply() {
            Ok(r) => put(out, Box::into_raw(Box::new(GonCover(r.output)))),
            Err(e) => domain(e),
        }
    })
}

/// Boundary stratum of a strictly valid cover, as JSON.
///
/// # Safety
/// `cover` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gon_classify_stratum_json(cover: *const GonCover, out: *mut *mut c_char) -> GonStatus {
    guard(|| match strata::classify_stratum(&try_ffi!(borrow(cover)).0) {
        Ok(d) => put_string(out, serde_json::to_string(&d).expect("descriptor serializes")),
        Err(e) => domain(e),
    })
}

/// `2g + 2k - 5`.
#[no_mangle]
pub extern "C" fn gon_hurwitz_dim(k: u32, g: u32) -> i64 {
    strata::hurwitz_dim(k, g)
}

/// `2g + 2k - 5 + n`.
#[no_mangle]
pub extern "C" fn gon_pointed_hurwitz_dim(k: u32, g: u32, n: u32) -> i64 {
    strata::pointed_hurwitz_dim(k, g, n)
}

/// Smallest `k <= kmax` with a cover of a curve stably equivalent to
/// `curve`, using at most `rational` added rational components and
/// `target_vertices` target components. Writes 0 to `k_out` and NULL to
/// `certificate` when nothing is found; `certificate` may be NULL.
///
/// # Safety
/// `curve` is a live handle; `k_out` is writable; `certificate` is NULL or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn gon_min_gonality_search(
    curve: *const GonCurve,
    kmax: u32,
    rational: u32,
    target_vertices: u32,
    k_out: *mut u32,
    certificate: *mut *mut GonCover,
) -> GonStatus {
    guard(|| {
        let c = &try_ffi!(borrow(curve)).0;
        let budget = Budget { rational, target_vertices, ..Budget::default() };
        let (k, cov) = match min_gonality_search(c, kmax, &budget) {
            Ok(SearchOutcome::Found { k, certificate }) => (k, Box::into_raw(Box::new(GonCover(*certificate)))),
            Ok(SearchOutcome::NotFound { .. }) => (0, ptr::null_mut()),
            Err(e) => return domain(e),
        };
        if certificate.is_null() {
            gon_cover_free(cov);
        } else {
            certificate.write(cov);
        }
        put(k_out, k)
    })
}
