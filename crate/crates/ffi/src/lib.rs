//! C ABI over the `tjkss` library.
//!
//! Diagrams cross the boundary as opaque `TjkssDiagram` handles; polynomials
//! and diagram text cross as NUL-terminated UTF-8 strings owned by the
//! library and released with `tjkss_string_free`. Every fallible call returns
//! a `TjkssStatus`; on failure, `tjkss_last_error` describes the most recent
//! error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use tjkss::{DiagramError, InvariantError, InvariantValue, LaurentPoly, TwistedDiagram};

/// Opaque diagram handle.
pub struct TjkssDiagram(TwistedDiagram);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TjkssStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidDiagram = 4,
    HasBars = 5,
    InvalidArgument = 6,
    Panic = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: TjkssStatus, msg: impl Into<String>) -> TjkssStatus {
    set_error(msg);
    status
}

fn diagram_status(e: &DiagramError) -> TjkssStatus {
    match e {
        DiagramError::Syntax { .. } => TjkssStatus::ParseError,
        DiagramError::Invalid(_) => TjkssStatus::InvalidDiagram,
        DiagramError::NotBarFree | DiagramError::BarredEdge(_) => TjkssStatus::HasBars,
        DiagramError::NoSuchEdge(_) | DiagramError::IdentifierOverflow(_) => {
            TjkssStatus::InvalidArgument
        }
    }
}

fn guard(f: impl FnOnce() -> TjkssStatus) -> TjkssStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => {
            if status == TjkssStatus::Ok {
                set_error("");
            }
            status
        }
        Err(_) => fail(TjkssStatus::Panic, "internal error"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, TjkssStatus> {
    if s.is_null() {
        return Err(fail(TjkssStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(TjkssStatus::InvalidUtf8, "string is not valid UTF-8"))
}

unsafe fn diagram<'a>(d: *const TjkssDiagram) -> Result<&'a TwistedDiagram, TjkssStatus> {
    d.as_ref()
        .map(|d| &d.0)
        .ok_or_else(|| fail(TjkssStatus::NullPointer, "null diagram"))
}

unsafe fn put_diagram(out: *mut *mut TjkssDiagram, d: TwistedDiagram) -> TjkssStatus {
    *out = Box::into_raw(Box::new(TjkssDiagram(d)));
    TjkssStatus::Ok
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> TjkssStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            TjkssStatus::Ok
        }
        Err(_) => fail(TjkssStatus::Panic, "output contained NUL"),
    }
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

macro_rules! check_out {
    ($out:expr) => {
        if $out.is_null() {
            return fail(TjkssStatus::NullPointer, "null output pointer");
        }
    };
}

/// Parses diagram text. On success `*out` owns a new handle.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tjkss_diagram_parse(
    text: *const c_char,
    out: *mut *mut TjkssDiagram,
) -> TjkssStatus {
    guard(|| {
        check_out!(out);
        let text = try_status!(read_str(text));
        match tjkss::parse_diagram(text) {
            Ok(d) => put_diagram(out, d),
            Err(e) => fail(diagram_status(&e), e.to_string()),
        }
    })
}

/// A seeded random diagram with crossings numbered from 1.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tjkss_diagram_random(
    crossings: usize,
    bars: u32,
    seed: u64,
    out: *mut *mut TjkssDiagram,
) -> TjkssStatus {
    guard(|| {
        check_out!(out);
        if crossings > u32::MAX as usize / 4 {
            return fail(TjkssStatus::InvalidArgument, "too many crossings");
        }
        put_diagram(out, tjkss::random_diagram(crossings, bars, seed))
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `d` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tjkss_diagram_free(d: *mut TjkssDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of real crossings; 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tjkss_diagram_crossing_count(d: *const TjkssDiagram) -> usize {
    d.as_ref().map_or(0, |d| d.0.crossing_count())
}

/// Diagram text; release with `tjkss_string_free`.
///
/// # Safety
/// `d` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tjkss_diagram_render(
    d: *const TjkssDiagram,
    out: *mut *mut c_char,
) -> TjkssStatus {
    guard(|| {
        check_out!(out);
        let d = try_status!(diagram(d));
        put_string(out, d.to_string())
    })
}

/// The double covering diagram as a new handle.
///
/// # Safety
/// `d` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tjkss_diagram_double_cover(
    d: *const TjkssDiagram,
    out: *mut *mut TjkssDiagram,
) -> TjkssStatus {
    guard(|| {
        check_out!(out);
        let d = try_status!(diagram(d));
        match tjkss::double_cover(d) {
            Ok(c) => put_diagram(out, c),
            Err(e) => fail(diagram_status(&e), e.to_string()),
        }
    })
}

/// The mirror image s(D) as a new handle.
///
/// # Safety
/// `d` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tjkss_diagram_mirror(
    d: *const TjkssDiagram,
    out: *mut *mut TjkssDiagram,
) -> TjkssStatus {
    guard(|| {
        check_out!(out);
        let d = try_status!(diagram(d));
        put_diagram(out, d.mirror())
    })
}

/// The result of a seeded random walk of `steps` moves as a new handle.
///
/// # Safety
/// `d` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tjkss_diagram_walk(
    d: *const TjkssDiagram,
    steps: usize,
    seed: u64,
    out: *mut *mut TjkssDiagram,
) -> TjkssStatus {
    guard(|| {
        check_out!(out);
        let d = try_status!(diagram(d));
        match tjkss::random_walk(d, steps, seed) {
            Ok(w) => put_diagram(out, w),
            Err(e) => fail(TjkssStatus::InvalidDiagram, e.to_string()),
        }
    })
}

fn invariant_status(e: &InvariantError) -> TjkssStatus {
    match e {
        InvariantError::Invalid(_) => TjkssStatus::InvalidDiagram,
        InvariantError::HasBars => TjkssStatus::HasBars,
    }
}

unsafe fn write_invariant(
    value: Result<InvariantValue, InvariantError>,
    canonical: bool,
    out: *mut *mut c_char,
) -> TjkssStatus {
    match value {
        Ok(v) => put_string(out, if canonical { v.canonical } else { v.raw }.to_string()),
        Err(e) => fail(invariant_status(&e), e.to_string()),
    }
}

/// The virtual invariant as polynomial text; raw unless `canonical`.
///
/// # Safety
/// `d` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tjkss_jkss(
    d: *const TjkssDiagram,
    canonical: bool,
    out: *mut *mut c_char,
) -> TjkssStatus {
    guard(|| {
        check_out!(out);
        let d = try_status!(diagram(d));
        write_invariant(tjkss::jkss(d), canonical, out)
    })
}

/// The twisted invariant as polynomial text; raw unless `canonical`.
///
/// # Safety
/// `d` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tjkss_twisted_jkss(
    d: *const TjkssDiagram,
    canonical: bool,
    out: *mut *mut c_char,
) -> TjkssStatus {
    guard(|| {
        check_out!(out);
        let d = try_status!(diagram(d));
        write_invariant(tjkss::twisted_jkss(d), canonical, out)
    })
}

/// Whether two polynomials in text form differ only by a power of x.
///
/// # Safety
/// `a` and `b` must be NUL-terminated strings and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tjkss_poly_equal_up_to_x_power(
    a: *const c_char,
    b: *const c_char,
    out: *mut bool,
) -> TjkssStatus {
    guard(|| {
        check_out!(out);
        let parse = |s| -> Result<LaurentPoly, TjkssStatus> {
            let s = read_str(s)?;
            tjkss::parse_poly(s).map_err(|e| fail(TjkssStatus::ParseError, e.to_string()))
        };
        let p = try_status!(parse(a));
        let q = try_status!(parse(b));
        *out = p.equal_up_to_x_power(&q);
        TjkssStatus::Ok
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tjkss_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the most recent failure on this thread, or an empty string.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn tjkss_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
