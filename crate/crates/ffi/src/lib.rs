//! C ABI for `kdesign`.
//!
//! Designs and graphs cross the boundary as opaque handles built from the
//! JSON formats of the library. Results come back as NUL-terminated JSON
//! strings owned by the caller and released with [`kd_string_free`]. Every
//! entry point returns a [`KdStatus`]; when it is not `Ok`,
//! [`kd_last_error`] describes what happened on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kdesign::bounds::BoundReport;
use kdesign::constructions::{verify_certificate, Target};
use kdesign::decomp::ExactTerminal;
use kdesign::design::{is_kk_divisible, PartialDesign};
use kdesign::graph::DenseGraph;
use kdesign::io::{self, Verdict};
use kdesign::pipeline;

/// Result codes. `Ok`..`Unknown` match the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KdStatus {
    Ok = 0,
    /// The question was answered in the negative (uncompletable, invalid
    /// certificate, not divisible, ...).
    Negative = 1,
    Invalid = 2,
    /// Search budget ran out before an answer was found.
    Unknown = 3,
    NullPointer = 4,
    Panic = 5,
}

/// Opaque partial design.
pub struct KdDesign(PartialDesign);

/// Opaque graph.
pub struct KdGraph(DenseGraph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).expect("NULs replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

struct Failure(KdStatus, String);

impl From<kdesign::Error> for Failure {
    fn from(e: kdesign::Error) -> Self {
        Failure(KdStatus::Invalid, e.to_string())
    }
}

type Outcome = Result<KdStatus, Failure>;

/// Runs `f`, converting failures and panics into a status plus last error.
fn guard(f: impl FnOnce() -> Outcome) -> KdStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside kdesign");
            KdStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(KdStatus::NullPointer, "null pointer argument".into())
}

/// # Safety
/// `p` is null or points to a NUL-terminated string.
unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(KdStatus::Invalid, "string is not UTF-8".into()))
}

/// # Safety
/// `p` is null or a live handle.
unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

/// # Safety
/// `out` is null or writable.
unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

/// # Safety
/// `out` is null or writable.
unsafe fn put_json(out: *mut *mut c_char, value: &serde_json::Value) -> Result<(), Failure> {
    let text = CString::new(value.to_string()).expect("JSON has no NUL");
    put(out, text.into_raw())
}

fn verdict_status(v: Verdict) -> KdStatus {
    match v {
        Verdict::Solved => KdStatus::Ok,
        Verdict::Impossible => KdStatus::Negative,
        Verdict::Unknown => KdStatus::Unknown,
    }
}

fn terminal(budget: u64, threads: u32) -> ExactTerminal {
    ExactTerminal { budget, threads: threads.max(1) as usize }
}

/// Message for the last non-`Ok` status on this thread, or null. Valid
/// until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn kd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or came from this library and has not been freed.
#[no_mangle]
pub unsafe extern "C" fn kd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `{"n","k","blocks"}` into a new design handle. The design is not
/// validated; see [`kd_design_validate`].
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn kd_design_from_json(json: *const c_char, out: *mut *mut KdDesign) -> KdStatus {
    guard(|| {
        let d = io::parse_design(read_str(json)?)?;
        put(out, Box::into_raw(Box::new(KdDesign(d))))?;
        Ok(KdStatus::Ok)
    })
}

/// # Safety
/// `d` is null or a handle from [`kd_design_from_json`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kd_design_free(d: *mut KdDesign) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// `Ok` when every block has `k` distinct in-range points and no pair is
/// covered twice, otherwise `Negative` with the violation in the last error.
///
/// # Safety
/// `d` is a live design handle.
#[no_mangle]
pub unsafe extern "C" fn kd_design_validate(d: *const KdDesign) -> KdStatus {
    guard(|| match deref(d)?.0.validate() {
        Ok(()) => Ok(KdStatus::Ok),
        Err(v) => Err(Failure(KdStatus::Negative, v.to_string())),
    })
}

/// # Safety
/// `d` is a live design handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn kd_design_to_json(d: *const KdDesign, out: *mut *mut c_char) -> KdStatus {
    guard(|| {
        let text = CString::new(io::design_to_json(&deref(d)?.0)).expect("JSON has no NUL");
        put(out, text.into_raw())?;
        Ok(KdStatus::Ok)
    })
}

/// Graph of the pairs no block covers.
///
/// # Safety
/// `d` is a live design handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn kd_design_leave(d: *const KdDesign, out: *mut *mut KdGraph) -> KdStatus {
    guard(|| {
        let g = deref(d)?.0.leave()?;
        put(out, Box::into_raw(Box::new(KdGraph(g))))?;
        Ok(KdStatus::Ok)
    })
}

/// Parses `{"n","edges"}` into a new graph handle.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn kd_graph_from_json(json: *const c_char, out: *mut *mut KdGraph) -> KdStatus {
    guard(|| {
        let g = io::parse_graph(read_str(json)?)?;
        put(out, Box::into_raw(Box::new(KdGraph(g))))?;
        Ok(KdStatus::Ok)
    })
}

/// # Safety
/// `g` is null or a graph handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kd_graph_free(g: *mut KdGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` is a live graph handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn kd_graph_to_json(g: *const KdGraph, out: *mut *mut c_char) -> KdStatus {
    guard(|| {
        let text = CString::new(io::graph_to_json(&deref(g)?.0)).expect("JSON has no NUL");
        put(out, text.into_raw())?;
        Ok(KdStatus::Ok)
    })
}

/// `Ok` if the edge count is a multiple of `C(k,2)` and every degree a
/// multiple of `k−1`, else `Negative`.
///
/// # Safety
/// `g` is a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn kd_graph_is_divisible(g: *const KdGraph, k: u32) -> KdStatus {
    guard(|| {
        if k < 2 {
            return Err(Failure(KdStatus::Invalid, format!("block size k = {k} is below 2")));
        }
        Ok(if is_kk_divisible(&deref(g)?.0, k as usize) { KdStatus::Ok } else { KdStatus::Negative })
    })
}

/// Completes a design. On `Ok`, `Negative` or `Unknown` the JSON result is
/// written to `out` in the same form the command line prints.
///
/// # Safety
/// `d` is a live design handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn kd_complete_design(
    d: *const KdDesign,
    budget: u64,
    threads: u32,
    out: *mut *mut c_char,
) -> KdStatus {
    guard(|| {
        let d = deref(d)?;
        if out.is_null() {
            return Err(null());
        }
        let result = pipeline::complete_design(&d.0, &terminal(budget, threads))?;
        let (verdict, body) = io::completion_json(&result);
        put_json(out, &body)?;
        Ok(verdict_status(verdict))
    })
}

/// `K_k`-decomposes a graph. Output as for [`kd_complete_design`].
///
/// # Safety
/// `g` is a live graph handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn kd_decompose(
    g: *const KdGraph,
    k: u32,
    budget: u64,
    threads: u32,
    out: *mut *mut c_char,
) -> KdStatus {
    guard(|| {
        let g = deref(g)?;
        if out.is_null() {
            return Err(null());
        }
        let result = pipeline::decompose(&g.0, k as usize, &terminal(budget, threads), None)?;
        let (verdict, body) = io::decomposition_json(&result);
        put_json(out, &body)?;
        Ok(verdict_status(verdict))
    })
}

/// `Ok` if the certificate proves the design uncompletable, `Negative` if
/// it does not apply.
///
/// # Safety
/// `d` is a live design handle; `cert_json` is a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn kd_design_verify_certificate(d: *const KdDesign, cert_json: *const c_char) -> KdStatus {
    guard(|| {
        let d = &deref(d)?.0;
        let cert = io::parse_certificate(read_str(cert_json)?)?;
        Ok(if verify_certificate(Target::Design(d), d.k(), &cert)? { KdStatus::Ok } else { KdStatus::Negative })
    })
}

/// `Ok` if the certificate proves the graph has no `K_k`-decomposition,
/// `Negative` if it does not apply.
///
/// # Safety
/// `g` is a live graph handle; `cert_json` is a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn kd_graph_verify_certificate(
    g: *const KdGraph,
    k: u32,
    cert_json: *const c_char,
) -> KdStatus {
    guard(|| {
        let g = &deref(g)?.0;
        let cert = io::parse_certificate(read_str(cert_json)?)?;
        Ok(if verify_certificate(Target::Graph(g), k as usize, &cert)? { KdStatus::Ok } else { KdStatus::Negative })
    })
}

/// Bound values for one `(n, k)` as a JSON object.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn kd_bounds_json(n: u32, k: u32, out: *mut *mut c_char) -> KdStatus {
    guard(|| {
        if k < 2 || n < k {
            return Err(Failure(KdStatus::Invalid, format!("need k >= 2 and n >= k, got n = {n}, k = {k}")));
        }
        let report = BoundReport::new(n as usize, k as usize);
        put_json(out, &serde_json::to_value(report).expect("plain data serializes"))?;
        Ok(KdStatus::Ok)
    })
}
