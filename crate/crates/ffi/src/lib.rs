//! C ABI for matgrow.
//!
//! Matroids cross the boundary as opaque `MgMatroid` handles. Every function
//! returns an `MgStatus`; on failure a message is available from
//! `mg_last_error` on the same thread until the next call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use matgrow::class::{builtin, has_minor_budgeted, is_representable};
use matgrow::geometry::pg;
use matgrow::growth::grf_formula;
use matgrow::kernel::{matroid_to_text, parse_matroid};
use matgrow::{Budget, Error, Matroid, Set};

/// Opaque matroid handle.
pub struct MgMatroid(Matroid);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    TooLarge = 4,
    Budget = 5,
    Internal = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> MgStatus {
    match err {
        Error::Parse { .. } => MgStatus::Parse,
        Error::TooLarge { .. } => MgStatus::TooLarge,
        Error::Budget { .. } => MgStatus::Budget,
        Error::Invariant(_) => MgStatus::Internal,
        _ => MgStatus::InvalidArgument,
    }
}

/// Runs `f`, turning errors and panics into a status and a stored message.
fn guard(f: impl FnOnce() -> Result<(), (MgStatus, String)>) -> MgStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MgStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            MgStatus::Internal
        }
    }
}

fn lib<T>(r: matgrow::Result<T>) -> Result<T, (MgStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (MgStatus, String) {
    (MgStatus::NullPointer, format!("{what} is null"))
}

unsafe fn handle<'a>(m: *const MgMatroid, what: &str) -> Result<&'a Matroid, (MgStatus, String)> {
    m.as_ref().map(|h| &h.0).ok_or_else(|| null(what))
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, (MgStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (MgStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), (MgStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn boxed(m: Matroid) -> *mut MgMatroid {
    Box::into_raw(Box::new(MgMatroid(m)))
}

/// Message for the last failed call on this thread, or null. Owned by the
/// library; valid until the next call.
#[no_mangle]
pub extern "C" fn mg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// PG(n − 1, q).
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mg_pg(n: usize, q: u32, out: *mut *mut MgMatroid) -> MgStatus {
    guard(|| {
        let m = lib(pg(n, q))?;
        put(out, boxed(m))
    })
}

/// A named matroid, such as "fano", "u24" or "pg(3,2)".
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mg_builtin(name: *const c_char, out: *mut *mut MgMatroid) -> MgStatus {
    guard(|| {
        let m = lib(builtin(text(name, "name")?))?;
        put(out, boxed(m))
    })
}

/// Parses one matroid block in the text format.
///
/// # Safety
/// `src` must be a nul-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mg_parse(src: *const c_char, out: *mut *mut MgMatroid) -> MgStatus {
    guard(|| {
        let (_, m) = lib(parse_matroid(text(src, "text")?))?;
        put(out, boxed(m))
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `m` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mg_free(m: *mut MgMatroid) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of elements.
///
/// # Safety
/// `m` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mg_size(m: *const MgMatroid, out: *mut usize) -> MgStatus {
    guard(|| put(out, handle(m, "matroid")?.n()))
}

/// Rank of the set whose bit i stands for element i.
///
/// # Safety
/// `m` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mg_rank(m: *const MgMatroid, set: u64, out: *mut usize) -> MgStatus {
    guard(|| {
        let m = handle(m, "matroid")?;
        put(out, lib(m.try_rank(Set(set)))?)
    })
}

/// Number of points (rank-1 flats).
///
/// # Safety
/// `m` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mg_epsilon(m: *const MgMatroid, out: *mut usize) -> MgStatus {
    guard(|| put(out, handle(m, "matroid")?.epsilon()))
}

/// Whether `m` has a minor isomorphic to `n`, searching at most `budget`
/// nodes.
///
/// # Safety
/// `m` and `n` must be live handles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mg_has_minor(m: *const MgMatroid, n: *const MgMatroid, budget: u64, out: *mut bool) -> MgStatus {
    guard(|| {
        let (m, n) = (handle(m, "host")?, handle(n, "pattern")?);
        let found = lib(has_minor_budgeted(m, n, &Budget::new("minor search", budget)))?;
        put(out, found.is_some())
    })
}

/// Whether `m` is GF(q)-representable.
///
/// # Safety
/// `m` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mg_is_representable(m: *const MgMatroid, q: u32, out: *mut bool) -> MgStatus {
    guard(|| {
        let r = lib(is_representable(handle(m, "matroid")?, q))?;
        put(out, r)
    })
}

/// (q^{n+k} − 1)/(q − 1) − q·d.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mg_grf_formula(q: u32, k: usize, d: u64, n: usize, out: *mut i64) -> MgStatus {
    guard(|| {
        let v = lib(grf_formula(q, k, d, n))?;
        let v = i64::try_from(v).map_err(|_| (MgStatus::TooLarge, format!("{v} does not fit in 64 bits")))?;
        put(out, v)
    })
}

/// The text form of `m`. Release the string with `mg_string_free`.
///
/// # Safety
/// `m` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mg_to_text(m: *const MgMatroid, out: *mut *mut c_char) -> MgStatus {
    guard(|| {
        let s = matroid_to_text("m", handle(m, "matroid")?);
        let c = CString::new(s).map_err(|_| (MgStatus::Internal, "text contains nul".to_string()))?;
        put(out, c.into_raw())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
