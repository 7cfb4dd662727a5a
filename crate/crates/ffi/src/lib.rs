//! C interface to `nestfill`.
//!
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `*_free` function. Every call returns an [`NfStatus`]; on
//! failure, [`nf_last_error`] describes the problem for the calling thread.
//! Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use nestfill::io::{self, Kind};
use nestfill::nsfd::{self, Jitter, NestedDesign, Ranking};
use nestfill::registry::{self, Built, Output};
use nestfill::Error;

/// Result of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NfStatus {
    Ok = 0,
    /// A required pointer was null or a string was not UTF-8.
    NullOrInvalid = 1,
    /// Unknown construction or bad parameter.
    BadParameter = 2,
    /// A checker found a violation.
    VerifyFailed = 3,
    /// Reading or writing files failed.
    Io = 4,
    /// An index was out of range or a buffer too small.
    OutOfRange = 5,
    /// Internal error; the library caught a panic.
    Internal = 6,
}

/// Placement of points inside their cells.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NfJitter {
    Midpoint = 0,
    Uniform = 1,
}

/// A built construction and its nesting, if any.
pub struct NfNested {
    built: Built,
}

/// The low- and high-accuracy point sets of a nested design.
pub struct NfDesign {
    design: NestedDesign,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

type Fail = (NfStatus, String);

fn status_of(e: &Error) -> NfStatus {
    match e {
        Error::Io(_) | Error::Format(_) => NfStatus::Io,
        Error::NotVerified(_) => NfStatus::VerifyFailed,
        Error::IndexOutOfRange { .. } => NfStatus::OutOfRange,
        _ => NfStatus::BadParameter,
    }
}

fn fail(e: Error) -> Fail {
    (status_of(&e), e.to_string())
}

fn set_error(msg: Option<String>) {
    let c = msg.map(|m| CString::new(m.replace('\0', " ")).expect("no interior nul"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> NfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(None);
            NfStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(Some(msg));
            status
        }
        Err(_) => {
            set_error(Some("internal error".into()));
            NfStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err((NfStatus::NullOrInvalid, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (NfStatus::NullOrInvalid, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| (NfStatus::NullOrInvalid, format!("{what} is null")))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| (NfStatus::NullOrInvalid, format!("{what} is null")))
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call on the same thread.
#[no_mangle]
pub extern "C" fn nf_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn nf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a construction such as `"qtw s1=8 s2=4 k=2"`. `plan` is TOML
/// text for the mixed constructions, or null. The result is verified; a
/// failing construction returns `VerifyFailed` and no handle.
///
/// # Safety
/// `invocation` and a non-null `plan` must be nul-terminated strings;
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nf_construct(invocation: *const c_char, plan: *const c_char, out: *mut *mut NfNested) -> NfStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let inv = text(invocation, "invocation")?;
        let plan = if plan.is_null() { None } else { Some(text(plan, "plan")?) };
        let built = registry::build(inv, plan).map_err(fail)?;
        built.verdict().map_err(fail)?.require(&built.invocation).map_err(fail)?;
        *out = Box::into_raw(Box::new(NfNested { built }));
        Ok(())
    })
}

/// Releases a handle from [`nf_construct`]. Null is ignored.
///
/// # Safety
/// `h` must come from [`nf_construct`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nf_nested_free(h: *mut NfNested) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Rows and columns of the parent array, and the number of child rows
/// (zero when the construction has no nesting).
///
/// # Safety
/// `h` must be a live handle; each non-null output must be writable.
#[no_mangle]
pub unsafe extern "C" fn nf_nested_shape(h: *const NfNested, rows: *mut usize, cols: *mut usize, child_rows: *mut usize) -> NfStatus {
    guard(|| {
        let b = &handle(h, "handle")?.built;
        let a = b.output.array();
        if let Some(r) = rows.as_mut() {
            *r = a.rows();
        }
        if let Some(c) = cols.as_mut() {
            *c = a.cols();
        }
        if let Some(n) = child_rows.as_mut() {
            *n = b.output.nested().map_or(0, |p| p.child_rows().len());
        }
        Ok(())
    })
}

/// Level index of parent cell `(row, col)`, zero-based.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nf_nested_level(h: *const NfNested, row: usize, col: usize, out: *mut u32) -> NfStatus {
    guard(|| {
        let b = &handle(h, "handle")?.built;
        let out = out_ptr(out, "out")?;
        let a = b.output.array();
        if row >= a.rows() || col >= a.cols() {
            return Err((NfStatus::OutOfRange, format!("cell ({row},{col}) outside {}x{}", a.rows(), a.cols())));
        }
        *out = a.get(row, col).0;
        Ok(())
    })
}

/// Copies the zero-based child row indices into `buf`, which must hold at
/// least the child row count.
///
/// # Safety
/// `h` must be a live handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn nf_nested_child_rows(h: *const NfNested, buf: *mut usize, len: usize) -> NfStatus {
    guard(|| {
        let b = &handle(h, "handle")?.built;
        let rows = b.output.nested().map_or(&[][..], |p| p.child_rows());
        if rows.is_empty() {
            return Ok(());
        }
        if buf.is_null() || len < rows.len() {
            return Err((NfStatus::OutOfRange, format!("buffer holds {len}, need {}", rows.len())));
        }
        std::slice::from_raw_parts_mut(buf, rows.len()).copy_from_slice(rows);
        Ok(())
    })
}

/// Reruns the checkers. Returns `VerifyFailed` with the witness in
/// [`nf_last_error`] on failure.
///
/// # Safety
/// `h` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn nf_nested_verify(h: *const NfNested) -> NfStatus {
    guard(|| {
        let b = &handle(h, "handle")?.built;
        b.verdict().map_err(fail)?.require(&b.invocation).map_err(fail)
    })
}

/// Writes `<prefix>.csv` and `<prefix>.json`.
///
/// # Safety
/// `h` must be a live handle and `prefix` a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn nf_nested_save(h: *const NfNested, prefix: *const c_char) -> NfStatus {
    guard(|| {
        let b = &handle(h, "handle")?.built;
        let prefix = Path::new(text(prefix, "prefix")?);
        let source = Some(b.invocation.as_str());
        match &b.output {
            Output::Nested { pair, mode } => io::save_nested(prefix, pair, *mode, source),
            Output::Mixed(m) => io::save_array(prefix, &m.combined(), Kind::Paired, source),
        }
        .map_err(fail)
    })
}

/// Generates a nested Latin hypercube design. `jitter` is an [`NfJitter`]
/// value; `seed` drives uniform jitter and is ignored for midpoints. Ranks
/// follow row order.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nf_design_new(h: *const NfNested, jitter: u32, seed: u64, out: *mut *mut NfDesign) -> NfStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let b = &handle(h, "handle")?.built;
        let pair = b
            .output
            .nested()
            .ok_or_else(|| (NfStatus::BadParameter, format!("{} has no nesting", b.invocation)))?;
        let j = match jitter {
            x if x == NfJitter::Midpoint as u32 => Jitter::Midpoint,
            x if x == NfJitter::Uniform as u32 => Jitter::Uniform(seed),
            x => return Err((NfStatus::BadParameter, format!("unknown jitter {x}"))),
        };
        let design = nsfd::nested_design(pair, Ranking::RowOrder, j).map_err(fail)?;
        *out = Box::into_raw(Box::new(NfDesign { design }));
        Ok(())
    })
}

/// Releases a design. Null is ignored.
///
/// # Safety
/// `d` must come from [`nf_design_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nf_design_free(d: *mut NfDesign) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

fn part(d: &NfDesign, high: bool) -> &nsfd::Design {
    if high {
        &d.design.high
    } else {
        &d.design.low
    }
}

/// Point count and dimension of the low (`high = false`) or high set.
///
/// # Safety
/// `d` must be a live design; each non-null output must be writable.
#[no_mangle]
pub unsafe extern "C" fn nf_design_shape(d: *const NfDesign, high: bool, rows: *mut usize, cols: *mut usize) -> NfStatus {
    guard(|| {
        let p = part(handle(d, "design")?, high);
        if let Some(r) = rows.as_mut() {
            *r = p.rows();
        }
        if let Some(c) = cols.as_mut() {
            *c = p.cols();
        }
        Ok(())
    })
}

/// Copies a point set row-major into `buf` of `len` doubles.
///
/// # Safety
/// `d` must be a live design and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn nf_design_copy(d: *const NfDesign, high: bool, buf: *mut f64, len: usize) -> NfStatus {
    guard(|| {
        let p = part(handle(d, "design")?, high);
        let need = p.rows() * p.cols();
        if buf.is_null() || len < need {
            return Err((NfStatus::OutOfRange, format!("buffer holds {len}, need {need}")));
        }
        let dst = std::slice::from_raw_parts_mut(buf, need);
        for r in 0..p.rows() {
            dst[r * p.cols()..(r + 1) * p.cols()].copy_from_slice(p.row(r));
        }
        Ok(())
    })
}
