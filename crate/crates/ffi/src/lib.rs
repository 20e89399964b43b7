//! C interface to `fvknot`.
//!
//! Diagrams cross the boundary as opaque `FvkDiagram` handles. Every fallible
//! call returns an `FvkStatus`; on failure, `fvk_last_error` gives a message
//! for the calling thread. Strings returned by the library must be released
//! with `fvk_string_free`, diagrams with `fvk_diagram_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fvknot::fuzz::fuzz_invariance;
use fvknot::phimap::{parse_curve_file, phi, PhiError};
use fvknot::statesum::{flat_virtual_jones_with, StateSumError};
use fvknot::{parse_diagram, serialize_diagram, Diagram};

/// Status codes. The nonzero values match the `fvknot` CLI exit codes where
/// both exist.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FvkStatus {
    Ok = 0,
    Parse = 2,
    Invalid = 3,
    Cap = 4,
    Genericity = 5,
    /// A required pointer was null or a string was not UTF-8.
    Argument = 6,
    /// The library panicked; this is a bug.
    Internal = 7,
}

/// Opaque diagram handle.
pub struct FvkDiagram(Diagram);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Fail(FvkStatus, String);

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> FvkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FvkStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            FvkStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(FvkStatus::Argument, "null string".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(FvkStatus::Argument, "string is not UTF-8".into()))
}

unsafe fn diagram<'a>(d: *const FvkDiagram) -> Result<&'a Diagram, Fail> {
    d.as_ref().map(|d| &d.0).ok_or_else(|| Fail(FvkStatus::Argument, "null diagram".into()))
}

unsafe fn slot<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| Fail(FvkStatus::Argument, "null output pointer".into()))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

fn boxed(d: Diagram) -> *mut FvkDiagram {
    Box::into_raw(Box::new(FvkDiagram(d)))
}

fn validated(d: Diagram) -> Result<Diagram, Fail> {
    let report = d.validate();
    if report.is_ok() {
        Ok(d)
    } else {
        Err(Fail(FvkStatus::Invalid, report.to_string()))
    }
}

fn phi_fail(e: PhiError) -> Fail {
    let status = match e {
        PhiError::Parse { .. } => FvkStatus::Parse,
        PhiError::NonGenericProjection(_) | PhiError::NonGenericSubgroup(_) => FvkStatus::Genericity,
        PhiError::InvalidCurve(_) | PhiError::SpaceMismatch { .. } => FvkStatus::Invalid,
    };
    Fail(status, e.to_string())
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fvk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fvk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates a diagram in the text format.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fvk_diagram_parse(text: *const c_char, out: *mut *mut FvkDiagram) -> FvkStatus {
    guard(|| {
        let target = slot(out)?;
        let d = parse_diagram(read_str(text)?).map_err(|e| Fail(FvkStatus::Parse, e.to_string()))?;
        *target = boxed(validated(d)?);
        Ok(())
    })
}

/// Releases a diagram. Null is ignored.
///
/// # Safety
/// `d` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fvk_diagram_free(d: *mut FvkDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Writes the diagram in the text format.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fvk_diagram_serialize(d: *const FvkDiagram, out: *mut *mut c_char) -> FvkStatus {
    guard(|| {
        let target = slot(out)?;
        *target = c_string(serialize_diagram(diagram(d)?));
        Ok(())
    })
}

/// Computes X(D) as text, refusing diagrams with more than `cap` classical
/// crossings. `workers` of 0 means one thread.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fvk_diagram_invariant(
    d: *const FvkDiagram,
    cap: usize,
    workers: u32,
    out: *mut *mut c_char,
) -> FvkStatus {
    guard(|| {
        let target = slot(out)?;
        let d = diagram(d)?;
        let classical = d.classical_count();
        if classical > cap {
            return Err(Fail(FvkStatus::Cap, StateSumError::CapExceeded { classical, cap }.to_string()));
        }
        let x = flat_virtual_jones_with(d, workers.max(1) as usize)
            .map_err(|e| Fail(FvkStatus::Invalid, e.to_string()))?;
        *target = c_string(x.to_string());
        Ok(())
    })
}

/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fvk_diagram_writhe(d: *const FvkDiagram, out: *mut i32) -> FvkStatus {
    guard(|| {
        let target = slot(out)?;
        *target = diagram(d)?.writhe();
        Ok(())
    })
}

/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fvk_diagram_components(d: *const FvkDiagram, out: *mut usize) -> FvkStatus {
    guard(|| {
        let target = slot(out)?;
        *target = diagram(d)?.component_count();
        Ok(())
    })
}

/// Numbers of classical and flat crossings.
///
/// # Safety
/// `d` must be a live handle; both outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn fvk_diagram_crossings(
    d: *const FvkDiagram,
    classical: *mut usize,
    flat: *mut usize,
) -> FvkStatus {
    guard(|| {
        let (c, f) = (slot(classical)?, slot(flat)?);
        let d = diagram(d)?;
        *c = d.classical_count();
        *f = d.flat_count();
        Ok(())
    })
}

/// New diagram with every classical crossing made flat.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fvk_diagram_forget(d: *const FvkDiagram, out: *mut *mut FvkDiagram) -> FvkStatus {
    guard(|| {
        let target = slot(out)?;
        *target = boxed(diagram(d)?.forget());
        Ok(())
    })
}

/// Builds the flat-virtual diagram of a curve file. `restricted_eligible`
/// may be null.
///
/// # Safety
/// `curve_text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fvk_phi(
    curve_text: *const c_char,
    out: *mut *mut FvkDiagram,
    restricted_eligible: *mut bool,
) -> FvkStatus {
    guard(|| {
        let target = slot(out)?;
        let f = parse_curve_file(read_str(curve_text)?).map_err(phi_fail)?;
        let res = phi(&f.curve, f.group).map_err(phi_fail)?;
        if let Some(flag) = restricted_eligible.as_mut() {
            *flag = res.restricted_eligible;
        }
        *target = boxed(res.diagram);
        Ok(())
    })
}

/// Runs `trials` random move sequences and stores the number that changed
/// X or broke the diagram.
///
/// # Safety
/// `violations` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fvk_fuzz(
    seed: u64,
    trials: usize,
    steps: usize,
    max_crossings: usize,
    restricted: bool,
    violations: *mut usize,
) -> FvkStatus {
    guard(|| {
        let target = slot(violations)?;
        *target = fuzz_invariance(seed, trials, steps, max_crossings, restricted).violations();
        Ok(())
    })
}
