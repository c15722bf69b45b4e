//! C ABI over `spatial_quandle`.
//!
//! Objects are opaque heap handles created by `sq_*_new`/`sq_*_parse`
//! functions and released with the matching `sq_*_free`. Every fallible call
//! returns an [`SqStatus`]; on failure a message is kept per thread and can be
//! read with [`sq_last_error`]. Strings returned to the caller are released
//! with [`sq_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use spatial_quandle::algebra::{FiniteGroup, FiniteQuandle};
use spatial_quandle::cli::{parse_group, parse_quandle, CliError};
use spatial_quandle::cohomology::{is_cocycle, parse_cocycle, satisfies_stability, CohomologyError, TwoCocycle};
use spatial_quandle::coloring::{enumerate_colorings, enumerate_special_colorings, ColoringError};
use spatial_quandle::diagram::{parse_diagram, Diagram};
use spatial_quandle::fixtures;
use spatial_quandle::presentation::fundamental_quandle_presentation;
use spatial_quandle::walks::{GateMode, PsiSetup, WalkError, WalkFilters};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed diagram, quandle, group or cocycle input.
    InvalidInput = 3,
    /// A search exceeded its budget.
    Budget = 4,
    /// The cocycle fails the conditions the invariant needs.
    Incompatible = 5,
    /// A Rust panic was caught at the boundary.
    Internal = 6,
}

pub struct SqDiagram(Diagram);
pub struct SqQuandle(FiniteQuandle);
pub struct SqGroup(FiniteGroup);
pub struct SqCocycle(TwoCocycle);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).unwrap_or_default());
}

struct Fail(SqStatus, String);

impl From<CliError> for Fail {
    fn from(e: CliError) -> Self {
        let code = match e {
            CliError::Budget(_) => SqStatus::Budget,
            _ => SqStatus::InvalidInput,
        };
        Fail(code, e.to_string())
    }
}

impl From<ColoringError> for Fail {
    fn from(e: ColoringError) -> Self {
        let code = match e {
            ColoringError::BudgetExceeded(_) => SqStatus::Budget,
            _ => SqStatus::InvalidInput,
        };
        Fail(code, e.to_string())
    }
}

impl From<CohomologyError> for Fail {
    fn from(e: CohomologyError) -> Self {
        let code = match e {
            CohomologyError::BudgetExceeded(_) => SqStatus::Budget,
            _ => SqStatus::InvalidInput,
        };
        Fail(code, e.to_string())
    }
}

impl From<WalkError> for Fail {
    fn from(e: WalkError) -> Self {
        match e {
            WalkError::Coloring(c) => c.into(),
            WalkError::Cohomology(c) => c.into(),
            WalkError::IncompatibleCocycle(_) | WalkError::RelaxedNeedsBalanced => {
                Fail(SqStatus::Incompatible, e.to_string())
            }
            _ => Fail(SqStatus::InvalidInput, e.to_string()),
        }
    }
}

/// Runs `f`, records any failure and converts it to a status.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SqStatus::Ok,
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal error");
            SqStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(SqStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(SqStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(SqStatus::NullPointer, "null handle".into()))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(SqStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Message of the last failure on this thread; empty if none. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn sq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses diagram text.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sq_diagram_parse(text_ptr: *const c_char, out: *mut *mut SqDiagram) -> SqStatus {
    guard(|| {
        let d = parse_diagram(text(text_ptr)?).map_err(|e| Fail(SqStatus::InvalidInput, e.to_string()))?.diagram;
        write(out, boxed(SqDiagram(d)))
    })
}

/// Loads a bundled fixture such as `"trefoil"` or `"t9"`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sq_diagram_fixture(name: *const c_char, out: *mut *mut SqDiagram) -> SqStatus {
    guard(|| {
        let n = text(name)?;
        let t = fixtures::by_name(n).ok_or_else(|| Fail(SqStatus::InvalidInput, format!("no fixture `{n}`")))?;
        let d = parse_diagram(t).map_err(|e| Fail(SqStatus::InvalidInput, e.to_string()))?.diagram;
        write(out, boxed(SqDiagram(d)))
    })
}

/// # Safety
/// `d` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sq_diagram_mirror(d: *const SqDiagram, out: *mut *mut SqDiagram) -> SqStatus {
    guard(|| {
        let m = handle(d)?.0.mirror();
        write(out, boxed(SqDiagram(m)))
    })
}

/// # Safety
/// `d` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sq_diagram_crossing_count(d: *const SqDiagram, out: *mut usize) -> SqStatus {
    guard(|| write(out, handle(d)?.0.crossing_count()))
}

/// Serialized diagram text; free with `sq_string_free`.
///
/// # Safety
/// `d` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sq_diagram_to_text(d: *const SqDiagram, out: *mut *mut c_char) -> SqStatus {
    guard(|| {
        let s = CString::new(handle(d)?.0.to_text()).map_err(|e| Fail(SqStatus::Internal, e.to_string()))?;
        write(out, s.into_raw())
    })
}

/// # Safety
/// `d` must come from this library or be null; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn sq_diagram_free(d: *mut SqDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Builds a quandle from a spec such as `"dihedral:3"` or `"paper5"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sq_quandle_new(spec: *const c_char, out: *mut *mut SqQuandle) -> SqStatus {
    guard(|| {
        let q = parse_quandle(text(spec)?)?;
        write(out, boxed(SqQuandle(q)))
    })
}

/// # Safety
/// `q` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sq_quandle_size(q: *const SqQuandle, out: *mut usize) -> SqStatus {
    guard(|| write(out, handle(q)?.0.size()))
}

/// # Safety
/// `q` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn sq_quandle_free(q: *mut SqQuandle) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Builds a group from `"sym:n"` or `"cyc:n"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sq_group_new(spec: *const c_char, out: *mut *mut SqGroup) -> SqStatus {
    guard(|| {
        let h = parse_group(text(spec)?)?;
        write(out, boxed(SqGroup(h)))
    })
}

/// # Safety
/// `h` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn sq_group_free(h: *mut SqGroup) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Parses `phi(x,y) = g` lines; a null `text` gives the shipped S3 cocycle on `paper5`.
///
/// # Safety
/// Handles must be valid, `text` null or NUL-terminated, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sq_cocycle_parse(
    q: *const SqQuandle,
    h: *const SqGroup,
    text_ptr: *const c_char,
    out: *mut *mut SqCocycle,
) -> SqStatus {
    guard(|| {
        let src = if text_ptr.is_null() { fixtures::PAPER5_S3 } else { text(text_ptr)? };
        let phi = parse_cocycle(&handle(q)?.0, &handle(h)?.0, src)?;
        write(out, boxed(SqCocycle(phi)))
    })
}

/// Writes whether `phi` satisfies the cocycle identity and the stability condition.
///
/// # Safety
/// Handles must be valid and the output pointers valid.
#[no_mangle]
pub unsafe extern "C" fn sq_cocycle_check(
    q: *const SqQuandle,
    h: *const SqGroup,
    phi: *const SqCocycle,
    out_cocycle: *mut bool,
    out_stable: *mut bool,
) -> SqStatus {
    guard(|| {
        let (q, h, phi) = (&handle(q)?.0, &handle(h)?.0, &handle(phi)?.0);
        write(out_cocycle, is_cocycle(q, h, phi)?)?;
        write(out_stable, satisfies_stability(q, phi))
    })
}

/// # Safety
/// `phi` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn sq_cocycle_free(phi: *mut SqCocycle) {
    if !phi.is_null() {
        drop(Box::from_raw(phi));
    }
}

/// Number of colorings, or of special colorings when `special` is set.
///
/// # Safety
/// Handles must be valid and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sq_coloring_count(
    d: *const SqDiagram,
    q: *const SqQuandle,
    special: bool,
    budget: u64,
    out: *mut u64,
) -> SqStatus {
    guard(|| {
        let p = fundamental_quandle_presentation(&handle(d)?.0);
        let q = &handle(q)?.0;
        let n = if special { enumerate_special_colorings(&p, q, budget)? } else { enumerate_colorings(&p, q, budget)? };
        write(out, n.len() as u64)
    })
}

/// The multiset `Ψ_q` for walks `from -> to` of length at most `max_len`,
/// in canonical text form such as `{(), (1,2,3)}`; free with `sq_string_free`.
///
/// # Safety
/// Handles must be valid, strings NUL-terminated and `out` a valid pointer.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn sq_psi(
    d: *const SqDiagram,
    q: *const SqQuandle,
    h: *const SqGroup,
    phi: *const SqCocycle,
    color: *const c_char,
    from: *const c_char,
    to: *const c_char,
    max_len: usize,
    out: *mut *mut c_char,
) -> SqStatus {
    guard(|| {
        let (d, qq) = (&handle(d)?.0, &handle(q)?.0);
        let label = text(color)?;
        let x = qq
            .element_by_label(label)
            .ok_or_else(|| Fail(SqStatus::InvalidInput, format!("unknown quandle element `{label}`")))?;
        let s = PsiSetup::new(d, qq, &handle(h)?.0, &handle(phi)?.0, GateMode::Strict, 10_000_000)?;
        let m = s.psi_q(x, text(from)?, text(to)?, max_len, WalkFilters::default())?;
        let c = CString::new(m.to_string()).map_err(|e| Fail(SqStatus::Internal, e.to_string()))?;
        write(out, c.into_raw())
    })
}
