//! C ABI over `circulant-core`.
//!
//! Polynomials cross the boundary as opaque [`CircPoly`] handles; reports and
//! big integers cross as NUL-terminated UTF-8 strings owned by this library.
//! Every function returns a [`CircStatus`]. On failure a message is kept per
//! thread and can be read with [`circ_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use circulant_core::circulant::{step_expand, CirculantSpec};
use circulant_core::fastperm::{det_poly_interpolate, per_eval, PerMethod};
use circulant_core::gt::minimality_certificate;
use circulant_core::oracle::full_coefficient;
use circulant_core::{Error, IntPolynomial};
use num_bigint::BigInt;

/// Status codes. Values 0 to 3 match the exit codes of the `circulant` tool.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircStatus {
    Ok = 0,
    Internal = 1,
    Contract = 2,
    ResourceLimit = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    Panic = 6,
}

/// Which polynomial [`circ_expand`] returns.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircExpandMode {
    Det = 0,
    Per = 1,
}

/// Which algorithm [`circ_per_eval`] uses.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircPerMethod {
    Ryser = 0,
    Interp = 1,
}

/// Opaque polynomial handle. Free with [`circ_poly_free`].
pub struct CircPoly {
    poly: IntPolynomial,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(CircStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e.exit_code() {
            2 => CircStatus::Contract,
            3 => CircStatus::ResourceLimit,
            _ => CircStatus::Internal,
        };
        Failure(status, e.to_json().to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> CircStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => CircStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside circulant library".into());
            CircStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(CircStatus::NullPointer, "null pointer argument".into())
}

unsafe fn write_out<T>(out: *mut *mut T, value: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    *out = value;
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON output has no NULs").into_raw()
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(CircStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

fn new_poly(poly: IntPolynomial) -> *mut CircPoly {
    Box::into_raw(Box::new(CircPoly { poly }))
}

/// `det Circ(d; 0, a, b)` by interpolation.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn circ_det_poly_interpolate(
    d: usize,
    a: usize,
    b: usize,
    out: *mut *mut CircPoly,
) -> CircStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let p = det_poly_interpolate(d, a, b)?;
        write_out(out, new_poly(p))
    })
}

/// Exhaustive det or per of `Circ(d; shifts)`.
///
/// # Safety
/// `shifts` must point to `n_shifts` readable values; `out` as above.
#[no_mangle]
pub unsafe extern "C" fn circ_expand(
    d: usize,
    shifts: *const usize,
    n_shifts: usize,
    mode: CircExpandMode,
    out: *mut *mut CircPoly,
) -> CircStatus {
    guard(|| {
        if shifts.is_null() || out.is_null() {
            return Err(null());
        }
        let shifts = std::slice::from_raw_parts(shifts, n_shifts).to_vec();
        let spec = CirculantSpec::new(d, shifts)?;
        let (det, per) = step_expand(&spec)?;
        let p = match mode {
            CircExpandMode::Det => det,
            CircExpandMode::Per => per,
        };
        write_out(out, new_poly(p))
    })
}

/// Number of nonzero terms; 0 for a null handle.
///
/// # Safety
/// `poly` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn circ_poly_num_terms(poly: *const CircPoly) -> usize {
    poly.as_ref().map_or(0, |p| p.poly.num_terms())
}

/// Canonical JSON term list. Free the string with [`circ_string_free`].
///
/// # Safety
/// `poly` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn circ_poly_to_json(
    poly: *const CircPoly,
    out: *mut *mut c_char,
) -> CircStatus {
    guard(|| {
        let p = poly.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        write_out(out, into_c_string(p.poly.to_json_string()))
    })
}

/// # Safety
/// `poly` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn circ_poly_free(poly: *mut CircPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn circ_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Coefficient report for `x^(d-A-B) y^A z^B` in `det Circ(d; 0, a, b)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn circ_coeff_report_json(
    d: u64,
    a: u64,
    b: u64,
    a_exp: u64,
    b_exp: u64,
    out: *mut *mut c_char,
) -> CircStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let r = full_coefficient(d, a, b, a_exp, b_exp)?;
        write_out(out, into_c_string(r.to_json().to_string()))
    })
}

/// GT-system report for `(d, a, b)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn circ_gt_report_json(
    d: u64,
    a: u64,
    b: u64,
    out: *mut *mut c_char,
) -> CircStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let r = minimality_certificate(d, a, b)?;
        write_out(out, into_c_string(r.to_json().to_string()))
    })
}

/// Permanent of `Circ(d; 0, a, b)` at integer point `(x, y, z)` given as
/// decimal strings. The result is a decimal string.
///
/// # Safety
/// `x`, `y`, `z` must be NUL-terminated strings; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn circ_per_eval(
    d: usize,
    a: usize,
    b: usize,
    x: *const c_char,
    y: *const c_char,
    z: *const c_char,
    method: CircPerMethod,
    out: *mut *mut c_char,
) -> CircStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let mut point: [BigInt; 3] = Default::default();
        for (slot, p) in point.iter_mut().zip([x, y, z]) {
            let s = read_str(p)?;
            *slot = s
                .trim()
                .parse()
                .map_err(|_| Failure::from(Error::Parse(format!("not an integer: {s:?}"))))?;
        }
        let method = match method {
            CircPerMethod::Ryser => PerMethod::Ryser,
            CircPerMethod::Interp => PerMethod::Interp,
        };
        let v = per_eval(d, a, b, &point, method)?;
        write_out(out, into_c_string(v.to_string()))
    })
}

/// Message for the last failure on this thread, or null if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn circ_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
