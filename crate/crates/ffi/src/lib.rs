//! C interface to the qchar toolkit.
//!
//! Scalars and matrices cross the boundary as opaque handles owned by the caller and released
//! with the matching `_free` function. Every fallible call returns a [`QcharStatus`]; on failure
//! `qchar_last_error` describes the problem until the next call on the same thread. Strings
//! returned through out-parameters are released with `qchar_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qchar::qtensor::{build_s, check_numerical_re, quantum_trace, Mat};
use qchar::scalars::{parse_scalar, Scalar};
use qchar::suite::{run, RunConfig};
use qchar::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QcharStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    TooLarge = 5,
    Arithmetic = 6,
    Internal = 7,
}

/// Opaque exact scalar.
pub struct QcharScalar {
    inner: Scalar,
}

/// Opaque square matrix of scalars.
pub struct QcharMatrix {
    inner: Mat,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> QcharStatus {
    match e {
        Error::Parse { .. } | Error::Json(_) => QcharStatus::Parse,
        Error::TooLarge { .. } => QcharStatus::TooLarge,
        Error::DivisionByZero => QcharStatus::Arithmetic,
        Error::InternalInconsistency(_) => QcharStatus::Internal,
        _ => QcharStatus::InvalidArgument,
    }
}

/// Runs `f`, recording errors and panics.
fn guard(f: impl FnOnce() -> Result<(), (QcharStatus, String)>) -> QcharStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QcharStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside qchar");
            QcharStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> (QcharStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, (QcharStatus, String)> {
    if p.is_null() {
        return Err((QcharStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (QcharStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, (QcharStatus, String)> {
    p.as_ref().ok_or((QcharStatus::NullPointer, "null handle".into()))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), (QcharStatus, String)> {
    if out.is_null() {
        return Err((QcharStatus::NullPointer, "null out-parameter".into()));
    }
    out.write(v);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior nul removed").into_raw()
}

/// Message for the last failed call on this thread; empty after a success. Owned by the library.
#[no_mangle]
pub extern "C" fn qchar_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn qchar_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn qchar_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a scalar such as `(q^2 - 1)/q` or `a*b + t`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qchar_scalar_parse(text: *const c_char, out: *mut *mut QcharScalar) -> QcharStatus {
    guard(|| {
        let s = parse_scalar(read_str(text)?).map_err(lib_err)?;
        write_out(out, Box::into_raw(Box::new(QcharScalar { inner: s })))
    })
}

/// # Safety
/// `s` must come from this library and not have been freed; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn qchar_scalar_free(s: *mut QcharScalar) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Canonical rendering of a scalar; release with `qchar_string_free`.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qchar_scalar_to_string(s: *const QcharScalar, out: *mut *mut c_char) -> QcharStatus {
    guard(|| write_out(out, owned_string(deref(s)?.inner.to_string())))
}

/// `out = a + b`.
///
/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qchar_scalar_add(a: *const QcharScalar, b: *const QcharScalar, out: *mut *mut QcharScalar) -> QcharStatus {
    guard(|| {
        let v = &deref(a)?.inner + &deref(b)?.inner;
        write_out(out, Box::into_raw(Box::new(QcharScalar { inner: v })))
    })
}

/// `out = a · b`.
///
/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qchar_scalar_mul(a: *const QcharScalar, b: *const QcharScalar, out: *mut *mut QcharScalar) -> QcharStatus {
    guard(|| {
        let v = &deref(a)?.inner * &deref(b)?.inner;
        write_out(out, Box::into_raw(Box::new(QcharScalar { inner: v })))
    })
}

/// `out = a / b`; fails with `QCHAR_STATUS_ARITHMETIC` when `b` is zero.
///
/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qchar_scalar_div(a: *const QcharScalar, b: *const QcharScalar, out: *mut *mut QcharScalar) -> QcharStatus {
    guard(|| {
        let v = deref(a)?.inner.checked_div(&deref(b)?.inner).map_err(lib_err)?;
        write_out(out, Box::into_raw(Box::new(QcharScalar { inner: v })))
    })
}

/// Whether two scalars are equal as rational functions.
///
/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qchar_scalar_equal(a: *const QcharScalar, b: *const QcharScalar, out: *mut bool) -> QcharStatus {
    guard(|| {
        let eq = deref(a)?.inner == deref(b)?.inner;
        write_out(out, eq)
    })
}

/// Reads a matrix from JSON `{"n": 2, "entries": [["a", "0"], ["0", "0"]]}`.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qchar_matrix_from_json(json: *const c_char, out: *mut *mut QcharMatrix) -> QcharStatus {
    guard(|| {
        let m = Mat::from_json_str(read_str(json)?).map_err(lib_err)?;
        write_out(out, Box::into_raw(Box::new(QcharMatrix { inner: m })))
    })
}

/// The braided R-matrix `S` for `n`, an `n² × n²` matrix.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qchar_matrix_braided_r(n: usize, out: *mut *mut QcharMatrix) -> QcharStatus {
    guard(|| {
        if n == 0 || n > qchar::presentations::MAX_N {
            return Err((QcharStatus::InvalidArgument, format!("n = {n} is outside 1..={}", qchar::presentations::MAX_N)));
        }
        write_out(out, Box::into_raw(Box::new(QcharMatrix { inner: build_s(n).mat().clone() })))
    })
}

/// # Safety
/// `m` must come from this library and not have been freed; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn qchar_matrix_free(m: *mut QcharMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Size of the matrix, or 0 for a null handle.
///
/// # Safety
/// `m` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn qchar_matrix_dim(m: *const QcharMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.inner.dim())
}

/// Entry at 0-based `(row, col)` as a new scalar handle.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qchar_matrix_get(m: *const QcharMatrix, row: usize, col: usize, out: *mut *mut QcharScalar) -> QcharStatus {
    guard(|| {
        let m = &deref(m)?.inner;
        if row >= m.dim() || col >= m.dim() {
            return Err((QcharStatus::InvalidArgument, format!("({row}, {col}) is outside a {0}x{0} matrix", m.dim())));
        }
        write_out(out, Box::into_raw(Box::new(QcharScalar { inner: m.get(row, col).clone() })))
    })
}

/// JSON rendering `{n, entries}`; release with `qchar_string_free`.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qchar_matrix_to_json(m: *const QcharMatrix, out: *mut *mut c_char) -> QcharStatus {
    guard(|| write_out(out, owned_string(deref(m)?.inner.to_json_string())))
}

/// Whether the matrix solves the numerical reflection equation.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qchar_matrix_check_re(m: *const QcharMatrix, out: *mut bool) -> QcharStatus {
    guard(|| {
        let m = &deref(m)?.inner;
        if m.dim() == 0 || m.dim() > qchar::presentations::MAX_N {
            return Err((QcharStatus::InvalidArgument, format!("matrix size {} is outside 1..={}", m.dim(), qchar::presentations::MAX_N)));
        }
        write_out(out, check_numerical_re(m, &build_s(m.dim())))
    })
}

/// `Tr(D·M)` with `D = diag(1, q⁻², …)`.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qchar_matrix_quantum_trace(m: *const QcharMatrix, out: *mut *mut QcharScalar) -> QcharStatus {
    guard(|| {
        let v = quantum_trace(&deref(m)?.inner);
        write_out(out, Box::into_raw(Box::new(QcharScalar { inner: v })))
    })
}

/// Runs checks described by a JSON run configuration, e.g. `{"task": {"suite": "tensor"}}`,
/// and returns the JSON report. Failing checks still give `QCHAR_STATUS_OK`; read the summary.
///
/// # Safety
/// `config_json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qchar_run_suite(config_json: *const c_char, out: *mut *mut c_char) -> QcharStatus {
    guard(|| {
        let config: RunConfig =
            serde_json::from_str(read_str(config_json)?).map_err(|e| (QcharStatus::Parse, format!("run configuration: {e}")))?;
        let report = run(&config).map_err(lib_err)?;
        write_out(out, owned_string(report.to_json_pretty()))
    })
}
