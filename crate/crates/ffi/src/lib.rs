//! C interface. Every object crosses the boundary as an opaque pointer that
//! the caller releases with the matching `*_free`; every string returned is
//! owned by the caller and released with `gs_string_free`. Functions report
//! a `GsStatus`; the message for the last failure on the calling thread is
//! available from `gs_last_error`.

use gstruve::ap::{ApComplex, ApReal, Precision};
use gstruve::asym::{asymptotic, AsymConfig, TruncationPolicy};
use gstruve::coeffs::{formal_series_coeffs, solve_coeffs, CoeffTable};
use gstruve::series::eval_series;
use gstruve::wright::StruveParams;
use gstruve::Error;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GsStatus {
    Ok = 0,
    NullArgument = 1,
    Parse = 2,
    DegenerateParameter = 3,
    Pole = 4,
    PrecisionExhausted = 5,
    TruncationUnstable = 6,
    SectorUnsupported = 7,
    ZeroArgument = 8,
    InvalidPrecision = 9,
    Numeric = 10,
    Panic = 11,
}

/// Parameter pair `(a, nu)`.
pub struct GsParams(StruveParams);

/// A computed value with its error estimate.
pub struct GsValue {
    value: ApComplex,
    error_estimate: ApReal,
    terms: usize,
}

/// Normalized asymptotic coefficients `c_j`.
pub struct GsCoeffs(CoeffTable);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> GsStatus {
    match e {
        Error::Parse(_) => GsStatus::Parse,
        Error::DegenerateParameter(_) => GsStatus::DegenerateParameter,
        Error::PoleOfGamma(_) | Error::SingularTerm(_) | Error::HigherOrderPole(_) | Error::DoublePole(_) => {
            GsStatus::Pole
        }
        Error::PrecisionExhausted { .. } => GsStatus::PrecisionExhausted,
        Error::TruncationUnstable { .. } => GsStatus::TruncationUnstable,
        Error::SectorUnsupported(_) => GsStatus::SectorUnsupported,
        Error::ZeroArgument => GsStatus::ZeroArgument,
        Error::InvalidPrecision(_) => GsStatus::InvalidPrecision,
        Error::IllConditioned { .. } => GsStatus::Numeric,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (GsStatus, String)>) -> GsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GsStatus::Ok,
        Ok(Err((s, m))) => {
            set_error(m);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            GsStatus::Panic
        }
    }
}

fn lib(e: Error) -> (GsStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (GsStatus, String) {
    (GsStatus::NullArgument, format!("{what} is null"))
}

/// # Safety
/// `s` is null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (GsStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (GsStatus::Parse, format!("{what} is not UTF-8")))
}

fn out_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

fn precision(digits: u32) -> Result<Precision, (GsStatus, String)> {
    Precision::new(digits).map_err(lib)
}

/// Message of the last failure on this thread, or null. Release with
/// `gs_string_free`.
#[no_mangle]
pub extern "C" fn gs_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map(|c| c.clone().into_raw()).unwrap_or(ptr::null_mut()))
}

/// Library version. Release with `gs_string_free`.
#[no_mangle]
pub extern "C" fn gs_version() -> *mut c_char {
    out_string(env!("CARGO_PKG_VERSION").to_string())
}

/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `a` and `nu` (decimal, scientific or `p/q`).
///
/// # Safety
/// `a` and `nu` are NUL-terminated strings; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gs_params_new(a: *const c_char, nu: *const c_char, out: *mut *mut GsParams) -> GsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let p = StruveParams::parse(read_str(a, "a")?, read_str(nu, "nu")?).map_err(lib)?;
        *out = Box::into_raw(Box::new(GsParams(p)));
        Ok(())
    })
}

/// # Safety
/// `p` is null or came from `gs_params_new`.
#[no_mangle]
pub unsafe extern "C" fn gs_params_free(p: *mut GsParams) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// Pointer arguments are valid as documented on the public functions.
unsafe fn point(re: *const c_char, im: *const c_char, prec: Precision) -> Result<ApComplex, (GsStatus, String)> {
    let re = ApReal::parse(read_str(re, "z_re")?, prec).map_err(lib)?;
    let im = if im.is_null() { ApReal::zero(prec) } else { ApReal::parse(read_str(im, "z_im")?, prec).map_err(lib)? };
    Ok(ApComplex::new(re, im))
}

/// Series value of the normalized function at `z = z_re + i z_im`
/// (`z_im` may be null) with `digits` significant digits.
///
/// # Safety
/// `params` came from `gs_params_new`; strings are NUL-terminated; `out`
/// is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gs_eval_series(
    params: *const GsParams,
    z_re: *const c_char,
    z_im: *const c_char,
    digits: u32,
    out: *mut *mut GsValue,
) -> GsStatus {
    guard(|| {
        if params.is_null() || out.is_null() {
            return Err(null("params or out"));
        }
        let prec = precision(digits)?;
        let z = point(z_re, z_im, prec)?;
        let r = eval_series(&z, &(*params).0, prec).map_err(lib)?;
        *out =
            Box::into_raw(Box::new(GsValue { value: r.value, error_estimate: r.error_estimate, terms: r.terms_used }));
        Ok(())
    })
}

/// Assembled asymptotic estimate. `trunc < 0` selects optimal truncation,
/// otherwise terms `j <= trunc` are kept.
///
/// # Safety
/// As for `gs_eval_series`.
#[no_mangle]
pub unsafe extern "C" fn gs_eval_asymptotic(
    params: *const GsParams,
    z_re: *const c_char,
    z_im: *const c_char,
    digits: u32,
    trunc: i32,
    out: *mut *mut GsValue,
) -> GsStatus {
    guard(|| {
        if params.is_null() || out.is_null() {
            return Err(null("params or out"));
        }
        let prec = precision(digits)?;
        let z = point(z_re, z_im, prec)?;
        let policy = if trunc < 0 { TruncationPolicy::optimal() } else { TruncationPolicy::fixed(trunc as usize) };
        let cfg = AsymConfig { policy, ..Default::default() };
        let est = asymptotic(&z, &(*params).0, prec, &cfg).map_err(lib)?;
        let terms = est.components.iter().map(|c| c.terms).sum();
        *out = Box::into_raw(Box::new(GsValue { value: est.value, error_estimate: est.error_estimate, terms }));
        Ok(())
    })
}

/// Real part in scientific notation with `digits` significant digits.
///
/// # Safety
/// `v` came from an evaluation function and was not freed.
#[no_mangle]
pub unsafe extern "C" fn gs_value_re(v: *const GsValue, digits: u32) -> *mut c_char {
    if v.is_null() {
        return ptr::null_mut();
    }
    out_string((*v).value.re.to_sci_string(digits.max(1) as usize))
}

/// # Safety
/// As for `gs_value_re`.
#[no_mangle]
pub unsafe extern "C" fn gs_value_im(v: *const GsValue, digits: u32) -> *mut c_char {
    if v.is_null() {
        return ptr::null_mut();
    }
    out_string((*v).value.im.to_sci_string(digits.max(1) as usize))
}

/// # Safety
/// As for `gs_value_re`.
#[no_mangle]
pub unsafe extern "C" fn gs_value_error_estimate(v: *const GsValue) -> *mut c_char {
    if v.is_null() {
        return ptr::null_mut();
    }
    out_string((*v).error_estimate.to_sci_string(6))
}

/// Terms summed to produce the value.
///
/// # Safety
/// As for `gs_value_re`.
#[no_mangle]
pub unsafe extern "C" fn gs_value_terms(v: *const GsValue) -> usize {
    if v.is_null() {
        0
    } else {
        (*v).terms
    }
}

/// # Safety
/// `v` is null or came from an evaluation function.
#[no_mangle]
pub unsafe extern "C" fn gs_value_free(v: *mut GsValue) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// `m` coefficients at `digits` digits, by least squares or (`formal != 0`)
/// from the formal Stirling expansion.
///
/// # Safety
/// `params` came from `gs_params_new`; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gs_coeffs_new(
    params: *const GsParams,
    m: usize,
    digits: u32,
    formal: i32,
    out: *mut *mut GsCoeffs,
) -> GsStatus {
    guard(|| {
        if params.is_null() || out.is_null() {
            return Err(null("params or out"));
        }
        let prec = precision(digits)?;
        let p = &(*params).0;
        let t = if formal != 0 { formal_series_coeffs(p, m, prec) } else { solve_coeffs(p, m, prec) }.map_err(lib)?;
        *out = Box::into_raw(Box::new(GsCoeffs(t)));
        Ok(())
    })
}

/// # Safety
/// `t` came from `gs_coeffs_new` and was not freed.
#[no_mangle]
pub unsafe extern "C" fn gs_coeffs_len(t: *const GsCoeffs) -> usize {
    if t.is_null() {
        0
    } else {
        (*t).0.m
    }
}

/// `c_j` as a decimal string, or null when `j` is out of range.
///
/// # Safety
/// As for `gs_coeffs_len`.
#[no_mangle]
pub unsafe extern "C" fn gs_coeffs_get(t: *const GsCoeffs, j: usize) -> *mut c_char {
    if t.is_null() {
        return ptr::null_mut();
    }
    let t = &(*t).0;
    match t.get(j) {
        Some(c) => out_string(c.to_sci_string(t.precision.digits() as usize)),
        None => {
            set_error(format!("index {j} out of range"));
            ptr::null_mut()
        }
    }
}

/// The table as JSON. Release with `gs_string_free`.
///
/// # Safety
/// As for `gs_coeffs_len`.
#[no_mangle]
pub unsafe extern "C" fn gs_coeffs_json(t: *const GsCoeffs) -> *mut c_char {
    if t.is_null() {
        return ptr::null_mut();
    }
    out_string((*t).0.to_json())
}

/// # Safety
/// `t` is null or came from `gs_coeffs_new`.
#[no_mangle]
pub unsafe extern "C" fn gs_coeffs_free(t: *mut GsCoeffs) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}
