//! C ABI for the oscillatory Hilbert transform library.
//!
//! Oscillands are opaque handles created from registry labels; every entry
//! point returns a status code, never unwinds across the boundary, and
//! writes results through out-pointers. The matching header is generated
//! into `include/oht.h` at build time.

// Every raw pointer is null-checked before the dereference; the C contract
// documents the remaining aliasing requirements.
#![allow(clippy::not_unsafe_ptr_arg_deref)]

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use oht_core::bessel::{eval_bessel_hilbert, BesselFamily, BesselKind};
use oht_core::oracle::{oracle_hadamard, oracle_rotated};
use oht_core::{
    eval_auto, eval_away, eval_near, eval_origin, registry_get, EvalParams, OhtError, Oscilland,
};

/// Status code returned by every fallible entry point.
#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OhtStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    NotRegistered = 3,
    DomainError = 4,
    ParamError = 5,
    EvalError = 6,
    SolveError = 7,
    OracleError = 8,
    Panic = 9,
}

/// A complex value passed across the boundary.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct OhtComplex {
    pub re: f64,
    pub im: f64,
}

/// Evaluation parameters. Zero orders, non-positive `a`, zero `moment_n1`,
/// and non-positive `x_split` select the library defaults.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct OhtEvalParams {
    pub laguerre_n: u32,
    pub cheb_n: u32,
    pub a: f64,
    pub moment_n1: u32,
    pub x_split: f64,
}

/// Evaluation method selector.
#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OhtMethod {
    Auto = 0,
    Away = 1,
    Near = 2,
    Origin = 3,
}

/// Bessel oscillator family selector.
#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OhtBesselFamily {
    J = 0,
    Y = 1,
}

/// Opaque oscilland handle.
pub struct OhtOscilland {
    inner: Oscilland,
}

fn status_of(err: &OhtError) -> OhtStatus {
    match err {
        OhtError::NotRegistered(_) => OhtStatus::NotRegistered,
        OhtError::Domain(_) => OhtStatus::DomainError,
        OhtError::Param(_) => OhtStatus::ParamError,
        OhtError::Eval(_) | OhtError::EvalAtNode { .. } => OhtStatus::EvalError,
        OhtError::Solve(_) => OhtStatus::SolveError,
        OhtError::Oracle(_) => OhtStatus::OracleError,
    }
}

fn params_from(raw: *const OhtEvalParams) -> EvalParams {
    if raw.is_null() {
        return EvalParams::default();
    }
    let raw = unsafe { &*raw };
    let defaults = EvalParams::default();
    EvalParams {
        laguerre_n: if raw.laguerre_n == 0 { defaults.laguerre_n } else { raw.laguerre_n as usize },
        cheb_n: if raw.cheb_n == 0 { defaults.cheb_n } else { raw.cheb_n as usize },
        a: if raw.a > 0.0 { Some(raw.a) } else { None },
        moment_n1: if raw.moment_n1 == 0 { None } else { Some(raw.moment_n1 as usize) },
        x_split: if raw.x_split > 0.0 { raw.x_split } else { defaults.x_split },
    }
}

fn guarded<F>(body: F) -> OhtStatus
where
    F: FnOnce() -> OhtStatus,
{
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => OhtStatus::Panic,
    }
}

/// Fills `out` with the library's default evaluation parameters.
#[no_mangle]
pub extern "C" fn oht_params_default(out: *mut OhtEvalParams) -> OhtStatus {
    if out.is_null() {
        return OhtStatus::NullArgument;
    }
    let defaults = EvalParams::default();
    unsafe {
        *out = OhtEvalParams {
            laguerre_n: defaults.laguerre_n as u32,
            cheb_n: defaults.cheb_n as u32,
            a: 0.0,
            moment_n1: 0,
            x_split: defaults.x_split,
        };
    }
    OhtStatus::Ok
}

/// Creates an oscilland from a registry label (`one`, `exp:<c>`,
/// `sqrt_over_1p`, `cos_over_cbrt`). On success writes a handle the caller
/// must release with `oht_oscilland_free`.
#[no_mangle]
pub extern "C" fn oht_oscilland_registry(
    label: *const c_char,
    out: *mut *mut OhtOscilland,
) -> OhtStatus {
    if label.is_null() || out.is_null() {
        return OhtStatus::NullArgument;
    }
    guarded(|| {
        let label = match unsafe { CStr::from_ptr(label) }.to_str() {
            Ok(s) => s,
            Err(_) => return OhtStatus::InvalidUtf8,
        };
        match registry_get(label) {
            Ok(inner) => {
                let boxed = Box::new(OhtOscilland { inner });
                unsafe { *out = Box::into_raw(boxed) };
                OhtStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Releases an oscilland handle. A null pointer is a no-op.
#[no_mangle]
pub extern "C" fn oht_oscilland_free(handle: *mut OhtOscilland) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// Branch exponent α of the oscilland's origin singularity.
#[no_mangle]
pub extern "C" fn oht_oscilland_alpha(handle: *const OhtOscilland, out: *mut f64) -> OhtStatus {
    if handle.is_null() || out.is_null() {
        return OhtStatus::NullArgument;
    }
    unsafe { *out = (*handle).inner.alpha() };
    OhtStatus::Ok
}

/// Evaluates H⁺(f(t) e^{iωt})(x). `method` takes an `OhtMethod` value
/// (out-of-range integers are rejected, not trusted); `params` may be null
/// for defaults; `err_estimate` may be null when the caller does not want it.
#[no_mangle]
pub extern "C" fn oht_eval(
    handle: *const OhtOscilland,
    method: i32,
    omega: f64,
    x: f64,
    params: *const OhtEvalParams,
    value: *mut OhtComplex,
    err_estimate: *mut f64,
) -> OhtStatus {
    if handle.is_null() || value.is_null() {
        return OhtStatus::NullArgument;
    }
    guarded(|| {
        let spec = unsafe { &(*handle).inner };
        let params = params_from(params);
        let result = match method {
            m if m == OhtMethod::Auto as i32 => eval_auto(spec, omega, x, &params),
            m if m == OhtMethod::Away as i32 => eval_away(spec, omega, x, params.laguerre_n),
            m if m == OhtMethod::Near as i32 => eval_near(spec, omega, x, &params),
            m if m == OhtMethod::Origin as i32 => eval_origin(spec, omega, params.laguerre_n),
            _ => return OhtStatus::ParamError,
        };
        match result {
            Ok(r) => {
                unsafe {
                    *value = OhtComplex { re: r.value.re, im: r.value.im };
                    if !err_estimate.is_null() {
                        *err_estimate = r.err_estimate;
                    }
                }
                OhtStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Evaluates ⨍₀^∞ f(t) B_ν(ωt)/(t−x) dt for B = J or Y, ν ∈ {0, 1}.
/// `family` takes an `OhtBesselFamily` value.
#[no_mangle]
pub extern "C" fn oht_eval_bessel(
    handle: *const OhtOscilland,
    family: i32,
    nu: u32,
    omega: f64,
    x: f64,
    value: *mut OhtComplex,
    err_estimate: *mut f64,
) -> OhtStatus {
    if handle.is_null() || value.is_null() {
        return OhtStatus::NullArgument;
    }
    guarded(|| {
        let spec = unsafe { &(*handle).inner };
        let kind = BesselKind {
            family: if family == OhtBesselFamily::J as i32 {
                BesselFamily::J
            } else if family == OhtBesselFamily::Y as i32 {
                BesselFamily::Y
            } else {
                return OhtStatus::ParamError;
            },
            nu,
        };
        match eval_bessel_hilbert(spec, omega, x, kind) {
            Ok(r) => {
                unsafe {
                    *value = OhtComplex { re: r.value.re, im: r.value.im };
                    if !err_estimate.is_null() {
                        *err_estimate = r.err_estimate;
                    }
                }
                OhtStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Slow self-validating reference evaluation (rotated-contour panels for
/// x > 0, the finite-part route at x = 0).
#[no_mangle]
pub extern "C" fn oht_reference(
    handle: *const OhtOscilland,
    omega: f64,
    x: f64,
    value: *mut OhtComplex,
    est_err: *mut f64,
) -> OhtStatus {
    if handle.is_null() || value.is_null() {
        return OhtStatus::NullArgument;
    }
    guarded(|| {
        let spec = unsafe { &(*handle).inner };
        let result = if x == 0.0 {
            oracle_hadamard(spec, omega)
        } else {
            oracle_rotated(spec, omega, x)
        };
        match result {
            Ok(o) => {
                unsafe {
                    *value = OhtComplex { re: o.value.re, im: o.value.im };
                    if !est_err.is_null() {
                        *est_err = o.est_err;
                    }
                }
                OhtStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Static, null-terminated description of a status code. Unknown codes map
/// to a generic message.
#[no_mangle]
pub extern "C" fn oht_status_message(status: i32) -> *const c_char {
    let text: &'static [u8] = match status {
        s if s == OhtStatus::Ok as i32 => b"ok\0",
        s if s == OhtStatus::NullArgument as i32 => b"null argument\0",
        s if s == OhtStatus::InvalidUtf8 as i32 => b"label is not valid UTF-8\0",
        s if s == OhtStatus::NotRegistered as i32 => b"unknown oscilland label\0",
        s if s == OhtStatus::DomainError as i32 => b"argument outside mathematical domain\0",
        s if s == OhtStatus::ParamError as i32 => b"invalid parameter\0",
        s if s == OhtStatus::EvalError as i32 => b"evaluation failed\0",
        s if s == OhtStatus::SolveError as i32 => b"linear solve failed\0",
        s if s == OhtStatus::OracleError as i32 => b"reference evaluation did not converge\0",
        s if s == OhtStatus::Panic as i32 => b"internal panic\0",
        _ => b"unknown status\0",
    };
    text.as_ptr() as *const c_char
}

/// Library version as a static, null-terminated string.
#[no_mangle]
pub extern "C" fn oht_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
