//! C ABI over `seplab`.
//!
//! Every function returns a [`SeplabStatus`]; on failure a message is
//! available from [`seplab_last_error`] on the same thread. Polynomials are
//! opaque [`SeplabPoly`] handles released with [`seplab_poly_free`], and
//! strings returned through out-parameters are released with
//! [`seplab_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use seplab::algebra::{IntPoly, Integer};
use seplab::families::{Family, RangePolicy};
use seplab::irreducible::{certify_irreducible, Verdict};
use seplab::roots::{measure, RootError, RootOptions, Round};
use seplab::verify::{run_suite, Canonical, Check, SuiteParams};

/// Status codes shared by all entry points.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeplabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    FamilyRange = 4,
    NotSquarefree = 5,
    DegreeTooSmall = 6,
    PrecisionExhausted = 7,
    Computation = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeplabVerdict {
    Irreducible = 0,
    Reducible = 1,
    Inconclusive = 2,
}

/// Certified separation measurement. Endpoints are rounded outward to `double`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SeplabSeparation {
    pub sep_lo: f64,
    pub sep_hi: f64,
    pub e_lo: f64,
    pub e_hi: f64,
    pub precision_bits: u32,
}

/// Opaque integer polynomial.
pub struct SeplabPoly {
    inner: IntPoly,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(SeplabStatus, String);

impl Failure {
    fn new(status: SeplabStatus, msg: impl Into<String>) -> Self {
        Failure(status, msg.into())
    }
}

impl From<RootError> for Failure {
    fn from(e: RootError) -> Self {
        let status = match e {
            RootError::NotSquarefree => SeplabStatus::NotSquarefree,
            RootError::DegreeTooSmall(_) | RootError::ConstantPolynomial => SeplabStatus::DegreeTooSmall,
            RootError::PrecisionExhausted(_) => SeplabStatus::PrecisionExhausted,
            RootError::PrecisionTooLow(_) | RootError::PrecisionRange { .. } => SeplabStatus::InvalidArgument,
            _ => SeplabStatus::Computation,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SeplabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SeplabStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SeplabStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(SeplabStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::new(SeplabStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn poly_arg<'a>(p: *const SeplabPoly) -> Result<&'a IntPoly, Failure> {
    p.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| Failure::new(SeplabStatus::NullPointer, "polynomial handle is null"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(SeplabStatus::NullPointer, "output pointer is null"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure::new(SeplabStatus::Computation, "string contains NUL"))?;
    write_out(out, c.into_raw())
}

unsafe fn write_poly(out: *mut *mut SeplabPoly, inner: IntPoly) -> Result<(), Failure> {
    write_out(out, Box::into_raw(Box::new(SeplabPoly { inner })))
}

fn parse_int(s: &str, name: &str) -> Result<Integer, Failure> {
    s.trim()
        .parse()
        .map_err(|_| Failure::new(SeplabStatus::InvalidArgument, format!("{name}: bad integer '{s}'")))
}

fn optional(v: i64) -> Option<usize> {
    usize::try_from(v).ok()
}

/// Message for the last failing call on this thread; empty after a success.
/// The pointer stays valid until the next `seplab_*` call on the same thread.
#[no_mangle]
pub extern "C" fn seplab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Family member at a concrete `n` (decimal string). Pass a negative `d` or
/// `h` when the family takes no such parameter.
///
/// # Safety
/// `tag` and `n` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn seplab_poly_from_family(
    tag: *const c_char,
    d: i64,
    h: i64,
    pad: u32,
    n: *const c_char,
    explore: bool,
    out: *mut *mut SeplabPoly,
) -> SeplabStatus {
    guard(|| {
        let tag = str_arg(tag, "tag")?;
        let n = parse_int(str_arg(n, "n")?, "n")?;
        let family = Family::from_tag(tag, optional(d), optional(h), pad as usize)
            .map_err(|e| Failure::new(SeplabStatus::InvalidArgument, e.to_string()))?;
        let policy = RangePolicy {
            allow_below_threshold: explore,
        };
        let bi = family
            .build(policy)
            .map_err(|e| Failure::new(SeplabStatus::FamilyRange, e.to_string()))?;
        write_poly(out, bi.instantiate(&n))
    })
}

/// Polynomial from `len` ascending machine-integer coefficients.
///
/// # Safety
/// `coeffs` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn seplab_poly_from_coeffs(
    coeffs: *const i64,
    len: usize,
    out: *mut *mut SeplabPoly,
) -> SeplabStatus {
    guard(|| {
        if coeffs.is_null() && len > 0 {
            return Err(Failure::new(SeplabStatus::NullPointer, "coeffs is null"));
        }
        let slice = if len == 0 { &[][..] } else { std::slice::from_raw_parts(coeffs, len) };
        write_poly(out, IntPoly::from_i64(slice))
    })
}

/// Polynomial from whitespace-separated ascending decimal coefficients.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn seplab_poly_from_string(text: *const c_char, out: *mut *mut SeplabPoly) -> SeplabStatus {
    guard(|| {
        let coeffs = str_arg(text, "text")?
            .split_whitespace()
            .map(|t| parse_int(t, "coefficient"))
            .collect::<Result<Vec<_>, _>>()?;
        write_poly(out, IntPoly::from_coeffs(coeffs))
    })
}

/// # Safety
/// `poly` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn seplab_poly_free(poly: *mut SeplabPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Degree; the zero polynomial is an error.
///
/// # Safety
/// `poly` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn seplab_poly_degree(poly: *const SeplabPoly, out: *mut usize) -> SeplabStatus {
    guard(|| {
        let d = poly_arg(poly)?
            .degree()
            .ok_or_else(|| Failure::new(SeplabStatus::DegreeTooSmall, "zero polynomial has no degree"))?;
        write_out(out, d)
    })
}

/// Coefficients as `"[c0, c1, ...]"`.
///
/// # Safety
/// `poly` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn seplab_poly_coeffs(poly: *const SeplabPoly, out: *mut *mut c_char) -> SeplabStatus {
    guard(|| {
        let p = poly_arg(poly)?;
        let items: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
        write_string(out, format!("[{}]", items.join(", ")))
    })
}

/// Height as a decimal string.
///
/// # Safety
/// `poly` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn seplab_poly_height(poly: *const SeplabPoly, out: *mut *mut c_char) -> SeplabStatus {
    guard(|| {
        let h = poly_arg(poly)?
            .height()
            .map_err(|e| Failure::new(SeplabStatus::DegreeTooSmall, e.to_string()))?;
        write_string(out, h.to_string())
    })
}

/// Certified separation and exponent interval. Zero for either precision
/// argument selects the default (start 128 bits, cap 8192 bits).
///
/// # Safety
/// `poly` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn seplab_separation(
    poly: *const SeplabPoly,
    prec_start: u32,
    prec_cap: u32,
    out: *mut SeplabSeparation,
) -> SeplabStatus {
    guard(|| {
        let p = poly_arg(poly)?;
        let defaults = RootOptions::default();
        let start = if prec_start == 0 { defaults.start.get() } else { prec_start };
        let cap = if prec_cap == 0 { defaults.cap.get() } else { prec_cap };
        let opts = RootOptions::new(start, cap)?;
        let r = measure(p, &opts)?;
        write_out(
            out,
            SeplabSeparation {
                sep_lo: r.sep.lo.to_f64(Round::Down),
                sep_hi: r.sep.hi.to_f64(Round::Up),
                e_lo: r.e_lo,
                e_hi: r.e_hi,
                precision_bits: r.precision.get(),
            },
        )
    })
}

/// Irreducibility verdict using up to `prime_budget` good primes. When
/// `certificate_json` is non-null the full certificate is written there.
///
/// # Safety
/// `poly` must be a live handle; `verdict` must be writable;
/// `certificate_json` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn seplab_certify(
    poly: *const SeplabPoly,
    prime_budget: u32,
    verdict: *mut SeplabVerdict,
    certificate_json: *mut *mut c_char,
) -> SeplabStatus {
    guard(|| {
        let p = poly_arg(poly)?;
        let cert = certify_irreducible(p, prime_budget as usize)
            .map_err(|e| Failure::new(SeplabStatus::InvalidArgument, e.to_string()))?;
        let v = match cert.verdict {
            Verdict::Irreducible => SeplabVerdict::Irreducible,
            Verdict::Reducible { .. } => SeplabVerdict::Reducible,
            Verdict::Inconclusive => SeplabVerdict::Inconclusive,
        };
        write_out(verdict, v)?;
        if !certificate_json.is_null() {
            let json = serde_json::to_string(&cert).map_err(|e| Failure::new(SeplabStatus::Computation, e.to_string()))?;
            write_string(certificate_json, json)?;
        }
        Ok(())
    })
}

/// Runs every identity check with symbolic degree bound `d_max` and writes
/// the number of failing checks.
///
/// # Safety
/// `failures` must be writable.
#[no_mangle]
pub unsafe extern "C" fn seplab_verify_suite(d_max: u32, failures: *mut u32) -> SeplabStatus {
    guard(|| {
        let params = SuiteParams::with_d_max(d_max as usize);
        let reports = run_suite(&Canonical, &Check::ALL, &params);
        write_out(failures, reports.iter().filter(|r| !r.pass).count() as u32)
    })
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn seplab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn null_arguments_are_reported() {
        let status = unsafe { seplab_poly_degree(ptr::null(), ptr::null_mut()) };
        assert_eq!(status, SeplabStatus::NullPointer);
        let msg = unsafe { CStr::from_ptr(seplab_last_error()) };
        assert!(msg.to_str().unwrap().contains("null"));
    }

    #[test]
    fn success_clears_error() {
        let mut p = ptr::null_mut();
        unsafe {
            assert_eq!(seplab_poly_from_coeffs([1i64, 0, 1].as_ptr(), 3, &mut p), SeplabStatus::Ok);
            assert_eq!(CStr::from_ptr(seplab_last_error()).to_bytes().len(), 0);
            seplab_poly_free(p);
        }
    }
}
