//! C ABI for `keller-core`.
//!
//! Rings and polynomials cross the boundary as opaque handles created by
//! `keller_*_new` / `keller_poly_parse` and released with the matching
//! `*_free`. Every fallible call returns a [`KellerStatus`]; on failure
//! `keller_last_error` describes the cause. Strings returned to the caller
//! must be released with `keller_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use keller_core::factor::{factor, gcd_multi, is_irreducible, is_squarefree};
use keller_core::harness::{witness_search, Certificate, WitnessKind};
use keller_core::jacobian::{dgcd, is_keller};
use keller_core::{parse_poly, Error, PolyMap, PolyRing, Polynomial, Ring};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KellerStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidRing = 4,
    RingMismatch = 5,
    /// Input outside an operation's domain (zero, constant, wrong arity, ...).
    DomainError = 6,
    Panic = 7,
}

/// Opaque polynomial ring handle.
pub struct KellerRing(Ring);

/// Opaque polynomial handle.
pub struct KellerPoly(Polynomial);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(KellerStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) | Error::InvalidNumber(_) => KellerStatus::ParseError,
            Error::InvalidRing(_) => KellerStatus::InvalidRing,
            Error::RingMismatch => KellerStatus::RingMismatch,
            _ => KellerStatus::DomainError,
        };
        Fail(status, e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> KellerStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => KellerStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            KellerStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(KellerStatus::NullPointer, "null pointer argument".to_string())
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail(KellerStatus::InvalidUtf8, "string is not UTF-8".to_string()))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(null)
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

unsafe fn poly_list(polys: *const *const KellerPoly, count: usize) -> Result<Vec<Polynomial>, Fail> {
    if polys.is_null() {
        return Err(null());
    }
    std::slice::from_raw_parts(polys, count).iter().map(|&p| Ok(deref(p)?.0.clone())).collect()
}

/// Message for the most recent failure on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn keller_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Creates a ring from comma-separated variable names (graded lex order).
///
/// # Safety
/// `vars` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn keller_ring_new(vars: *const c_char, out: *mut *mut KellerRing) -> KellerStatus {
    guard(|| {
        let ring = PolyRing::parse_vars(text(vars)?)?;
        write(out, Box::into_raw(Box::new(KellerRing(ring))))
    })
}

/// # Safety
/// `ring` must come from `keller_ring_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn keller_ring_free(ring: *mut KellerRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// # Safety
/// `ring` must be a live ring handle.
#[no_mangle]
pub unsafe extern "C" fn keller_ring_nvars(ring: *const KellerRing) -> usize {
    ring.as_ref().map_or(0, |r| r.0.nvars())
}

/// # Safety
/// `ring` must be a live handle, `source` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn keller_poly_parse(
    ring: *const KellerRing,
    source: *const c_char,
    out: *mut *mut KellerPoly,
) -> KellerStatus {
    guard(|| {
        let ring = deref(ring)?;
        let p = parse_poly(text(source)?, &ring.0).map_err(Error::from)?;
        write(out, Box::into_raw(Box::new(KellerPoly(p))))
    })
}

/// # Safety
/// `poly` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn keller_poly_free(poly: *mut KellerPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Canonical text form; release with `keller_string_free`.
///
/// # Safety
/// `poly` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn keller_poly_to_string(poly: *const KellerPoly, out: *mut *mut c_char) -> KellerStatus {
    guard(|| write(out, into_c(deref(poly)?.0.to_string())))
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn keller_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `poly` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn keller_poly_is_squarefree(poly: *const KellerPoly, out: *mut bool) -> KellerStatus {
    guard(|| write(out, is_squarefree(&deref(poly)?.0)?))
}

/// # Safety
/// `poly` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn keller_poly_is_irreducible(poly: *const KellerPoly, out: *mut bool) -> KellerStatus {
    guard(|| write(out, is_irreducible(&deref(poly)?.0)?))
}

/// Normalized gcd as a new handle.
///
/// # Safety
/// `a`, `b` must be live handles over the same ring; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn keller_poly_gcd(
    a: *const KellerPoly,
    b: *const KellerPoly,
    out: *mut *mut KellerPoly,
) -> KellerStatus {
    guard(|| {
        let g = gcd_multi(&deref(a)?.0, &deref(b)?.0)?;
        write(out, Box::into_raw(Box::new(KellerPoly(g))))
    })
}

/// Irreducible factorization as JSON `{"unit": .., "factors": [[p, e], ..]}`.
///
/// # Safety
/// `poly` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn keller_poly_factor_json(poly: *const KellerPoly, out: *mut *mut c_char) -> KellerStatus {
    guard(|| {
        let fz = factor(&deref(poly)?.0)?;
        write(out, into_c(serde_json::to_string(&fz).expect("serializes")))
    })
}

/// Whether the Jacobian determinant of the `count` polynomials is a nonzero constant.
///
/// # Safety
/// `polys` must point to `count` live handles over one ring; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn keller_is_keller(polys: *const *const KellerPoly, count: usize, out: *mut bool) -> KellerStatus {
    guard(|| {
        let f = PolyMap::new(poly_list(polys, count)?)?;
        write(out, is_keller(&f)?)
    })
}

/// Differential gcd of the maximal Jacobian minors.
///
/// # Safety
/// `polys` must point to `count` live handles over one ring; outputs writable.
#[no_mangle]
pub unsafe extern "C" fn keller_dgcd(
    polys: *const *const KellerPoly,
    count: usize,
    out_value: *mut *mut KellerPoly,
    out_is_constant: *mut bool,
) -> KellerStatus {
    guard(|| {
        let f = PolyMap::new(poly_list(polys, count)?)?;
        let d = dgcd(&f)?;
        if out_value.is_null() || out_is_constant.is_null() {
            return Err(null());
        }
        write(out_is_constant, d.is_constant_nonzero)?;
        write(out_value, Box::into_raw(Box::new(KellerPoly(d.value))))
    })
}

/// Irreducible-witness search for `g^2 | w(f)`; writes the result and its
/// divisibility certificate (if any) as JSON.
///
/// # Safety
/// `polys` must point to `count` live handles; `g` live over the same ring;
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn keller_witness_search_json(
    polys: *const *const KellerPoly,
    count: usize,
    g: *const KellerPoly,
    max_degree: u32,
    out: *mut *mut c_char,
) -> KellerStatus {
    guard(|| {
        let f = PolyMap::new(poly_list(polys, count)?)?;
        let g = &deref(g)?.0;
        let res = witness_search(&f, g, max_degree, WitnessKind::Irreducible)?;
        let value = serde_json::json!({ "result": res, "certificate": res.to_certificate(&f, g) });
        write(out, into_c(value.to_string()))
    })
}

/// Re-verifies a JSON certificate offline.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn keller_certificate_verify_json(json: *const c_char, out: *mut bool) -> KellerStatus {
    guard(|| {
        let cert: Certificate =
            serde_json::from_str(text(json)?).map_err(|e| Fail(KellerStatus::ParseError, e.to_string()))?;
        write(out, cert.verify()?)
    })
}
