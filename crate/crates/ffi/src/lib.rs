//! C ABI over `hessberg-core`.
//!
//! Every fallible call returns an [`HbStatus`]; on failure the message is
//! available from [`hb_last_error`] on the same thread. Strings handed out
//! by the library are released with [`hb_string_free`], rings with
//! [`hb_quotient_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hessberg_core::basisgen::{default_basis, verify_basis};
use hessberg_core::hessfn::validate;
use hessberg_core::pdual::{gysin_check, verify_basis_extends_duals, verify_duals_independent};
use hessberg_core::suite::{run_suite, SuiteConfig};
use hessberg_core::{build_quotient, generators, HbError, HessFn, LieType, Poly, QuotientRing};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnsupportedType = 4,
    Arity = 5,
    InvalidHessFn = 6,
    NotArtinian = 7,
    RingMismatch = 8,
    Inclusion = 9,
    CeilingExceeded = 10,
    BufferTooSmall = 11,
    CheckFailed = 12,
    OutOfRange = 13,
    Internal = 14,
    Panic = 15,
}

impl From<&HbError> for HbStatus {
    fn from(e: &HbError) -> Self {
        match e {
            HbError::Parse(_) | HbError::InvalidPermutation(_) => HbStatus::Parse,
            HbError::UnsupportedType(_) | HbError::NotFlag => HbStatus::UnsupportedType,
            HbError::Arity { .. } => HbStatus::Arity,
            HbError::InvalidHessFn { .. } | HbError::NotLowerIdeal(_) => HbStatus::InvalidHessFn,
            HbError::NotArtinian => HbStatus::NotArtinian,
            HbError::VarCountMismatch { .. } | HbError::RingMismatch(_) => HbStatus::RingMismatch,
            HbError::Inclusion { .. } => HbStatus::Inclusion,
            HbError::CeilingExceeded(_) => HbStatus::CeilingExceeded,
            HbError::IllDefinedMap(_) => HbStatus::CheckFailed,
            HbError::IndexOutOfRange(_) => HbStatus::OutOfRange,
            _ => HbStatus::Internal,
        }
    }
}

/// Opaque quotient ring together with the function that presents it.
pub struct HbQuotient {
    h: HessFn,
    ring: QuotientRing,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct HbBasisReport {
    pub count: usize,
    pub dim: usize,
    pub rank: usize,
    pub is_basis: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct HbDualsReport {
    pub count: usize,
    pub rank: usize,
    pub independent: bool,
    pub extends_to_basis: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct HbGysinReport {
    pub dim_sub: usize,
    pub dim: usize,
    pub degree_shift: usize,
    pub rank: usize,
    pub injective: bool,
    pub well_defined: bool,
    pub degrees_ok: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(HbStatus, String);

impl From<HbError> for Fail {
    fn from(e: HbError) -> Self {
        Fail(HbStatus::from(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> HbStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HbStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside hessberg".to_string());
            HbStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(HbStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(HbStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    p.as_mut()
        .ok_or_else(|| Fail(HbStatus::NullPointer, "null output pointer".into()))
}

unsafe fn handle<'a>(q: *const HbQuotient) -> Result<&'a HbQuotient, Fail> {
    q.as_ref()
        .ok_or_else(|| Fail(HbStatus::NullPointer, "null quotient handle".into()))
}

fn give_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Fail(HbStatus::Internal, "interior NUL in output".into()))
}

fn parse_h(s: &str) -> Result<HessFn, Fail> {
    Ok(s.parse::<HessFn>()?)
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn hb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failing call on this thread, or NULL.
/// Valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn hb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn hb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Check the defining conditions for a function such as `"B3:5,5,4"`.
/// Sets `*valid`; a violation is not an error.
///
/// # Safety
/// `h` must be a NUL-terminated string, `valid` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn hb_validate(h: *const c_char, valid: *mut bool) -> HbStatus {
    guard(|| {
        let s = text(h)?;
        let valid = out(valid)?;
        let (ty, vals) = s
            .split_once(':')
            .ok_or_else(|| Fail(HbStatus::Parse, format!("expected TYPE:VALUES, got {s:?}")))?;
        let ty: LieType = ty.trim().parse()?;
        let vals = vals
            .split(',')
            .map(|v| v.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Fail(HbStatus::Parse, e.to_string()))?;
        let report = validate(ty, &vals)?;
        if !report.is_ok() {
            set_error(format!("{s} violates the defining conditions"));
        }
        *valid = report.is_ok();
        Ok(())
    })
}

/// Build the cohomology ring for `h`. Free with [`hb_quotient_free`].
///
/// # Safety
/// `h` must be a NUL-terminated string, `out_q` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn hb_quotient_new(h: *const c_char, out_q: *mut *mut HbQuotient) -> HbStatus {
    guard(|| {
        let h = parse_h(text(h)?)?;
        let slot = out(out_q)?;
        let ring = build_quotient(&generators(&h))?;
        *slot = Box::into_raw(Box::new(HbQuotient { h, ring }));
        Ok(())
    })
}

/// # Safety
/// `q` must be NULL or a handle from [`hb_quotient_new`], freed once.
#[no_mangle]
pub unsafe extern "C" fn hb_quotient_free(q: *mut HbQuotient) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Vector-space dimension, 0 for a NULL handle.
///
/// # Safety
/// `q` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hb_quotient_dim(q: *const HbQuotient) -> usize {
    q.as_ref().map_or(0, |q| q.ring.dim())
}

/// Number of variables, 0 for a NULL handle.
///
/// # Safety
/// `q` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hb_quotient_nvars(q: *const HbQuotient) -> usize {
    q.as_ref().map_or(0, |q| q.ring.nvars())
}

/// Write the Hilbert series coefficients into `buf`. `*len` receives the
/// full length even when `cap` is too small.
///
/// # Safety
/// `buf` must hold `cap` elements (may be NULL when `cap` is 0).
#[no_mangle]
pub unsafe extern "C" fn hb_quotient_hilbert(
    q: *const HbQuotient,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> HbStatus {
    guard(|| {
        let q = handle(q)?;
        let series = q.ring.hilbert_series();
        *out(len)? = series.len();
        if cap < series.len() {
            return Err(Fail(
                HbStatus::BufferTooSmall,
                format!("need {} slots, have {cap}", series.len()),
            ));
        }
        if buf.is_null() {
            return Err(Fail(HbStatus::NullPointer, "null buffer".into()));
        }
        ptr::copy_nonoverlapping(series.as_ptr(), buf, series.len());
        Ok(())
    })
}

/// Normal form of `poly` (e.g. `"x1^2 - 3*x2"`) as a new string.
///
/// # Safety
/// `q` a live handle, `poly` NUL-terminated, `out_s` writable.
#[no_mangle]
pub unsafe extern "C" fn hb_quotient_normal_form(
    q: *const HbQuotient,
    poly: *const c_char,
    out_s: *mut *mut c_char,
) -> HbStatus {
    guard(|| {
        let q = handle(q)?;
        let p = Poly::parse(text(poly)?, q.ring.nvars())?;
        let slot = out(out_s)?;
        *slot = give_string(q.ring.normal_form(&p)?.to_string())?;
        Ok(())
    })
}

/// Coordinates of `poly` in the standard-monomial basis as a JSON object
/// `{"monomials": [...], "coordinates": ["p/q", ...]}`.
///
/// # Safety
/// `q` a live handle, `poly` NUL-terminated, `out_s` writable.
#[no_mangle]
pub unsafe extern "C" fn hb_quotient_coordinates_json(
    q: *const HbQuotient,
    poly: *const c_char,
    out_s: *mut *mut c_char,
) -> HbStatus {
    guard(|| {
        let q = handle(q)?;
        let n = q.ring.nvars();
        let p = Poly::parse(text(poly)?, n)?;
        let slot = out(out_s)?;
        let coords: Vec<String> = q.ring.coordinates(&p)?.iter().map(|c| c.to_string()).collect();
        let monos: Vec<String> = q
            .ring
            .standard_monomials()
            .iter()
            .map(|m| m.to_string())
            .collect();
        let v = serde_json::json!({ "monomials": monos, "coordinates": coords });
        *slot = give_string(v.to_string())?;
        Ok(())
    })
}

/// Check the default product basis of the ring.
///
/// # Safety
/// `q` a live handle, `report` writable.
#[no_mangle]
pub unsafe extern "C" fn hb_quotient_verify_basis(
    q: *const HbQuotient,
    report: *mut HbBasisReport,
) -> HbStatus {
    guard(|| {
        let q = handle(q)?;
        let slot = out(report)?;
        let mut els = default_basis(&q.h)?;
        let r = verify_basis(&q.ring, &mut els)?;
        *slot = HbBasisReport {
            count: r.count,
            dim: r.dim,
            rank: r.rank,
            is_basis: r.is_basis,
        };
        Ok(())
    })
}

/// Check the Poincare dual classes of all sub-functions.
///
/// # Safety
/// `q` a live handle, `report` writable.
#[no_mangle]
pub unsafe extern "C" fn hb_quotient_verify_duals(
    q: *const HbQuotient,
    report: *mut HbDualsReport,
) -> HbStatus {
    guard(|| {
        let q = handle(q)?;
        let slot = out(report)?;
        let d = verify_duals_independent(&q.h, &q.ring)?;
        let e = verify_basis_extends_duals(&q.h, &q.ring)?;
        *slot = HbDualsReport {
            count: d.count,
            rank: d.rank,
            independent: d.independent,
            extends_to_basis: e.holds,
        };
        Ok(())
    })
}

/// Push-forward from the ring of `sub` into the ring of `q`.
///
/// # Safety
/// Both handles live, `report` writable.
#[no_mangle]
pub unsafe extern "C" fn hb_gysin(
    sub: *const HbQuotient,
    q: *const HbQuotient,
    report: *mut HbGysinReport,
) -> HbStatus {
    guard(|| {
        let sub = handle(sub)?;
        let q = handle(q)?;
        let slot = out(report)?;
        let r = gysin_check(&sub.h, &sub.ring, &q.h, &q.ring)?;
        *slot = HbGysinReport {
            dim_sub: r.dim_sub,
            dim: r.dim,
            degree_shift: r.degree_shift,
            rank: r.rank,
            injective: r.injective,
            well_defined: r.well_defined,
            degrees_ok: r.degrees_ok,
        };
        Ok(())
    })
}

/// Run the full suite for a type such as `"B3"` and return the JSON report.
/// `jobs` of 0 means one thread.
///
/// # Safety
/// `ty` NUL-terminated, `out_s` writable.
#[no_mangle]
pub unsafe extern "C" fn hb_suite_json(
    ty: *const c_char,
    seed: u64,
    jobs: usize,
    out_s: *mut *mut c_char,
) -> HbStatus {
    guard(|| {
        let ty: LieType = text(ty)?.parse()?;
        let slot = out(out_s)?;
        let mut cfg = SuiteConfig::new(ty);
        cfg.seed = seed;
        cfg.jobs = jobs.max(1);
        let report = run_suite(&cfg)?;
        let json = serde_json::to_string(&report).map_err(|e| Fail(HbStatus::Internal, e.to_string()))?;
        *slot = give_string(json)?;
        Ok(())
    })
}
