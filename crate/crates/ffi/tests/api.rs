use std::ffi::{CStr, CString};
use std::ptr;

use hessberg_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = hb_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn take(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_string_lossy().into_owned();
    hb_string_free(p);
    s
}

fn quotient(h: &str) -> *mut HbQuotient {
    let mut q = ptr::null_mut();
    let st = unsafe { hb_quotient_new(c(h).as_ptr(), &mut q) };
    assert_eq!(st, HbStatus::Ok, "{h}");
    q
}

#[test]
fn version_matches_core() {
    let v = unsafe { CStr::from_ptr(hb_version()) };
    assert_eq!(v.to_str().unwrap(), hessberg_core::VERSION);
}

#[test]
fn ring_lifecycle_and_hilbert() {
    let q = quotient("D4:3,5,4,7");
    unsafe {
        assert_eq!(hb_quotient_dim(q), 96);
        assert_eq!(hb_quotient_nvars(q), 4);
        let mut len = 0;
        assert_eq!(hb_quotient_hilbert(q, ptr::null_mut(), 0, &mut len), HbStatus::BufferTooSmall);
        let mut buf = vec![0usize; len];
        assert_eq!(hb_quotient_hilbert(q, buf.as_mut_ptr(), len, &mut len), HbStatus::Ok);
        assert_eq!(buf.iter().sum::<usize>(), 96);
        assert!(buf.iter().eq(buf.iter().rev()));
        hb_quotient_free(q);
        hb_quotient_free(ptr::null_mut());
        assert_eq!(hb_quotient_dim(ptr::null()), 0);
    }
}

#[test]
fn normal_form_and_coordinates() {
    let q = quotient("A1:2,2");
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(hb_quotient_normal_form(q, c("x1").as_ptr(), &mut s), HbStatus::Ok);
        assert_eq!(take(s), "-x2");
        assert_eq!(hb_quotient_coordinates_json(q, c("2*x1 + 1").as_ptr(), &mut s), HbStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["monomials"], serde_json::json!(["1", "x2"]));
        assert_eq!(v["coordinates"], serde_json::json!(["1", "-2"]));
        assert_eq!(hb_quotient_normal_form(q, c("x9").as_ptr(), &mut s), HbStatus::OutOfRange);
        hb_quotient_free(q);
    }
}

#[test]
fn reports() {
    let q = quotient("B3:5,5,4");
    let sub = quotient("B3:4,5,4");
    unsafe {
        let mut b = HbBasisReport::default();
        assert_eq!(hb_quotient_verify_basis(q, &mut b), HbStatus::Ok);
        assert!(b.is_basis);
        assert_eq!((b.count, b.rank), (b.dim, b.dim));

        let mut d = HbDualsReport::default();
        assert_eq!(hb_quotient_verify_duals(q, &mut d), HbStatus::Ok);
        assert!(d.independent && d.extends_to_basis);
        assert_eq!(d.rank, d.count);

        let mut g = HbGysinReport::default();
        assert_eq!(hb_gysin(sub, q, &mut g), HbStatus::Ok);
        assert!(g.injective && g.well_defined && g.degrees_ok);
        assert_eq!(g.rank, g.dim_sub);
        assert_eq!(g.degree_shift, 1);
        assert_eq!(hb_gysin(q, sub, &mut g), HbStatus::Inclusion);
        hb_quotient_free(q);
        hb_quotient_free(sub);
    }
}

#[test]
fn validation() {
    let mut ok = false;
    unsafe {
        assert_eq!(hb_validate(c("D4:3,5,4,7").as_ptr(), &mut ok), HbStatus::Ok);
        assert!(ok);
        assert_eq!(hb_validate(c("D4:5,4,3,4").as_ptr(), &mut ok), HbStatus::Ok);
        assert!(!ok);
        assert_eq!(hb_validate(c("A2:3").as_ptr(), &mut ok), HbStatus::Arity);
        assert_eq!(hb_validate(c("F4:1,2,3,4").as_ptr(), &mut ok), HbStatus::UnsupportedType);
        assert_eq!(hb_validate(ptr::null(), &mut ok), HbStatus::NullPointer);
    }
}

#[test]
fn error_codes_and_messages() {
    let mut q = ptr::null_mut();
    unsafe {
        assert_eq!(hb_quotient_new(c("E6:1").as_ptr(), &mut q), HbStatus::UnsupportedType);
        assert!(last_error().contains("unsupported type"));
        assert!(q.is_null());
        assert_eq!(hb_quotient_new(c("A2:2,1,3").as_ptr(), &mut q), HbStatus::InvalidHessFn);
        assert_eq!(hb_quotient_new(c("A2:3,3,3").as_ptr(), ptr::null_mut()), HbStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(hb_quotient_new(bad.as_ptr().cast(), &mut q), HbStatus::InvalidUtf8);
        let mut s = ptr::null_mut();
        assert_eq!(hb_suite_json(c("A9").as_ptr(), 1, 1, &mut s), HbStatus::CeilingExceeded);
        assert!(last_error().contains("rank exceeds desk-scale ceiling"));
        assert_eq!(hb_quotient_dim(ptr::null()), 0);
    }
    let q = quotient("A2:3,3,3");
    assert!(hb_last_error().is_null());
    unsafe { hb_quotient_free(q) };
}

#[test]
fn suite_json_is_deterministic() {
    unsafe {
        let mut a = ptr::null_mut();
        let mut b = ptr::null_mut();
        assert_eq!(hb_suite_json(c("G2").as_ptr(), 9, 1, &mut a), HbStatus::Ok);
        assert_eq!(hb_suite_json(c("G2").as_ptr(), 9, 4, &mut b), HbStatus::Ok);
        let (a, b) = (take(a), take(b));
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["functions"], 8);
        assert_eq!(v["pass"], true);
    }
}
