use std::ffi::{CStr, CString};
use std::ptr;

use matgrow_ffi::*;

fn builtin(name: &str) -> *mut MgMatroid {
    let name = CString::new(name).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mg_builtin(name.as_ptr(), &mut out) }, MgStatus::Ok);
    out
}

fn last_error() -> String {
    let p = mg_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn geometry_sizes_and_ranks() {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { mg_pg(3, 3, &mut m) }, MgStatus::Ok);
    let (mut n, mut r, mut eps) = (0usize, 0usize, 0usize);
    unsafe {
        assert_eq!(mg_size(m, &mut n), MgStatus::Ok);
        assert_eq!(mg_rank(m, (1u64 << n) - 1, &mut r), MgStatus::Ok);
        assert_eq!(mg_epsilon(m, &mut eps), MgStatus::Ok);
        mg_free(m);
    }
    assert_eq!((n, r, eps), (13, 3, 13));
}

#[test]
fn rank_rejects_elements_outside_the_ground_set() {
    let m = builtin("fano");
    let mut r = 0usize;
    assert_eq!(unsafe { mg_rank(m, 1 << 9, &mut r) }, MgStatus::InvalidArgument);
    assert!(last_error().contains('9'));
    unsafe { mg_free(m) };
}

#[test]
fn minors_and_representability() {
    let (fano, u24) = (builtin("fano"), builtin("u24"));
    let (mut has, mut rep2, mut rep3) = (true, false, true);
    unsafe {
        assert_eq!(mg_has_minor(fano, u24, 1_000_000, &mut has), MgStatus::Ok);
        assert_eq!(mg_is_representable(fano, 2, &mut rep2), MgStatus::Ok);
        assert_eq!(mg_is_representable(fano, 3, &mut rep3), MgStatus::Ok);
        mg_free(fano);
        mg_free(u24);
    }
    assert!(!has);
    assert!(rep2);
    assert!(!rep3);
}

#[test]
fn tiny_budget_reports_budget_status() {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { mg_pg(4, 2, &mut g) }, MgStatus::Ok);
    let u24 = builtin("u24");
    let mut has = false;
    assert_eq!(unsafe { mg_has_minor(g, u24, 1, &mut has) }, MgStatus::Budget);
    unsafe {
        mg_free(g);
        mg_free(u24);
    }
}

#[test]
fn text_round_trip() {
    let fano = builtin("fano");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { mg_to_text(fano, &mut s) }, MgStatus::Ok);
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { mg_parse(s, &mut back) }, MgStatus::Ok);
    let mut n = 0usize;
    assert_eq!(unsafe { mg_size(back, &mut n) }, MgStatus::Ok);
    assert_eq!(n, 7);
    unsafe {
        mg_string_free(s);
        mg_free(back);
        mg_free(fano);
    }
}

#[test]
fn errors_are_reported() {
    let mut out = ptr::null_mut();
    let bad = CString::new("no such thing").unwrap();
    assert_eq!(unsafe { mg_builtin(bad.as_ptr(), &mut out) }, MgStatus::InvalidArgument);
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { mg_builtin(ptr::null(), &mut out) }, MgStatus::NullPointer);
    assert_eq!(unsafe { mg_pg(3, 6, &mut out) }, MgStatus::InvalidArgument);
    let junk = CString::new("matroid x\nelements 3\ngarbage").unwrap();
    assert_ne!(unsafe { mg_parse(junk.as_ptr(), &mut out) }, MgStatus::Ok);
    let mut n = 0usize;
    assert_eq!(unsafe { mg_size(ptr::null(), &mut n) }, MgStatus::NullPointer);
    unsafe { mg_free(ptr::null_mut()) };
}

#[test]
fn formula_values() {
    let mut v = 0i64;
    assert_eq!(unsafe { mg_grf_formula(2, 1, 1, 3, &mut v) }, MgStatus::Ok);
    assert_eq!(v, 13);
    assert_eq!(unsafe { mg_grf_formula(2, 0, 0, 4, &mut v) }, MgStatus::Ok);
    assert_eq!(v, 15);
    assert!(mg_last_error().is_null());
}
