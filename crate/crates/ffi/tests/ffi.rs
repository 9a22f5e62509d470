use std::ffi::{CStr, CString};
use std::ptr;

use stratos_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(stratos_last_error()) }.to_string_lossy().into_owned()
}

fn make(expr: &str) -> *mut StratosSpace {
    let mut h = ptr::null_mut();
    let status = unsafe { stratos_space_make(c(expr).as_ptr(), &mut h) };
    assert_eq!(status, StratosStatus::Ok, "{}", last_error());
    assert!(!h.is_null());
    h
}

#[test]
fn cp2_signature_is_one() {
    let h = make("cp2");
    let mut sigma = 0;
    let st = unsafe { stratos_signature(h, c("zero").as_ptr(), c("top").as_ptr(), 3, &mut sigma) };
    assert_eq!(st, StratosStatus::Ok);
    assert_eq!(sigma, 1);
    assert_eq!(unsafe { stratos_space_dim(h) }, 4);
    let mut chi = 0;
    assert_eq!(unsafe { stratos_space_euler(h, &mut chi) }, StratosStatus::Ok);
    assert_eq!(chi, 3);
    unsafe { stratos_space_free(h) };
}

#[test]
fn emit_then_parse_round_trips() {
    let h = make("suspend(t2)");
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { stratos_space_emit(h, &mut text) }, StratosStatus::Ok);
    let mut h2 = ptr::null_mut();
    assert_eq!(unsafe { stratos_space_parse(text, &mut h2) }, StratosStatus::Ok);
    let mut text2 = ptr::null_mut();
    assert_eq!(unsafe { stratos_space_emit(h2, &mut text2) }, StratosStatus::Ok);
    unsafe {
        assert_eq!(CStr::from_ptr(text), CStr::from_ptr(text2));
        stratos_string_free(text);
        stratos_string_free(text2);
        stratos_space_free(h);
        stratos_space_free(h2);
    }
}

#[test]
fn intersection_homology_of_a_suspended_torus() {
    let h = make("suspend(t2)");
    let mut dims = Vec::new();
    for (p, i) in [("zero", 1), ("top", 1), ("zero", 2), ("top", 2)] {
        let mut d = usize::MAX;
        let st = unsafe { stratos_ih_dim(h, c(p).as_ptr(), ptr::null(), i, false, &mut d) };
        assert_eq!(st, StratosStatus::Ok, "{}", last_error());
        dims.push(d);
    }
    // zero keeps H_1(T²) away from the apexes; top lets the cones kill it; dual in degree 2.
    assert_eq!(dims, vec![2, 0, 0, 2]);
    unsafe { stratos_space_free(h) };
}

#[test]
fn maslov_of_three_lines() {
    let mut idx = 0;
    let st = unsafe {
        stratos_maslov(
            c("2 2\n0 1\n-1 0").as_ptr(),
            c("2 1\n1\n0").as_ptr(),
            c("2 1\n0\n1").as_ptr(),
            c("2 1\n1\n1").as_ptr(),
            &mut idx,
        )
    };
    assert_eq!(st, StratosStatus::Ok, "{}", last_error());
    assert_eq!(idx, 1);
}

#[test]
fn wall_verify_on_glued_cones() {
    let h = make("glue(cone(s3),cone(s3))");
    let mut residual = -1;
    let st = unsafe { stratos_wall_verify(h, c("1").as_ptr(), c("1").as_ptr(), 3, &mut residual) };
    assert_eq!(st, StratosStatus::Ok, "{}", last_error());
    assert_eq!(residual, 0);
    unsafe { stratos_space_free(h) };
}

#[test]
fn errors_carry_status_and_message() {
    let mut h = ptr::null_mut();
    let st = unsafe { stratos_space_parse(c("dim 2\nfacet 0 1 x orient 1\n").as_ptr(), &mut h) };
    assert_eq!(st, StratosStatus::Parse);
    assert!(h.is_null());
    assert!(last_error().contains("line 2"));

    let st = unsafe { stratos_space_parse(c("dim 2\nfacet 0 1 2 orient 1\nfacet 0 1 3 orient -1\n").as_ptr(), &mut h) };
    assert_eq!(st, StratosStatus::Validation);

    assert_eq!(unsafe { stratos_space_make(ptr::null(), &mut h) }, StratosStatus::NullArgument);
    assert_eq!(unsafe { stratos_space_make(c("cone(").as_ptr(), &mut h) }, StratosStatus::Parse);
    assert_eq!(unsafe { stratos_space_dim(ptr::null()) }, -1);

    let s = make("s4");
    let mut sigma = 0;
    let st = unsafe { stratos_signature(s, c("zero").as_ptr(), c("wobbly").as_ptr(), 3, &mut sigma) };
    assert_eq!(st, StratosStatus::Parse);
    let mut d = 0;
    let st = unsafe { stratos_ih_dim(s, c("zero").as_ptr(), ptr::null(), 9, false, &mut d) };
    assert_eq!(st, StratosStatus::Contract);
    unsafe { stratos_space_free(s) };
    assert_eq!(unsafe { stratos_space_make(c("s2").as_ptr(), &mut h) }, StratosStatus::Ok);
    assert_eq!(last_error(), "");
    unsafe { stratos_space_free(h) };
}

#[test]
fn header_declares_the_api() {
    let header = include_str!("../include/stratos.h");
    for name in [
        "stratos_space_parse",
        "stratos_space_make",
        "stratos_space_free",
        "stratos_signature",
        "stratos_maslov",
        "stratos_wall_verify",
        "stratos_ih_dim",
        "stratos_last_error",
        "STRATOS_STATUS_THEOREM_FAILED",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
