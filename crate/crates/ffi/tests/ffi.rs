use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use ternary_gf_ffi::*;

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { tg_string_free(p) };
    s
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(tg_last_error_message()) }.to_str().unwrap().to_owned()
}

#[test]
fn closed_form_entries() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { tg_t_closed(6, 2, &mut s) }, TgStatus::Ok);
    assert_eq!(take_string(s), "550");
    assert_eq!(unsafe { tg_t_closed(0, 0, &mut s) }, TgStatus::Ok);
    assert_eq!(take_string(s), "1");
    assert_eq!(unsafe { tg_t_closed(1, 0, ptr::null_mut()) }, TgStatus::NullPointer);
    assert!(last_error().contains("NULL"));
}

#[test]
fn triangles_agree() {
    let mut closed = ptr::null_mut();
    let mut oracle = ptr::null_mut();
    unsafe {
        assert_eq!(tg_triangle_closed(8, &mut closed), TgStatus::Ok);
        assert_eq!(tg_triangle_oracle(8, &mut oracle), TgStatus::Ok);
        assert_eq!(tg_triangle_nmax(closed), 8);
        let mut eq = false;
        assert_eq!(tg_triangle_equal(closed, oracle, &mut eq), TgStatus::Ok);
        assert!(eq);

        let mut s = ptr::null_mut();
        assert_eq!(tg_triangle_entry(closed, 4, 1, &mut s), TgStatus::Ok);
        assert_eq!(take_string(s), "28");
        assert_eq!(tg_triangle_entry(closed, 4, 4, &mut s), TgStatus::Ok);
        assert_eq!(take_string(s), "0");
        assert_eq!(tg_triangle_entry(closed, 9, 0, &mut s), TgStatus::OutOfRange);

        let mut small = ptr::null_mut();
        assert_eq!(tg_triangle_closed(7, &mut small), TgStatus::Ok);
        assert_eq!(tg_triangle_equal(closed, small, &mut eq), TgStatus::Ok);
        assert!(!eq);

        tg_triangle_free(small);
        tg_triangle_free(closed);
        tg_triangle_free(oracle);
        tg_triangle_free(ptr::null_mut());
    }
}

#[test]
fn oracle_bound() {
    let mut tri = ptr::null_mut();
    assert_eq!(unsafe { tg_triangle_oracle(11, &mut tri) }, TgStatus::BoundExceeded);
    assert!(tri.is_null());
    assert!(!last_error().is_empty());
}

#[test]
fn context_checks() {
    let mut ctx = ptr::null_mut();
    unsafe {
        assert_eq!(tg_context_new(0, 4, &mut ctx), TgStatus::InvalidArgument);
        assert_eq!(tg_context_new(10, 5, &mut ctx), TgStatus::Ok);
        for check in [TgCheck::CubicResidual, TgCheck::VietaProduct, TgCheck::Factorization, TgCheck::XiGolden] {
            let mut r = TgCheckResult { passed: false, grid_1: 0, grid_2: 0, offending_i: 9, offending_j: 9 };
            assert_eq!(tg_context_check(ctx, check, &mut r), TgStatus::Ok);
            assert!(r.passed, "{check:?}");
            assert_eq!((r.offending_i, r.offending_j), (0, 0));
        }
        let mut r = std::mem::zeroed::<TgCheckResult>();
        assert_eq!(tg_context_check(ctx, TgCheck::Factorization, &mut r), TgStatus::Ok);
        assert_eq!((r.grid_1, r.grid_2), (10, 5));

        let mut s = ptr::null_mut();
        assert_eq!(tg_context_xi_coeff(ctx, 1, 0, &mut s), TgStatus::Ok);
        assert_eq!(take_string(s), "5/8");
        assert_eq!(tg_context_xi_coeff(ctx, 3, 1, &mut s), TgStatus::Ok);
        assert_eq!(take_string(s), "399/256");
        assert_eq!(tg_context_xi_coeff(ctx, 99, 0, &mut s), TgStatus::OutOfRange);

        assert_eq!(tg_context_check(ptr::null(), TgCheck::XiGolden, &mut r), TgStatus::NullPointer);
        tg_context_free(ctx);
    }
}

#[test]
fn compose_check() {
    let mut r = unsafe { std::mem::zeroed::<TgCheckResult>() };
    assert_eq!(unsafe { tg_compose_g_check(8, 4, &mut r) }, TgStatus::Ok);
    assert!(r.passed);
    assert_eq!((r.grid_1, r.grid_2), (8, 4));
}

#[test]
fn trees() {
    let mut tree = ptr::null_mut();
    unsafe {
        assert_eq!(tg_tree_example(&mut tree), TgStatus::Ok);
        assert_eq!(tg_tree_nodes(tree), 17);
        assert_eq!(tg_tree_middle_edges(tree), 3);
        let mut s = ptr::null_mut();
        assert_eq!(tg_tree_to_dot(tree, &mut s), TgStatus::Ok);
        let dot = take_string(s);
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches("label=\"middle\"").count(), 3);
        tg_tree_free(tree);

        let spec = CString::new("N.N....").unwrap();
        assert_eq!(tg_tree_parse(spec.as_ptr(), &mut tree), TgStatus::Ok);
        assert_eq!(tg_tree_nodes(tree), 2);
        assert_eq!(tg_tree_middle_edges(tree), 1);
        tg_tree_free(tree);

        let bad = CString::new("NN...").unwrap();
        assert_eq!(tg_tree_parse(bad.as_ptr(), &mut tree), TgStatus::ParseError);
        assert!(last_error().contains("position"));
        assert_eq!(tg_tree_parse(ptr::null(), &mut tree), TgStatus::NullPointer);
    }
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/ternary_gf.h")
}

#[test]
fn header_declares_api() {
    let h = std::fs::read_to_string(header()).unwrap();
    for sym in [
        "TG_STATUS_BOUND_EXCEEDED",
        "TG_CHECK_FACTORIZATION",
        "typedef struct TgTriangle TgTriangle;",
        "TgCheckResult",
        "tg_triangle_oracle(size_t nmax, struct TgTriangle **out)",
        "tg_context_xi_coeff",
        "tg_tree_to_dot",
        "tg_string_free",
    ] {
        assert!(h.contains(sym), "header lacks {sym}");
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "ternary_gf.h"

int main(void) {
    char *s = NULL;
    if (tg_t_closed(6, 2, &s) != TG_STATUS_OK || strcmp(s, "550") != 0) return 1;
    tg_string_free(s);

    TgContext *ctx = NULL;
    if (tg_context_new(8, 4, &ctx) != TG_STATUS_OK) return 2;
    TgCheckResult r;
    if (tg_context_check(ctx, TG_CHECK_FACTORIZATION, &r) != TG_STATUS_OK || !r.passed) return 3;
    if (tg_context_xi_coeff(ctx, 2, 2, &s) != TG_STATUS_OK || strcmp(s, "1/2") != 0) return 4;
    tg_string_free(s);
    tg_context_free(ctx);

    TgTriangle *tri = NULL;
    if (tg_triangle_oracle(20, &tri) != TG_STATUS_BOUND_EXCEEDED) return 5;
    if (strlen(tg_last_error_message()) == 0) return 6;
    puts("ok");
    return 0;
}
"#;

#[test]
fn c_program_links_against_staticlib() {
    let Some(cc) = ["cc", "gcc", "clang"].into_iter().find(|c| Command::new(c).arg("--version").output().is_ok()) else {
        eprintln!("no C compiler; skipping");
        return;
    };
    let target = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = target.join("libternary_gf_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let exe = dir.path().join("main");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new(cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "C program exited {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
