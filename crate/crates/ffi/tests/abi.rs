use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use prequant_ech_ffi::*;

fn last_error() -> String {
    let p = ech_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn bundle(genus: u32, euler: i64) -> *mut EchBundle {
    let mut b = ptr::null_mut();
    assert_eq!(ech_bundle_new(genus, euler, &mut b), EchStatus::Ok);
    b
}

unsafe fn parse(text: &str, genus: u32) -> *mut EchOrbitSet {
    let c = CString::new(text).unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(ech_orbit_set_parse(c.as_ptr(), genus, &mut s), EchStatus::Ok, "{text}");
    s
}

#[test]
fn index_grading_and_relative_index() {
    unsafe {
        let b = bundle(1, -1);
        let a = parse("e+^2 e-^2", 1);
        let mut v = 0i64;
        assert_eq!(ech_index(b, a, 0, &mut v), EchStatus::Ok);
        assert_eq!(v, 4);

        let plus = parse("e+^3", 1);
        let minus = parse("e-^3", 1);
        assert_eq!(ech_relative_index(b, plus, minus, &mut v), EchStatus::Ok);
        assert_eq!(v, 6);

        assert_eq!(ech_grading(b, plus, &mut v), EchStatus::Ok);
        let empty = parse("", 1);
        let mut rel = 0i64;
        assert_eq!(ech_relative_index(b, plus, empty, &mut rel), EchStatus::Ok);
        assert_eq!(v, rel);

        for p in [a, plus, minus, empty] {
            ech_orbit_set_free(p);
        }
        ech_bundle_free(b);
    }
}

#[test]
fn orbit_set_from_arrays_and_to_string() {
    unsafe {
        let hyp = [1u64, 0];
        let mut s = ptr::null_mut();
        assert_eq!(ech_orbit_set_new(2, hyp.as_ptr(), 2, 3, &mut s), EchStatus::Ok);
        let mut total = 0;
        assert_eq!(ech_orbit_set_total(s, &mut total), EchStatus::Ok);
        assert_eq!(total, 6);

        let mut need = 0usize;
        assert_eq!(ech_orbit_set_to_string(s, ptr::null_mut(), 0, &mut need), EchStatus::OutOfRange);
        let mut buf = vec![0 as std::ffi::c_char; need];
        assert_eq!(ech_orbit_set_to_string(s, buf.as_mut_ptr(), need, &mut need), EchStatus::Ok);
        assert_eq!(CStr::from_ptr(buf.as_ptr()).to_str().unwrap(), "e+^2 h1 e-^3");
        ech_orbit_set_free(s);
    }
}

#[test]
fn generator_list() {
    unsafe {
        let b = bundle(1, -1);
        let mut list = ptr::null_mut();
        assert_eq!(ech_generators_by_grading(b, 2, &mut list), EchStatus::Ok);
        let mut n = 0usize;
        assert_eq!(ech_generator_list_len(list, &mut n), EchStatus::Ok);
        assert_eq!(n, 2);
        let mut info = std::mem::zeroed::<EchGeneratorInfo>();
        let mut set = ptr::null_mut();
        assert_eq!(ech_generator_list_get(list, 0, &mut info, &mut set), EchStatus::Ok);
        assert_eq!((info.grading, info.m_plus, info.m_minus, info.action_leading), (2, 1, 0, 2));
        assert_eq!((info.action_correction_num, info.action_correction_den), (1, 1));
        let mut total = 0;
        assert_eq!(ech_orbit_set_total(set, &mut total), EchStatus::Ok);
        assert_eq!(total, 1);
        ech_orbit_set_free(set);
        assert_eq!(ech_generator_list_get(list, 2, &mut info, ptr::null_mut()), EchStatus::OutOfRange);
        ech_generator_list_free(list);
        ech_bundle_free(b);
    }
}

#[test]
fn capacities() {
    unsafe {
        let mut c = 0u64;
        assert_eq!(ech_capacity_sphere(1, 3, &mut c), EchStatus::Ok);
        assert_eq!(c, 4);
        assert_eq!(ech_capacity_sphere_via_u(1, 3, &mut c), EchStatus::Ok);
        assert_eq!(c, 4);

        let mut r = std::mem::zeroed::<EchCapacityResult>();
        assert_eq!(ech_capacity_torus_bounds(2, 2, &mut r), EchStatus::Ok);
        assert_eq!((r.lower, r.upper, r.exact), (4, 8, false));
        assert_eq!(r.witness_upper.d, 2);

        assert_eq!(ech_capacity_torus_closed_form(2, &mut c), EchStatus::Ok);
        assert_eq!(c, 4);
        assert_eq!(ech_capacity_torus_closed_form(3, &mut c), EchStatus::Precondition);
        assert!(!last_error().is_empty());

        let (mut a, mut p, mut empty) = (0u64, 0u64, false);
        assert_eq!(ech_sphere_u_step(2, 1, 1, &mut a, &mut p, &mut empty), EchStatus::Ok);
        assert_eq!((a, p, empty), (2, 0, false));
        assert_eq!(ech_sphere_u_step(2, 2, 0, &mut a, &mut p, &mut empty), EchStatus::Ok);
        assert!(empty);
    }
}

#[test]
fn gromov() {
    unsafe {
        let b = bundle(1, -1);
        let mut r = std::mem::zeroed::<EchGromovReport>();
        assert_eq!(ech_gromov_report(b, &mut r), EchStatus::Ok);
        assert_eq!((r.best_bound, r.has_capacity_c1, r.genus_in_scope), (1, false, true));
        ech_bundle_free(b);
        let b = bundle(0, -3);
        assert_eq!(ech_gromov_report(b, &mut r), EchStatus::Ok);
        assert_eq!((r.has_capacity_c1, r.capacity_c1), (true, 6));
        ech_bundle_free(b);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut b = ptr::null_mut();
        assert_eq!(ech_bundle_new(0, 1, &mut b), EchStatus::InvalidArgument);
        assert!(last_error().contains('1'));
        assert_eq!(ech_bundle_new(0, -1, ptr::null_mut()), EchStatus::NullPointer);

        let mut v = 0i64;
        assert_eq!(ech_index(ptr::null(), ptr::null(), 0, &mut v), EchStatus::NullPointer);

        let bad = CString::new("e+^x").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(ech_orbit_set_parse(bad.as_ptr(), 0, &mut s), EchStatus::Parse);

        let b = bundle(0, -2);
        let odd = parse("e+", 0);
        assert_eq!(ech_grading(b, odd, &mut v), EchStatus::Precondition);
        let mut c = 0u64;
        assert_eq!(ech_capacity_sphere(1, 0, &mut c), EchStatus::Ok);
        assert!(ech_last_error_message().is_null());
        ech_orbit_set_free(odd);
        ech_bundle_free(b);

        // freeing NULL is a no-op
        ech_bundle_free(ptr::null_mut());
        ech_orbit_set_free(ptr::null_mut());
        ech_generator_list_free(ptr::null_mut());
    }
}

fn header() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/prequant_ech.h")
}

#[test]
fn header_declares_api() {
    let text = std::fs::read_to_string(header()).unwrap();
    for name in [
        "typedef struct EchBundle EchBundle;",
        "ECH_STATUS_OK = 0",
        "ech_last_error_message",
        "ech_bundle_new",
        "ech_orbit_set_parse",
        "ech_generators_by_grading",
        "ech_capacity_torus_bounds",
        "ech_gromov_report",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let dir = std::env::temp_dir().join(format!("prequant-ech-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("use_header.c");
    std::fs::write(
        &src,
        r#"#include "prequant_ech.h"
int main(void) {
    EchBundle *b = NULL;
    EchCapacityResult r;
    int64_t v;
    if (ech_bundle_new(0, -1, &b) != ECH_STATUS_OK) return 1;
    (void)ech_capacity_torus_bounds(1, 3, &r);
    (void)ech_gromov_report(b, NULL);
    (void)ech_index(b, NULL, 0, &v);
    ech_bundle_free(b);
    return ech_last_error_message() == NULL;
}
"#,
    )
    .unwrap();
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(header().parent().unwrap())
        .arg(&src)
        .status()
        .unwrap();
    std::fs::remove_dir_all(&dir).ok();
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok_and(|o| o.status.success()))
        .ok_or(())
}
