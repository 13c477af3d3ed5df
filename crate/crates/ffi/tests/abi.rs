use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use quadgl_ffi::*;

fn last_error() -> String {
    let p = qgl_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn status_codes_are_stable() {
    assert_eq!(QglStatus::Ok as i32, 0);
    assert_eq!(QglStatus::NullPointer as i32, 1);
    assert_eq!(QglStatus::InvalidArgument as i32, 2);
    assert_eq!(QglStatus::Io as i32, 3);
    assert_eq!(QglStatus::NotFound as i32, 4);
    assert_eq!(QglStatus::Internal as i32, 5);
}

#[test]
fn table_round_trip_and_spectrum() {
    let values: Vec<f64> = (0..8u32)
        .map(|x| {
            if (x & 5).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            }
        })
        .collect();
    let mut t = ptr::null_mut();
    unsafe {
        assert_eq!(qgl_table_new(3, values.as_ptr(), 8, &mut t), QglStatus::Ok);
        assert_eq!(qgl_table_n(t), 3);
        let mut v = 0.0;
        assert_eq!(qgl_table_get(t, 1, &mut v), QglStatus::Ok);
        assert_eq!(v, -1.0);
        let mut spectrum = [0.0; 8];
        assert_eq!(qgl_wht(t, spectrum.as_mut_ptr(), 8), QglStatus::Ok);
        for (alpha, c) in spectrum.iter().enumerate() {
            assert_eq!(*c, if alpha == 5 { 1.0 } else { 0.0 });
        }
        assert_eq!(
            qgl_wht(t, spectrum.as_mut_ptr(), 4),
            QglStatus::InvalidArgument
        );
        assert_eq!(qgl_table_get(t, 8, &mut v), QglStatus::InvalidArgument);

        let dir = tempfile::tempdir().unwrap();
        let path = CString::new(dir.path().join("t.bin").to_str().unwrap()).unwrap();
        assert_eq!(qgl_table_write(t, path.as_ptr(), 1), QglStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(qgl_table_read(path.as_ptr(), &mut back), QglStatus::Ok);
        for x in 0..8 {
            let (mut a, mut b) = (0.0, 0.0);
            qgl_table_get(t, x, &mut a);
            qgl_table_get(back, x, &mut b);
            assert_eq!(a, b);
        }
        qgl_table_free(back);
        qgl_table_free(t);
    }
}

#[test]
fn errors_set_codes_and_messages() {
    let mut t = ptr::null_mut();
    unsafe {
        assert_eq!(
            qgl_table_new(3, ptr::null(), 8, &mut t),
            QglStatus::NullPointer
        );
        assert!(last_error().contains("values"));
        let values = [1.0; 4];
        assert_eq!(
            qgl_table_new(3, values.as_ptr(), 4, &mut t),
            QglStatus::InvalidArgument
        );
        let missing = CString::new("/nonexistent/quadgl/table.txt").unwrap();
        assert_eq!(qgl_table_read(missing.as_ptr(), &mut t), QglStatus::Io);
        assert!(t.is_null());
        let mut u = 0.0;
        assert_eq!(qgl_u3_exact(ptr::null(), &mut u), QglStatus::NullPointer);
        qgl_table_free(ptr::null_mut());
        qgl_phase_free(ptr::null_mut());
        qgl_string_free(ptr::null_mut());
    }
}

#[test]
fn noisy_phase_is_recovered() {
    let (mut t, mut q) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(
            qgl_gen_noisy_phase(10, 0.3, 7, &mut t, &mut q),
            QglStatus::Ok
        );
        let mut planted = 0.0;
        assert_eq!(qgl_phase_correlation(q, t, &mut planted), QglStatus::Ok);
        assert!((planted - 0.6).abs() < 1e-3, "{planted}");

        let mut u3 = 0.0;
        assert_eq!(qgl_u3_exact(t, &mut u3), QglStatus::Ok);
        let mut est = 0.0;
        assert_eq!(qgl_u3_estimate(t, 0.05, 0.05, 1, &mut est), QglStatus::Ok);
        assert!((est - u3).abs() <= 0.05);

        let mut found = ptr::null_mut();
        assert_eq!(
            qgl_find_quadratic(t, 0.25, 0.05, 3, &mut found),
            QglStatus::Ok
        );
        let mut c = 0.0;
        assert_eq!(qgl_phase_correlation(found, t, &mut c), QglStatus::Ok);
        assert!(c >= 0.1, "{c}");
        let mut s = 0;
        assert_eq!(qgl_phase_eval(found, 0, &mut s), QglStatus::Ok);
        assert!(s == 1 || s == -1);

        let mut text = ptr::null_mut();
        assert_eq!(qgl_phase_json(found, &mut text), QglStatus::Ok);
        let v: serde_json::Value =
            serde_json::from_str(CStr::from_ptr(text).to_str().unwrap()).unwrap();
        assert_eq!(v["n"], 10);
        qgl_string_free(text);
        qgl_phase_free(found);
        qgl_phase_free(q);
        qgl_table_free(t);
    }
}

#[test]
fn decomposition_of_a_phase() {
    let mut t = ptr::null_mut();
    unsafe {
        assert_eq!(
            qgl_gen_noisy_phase(10, 0.5, 11, &mut t, ptr::null_mut()),
            QglStatus::Ok
        );
        let mut d = ptr::null_mut();
        assert_eq!(qgl_decompose(t, 0.3, 2.0, 0.05, 5, &mut d), QglStatus::Ok);
        assert!(qgl_decomposition_k(d) >= 1);
        let mut r = 1.0;
        assert_eq!(qgl_decomposition_residual_u3(d, &mut r), QglStatus::Ok);
        assert!(r < 0.3, "{r}");
        let (mut a, mut f) = (0.0, 0.0);
        assert_eq!(qgl_decomposition_eval(d, 3, &mut a), QglStatus::Ok);
        qgl_table_get(t, 3, &mut f);
        assert!(a * f > 0.0);
        let mut text = ptr::null_mut();
        assert_eq!(qgl_decomposition_json(d, &mut text), QglStatus::Ok);
        assert!(CStr::from_ptr(text).to_str().unwrap().contains("\"terms\""));
        qgl_string_free(text);
        qgl_decomposition_free(d);
        qgl_table_free(t);
    }
}

#[test]
fn zero_function_is_not_found() {
    let values = vec![0.0; 1024];
    let mut t = ptr::null_mut();
    unsafe {
        assert_eq!(
            qgl_table_new(10, values.as_ptr(), 1024, &mut t),
            QglStatus::Ok
        );
        let mut a = ptr::null_mut();
        let status = qgl_find_quadratic_average(t, 0.5, 0.05, 4, 1, &mut a);
        assert_eq!(status, QglStatus::NotFound);
        assert!(a.is_null());
        qgl_table_free(t);
    }
}

#[test]
fn header_compiles_as_c() {
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let header = include.join("quadgl.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "qgl_table_new",
        "qgl_find_quadratic",
        "qgl_decompose",
        "QGL_STATUS_NOT_FOUND",
    ] {
        assert!(text.contains(name), "{name}");
    }
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(&header)
        .status()
    else {
        return;
    };
    assert!(status.success());
}
