use gstruve_ffi::*;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { gs_string_free(s) };
    out
}

fn params(a: &str, nu: &str) -> *mut GsParams {
    let (a, nu) = (CString::new(a).unwrap(), CString::new(nu).unwrap());
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { gs_params_new(a.as_ptr(), nu.as_ptr(), &mut p) }, GsStatus::Ok);
    p
}

#[test]
fn series_and_asymptotic_round_trip() {
    let p = params("1/2", "1/4");
    let z = CString::new("15").unwrap();
    let mut v = ptr::null_mut();
    assert_eq!(unsafe { gs_eval_series(p, z.as_ptr(), ptr::null(), 40, &mut v) }, GsStatus::Ok);
    assert_eq!(take(unsafe { gs_value_re(v, 10) }), "5.182624937e+9");
    assert!(unsafe { gs_value_terms(v) } > 10);
    unsafe { gs_value_free(v) };

    let mut e = ptr::null_mut();
    assert_eq!(unsafe { gs_eval_asymptotic(p, z.as_ptr(), ptr::null(), 40, 10, &mut e) }, GsStatus::Ok);
    assert_eq!(take(unsafe { gs_value_re(e, 10) }), "5.182624938e+9");
    assert_eq!(take(unsafe { gs_value_im(e, 3) }), "0.00e+0");
    assert!(!take(unsafe { gs_value_error_estimate(e) }).is_empty());
    unsafe { gs_value_free(e) };
    unsafe { gs_params_free(p) };
}

#[test]
fn errors_map_to_status_codes() {
    let mut p = ptr::null_mut();
    let bad = CString::new("abc").unwrap();
    let ok = CString::new("1/4").unwrap();
    assert_eq!(unsafe { gs_params_new(bad.as_ptr(), ok.as_ptr(), &mut p) }, GsStatus::Parse);
    assert!(take(gs_last_error()).contains("abc"));
    let zero = CString::new("0").unwrap();
    assert_eq!(unsafe { gs_params_new(zero.as_ptr(), ok.as_ptr(), &mut p) }, GsStatus::Ok);
    let z = CString::new("5").unwrap();
    let mut v = ptr::null_mut();
    assert_eq!(
        unsafe { gs_eval_asymptotic(p, z.as_ptr(), ptr::null(), 30, -1, &mut v) },
        GsStatus::DegenerateParameter
    );
    assert_eq!(unsafe { gs_eval_series(p, z.as_ptr(), ptr::null(), 5, &mut v) }, GsStatus::InvalidPrecision);
    assert_eq!(unsafe { gs_eval_series(ptr::null(), z.as_ptr(), ptr::null(), 30, &mut v) }, GsStatus::NullArgument);
    unsafe { gs_params_free(p) };

    let q = params("1/2", "1/4");
    let origin = CString::new("0").unwrap();
    assert_eq!(unsafe { gs_eval_asymptotic(q, origin.as_ptr(), ptr::null(), 30, -1, &mut v) }, GsStatus::ZeroArgument);
    unsafe { gs_params_free(q) };
}

#[test]
fn coefficient_table_access() {
    let p = params("1/2", "1/4");
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { gs_coeffs_new(p, 6, 30, 1, &mut t) }, GsStatus::Ok);
    assert_eq!(unsafe { gs_coeffs_len(t) }, 6);
    // c_1 = -5/12
    assert!(take(unsafe { gs_coeffs_get(t, 1) }).starts_with("-4.1666666666666666666666666666"));
    assert!(unsafe { gs_coeffs_get(t, 6) }.is_null());
    assert!(take(unsafe { gs_coeffs_json(t) }).contains("\"M\""));
    unsafe { gs_coeffs_free(t) };
    unsafe { gs_params_free(p) };
    assert!(!take(gs_version()).is_empty());
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/gstruve.h");
    let dir = std::env::temp_dir().join(format!("gstruve-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("use.c");
    std::fs::write(
        &src,
        format!(
            "#include \"{header}\"\nint main(void) {{ GsParams *p = 0; GsStatus s = gs_params_new(\"1\", \"0\", &p); gs_params_free(p); return s == GS_STATUS_OK ? 0 : 1; }}\n"
        ),
    )
    .unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    match std::process::Command::new(&cc).args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only"]).arg(&src).status() {
        Ok(status) => assert!(status.success(), "header failed to compile"),
        Err(_) => eprintln!("no C compiler available; header check skipped"),
    }
}
