//! Exercises the C surface the way a foreign caller would: through raw
//! pointers and status codes only.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use ordered_harmonics_ffi::*;

fn last_error() -> String {
    let mut buf = vec![0u8; 256];
    let len = unsafe { oh_last_error_message(buf.as_mut_ptr() as *mut c_char, buf.len()) };
    let cut = len.min(buf.len() - 1);
    String::from_utf8_lossy(&buf[..cut]).into_owned()
}

#[test]
fn order_lifecycle_and_cone_signs() {
    unsafe {
        let mut order: *mut OhOrder = ptr::null_mut();
        assert_eq!(oh_order_lex(2, &mut order), OhStatus::Ok);
        assert_eq!(oh_order_dim(order), 2);

        let mut sign = 7i32;
        let k = [0i64, 0];
        assert_eq!(oh_order_cone_sign(order, k.as_ptr(), 2, &mut sign), OhStatus::Ok);
        assert_eq!(sign, 0);
        let k = [-1i64, 1000];
        assert_eq!(oh_order_cone_sign(order, k.as_ptr(), 2, &mut sign), OhStatus::Ok);
        assert_eq!(sign, -1);

        // Wrong dimension surfaces as a status code with a message.
        let k = [1i64];
        assert_eq!(
            oh_order_cone_sign(order, k.as_ptr(), 1, &mut sign),
            OhStatus::DimensionMismatch
        );
        assert!(last_error().contains("dimension"));

        let mut chi1 = [0i64; 2];
        assert_eq!(oh_order_minimal_positive(order, chi1.as_mut_ptr()), OhStatus::Ok);
        assert_eq!(chi1, [0, 1]);

        oh_order_free(order);
    }
}

#[test]
fn functional_order_reports_missing_least_element() {
    unsafe {
        let alpha = [1.0f64, std::f64::consts::SQRT_2];
        let mut order: *mut OhOrder = ptr::null_mut();
        assert_eq!(oh_order_functional(alpha.as_ptr(), 2, &mut order), OhStatus::Ok);

        let mut chi1 = [0i64; 2];
        assert_eq!(
            oh_order_minimal_positive(order, chi1.as_mut_ptr()),
            OhStatus::NoMinimalPositive
        );
        let message = CStr::from_ptr(oh_status_message(OhStatus::NoMinimalPositive));
        assert!(message.to_str().unwrap().contains("least positive"));

        oh_order_free(order);
    }
}

#[test]
fn poly_round_trip_and_hilbert() {
    unsafe {
        let mut order: *mut OhOrder = ptr::null_mut();
        assert_eq!(oh_order_lex(1, &mut order), OhStatus::Ok);

        // cos = (chi_1 + chi_{-1}) / 2, built term by term.
        let mut cos: *mut OhPoly = ptr::null_mut();
        assert_eq!(oh_poly_new(1, &mut cos), OhStatus::Ok);
        let plus = [1i64];
        let minus = [-1i64];
        assert_eq!(oh_poly_set_term(cos, plus.as_ptr(), 1, 0.5, 0.0), OhStatus::Ok);
        assert_eq!(oh_poly_set_term(cos, minus.as_ptr(), 1, 0.5, 0.0), OhStatus::Ok);
        assert_eq!(oh_poly_term_count(cos), 2);

        let mut sin: *mut OhPoly = ptr::null_mut();
        assert_eq!(oh_hilbert(order, cos, &mut sin), OhStatus::Ok);
        let (mut re, mut im) = (0.0f64, 0.0f64);
        assert_eq!(oh_poly_coeff(sin, plus.as_ptr(), 1, &mut re, &mut im), OhStatus::Ok);
        assert!((re - 0.0).abs() < 1e-15 && (im + 0.5).abs() < 1e-15);
        assert_eq!(oh_poly_coeff(sin, minus.as_ptr(), 1, &mut re, &mut im), OhStatus::Ok);
        assert!((re - 0.0).abs() < 1e-15 && (im - 0.5).abs() < 1e-15);

        // JSON round trip through the C strings.
        let mut json: *mut c_char = ptr::null_mut();
        assert_eq!(oh_poly_to_json(sin, &mut json), OhStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        let mut back: *mut OhPoly = ptr::null_mut();
        let ctext = CString::new(text).unwrap();
        assert_eq!(oh_poly_parse_json(ctext.as_ptr(), &mut back), OhStatus::Ok);
        assert_eq!(oh_poly_term_count(back), 2);
        oh_string_free(json);

        // Projections split the two frequencies.
        let mut neg_part: *mut OhPoly = ptr::null_mut();
        assert_eq!(oh_p_minus(order, cos, &mut neg_part), OhStatus::Ok);
        assert_eq!(oh_poly_term_count(neg_part), 1);
        let mut pos_part: *mut OhPoly = ptr::null_mut();
        assert_eq!(oh_p_plus(order, cos, &mut pos_part), OhStatus::Ok);
        assert_eq!(oh_poly_term_count(pos_part), 1);

        oh_poly_free(cos);
        oh_poly_free(sin);
        oh_poly_free(back);
        oh_poly_free(neg_part);
        oh_poly_free(pos_part);
        oh_order_free(order);
    }
}

#[test]
fn parse_rejections_set_codes() {
    unsafe {
        let mut poly: *mut OhPoly = ptr::null_mut();
        let garbage = CString::new("definitely not json").unwrap();
        assert_eq!(
            oh_poly_parse_json(garbage.as_ptr(), &mut poly),
            OhStatus::ParseError
        );
        let duplicated = CString::new(
            r#"{"n":1,"terms":[{"k":[2],"re":1.0,"im":0.0},{"k":[2],"re":3.0,"im":0.0}]}"#,
        )
        .unwrap();
        assert_eq!(
            oh_poly_parse_json(duplicated.as_ptr(), &mut poly),
            OhStatus::ParseError
        );
        assert!(last_error().contains("duplicate"));

        assert_eq!(oh_poly_parse_json(ptr::null(), &mut poly), OhStatus::NullPointer);
    }
}

#[test]
fn hankel_norms_match_known_values() {
    unsafe {
        let mut order: *mut OhOrder = ptr::null_mut();
        assert_eq!(oh_order_lex(1, &mut order), OhStatus::Ok);

        // chi_{-1}: rank-one slice, direct norm 1, conjugate part 0.
        let mut phi: *mut OhPoly = ptr::null_mut();
        assert_eq!(oh_poly_new(1, &mut phi), OhStatus::Ok);
        let idx = [-1i64];
        assert_eq!(oh_poly_set_term(phi, idx.as_ptr(), 1, 1.0, 0.0), OhStatus::Ok);

        let (mut direct, mut conj) = (0.0f64, 0.0f64);
        assert_eq!(
            oh_hankel_norms(order, phi, 6, 1e-10, 200_000, &mut direct, &mut conj),
            OhStatus::Ok
        );
        assert!((direct - 1.0).abs() < 1e-9, "direct {direct}");
        assert!(conj.abs() < 1e-12, "conj {conj}");

        let mut sup = 0.0f64;
        assert_eq!(oh_sup_norm_lower(phi, 512, &mut sup), OhStatus::Ok);
        assert!((sup - 1.0).abs() < 1e-3);

        let mut report: *mut c_char = ptr::null_mut();
        assert_eq!(
            oh_bmo_report_json(order, phi, 6, 256, 40, &mut report),
            OhStatus::Ok
        );
        let text = CStr::from_ptr(report).to_str().unwrap();
        assert!(text.contains("\"hankel_total\""));
        assert!(text.contains("\"checks\""));
        oh_string_free(report);

        oh_poly_free(phi);
        oh_order_free(order);
    }
}

#[test]
fn bmo_report_gated_under_functional_order() {
    unsafe {
        let alpha = [1.0f64, std::f64::consts::SQRT_2];
        let mut order: *mut OhOrder = ptr::null_mut();
        assert_eq!(oh_order_functional(alpha.as_ptr(), 2, &mut order), OhStatus::Ok);
        let mut phi: *mut OhPoly = ptr::null_mut();
        assert_eq!(oh_poly_new(2, &mut phi), OhStatus::Ok);
        let idx = [-1i64, 0];
        assert_eq!(oh_poly_set_term(phi, idx.as_ptr(), 2, 1.0, 0.0), OhStatus::Ok);

        let mut report: *mut c_char = ptr::null_mut();
        assert_eq!(
            oh_bmo_report_json(order, phi, 2, 32, 10, &mut report),
            OhStatus::NoMinimalPositive
        );

        // Plain truncated norms stay available under any order.
        let (mut direct, mut conj) = (0.0f64, 0.0f64);
        assert_eq!(
            oh_hankel_norms(order, phi, 2, 1e-10, 200_000, &mut direct, &mut conj),
            OhStatus::Ok
        );
        assert!((direct - 1.0).abs() < 1e-9);

        oh_poly_free(phi);
        oh_order_free(order);
    }
}

/// The generated header must stand alone as C.
#[test]
fn generated_header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/ordered_harmonics.h");
    assert!(
        std::path::Path::new(header).exists(),
        "header not generated"
    );
    let probe = std::env::temp_dir().join("oh_header_probe.c");
    std::fs::write(
        &probe,
        format!("#include \"{header}\"\nint main(void) {{ return (int) OhStatus_Ok; }}\n"),
    )
    .unwrap();
    let status = std::process::Command::new("cc")
        .arg("-fsyntax-only")
        .arg("-Wall")
        .arg(&probe)
        .status()
        .expect("run cc");
    assert!(status.success(), "header failed to compile as C");
}
