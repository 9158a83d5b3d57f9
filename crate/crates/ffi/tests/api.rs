use std::ptr;

use rectbar_ffi::*;

fn barcode_of(c: *const RbComplex) -> *mut RbBarcode {
    let mut b = ptr::null_mut();
    assert_eq!(unsafe { rb_rectangle_barcode(c, &mut b) }, RbStatus::Ok);
    b
}

fn json(s: &str) -> Result<*mut RbComplex, RbStatus> {
    let mut c = ptr::null_mut();
    match unsafe { rb_complex_from_json(s.as_ptr(), s.len(), &mut c) } {
        RbStatus::Ok => Ok(c),
        other => Err(other),
    }
}

#[test]
fn json_round_trip_preserves_the_barcode() {
    unsafe {
        let c = rb_complex_fixture(RbFixture::HSphere);
        let mut text = ptr::null_mut();
        assert_eq!(rb_complex_to_json(c, &mut text), RbStatus::Ok);
        let back = json(&copy_c_str(text)).unwrap();
        rb_string_free(text);

        let (b1, b2) = (barcode_of(c), barcode_of(back));
        let (mut j1, mut j2) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(rb_barcode_to_json(b1, &mut j1), RbStatus::Ok);
        assert_eq!(rb_barcode_to_json(b2, &mut j2), RbStatus::Ok);
        assert_eq!(copy_c_str(j1), copy_c_str(j2));
        assert_eq!(rb_barcode_len(b1), 6);
        for p in [j1, j2] {
            rb_string_free(p);
        }
        for b in [b1, b2] {
            rb_barcode_free(b);
        }
        rb_complex_free(c);
        rb_complex_free(back);
    }
}

#[test]
fn status_codes_follow_the_cli_contract() {
    assert_eq!(
        json("{\"field\": \"GF2\", ").unwrap_err(),
        RbStatus::ParseError
    );
    assert!(unsafe { copy_c_str(rb_last_error()) }.contains("syntax error"));

    let bad = json(
        r#"{"field": "GF2", "degrees": [
            {"degree": 0, "generators": [{"name": "a", "filtration": 1}]},
            {"degree": 1, "generators": [{"name": "e", "filtration": 0}]}],
          "boundaries": [{"degree": 1, "columns": [{"source": "e", "targets": ["a"]}]}]}"#,
    )
    .unwrap();
    unsafe {
        assert_eq!(rb_complex_validate(bad), RbStatus::InvariantViolation);
        let mut b = ptr::null_mut();
        assert_eq!(
            rb_rectangle_barcode(bad, &mut b),
            RbStatus::InvariantViolation
        );
        assert!(b.is_null());
        assert!(copy_c_str(rb_last_error()).contains("filtration increases"));
        rb_complex_free(bad);
    }
}

#[test]
fn distances_and_invariants() {
    unsafe {
        let torus = rb_complex_fixture(RbFixture::Torus);
        let heart = rb_complex_fixture(RbFixture::HeartCircle);
        let (bt, bh) = (barcode_of(torus), barcode_of(heart));
        let mut d = 0.0;
        assert_eq!(rb_bottleneck_distance(bt, bh, &mut d), RbStatus::Ok);
        assert_eq!(d, f64::INFINITY);
        assert_eq!(
            rb_bottleneck_distance(bt, ptr::null(), &mut d),
            RbStatus::NullPointer
        );

        let mut inv = RbInvariants {
            boundary_depth: -1.0,
            non_cycle_depth: -1.0,
            spectral_spread: -1.0,
        };
        assert_eq!(rb_invariants(bt, &mut inv), RbStatus::Ok);
        assert_eq!((inv.boundary_depth, inv.non_cycle_depth), (0.0, 0.0));
        assert_eq!(rb_invariants(bt, ptr::null_mut()), RbStatus::NullPointer);

        rb_barcode_free(bt);
        rb_barcode_free(bh);
        rb_complex_free(torus);
        rb_complex_free(heart);
        rb_barcode_free(ptr::null_mut());
        rb_complex_free(ptr::null_mut());
        rb_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_entry_point() {
    let header = include_str!("../include/rectbar.h");
    for name in [
        "rb_complex_from_json",
        "rb_complex_fixture",
        "rb_complex_free",
        "rb_complex_validate",
        "rb_complex_to_json",
        "rb_rectangle_barcode",
        "rb_barcode_len",
        "rb_barcode_get",
        "rb_barcode_generator_name",
        "rb_barcode_to_json",
        "rb_barcode_to_text",
        "rb_bottleneck_distance",
        "rb_invariants",
        "rb_barcode_free",
        "rb_string_free",
        "rb_last_error",
        "RB_STATUS_VERIFICATION_FAILED = 3",
    ] {
        assert!(header.contains(name), "{name} missing from the header");
    }
}
