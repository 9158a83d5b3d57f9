//! C interface to `rectbar`.
//!
//! Complexes and barcodes are opaque handles owned by the caller and released
//! with the matching `*_free` function. Every fallible call returns an
//! [`RbStatus`]; on failure [`rb_last_error`] describes the problem. Strings
//! returned through out-pointers are owned by the caller and released with
//! [`rb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rectbar::barcode::{rectangle_barcode, BarcodeError, RectType, RectangleBarcode};
use rectbar::complex::{
    fixture_h_sphere, fixture_heart_circle, fixture_torus, parse, serialize, ComplexError,
    FilteredComplex,
};
use rectbar::distance::bottleneck_distance;
use rectbar::invariants::{boundary_depth, non_cycle_depth, spectral_spread};

/// Status codes. The first four match the exit codes of the command-line tool.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RbStatus {
    Ok = 0,
    InvariantViolation = 1,
    ParseError = 2,
    VerificationFailed = 3,
    NullPointer = 4,
    InvalidArgument = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RbRectType {
    S = 0,
    B = 1,
    N = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RbFixture {
    Torus = 0,
    HeartCircle = 1,
    HSphere = 2,
}

/// One rectangle; infinite lengths are `INFINITY`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RbRectangle {
    pub degree: i32,
    pub c: f64,
    pub ell1: f64,
    pub ell2: f64,
    pub rtype: RbRectType,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RbInvariants {
    pub boundary_depth: f64,
    pub non_cycle_depth: f64,
    pub spectral_spread: f64,
}

pub struct RbComplex(FilteredComplex);

pub struct RbBarcode(RectangleBarcode);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

type Failure = (RbStatus, String);

fn complex_failure(e: ComplexError) -> Failure {
    match e {
        ComplexError::Invalid(_) => (RbStatus::InvariantViolation, e.to_string()),
        other => (RbStatus::ParseError, other.to_string()),
    }
}

fn barcode_failure(e: BarcodeError) -> Failure {
    match e {
        BarcodeError::Complex(c) => complex_failure(c),
        BarcodeError::Verification(_) => (RbStatus::VerificationFailed, e.to_string()),
        BarcodeError::Document(_) => (RbStatus::ParseError, e.to_string()),
    }
}

/// Runs `f`, recording any failure or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> RbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RbStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            RbStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    (RbStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nuls").into_raw()
}

/// Parses a JSON complex document of `len` bytes. The complex is not validated.
///
/// # Safety
/// `data` must point to `len` readable bytes and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rb_complex_from_json(
    data: *const u8,
    len: usize,
    out: *mut *mut RbComplex,
) -> RbStatus {
    guard(|| {
        if data.is_null() {
            return Err(null("data"));
        }
        let bytes = std::slice::from_raw_parts(data, len);
        let c = parse(bytes).map_err(complex_failure)?;
        write_out(out, Box::into_raw(Box::new(RbComplex(c))))
    })
}

/// One of the built-in example complexes.
#[no_mangle]
pub extern "C" fn rb_complex_fixture(which: RbFixture) -> *mut RbComplex {
    let c = match which {
        RbFixture::Torus => fixture_torus(),
        RbFixture::HeartCircle => fixture_heart_circle(),
        RbFixture::HSphere => fixture_h_sphere(),
    };
    Box::into_raw(Box::new(RbComplex(c)))
}

/// # Safety
/// `c` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn rb_complex_free(c: *mut RbComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// `RB_STATUS_OK` if the complex satisfies the chain-complex axioms.
///
/// # Safety
/// `c` must be a live complex handle.
#[no_mangle]
pub unsafe extern "C" fn rb_complex_validate(c: *const RbComplex) -> RbStatus {
    guard(|| {
        let c = deref(c, "complex")?;
        c.0.clone().validated().map(drop).map_err(complex_failure)
    })
}

/// Canonical JSON serialization of a complex.
///
/// # Safety
/// `c` must be a live complex handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rb_complex_to_json(
    c: *const RbComplex,
    out: *mut *mut c_char,
) -> RbStatus {
    guard(|| {
        let c = deref(c, "complex")?;
        let text = String::from_utf8(serialize(&c.0)).expect("serialization is UTF-8");
        write_out(out, to_c_string(text))
    })
}

/// Computes and verifies the rectangle barcode of a complex.
///
/// # Safety
/// `c` must be a live complex handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rb_rectangle_barcode(
    c: *const RbComplex,
    out: *mut *mut RbBarcode,
) -> RbStatus {
    guard(|| {
        let c = deref(c, "complex")?;
        let rb = rectangle_barcode(&c.0).map_err(barcode_failure)?;
        write_out(out, Box::into_raw(Box::new(RbBarcode(rb))))
    })
}

/// Number of rectangles; 0 for a null handle.
///
/// # Safety
/// `b` must be null or a live barcode handle.
#[no_mangle]
pub unsafe extern "C" fn rb_barcode_len(b: *const RbBarcode) -> usize {
    b.as_ref().map_or(0, |b| b.0.len())
}

/// # Safety
/// `b` must be a live barcode handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rb_barcode_get(
    b: *const RbBarcode,
    index: usize,
    out: *mut RbRectangle,
) -> RbStatus {
    guard(|| {
        let b = deref(b, "barcode")?;
        let r = b.0.rectangles().get(index).ok_or_else(|| {
            (
                RbStatus::InvalidArgument,
                format!("index {index} out of range for {} rectangles", b.0.len()),
            )
        })?;
        let rtype = match r.rtype {
            RectType::S => RbRectType::S,
            RectType::B => RbRectType::B,
            RectType::N => RbRectType::N,
        };
        write_out(
            out,
            RbRectangle {
                degree: r.degree,
                c: r.c,
                ell1: r.ell1,
                ell2: r.ell2,
                rtype,
            },
        )
    })
}

/// Name of the generator witnessing rectangle `index`.
///
/// # Safety
/// `b` must be a live barcode handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rb_barcode_generator_name(
    b: *const RbBarcode,
    index: usize,
    out: *mut *mut c_char,
) -> RbStatus {
    guard(|| {
        let b = deref(b, "barcode")?;
        let r = b.0.rectangles().get(index).ok_or_else(|| {
            (
                RbStatus::InvalidArgument,
                format!("index {index} out of range"),
            )
        })?;
        write_out(out, to_c_string(r.generator.clone()))
    })
}

/// The barcode as a JSON document.
///
/// # Safety
/// `b` must be a live barcode handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rb_barcode_to_json(
    b: *const RbBarcode,
    out: *mut *mut c_char,
) -> RbStatus {
    guard(|| {
        let b = deref(b, "barcode")?;
        write_out(out, to_c_string(b.0.to_json(None)))
    })
}

/// The barcode in the line format `deg k: R(c; ell1, ell2) [T] name`.
///
/// # Safety
/// `b` must be a live barcode handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rb_barcode_to_text(
    b: *const RbBarcode,
    out: *mut *mut c_char,
) -> RbStatus {
    guard(|| {
        let b = deref(b, "barcode")?;
        write_out(out, to_c_string(b.0.to_text(None)))
    })
}

/// Bottleneck distance between two barcodes; `INFINITY` when no matching exists.
///
/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rb_bottleneck_distance(
    b1: *const RbBarcode,
    b2: *const RbBarcode,
    out: *mut f64,
) -> RbStatus {
    guard(|| {
        let (b1, b2) = (deref(b1, "first barcode")?, deref(b2, "second barcode")?);
        write_out(out, bottleneck_distance(&b1.0, &b2.0))
    })
}

/// # Safety
/// `b` must be a live barcode handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rb_invariants(b: *const RbBarcode, out: *mut RbInvariants) -> RbStatus {
    guard(|| {
        let b = deref(b, "barcode")?;
        write_out(
            out,
            RbInvariants {
                boundary_depth: boundary_depth(&b.0),
                non_cycle_depth: non_cycle_depth(&b.0),
                spectral_spread: spectral_spread(&b.0),
            },
        )
    })
}

/// # Safety
/// `b` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn rb_barcode_free(b: *mut RbBarcode) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn rb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or null. Valid until the next failing call.
#[no_mangle]
pub extern "C" fn rb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Copies a string returned by this library; for Rust callers and tests.
///
/// # Safety
/// `s` must be a valid nul-terminated string.
pub unsafe fn copy_c_str(s: *const c_char) -> String {
    CStr::from_ptr(s).to_string_lossy().into_owned()
}
