//! C ABI for the ordered-harmonics library.
//!
//! Handles are opaque pointers created and freed by this library; every
//! fallible call returns an [`OhStatus`] code and writes its result through
//! out-pointers. A thread-local buffer keeps the detail message of the last
//! error for diagnostics.
//!
//! The generated header lives at `include/ordered_harmonics.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use num_complex::Complex64;
use ordered_harmonics::bmo::{sandwich_verify, SandwichConfig, SolverConfig};
use ordered_harmonics::hankel::hankel_matrix;
use ordered_harmonics::order::ConeSelect;
use ordered_harmonics::transforms;
use ordered_harmonics::{CharacterIndex, Error, GridSpec, IndexBox, OrderSpec, TrigPoly};

/// Status code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OhStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    DimensionMismatch = 4,
    /// The order's positive cone has no least element.
    NoMinimalPositive = 5,
    WrongCone = 6,
    NotAnalytic = 7,
    NoConvergence = 8,
    NonFinite = 9,
    ParseError = 10,
    InequalityViolated = 11,
}

/// Opaque handle to a lattice order.
pub struct OhOrder(OrderSpec);

/// Opaque handle to a sparse trigonometric polynomial.
pub struct OhPoly(TrigPoly);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn clear_error() {
    LAST_ERROR.with(|slot| slot.borrow_mut().clear());
}

fn fail(status: OhStatus, message: impl Into<String>) -> OhStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = message.into());
    status
}

fn fail_from(err: Error) -> OhStatus {
    let status = match err {
        Error::DimensionMismatch { .. } => OhStatus::DimensionMismatch,
        Error::NoMinimalPositive => OhStatus::NoMinimalPositive,
        Error::WrongCone { .. } => OhStatus::WrongCone,
        Error::NotAnalytic => OhStatus::NotAnalytic,
        Error::NoConvergence { .. } => OhStatus::NoConvergence,
        Error::NonFinite { .. } => OhStatus::NonFinite,
        Error::InvalidArgument(_) => OhStatus::InvalidArgument,
        Error::Parse(_) => OhStatus::ParseError,
        Error::InequalityViolated { .. } => OhStatus::InequalityViolated,
    };
    fail(status, err.to_string())
}

/// Static description of a status code. Never null.
#[no_mangle]
pub extern "C" fn oh_status_message(status: OhStatus) -> *const c_char {
    let text: &'static [u8] = match status {
        OhStatus::Ok => b"ok\0",
        OhStatus::NullPointer => b"null pointer argument\0",
        OhStatus::InvalidUtf8 => b"string argument is not valid UTF-8\0",
        OhStatus::InvalidArgument => b"invalid argument\0",
        OhStatus::DimensionMismatch => b"dimension mismatch\0",
        OhStatus::NoMinimalPositive => b"order has no least positive element\0",
        OhStatus::WrongCone => b"index outside the required cone\0",
        OhStatus::NotAnalytic => b"polynomial has negative-cone coefficients\0",
        OhStatus::NoConvergence => b"iteration did not converge\0",
        OhStatus::NonFinite => b"non-finite value encountered\0",
        OhStatus::ParseError => b"parse error\0",
        OhStatus::InequalityViolated => b"norm inequality violated\0",
    };
    text.as_ptr() as *const c_char
}

/// Copy the last error detail into `buf` (NUL-terminated, truncated to
/// `len` bytes) and return the full message length in bytes. Passing a null
/// or empty buffer just queries the length.
///
/// # Safety
/// `buf`, when non-null, must point to at least `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn oh_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let message = slot.borrow();
        let bytes = message.as_bytes();
        if !buf.is_null() && len > 0 {
            let copy = bytes.len().min(len - 1);
            unsafe {
                std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf as *mut u8, copy);
                *buf.add(copy) = 0;
            }
        }
        bytes.len()
    })
}

/// Create a lexicographic order on the lattice of the given dimension.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn oh_order_lex(n: usize, out: *mut *mut OhOrder) -> OhStatus {
    clear_error();
    if out.is_null() {
        return fail(OhStatus::NullPointer, "out pointer is null");
    }
    match OrderSpec::lex(n) {
        Ok(order) => {
            unsafe { *out = Box::into_raw(Box::new(OhOrder(order))) };
            OhStatus::Ok
        }
        Err(e) => fail_from(e),
    }
}

/// Create a linear-functional order from `n` coefficients.
///
/// # Safety
/// `alpha` must point to `n` readable doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn oh_order_functional(
    alpha: *const f64,
    n: usize,
    out: *mut *mut OhOrder,
) -> OhStatus {
    clear_error();
    if alpha.is_null() || out.is_null() {
        return fail(OhStatus::NullPointer, "alpha or out pointer is null");
    }
    let coefficients = unsafe { std::slice::from_raw_parts(alpha, n) }.to_vec();
    match OrderSpec::functional(coefficients) {
        Ok(order) => {
            unsafe { *out = Box::into_raw(Box::new(OhOrder(order))) };
            OhStatus::Ok
        }
        Err(e) => fail_from(e),
    }
}

/// # Safety
/// `order` must be a handle from this library, not yet freed, or null.
#[no_mangle]
pub unsafe extern "C" fn oh_order_free(order: *mut OhOrder) {
    if !order.is_null() {
        drop(unsafe { Box::from_raw(order) });
    }
}

/// Dimension of the order's lattice; 0 for a null handle.
///
/// # Safety
/// `order` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn oh_order_dim(order: *const OhOrder) -> usize {
    if order.is_null() {
        return 0;
    }
    unsafe { &*order }.0.dim()
}

/// Cone sign of the index `k` (-1, 0 or +1), written to `out`.
///
/// # Safety
/// `k` must point to `len` readable i64; `order` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn oh_order_cone_sign(
    order: *const OhOrder,
    k: *const i64,
    len: usize,
    out: *mut i32,
) -> OhStatus {
    clear_error();
    if order.is_null() || k.is_null() || out.is_null() {
        return fail(OhStatus::NullPointer, "null argument");
    }
    if len == 0 {
        return fail(OhStatus::InvalidArgument, "index dimension must be >= 1");
    }
    let order = unsafe { &*order };
    let coords = unsafe { std::slice::from_raw_parts(k, len) }.to_vec();
    match order.0.cone_sign(&CharacterIndex::new(coords)) {
        Ok(sign) => {
            unsafe { *out = sign as i32 };
            OhStatus::Ok
        }
        Err(e) => fail_from(e),
    }
}

/// Least positive element of the order, written into `out_coords`
/// (`oh_order_dim` entries).
///
/// # Safety
/// `out_coords` must point to `oh_order_dim(order)` writable i64.
#[no_mangle]
pub unsafe extern "C" fn oh_order_minimal_positive(
    order: *const OhOrder,
    out_coords: *mut i64,
) -> OhStatus {
    clear_error();
    if order.is_null() || out_coords.is_null() {
        return fail(OhStatus::NullPointer, "null argument");
    }
    let order = unsafe { &*order };
    match order.0.minimal_positive() {
        Ok(chi) => {
            unsafe {
                std::ptr::copy_nonoverlapping(chi.coords().as_ptr(), out_coords, chi.dim())
            };
            OhStatus::Ok
        }
        Err(e) => fail_from(e),
    }
}

/// Empty polynomial of the given dimension.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn oh_poly_new(n: usize, out: *mut *mut OhPoly) -> OhStatus {
    clear_error();
    if out.is_null() {
        return fail(OhStatus::NullPointer, "out pointer is null");
    }
    if n == 0 {
        return fail(OhStatus::InvalidArgument, "dimension must be >= 1");
    }
    unsafe { *out = Box::into_raw(Box::new(OhPoly(TrigPoly::zero(n)))) };
    OhStatus::Ok
}

/// # Safety
/// `poly` must be a handle from this library, not yet freed, or null.
#[no_mangle]
pub unsafe extern "C" fn oh_poly_free(poly: *mut OhPoly) {
    if !poly.is_null() {
        drop(unsafe { Box::from_raw(poly) });
    }
}

/// # Safety
/// `poly` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn oh_poly_dim(poly: *const OhPoly) -> usize {
    if poly.is_null() {
        return 0;
    }
    unsafe { &*poly }.0.dim()
}

/// # Safety
/// `poly` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn oh_poly_term_count(poly: *const OhPoly) -> usize {
    if poly.is_null() {
        return 0;
    }
    unsafe { &*poly }.0.term_count()
}

/// Set (or, with 0, remove) the coefficient at index `k`.
///
/// # Safety
/// `poly` must be a live handle; `k` must point to `len` readable i64.
#[no_mangle]
pub unsafe extern "C" fn oh_poly_set_term(
    poly: *mut OhPoly,
    k: *const i64,
    len: usize,
    re: f64,
    im: f64,
) -> OhStatus {
    clear_error();
    if poly.is_null() || k.is_null() {
        return fail(OhStatus::NullPointer, "null argument");
    }
    let poly = unsafe { &mut *poly };
    if len != poly.0.dim() {
        return fail(
            OhStatus::DimensionMismatch,
            format!("index has {len} coordinates, polynomial has {}", poly.0.dim()),
        );
    }
    if !re.is_finite() || !im.is_finite() {
        return fail(OhStatus::NonFinite, "coefficient must be finite");
    }
    let coords = unsafe { std::slice::from_raw_parts(k, len) }.to_vec();
    poly.0
        .set_coeff(CharacterIndex::new(coords), Complex64::new(re, im));
    OhStatus::Ok
}

/// Read the coefficient at index `k` (zero when absent).
///
/// # Safety
/// `poly` must be live; `k` must point to `len` readable i64; `re`/`im`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn oh_poly_coeff(
    poly: *const OhPoly,
    k: *const i64,
    len: usize,
    re: *mut f64,
    im: *mut f64,
) -> OhStatus {
    clear_error();
    if poly.is_null() || k.is_null() || re.is_null() || im.is_null() {
        return fail(OhStatus::NullPointer, "null argument");
    }
    let poly = unsafe { &*poly };
    if len != poly.0.dim() {
        return fail(
            OhStatus::DimensionMismatch,
            format!("index has {len} coordinates, polynomial has {}", poly.0.dim()),
        );
    }
    let coords = unsafe { std::slice::from_raw_parts(k, len) }.to_vec();
    let c = poly.0.coeff(&CharacterIndex::new(coords));
    unsafe {
        *re = c.re;
        *im = c.im;
    }
    OhStatus::Ok
}

/// Parse a symbol file (`{"n":1,"terms":[{"k":[-1],"re":1.0,"im":0.0}]}`).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn oh_poly_parse_json(
    text: *const c_char,
    out: *mut *mut OhPoly,
) -> OhStatus {
    clear_error();
    if text.is_null() || out.is_null() {
        return fail(OhStatus::NullPointer, "null argument");
    }
    let text = match unsafe { CStr::from_ptr(text) }.to_str() {
        Ok(s) => s,
        Err(_) => return fail(OhStatus::InvalidUtf8, "symbol text is not UTF-8"),
    };
    match TrigPoly::from_json(text) {
        Ok(poly) => {
            unsafe { *out = Box::into_raw(Box::new(OhPoly(poly))) };
            OhStatus::Ok
        }
        Err(e) => fail_from(e),
    }
}

/// Serialize a polynomial to its symbol-file JSON. The returned string must
/// be released with `oh_string_free`.
///
/// # Safety
/// `poly` must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn oh_poly_to_json(
    poly: *const OhPoly,
    out: *mut *mut c_char,
) -> OhStatus {
    clear_error();
    if poly.is_null() || out.is_null() {
        return fail(OhStatus::NullPointer, "null argument");
    }
    let json = unsafe { &*poly }.0.to_json();
    match CString::new(json) {
        Ok(s) => {
            unsafe { *out = s.into_raw() };
            OhStatus::Ok
        }
        Err(_) => fail(OhStatus::InvalidArgument, "JSON contained a NUL byte"),
    }
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn oh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

unsafe fn unary_poly_op(
    order: *const OhOrder,
    poly: *const OhPoly,
    out: *mut *mut OhPoly,
    op: impl Fn(&OrderSpec, &TrigPoly) -> ordered_harmonics::Result<TrigPoly>,
) -> OhStatus {
    clear_error();
    if order.is_null() || poly.is_null() || out.is_null() {
        return fail(OhStatus::NullPointer, "null argument");
    }
    let order = unsafe { &*order };
    let poly = unsafe { &*poly };
    match op(&order.0, &poly.0) {
        Ok(result) => {
            unsafe { *out = Box::into_raw(Box::new(OhPoly(result))) };
            OhStatus::Ok
        }
        Err(e) => fail_from(e),
    }
}

/// Conjugate-function transform (`-i * sign` multiplier) of `poly`.
///
/// # Safety
/// `order` and `poly` must be live handles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn oh_hilbert(
    order: *const OhOrder,
    poly: *const OhPoly,
    out: *mut *mut OhPoly,
) -> OhStatus {
    unsafe { unary_poly_op(order, poly, out, transforms::hilbert) }
}

/// Projection onto the nonnegative cone.
///
/// # Safety
/// `order` and `poly` must be live handles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn oh_p_plus(
    order: *const OhOrder,
    poly: *const OhPoly,
    out: *mut *mut OhPoly,
) -> OhStatus {
    unsafe { unary_poly_op(order, poly, out, transforms::p_plus) }
}

/// Projection onto the strictly negative cone.
///
/// # Safety
/// `order` and `poly` must be live handles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn oh_p_minus(
    order: *const OhOrder,
    poly: *const OhPoly,
    out: *mut *mut OhPoly,
) -> OhStatus {
    unsafe { unary_poly_op(order, poly, out, transforms::p_minus) }
}

/// Grid lower bound of the sup norm on `grid_points` samples per dimension.
///
/// # Safety
/// `poly` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn oh_sup_norm_lower(
    poly: *const OhPoly,
    grid_points: usize,
    out: *mut f64,
) -> OhStatus {
    clear_error();
    if poly.is_null() || out.is_null() {
        return fail(OhStatus::NullPointer, "null argument");
    }
    let poly = unsafe { &*poly };
    let grid = match GridSpec::new(poly.0.dim(), grid_points) {
        Ok(g) => g,
        Err(e) => return fail_from(e),
    };
    match poly.0.sup_norm_lower(&grid) {
        Ok(v) => {
            unsafe { *out = v };
            OhStatus::Ok
        }
        Err(e) => fail_from(e),
    }
}

/// Truncated Hankel norms over the symmetric box of the given radius:
/// writes the direct norm and the conjugate-symbol norm. Both are certified
/// lower bounds of the untruncated operator norms.
///
/// # Safety
/// `order` and `poly` must be live handles; the out pointers writable.
#[no_mangle]
pub unsafe extern "C" fn oh_hankel_norms(
    order: *const OhOrder,
    poly: *const OhPoly,
    box_radius: i64,
    tol: f64,
    max_iters: usize,
    out_direct: *mut f64,
    out_conj: *mut f64,
) -> OhStatus {
    clear_error();
    if order.is_null() || poly.is_null() || out_direct.is_null() || out_conj.is_null() {
        return fail(OhStatus::NullPointer, "null argument");
    }
    let order = &unsafe { &*order }.0;
    let poly = &unsafe { &*poly }.0;
    if box_radius < 0 {
        return fail(OhStatus::InvalidArgument, "box radius must be nonnegative");
    }
    let trunc = IndexBox::symmetric(order.dim(), box_radius);
    let run = || -> ordered_harmonics::Result<(f64, f64)> {
        let rows = order.enumerate_cone(&trunc, ConeSelect::Negative)?;
        let cols = order.enumerate_cone(&trunc, ConeSelect::NonNegative)?;
        let direct = hankel_matrix(order, poly, &rows, &cols)?
            .operator_norm(tol, max_iters)?
            .value;
        let conj = hankel_matrix(order, &poly.conj(), &rows, &cols)?
            .operator_norm(tol, max_iters)?
            .value;
        Ok((direct, conj))
    };
    match run() {
        Ok((direct, conj)) => {
            unsafe {
                *out_direct = direct;
                *out_conj = conj;
            }
            OhStatus::Ok
        }
        Err(e) => fail_from(e),
    }
}

/// Full norm-sandwich report as a JSON string (release with
/// `oh_string_free`). Requires an order with a least positive element.
///
/// # Safety
/// `order` and `poly` must be live handles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn oh_bmo_report_json(
    order: *const OhOrder,
    poly: *const OhPoly,
    box_radius: i64,
    grid_points: usize,
    solver_iters: usize,
    out: *mut *mut c_char,
) -> OhStatus {
    clear_error();
    if order.is_null() || poly.is_null() || out.is_null() {
        return fail(OhStatus::NullPointer, "null argument");
    }
    let order = &unsafe { &*order }.0;
    let poly = &unsafe { &*poly }.0;
    if box_radius < 0 {
        return fail(OhStatus::InvalidArgument, "box radius must be nonnegative");
    }
    let run = || -> ordered_harmonics::Result<String> {
        let cfg = SandwichConfig {
            grid: GridSpec::new(order.dim(), grid_points)?,
            solver_grid: None,
            trunc: IndexBox::symmetric(order.dim(), box_radius),
            free_box: None,
            solver: SolverConfig {
                iterations: solver_iters,
                ..SolverConfig::default()
            },
            power_tol: 1e-10,
            power_max_iters: 500_000,
            slack_fraction: 0.02,
        };
        let report = sandwich_verify(order, poly, &cfg)?;
        Ok(serde_json::to_string(&report).expect("report serialization"))
    };
    match run() {
        Ok(json) => match CString::new(json) {
            Ok(s) => {
                unsafe { *out = s.into_raw() };
                OhStatus::Ok
            }
            Err(_) => fail(OhStatus::InvalidArgument, "JSON contained a NUL byte"),
        },
        Err(e) => fail_from(e),
    }
}
