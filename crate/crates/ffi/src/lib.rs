//! C ABI over zetalab.
//!
//! Every function returns a [`ZlStatus`]; results go through out-pointers.
//! On failure the message is available from [`zl_last_error_message`] on
//! the same thread. Handles ([`ZlRational`], [`ZlMatrix`]) and strings are
//! owned by the caller and released with the matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use zetalab::divmatrix::{build_matrix, matrix_apply, DivisibilityMatrix};
use zetalab::exactnum::{bernoulli_number, euler_number, from_f64, to_f64, Rational};
use zetalab::registry::Registry;
use zetalab::series::{abel_value, SeriesError, TrigSeries};
use zetalab::specfun::{
    dirichlet_beta, hankel_zeta, hurwitz_zeta, lerch_hankel, recip_gamma, zeta_neg_int, zeta_value, EvalResult, SpecFunError,
};
use zetalab::verify::verify_default;
use zetalab::Trig;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// The argument is the pole of ζ at s = 1.
    Pole = 3,
    /// A value was produced but misses the accuracy target; it is still
    /// written to the out-pointer.
    PrecisionLoss = 4,
    Domain = 5,
    ContourClipped = 6,
    NotConverged = 7,
    UnknownIdentity = 8,
    /// Verification ran and at least one point failed.
    VerificationFailed = 9,
    Internal = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ZlComplex {
    pub re: f64,
    pub im: f64,
}

/// A function value with its error estimate.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ZlEval {
    pub value: ZlComplex,
    pub abs_error_estimate: f64,
    pub is_pole: bool,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZlTrig {
    Sin = 0,
    Cos = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZlCharacter {
    /// n = 1, 2, 3, …
    Trivial = 0,
    /// n = 1, 3, 5, … with alternating sign.
    Beta = 1,
}

/// Opaque exact rational.
pub struct ZlRational(Rational);

/// Opaque divisibility matrix.
pub struct ZlMatrix(DivisibilityMatrix);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

type FfiResult = Result<(), (ZlStatus, String)>;

/// Runs `f` with panics turned into `Internal` and errors recorded.
fn guard(f: impl FnOnce() -> FfiResult) -> ZlStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ZlStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            ZlStatus::Internal
        }
    }
}

fn null(what: &str) -> (ZlStatus, String) {
    (ZlStatus::NullPointer, format!("{what} is null"))
}

fn c(z: Complex64) -> ZlComplex {
    ZlComplex { re: z.re, im: z.im }
}

fn specfun_status(e: &SpecFunError) -> ZlStatus {
    match e {
        SpecFunError::PoleAtOne => ZlStatus::Pole,
        SpecFunError::PrecisionLoss { .. } => ZlStatus::PrecisionLoss,
        SpecFunError::ContourClipped { .. } => ZlStatus::ContourClipped,
        SpecFunError::Domain(_) => ZlStatus::Domain,
    }
}

/// Writes the result (or the best estimate on precision loss).
unsafe fn write_eval(out: *mut ZlEval, r: Result<EvalResult, SpecFunError>) -> FfiResult {
    let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
    match r {
        Ok(v) => {
            *out = ZlEval { value: c(v.value), abs_error_estimate: v.abs_error_estimate, is_pole: v.is_pole };
            Ok(())
        }
        Err(e) => {
            if let SpecFunError::PrecisionLoss { value, estimate } = e {
                *out = ZlEval { value: c(value), abs_error_estimate: estimate, is_pole: false };
            }
            Err((specfun_status(&e), e.to_string()))
        }
    }
}

/// Riemann ζ(s). At s = 1 the result has `is_pole` set and status `Ok`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn zl_zeta(s: ZlComplex, out: *mut ZlEval) -> ZlStatus {
    guard(|| unsafe { write_eval(out, zeta_value(Complex64::new(s.re, s.im))) })
}

/// Hurwitz ζ(s, a) for 0 < a ≤ 1.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn zl_hurwitz_zeta(s: ZlComplex, a: f64, out: *mut ZlEval) -> ZlStatus {
    guard(|| unsafe { write_eval(out, hurwitz_zeta(Complex64::new(s.re, s.im), a)) })
}

/// Dirichlet β(s).
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn zl_dirichlet_beta(s: ZlComplex, out: *mut ZlEval) -> ZlStatus {
    guard(|| unsafe { write_eval(out, dirichlet_beta(Complex64::new(s.re, s.im))) })
}

/// ζ(s) from the Hankel contour integral, Re s < 1.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn zl_hankel_zeta(s: ZlComplex, out: *mut ZlEval) -> ZlStatus {
    guard(|| unsafe { write_eval(out, hankel_zeta(Complex64::new(s.re, s.im))) })
}

/// Σ e^{inx}/n^s from the Hankel contour integral, 0 < x < 2π.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn zl_lerch_hankel(s: ZlComplex, x: f64, out: *mut ZlEval) -> ZlStatus {
    guard(|| unsafe { write_eval(out, lerch_hankel(Complex64::new(s.re, s.im), x)) })
}

/// 1/Γ(s), entire.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn zl_recip_gamma(s: ZlComplex, out: *mut ZlComplex) -> ZlStatus {
    guard(|| {
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        *out = c(recip_gamma(Complex64::new(s.re, s.im)));
        Ok(())
    })
}

unsafe fn write_rational(out: *mut *mut ZlRational, q: Rational) -> FfiResult {
    let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
    *out = Box::into_raw(Box::new(ZlRational(q)));
    Ok(())
}

/// B_n (with B_1 = −1/2) as a new rational handle.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn zl_bernoulli_number(n: u32, out: *mut *mut ZlRational) -> ZlStatus {
    guard(|| unsafe { write_rational(out, bernoulli_number(n as usize)) })
}

/// Euler number E_n as a new rational handle.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn zl_euler_number(n: u32, out: *mut *mut ZlRational) -> ZlStatus {
    guard(|| unsafe { write_rational(out, Rational::from_integer(euler_number(n as usize))) })
}

/// ζ(−n) exactly.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn zl_zeta_neg_int(n: u32, out: *mut *mut ZlRational) -> ZlStatus {
    guard(|| unsafe { write_rational(out, zeta_neg_int(n)) })
}

/// "p/q" (or "p") as a new string; release with [`zl_string_free`].
///
/// # Safety
/// `r` must be null or a live handle; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn zl_rational_to_string(r: *const ZlRational, out: *mut *mut c_char) -> ZlStatus {
    guard(|| {
        let r = unsafe { r.as_ref() }.ok_or_else(|| null("rational"))?;
        write_string(out, r.0.to_string())
    })
}

/// Nearest double.
///
/// # Safety
/// `r` must be null or a live handle; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn zl_rational_to_f64(r: *const ZlRational, out: *mut f64) -> ZlStatus {
    guard(|| {
        let r = unsafe { r.as_ref() }.ok_or_else(|| null("rational"))?;
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        *out = to_f64(&r.0);
        Ok(())
    })
}

/// # Safety
/// `r` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn zl_rational_free(r: *mut ZlRational) {
    if !r.is_null() {
        drop(unsafe { Box::from_raw(r) });
    }
}

fn write_string(out: *mut *mut c_char, s: String) -> FfiResult {
    let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
    let s = CString::new(s).map_err(|_| (ZlStatus::Internal, "string contains NUL".to_string()))?;
    *out = s.into_raw();
    Ok(())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn zl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// The size × size matrix of ζ(1 − iD) in the sine basis.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn zl_matrix_build(size: usize, out: *mut *mut ZlMatrix) -> ZlStatus {
    guard(|| {
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        let m = build_matrix(size).map_err(|e| (ZlStatus::InvalidArgument, e.to_string()))?;
        *out = Box::into_raw(Box::new(ZlMatrix(m)));
        Ok(())
    })
}

/// # Safety
/// `m` must be null or a live handle; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn zl_matrix_nnz(m: *const ZlMatrix, out: *mut usize) -> ZlStatus {
    guard(|| {
        let m = unsafe { m.as_ref() }.ok_or_else(|| null("matrix"))?;
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        *out = m.0.nnz();
        Ok(())
    })
}

/// Entry (row, col), 1-based, as num/den. Absent entries give 0/1 with
/// `present` false.
///
/// # Safety
/// `m` must be null or a live handle; the out-pointers must be null or valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn zl_matrix_entry(
    m: *const ZlMatrix,
    row: usize,
    col: usize,
    num: *mut i64,
    den: *mut i64,
    present: *mut bool,
) -> ZlStatus {
    guard(|| {
        let m = unsafe { m.as_ref() }.ok_or_else(|| null("matrix"))?;
        let (num, den, present) = unsafe { (num.as_mut(), den.as_mut(), present.as_mut()) };
        let (num, den, present) = match (num, den, present) {
            (Some(a), Some(b), Some(c)) => (a, b, c),
            _ => return Err(null("out")),
        };
        let size = m.0.size();
        if row == 0 || col == 0 || row > size || col > size {
            return Err((ZlStatus::InvalidArgument, format!("({row}, {col}) outside 1..={size}")));
        }
        match m.0.get(row, col) {
            Some(q) => {
                *num = q.numer().to_i64().ok_or((ZlStatus::Internal, "numerator overflow".to_string()))?;
                *den = q.denom().to_i64().ok_or((ZlStatus::Internal, "denominator overflow".to_string()))?;
                *present = true;
            }
            None => {
                *num = 0;
                *den = 1;
                *present = false;
            }
        }
        Ok(())
    })
}

/// out = A·v for vectors of length `len` (the matrix size). The product is
/// exact on the doubles given and rounded once at the end.
///
/// # Safety
/// `v` and `out` must be null or point to `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn zl_matrix_apply(m: *const ZlMatrix, v: *const f64, len: usize, out: *mut f64) -> ZlStatus {
    guard(|| {
        let m = unsafe { m.as_ref() }.ok_or_else(|| null("matrix"))?;
        if v.is_null() || out.is_null() {
            return Err(null("vector"));
        }
        let input = unsafe { std::slice::from_raw_parts(v, len) };
        let exact: Option<Vec<Rational>> = input.iter().map(|&x| from_f64(x)).collect();
        let exact = exact.ok_or((ZlStatus::InvalidArgument, "vector has a non-finite entry".to_string()))?;
        let r = matrix_apply(&m.0, &exact).map_err(|e| (ZlStatus::InvalidArgument, e.to_string()))?;
        let out = unsafe { std::slice::from_raw_parts_mut(out, len) };
        for (o, q) in out.iter_mut().zip(&r) {
            *o = to_f64(q);
        }
        Ok(())
    })
}

/// # Safety
/// `m` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn zl_matrix_free(m: *mut ZlMatrix) {
    if !m.is_null() {
        drop(unsafe { Box::from_raw(m) });
    }
}

/// Runs the stored verification profile of an identity (every member for a
/// family id). Returns `VerificationFailed` when it runs but does not pass;
/// `max_abs_deviation` is written either way. `json` may be null; otherwise
/// it receives the reports as a JSON array, to be freed with
/// [`zl_string_free`].
///
/// # Safety
/// `id` must be null or a NUL-terminated string; the out-pointers must be
/// null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn zl_verify(id: *const c_char, max_abs_deviation: *mut f64, json: *mut *mut c_char) -> ZlStatus {
    guard(|| {
        if id.is_null() {
            return Err(null("id"));
        }
        let id = unsafe { CStr::from_ptr(id) }
            .to_str()
            .map_err(|_| (ZlStatus::InvalidArgument, "id is not UTF-8".to_string()))?;
        let dev = unsafe { max_abs_deviation.as_mut() }.ok_or_else(|| null("max_abs_deviation"))?;
        let records = Registry::builtin().lookup(id);
        if records.is_empty() {
            return Err((ZlStatus::UnknownIdentity, format!("unknown identity `{id}`")));
        }
        let mut reports = Vec::new();
        for r in records {
            reports.push(verify_default(r).map_err(|e| (ZlStatus::InvalidArgument, e.to_string()))?);
        }
        *dev = reports.iter().map(|r| r.max_abs_deviation).fold(0.0, f64::max);
        if !json.is_null() {
            let text = serde_json::to_string(&reports).map_err(|e| (ZlStatus::Internal, e.to_string()))?;
            write_string(json, text)?;
        }
        if reports.iter().all(|r| r.pass) {
            Ok(())
        } else {
            Err((ZlStatus::VerificationFailed, format!("{id} did not pass")))
        }
    })
}

/// Abel sum of Σ χ(n) trig(nx)/n^exponent: the registered closed form when
/// there is one, otherwise extrapolation in r → 1.
///
/// # Safety
/// The out-pointers must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn zl_abel_value(
    trig: ZlTrig,
    exponent: i32,
    character: ZlCharacter,
    x: f64,
    value: *mut f64,
    abs_error_estimate: *mut f64,
) -> ZlStatus {
    guard(|| {
        let value = unsafe { value.as_mut() }.ok_or_else(|| null("value"))?;
        let err = unsafe { abs_error_estimate.as_mut() }.ok_or_else(|| null("abs_error_estimate"))?;
        let t = match trig {
            ZlTrig::Sin => Trig::Sin,
            ZlTrig::Cos => Trig::Cos,
        };
        let series = match character {
            ZlCharacter::Trivial => TrigSeries::trivial(t, exponent),
            ZlCharacter::Beta => TrigSeries::beta(t, exponent),
        };
        let r = abel_value(series, x).map_err(|e| {
            let status = match e {
                SeriesError::NotConverged(_) | SeriesError::NoClosedForm(_) => ZlStatus::NotConverged,
                SeriesError::OutsideDomain { .. } | SeriesError::SingularAtEndpoint(_) => ZlStatus::Domain,
                _ => ZlStatus::InvalidArgument,
            };
            (status, e.to_string())
        })?;
        *value = r.value;
        *err = r.abs_error_estimate;
        Ok(())
    })
}

/// Message for the last failing call on this thread, or null. The pointer
/// stays valid until the next call into the library from this thread.
#[no_mangle]
pub extern "C" fn zl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
