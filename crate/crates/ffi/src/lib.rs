//! C ABI surface over riordan-core.
//!
//! Conventions:
//! - `RdSeries` / `RdPair` are opaque heap handles; free them with the
//!   matching `rd_*_free`.
//! - Every fallible call returns an `RdStatus`; on failure the handle/string
//!   out-parameter is left untouched and `rd_last_error_message` returns a
//!   description of the most recent failure on the calling thread.
//! - Strings returned through `char **` out-parameters are NUL-terminated,
//!   UTF-8, and owned by the caller; release them with `rd_string_free`.
//!
//! The header `include/riordan.h` is maintained by hand and must stay in
//! sync with this file.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use riordan_core::{
    parse_pair, parse_series, phi_apply, rtimes_binomial_power, to_matrix, Error, Rational,
    RiordanElement, Series,
};

/// Opaque handle to a truncated power series.
pub struct RdSeries(Series);
/// Opaque handle to a pair (mu ; sigma).
pub struct RdPair(RiordanElement);

/// Status codes. Mirrors the CLI exit-code taxonomy.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RdStatus {
    RdOk = 0,
    /// A structural or domain precondition failed (precision mismatch,
    /// non-invertible element, argument outside the required ideal, ...).
    RdDomainError = 1,
    /// Malformed input text or an invalid argument such as a null pointer.
    RdParseError = 2,
    /// Internal failure (a panic crossed the boundary).
    RdInternalError = 3,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> RdStatus {
    if err.is_parse() {
        RdStatus::RdParseError
    } else {
        RdStatus::RdDomainError
    }
}

/// Runs `f`, translating errors and panics into status codes.
fn guarded<F: FnOnce() -> Result<(), (RdStatus, String)>>(f: F) -> RdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RdStatus::RdOk,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            RdStatus::RdInternalError
        }
    }
}

fn core_err(e: Error) -> (RdStatus, String) {
    (status_of(&e), e.to_string())
}

fn arg_err(msg: &str) -> (RdStatus, String) {
    (RdStatus::RdParseError, msg.to_string())
}

/// # Safety
/// `ptr` must be a valid NUL-terminated string or null.
unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, (RdStatus, String)> {
    if ptr.is_null() {
        return Err(arg_err(&format!("{what} is null")));
    }
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|_| arg_err(&format!("{what} is not valid UTF-8")))
}

fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), (RdStatus, String)> {
    if out.is_null() {
        return Err(arg_err("output pointer is null"));
    }
    unsafe { *out = Box::into_raw(Box::new(value)) };
    Ok(())
}

fn write_string(out: *mut *mut c_char, text: String) -> Result<(), (RdStatus, String)> {
    if out.is_null() {
        return Err(arg_err("output pointer is null"));
    }
    let c = CString::new(text).map_err(|_| arg_err("result contained a NUL byte"))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

unsafe fn series_ref<'a>(h: *const RdSeries, what: &str) -> Result<&'a Series, (RdStatus, String)> {
    if h.is_null() {
        return Err(arg_err(&format!("{what} handle is null")));
    }
    Ok(unsafe { &(*h).0 })
}

unsafe fn pair_ref<'a>(h: *const RdPair, what: &str) -> Result<&'a RiordanElement, (RdStatus, String)> {
    if h.is_null() {
        return Err(arg_err(&format!("{what} handle is null")));
    }
    Ok(unsafe { &(*h).0 })
}

fn parse_rational(text: &str) -> Result<Rational, (RdStatus, String)> {
    text.parse::<Rational>()
        .map_err(|e| (RdStatus::RdParseError, e.to_string()))
}

// ----------------------------------------------------------------- lifetimes

/// Returns the message for the last error raised on this thread, or an empty
/// string. The pointer stays valid until the next failing call on the same
/// thread; do not free it.
#[no_mangle]
pub extern "C" fn rd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|c| c.as_ptr())
            .unwrap_or(c"".as_ptr())
    })
}

/// # Safety
/// `s` must be a pointer returned by this library through a `char **`
/// out-parameter, or null.
#[no_mangle]
pub unsafe extern "C" fn rd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// # Safety
/// `h` must be a handle returned by this library, or null. Double frees are
/// undefined behaviour.
#[no_mangle]
pub unsafe extern "C" fn rd_series_free(h: *mut RdSeries) {
    if !h.is_null() {
        drop(unsafe { Box::from_raw(h) });
    }
}

/// # Safety
/// Same contract as [`rd_series_free`].
#[no_mangle]
pub unsafe extern "C" fn rd_pair_free(h: *mut RdPair) {
    if !h.is_null() {
        drop(unsafe { Box::from_raw(h) });
    }
}

// -------------------------------------------------------------------- series

/// Parses a series like `"1 + 2*x - x^3 + O(x^5)"`. Without an O() suffix
/// the series is read at `default_precision`.
///
/// # Safety
/// `text` must be NUL-terminated; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rd_series_parse(
    text: *const c_char,
    default_precision: usize,
    out: *mut *mut RdSeries,
) -> RdStatus {
    guarded(|| {
        let text = unsafe { read_str(text, "series text") }?;
        let s = parse_series(text, default_precision).map_err(core_err)?;
        write_out(out, RdSeries(s))
    })
}

/// # Safety
/// `h` must be a live series handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rd_series_to_string(
    h: *const RdSeries,
    out: *mut *mut c_char,
) -> RdStatus {
    guarded(|| {
        let s = unsafe { series_ref(h, "series") }?;
        write_string(out, s.to_string())
    })
}

/// # Safety
/// `h` must be a live series handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rd_series_precision(
    h: *const RdSeries,
    out: *mut usize,
) -> RdStatus {
    guarded(|| {
        let s = unsafe { series_ref(h, "series") }?;
        if out.is_null() {
            return Err(arg_err("output pointer is null"));
        }
        unsafe { *out = s.precision() };
        Ok(())
    })
}

macro_rules! series_binop {
    ($(#[$doc:meta])* $name:ident, $method:ident) => {
        $(#[$doc])*
        /// # Safety
        /// `a` and `b` must be live series handles; `out` must be valid.
        #[no_mangle]
        pub unsafe extern "C" fn $name(
            a: *const RdSeries,
            b: *const RdSeries,
            out: *mut *mut RdSeries,
        ) -> RdStatus {
            guarded(|| {
                let a = unsafe { series_ref(a, "left series") }?;
                let b = unsafe { series_ref(b, "right series") }?;
                let r = a.$method(b).map_err(core_err)?;
                write_out(out, RdSeries(r))
            })
        }
    };
}

series_binop!(
    /// Sum of two series of equal precision.
    rd_series_add,
    add
);
series_binop!(
    /// Cauchy product of two series of equal precision.
    rd_series_mul,
    mul
);
series_binop!(
    /// Substitution `a ∘ b`; `b` must have zero constant term.
    rd_series_substitute,
    substitute
);

macro_rules! series_unop {
    ($(#[$doc:meta])* $name:ident, $method:ident) => {
        $(#[$doc])*
        /// # Safety
        /// `a` must be a live series handle; `out` must be valid.
        #[no_mangle]
        pub unsafe extern "C" fn $name(
            a: *const RdSeries,
            out: *mut *mut RdSeries,
        ) -> RdStatus {
            guarded(|| {
                let a = unsafe { series_ref(a, "series") }?;
                let r = a.$method().map_err(core_err)?;
                write_out(out, RdSeries(r))
            })
        }
    };
}

series_unop!(
    /// Multiplicative inverse; requires a nonzero constant term.
    rd_series_mul_inverse,
    mul_inverse
);
series_unop!(
    /// Compositional inverse; requires valuation exactly 1.
    rd_series_comp_inverse,
    comp_inverse
);
series_unop!(
    /// exp(a); requires zero constant term.
    rd_series_exp,
    exp_series
);
series_unop!(
    /// log(a); requires constant term 1.
    rd_series_log,
    log_series
);

// --------------------------------------------------------------------- pairs

/// Parses a pair like `"(1 + x ; x + x^2)"`.
///
/// # Safety
/// `text` must be NUL-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rd_pair_parse(
    text: *const c_char,
    default_precision: usize,
    out: *mut *mut RdPair,
) -> RdStatus {
    guarded(|| {
        let text = unsafe { read_str(text, "pair text") }?;
        let p = parse_pair(text, default_precision).map_err(core_err)?;
        write_out(out, RdPair(p))
    })
}

/// # Safety
/// `h` must be a live pair handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rd_pair_to_string(h: *const RdPair, out: *mut *mut c_char) -> RdStatus {
    guarded(|| {
        let p = unsafe { pair_ref(h, "pair") }?;
        write_string(out, p.to_string())
    })
}

/// The ⋊ product.
///
/// # Safety
/// `a`, `b` must be live pair handles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rd_pair_rtimes(
    a: *const RdPair,
    b: *const RdPair,
    out: *mut *mut RdPair,
) -> RdStatus {
    guarded(|| {
        let a = unsafe { pair_ref(a, "left pair") }?;
        let b = unsafe { pair_ref(b, "right pair") }?;
        let r = a.rtimes(b).map_err(core_err)?;
        write_out(out, RdPair(r))
    })
}

/// The n-th ⋊ power, via the closed form.
///
/// # Safety
/// `a` must be a live pair handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rd_pair_power(
    a: *const RdPair,
    n: usize,
    out: *mut *mut RdPair,
) -> RdStatus {
    guarded(|| {
        let a = unsafe { pair_ref(a, "pair") }?;
        let r = a.rtimes_power(n).map_err(core_err)?;
        write_out(out, RdPair(r))
    })
}

/// Inverse in the Riordan group; requires mu(0) = 1 and sigma'(0) = 1.
///
/// # Safety
/// `a` must be a live pair handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rd_pair_group_inverse(
    a: *const RdPair,
    out: *mut *mut RdPair,
) -> RdStatus {
    guarded(|| {
        let a = unsafe { pair_ref(a, "pair") }?;
        let r = a.group_inverse().map_err(core_err)?;
        write_out(out, RdPair(r))
    })
}

/// Generalized binomial ⋊-power `g^⋊lambda` for a Riordan group element;
/// `lambda` is a rational given as text, e.g. `"-3/2"`.
///
/// # Safety
/// `a` must be a live pair handle; `lambda` NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn rd_pair_genpow(
    a: *const RdPair,
    lambda: *const c_char,
    out: *mut *mut RdPair,
) -> RdStatus {
    guarded(|| {
        let a = unsafe { pair_ref(a, "pair") }?;
        let lambda = parse_rational(unsafe { read_str(lambda, "lambda") }?)?;
        let r = rtimes_binomial_power(a, &lambda).map_err(core_err)?;
        write_out(out, RdPair(r))
    })
}

/// Φ_base(f): evaluates f in the ⋊-powers of an ideal base pair.
///
/// # Safety
/// `base` must be a live pair handle, `f` a live series handle; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn rd_phi_apply(
    base: *const RdPair,
    f: *const RdSeries,
    out: *mut *mut RdPair,
) -> RdStatus {
    guarded(|| {
        let base = unsafe { pair_ref(base, "base pair") }?;
        let f = unsafe { series_ref(f, "argument series") }?;
        let r = phi_apply(base, f).map_err(core_err)?;
        write_out(out, RdPair(r))
    })
}

// ------------------------------------------------------------------ matrices

/// The leading n-by-n block of the Riordan matrix of `a`, as CSV rows of
/// exact rationals.
///
/// # Safety
/// `a` must be a live pair handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rd_matrix_csv(
    a: *const RdPair,
    n: usize,
    out: *mut *mut c_char,
) -> RdStatus {
    guarded(|| {
        let a = unsafe { pair_ref(a, "pair") }?;
        let m = to_matrix(a, n).map_err(core_err)?;
        write_string(out, m.to_csv())
    })
}

/// Same block as JSON: `{"n", "mu", "sigma", "rows"}`.
///
/// # Safety
/// `a` must be a live pair handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rd_matrix_json(
    a: *const RdPair,
    n: usize,
    out: *mut *mut c_char,
) -> RdStatus {
    guarded(|| {
        let a = unsafe { pair_ref(a, "pair") }?;
        let m = to_matrix(a, n).map_err(core_err)?;
        write_string(out, riordan_core::matrix::to_json(a, &m).to_string())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn parse(text: &str, n: usize) -> *mut RdPair {
        let c = CString::new(text).unwrap();
        let mut out: *mut RdPair = ptr::null_mut();
        let st = unsafe { rd_pair_parse(c.as_ptr(), n, &mut out) };
        assert_eq!(st, RdStatus::RdOk);
        out
    }

    fn render(h: *const RdPair) -> String {
        let mut s: *mut c_char = ptr::null_mut();
        assert_eq!(unsafe { rd_pair_to_string(h, &mut s) }, RdStatus::RdOk);
        let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
        unsafe { rd_string_free(s) };
        text
    }

    #[test]
    fn pair_power_round_trip() {
        let g = parse("(1 + x ; x + x^2)", 5);
        let mut sq: *mut RdPair = ptr::null_mut();
        assert_eq!(unsafe { rd_pair_power(g, 2, &mut sq) }, RdStatus::RdOk);
        assert_eq!(
            render(sq),
            "(1 + 2*x + 2*x^2 + x^3 + O(x^5) ; x + 2*x^2 + 2*x^3 + x^4 + O(x^5))"
        );
        unsafe {
            rd_pair_free(sq);
            rd_pair_free(g);
        }
    }

    #[test]
    fn series_errors_set_message() {
        let c = CString::new("1 + y").unwrap();
        let mut out: *mut RdSeries = ptr::null_mut();
        let st = unsafe { rd_series_parse(c.as_ptr(), 4, &mut out) };
        assert_eq!(st, RdStatus::RdParseError);
        let msg = unsafe { CStr::from_ptr(rd_last_error_message()) }
            .to_str()
            .unwrap();
        assert!(!msg.is_empty());
        assert!(out.is_null());
    }

    #[test]
    fn mul_precision_mismatch_is_domain_error() {
        let a = CString::new("1 + x + O(x^3)").unwrap();
        let b = CString::new("1 + x + O(x^4)").unwrap();
        let (mut ha, mut hb): (*mut RdSeries, *mut RdSeries) = (ptr::null_mut(), ptr::null_mut());
        unsafe {
            assert_eq!(rd_series_parse(a.as_ptr(), 8, &mut ha), RdStatus::RdOk);
            assert_eq!(rd_series_parse(b.as_ptr(), 8, &mut hb), RdStatus::RdOk);
            let mut out: *mut RdSeries = ptr::null_mut();
            assert_eq!(rd_series_mul(ha, hb, &mut out), RdStatus::RdDomainError);
            rd_series_free(ha);
            rd_series_free(hb);
        }
    }

    #[test]
    fn matrix_csv_identity() {
        let id = parse("(1 ; x)", 4);
        let mut s: *mut c_char = ptr::null_mut();
        assert_eq!(unsafe { rd_matrix_csv(id, 3, &mut s) }, RdStatus::RdOk);
        let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
        assert_eq!(text, "1,0,0\n0,1,0\n0,0,1\n");
        unsafe {
            rd_string_free(s);
            rd_pair_free(id);
        }
    }

    #[test]
    fn null_arguments_rejected() {
        let mut out: *mut RdSeries = ptr::null_mut();
        assert_eq!(
            unsafe { rd_series_parse(ptr::null(), 4, &mut out) },
            RdStatus::RdParseError
        );
        unsafe { rd_series_free(ptr::null_mut()) }; // no-op, must not crash
    }
}
