//! C ABI over `midconv`.
//!
//! Tuples cross the boundary as opaque `MidconvTuple` handles and as JSON
//! documents in the same format the CLI reads. Every function returns a
//! `MidconvStatus`; on failure `midconv_last_error_message` describes it.
//! Strings returned through out-pointers are owned by the caller and must be
//! released with `midconv_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use midconv::cli::tuplefile::{parse_tuple, write_tuple, TupleFileError};
use midconv::convolution::{middle_convolution, ConvolutionError};
use midconv::exactla::Scalar;
use midconv::model::{fixtures, ShiftVector, Tuple};
use midconv::reduction::{reduce, Verdict};
use midconv::rigidity::{index, is_irreducible};

/// Opaque tuple handle.
pub struct MidconvTuple(Tuple);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MidconvStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// Malformed JSON or rational literal.
    Parse = 3,
    /// Well-formed input that does not describe a valid tuple or shift.
    Validation = 4,
    /// Middle convolution would produce the zero tuple.
    Degenerate = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MidconvVerdict {
    ReducedToRankOne = 0,
    Terminal = 1,
    AssumptionViolated = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(MidconvStatus, String);

impl From<TupleFileError> for Failure {
    fn from(e: TupleFileError) -> Self {
        let status = match e {
            TupleFileError::Json(_) => MidconvStatus::Parse,
            _ => MidconvStatus::Validation,
        };
        Failure(status, e.to_string())
    }
}

impl From<ConvolutionError> for Failure {
    fn from(e: ConvolutionError) -> Self {
        Failure(MidconvStatus::Degenerate, e.to_string())
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> MidconvStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MidconvStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal error: {msg}"));
            MidconvStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(MidconvStatus::NullArgument, format!("{what} is null"))
}

unsafe fn tuple_ref<'a>(t: *const MidconvTuple) -> Result<&'a Tuple, Failure> {
    t.as_ref().map(|h| &h.0).ok_or_else(|| null("tuple"))
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure(MidconvStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn scalar(s: &str) -> Result<Scalar, Failure> {
    s.trim().parse().map_err(|e: midconv::exactla::ParseScalarError| Failure(MidconvStatus::Parse, e.to_string()))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

fn boxed(t: Tuple) -> *mut MidconvTuple {
    Box::into_raw(Box::new(MidconvTuple(t)))
}

/// Parses a tuple document. On success `*out` holds a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn midconv_tuple_from_json(json: *const c_char, out: *mut *mut MidconvTuple) -> MidconvStatus {
    guard(|| {
        let t = parse_tuple(text(json, "json")?)?;
        put(out, boxed(t))
    })
}

/// Serializes a tuple. Free the result with `midconv_string_free`.
///
/// # Safety
/// `t` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn midconv_tuple_to_json(t: *const MidconvTuple, out: *mut *mut c_char) -> MidconvStatus {
    guard(|| {
        let s = CString::new(write_tuple(tuple_ref(t)?)).expect("JSON has no interior NUL");
        put(out, s.into_raw())
    })
}

/// # Safety
/// `t` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn midconv_tuple_free(t: *mut MidconvTuple) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn midconv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Matrix size n.
///
/// # Safety
/// `t` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn midconv_tuple_size(t: *const MidconvTuple, out: *mut usize) -> MidconvStatus {
    guard(|| put(out, tuple_ref(t)?.n()))
}

/// # Safety
/// `t` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn midconv_index_of_rigidity(t: *const MidconvTuple, out: *mut i64) -> MidconvStatus {
    guard(|| put(out, index(tuple_ref(t)?).idx))
}

/// # Safety
/// `t` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn midconv_is_irreducible(t: *const MidconvTuple, out: *mut bool) -> MidconvStatus {
    guard(|| put(out, is_irreducible(tuple_ref(t)?)))
}

/// Middle convolution with parameter `mu`, a rational literal such as `"-2/3"`.
///
/// # Safety
/// `t` must be a live handle, `mu` a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn midconv_middle_convolution(
    t: *const MidconvTuple,
    mu: *const c_char,
    out: *mut *mut MidconvTuple,
) -> MidconvStatus {
    guard(|| {
        let mu = scalar(text(mu, "mu")?)?;
        let mc = middle_convolution(tuple_ref(t)?, &mu)?;
        put(out, boxed(mc.result))
    })
}

/// Addition by a comma-separated shift vector, one entry per slot.
///
/// # Safety
/// `t` must be a live handle, `shift` a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn midconv_addition(
    t: *const MidconvTuple,
    shift: *const c_char,
    out: *mut *mut MidconvTuple,
) -> MidconvStatus {
    guard(|| {
        let s = ShiftVector(text(shift, "shift")?.split(',').map(scalar).collect::<Result<_, _>>()?);
        let sum = tuple_ref(t)?.addition(&s).map_err(|e| Failure(MidconvStatus::Validation, e.to_string()))?;
        put(out, boxed(sum))
    })
}

/// Runs the reduction to completion. `out_terminal` may be null; otherwise it
/// receives the last tuple reached.
///
/// # Safety
/// `t` must be a live handle and `out_verdict` writable.
#[no_mangle]
pub unsafe extern "C" fn midconv_reduce(
    t: *const MidconvTuple,
    out_verdict: *mut MidconvVerdict,
    out_terminal: *mut *mut MidconvTuple,
) -> MidconvStatus {
    guard(|| {
        let t = tuple_ref(t)?;
        if out_verdict.is_null() {
            return Err(null("output pointer"));
        }
        let trace = reduce(t);
        let verdict = match &trace.verdict {
            Verdict::ReducedToRankOne => MidconvVerdict::ReducedToRankOne,
            Verdict::Terminal { .. } => MidconvVerdict::Terminal,
            Verdict::AssumptionViolated(why) => {
                set_error(why);
                MidconvVerdict::AssumptionViolated
            }
        };
        out_verdict.write(verdict);
        if !out_terminal.is_null() {
            out_terminal.write(boxed(trace.terminal));
        }
        Ok(())
    })
}

/// The rank-two hypergeometric example tuple. Parameters are rational literals.
///
/// # Safety
/// All string arguments must be NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn midconv_hypergeometric(
    nu: *const c_char,
    gamma: *const c_char,
    alpha: *const c_char,
    k: *const c_char,
    out: *mut *mut MidconvTuple,
) -> MidconvStatus {
    guard(|| {
        let nu = scalar(text(nu, "nu")?)?;
        let gamma = scalar(text(gamma, "gamma")?)?;
        let alpha = scalar(text(alpha, "alpha")?)?;
        let k = scalar(text(k, "k")?)?;
        let t = fixtures::hypergeometric(&nu, &gamma, &alpha, &k)
            .map_err(|e| Failure(MidconvStatus::Validation, e.to_string()))?;
        put(out, boxed(t))
    })
}

/// Message for the last failure on this thread, or an empty string. Valid
/// until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn midconv_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub extern "C" fn midconv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
