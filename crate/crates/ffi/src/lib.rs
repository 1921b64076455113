//! C ABI over `abelsq`.
//!
//! Objects cross the boundary as opaque handles created by `abelsq_*_new`/`abelsq_*_from_*`
//! and released by the matching `abelsq_*_free`. Every fallible call returns an
//! [`AbelsqStatus`]; on failure the message is available from [`abelsq_last_error`]
//! on the same thread until the next failing call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use abelsq::count::{spectrum, SquareSpectrum};
use abelsq::sturmian::{
    discrepancy, fibonacci_prefix, sturmian_as_count, CertifiedReal, ContinuedFraction,
};
use abelsq::thue_morse::{tm_f_linear_rep, tm_f_recurrence, tm_prefix};
use abelsq::{Error, Word};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbelsqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    /// Prefix or precision cap reached before the answer was certified.
    ResourceCap = 4,
    /// The value does not fit the output type, or an evaluation produced a non-integer.
    Numeric = 5,
    /// The output buffer is too small; the required size was written.
    BufferTooSmall = 6,
    Panic = 7,
}

/// A finite word.
pub struct AbelsqWord(Word);

/// Distinct abelian-square counts of a finite word, per length.
pub struct AbelsqSpectrum(SquareSpectrum);

/// A real `α` in `(0, 1)` given by a continued fraction, with certified comparisons.
pub struct AbelsqAlpha(CertifiedReal);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> AbelsqStatus {
    match e {
        _ if e.is_resource_cap() => AbelsqStatus::ResourceCap,
        Error::Parse(_) | Error::UnknownToken(_) => AbelsqStatus::Parse,
        Error::NonInteger { .. } => AbelsqStatus::Numeric,
        _ => AbelsqStatus::InvalidArgument,
    }
}

fn fail(status: AbelsqStatus, msg: impl Into<String>) -> AbelsqStatus {
    set_error(msg.into());
    status
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), AbelsqStatus>) -> AbelsqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AbelsqStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(AbelsqStatus::Panic, "internal panic"),
    }
}

fn lib_err(e: Error) -> AbelsqStatus {
    fail(status_of(&e), e.to_string())
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, AbelsqStatus> {
    if p.is_null() {
        return Err(fail(AbelsqStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(AbelsqStatus::Parse, "string is not UTF-8"))
}

unsafe fn out_arg<'a, T>(p: *mut T) -> Result<&'a mut T, AbelsqStatus> {
    p.as_mut()
        .ok_or_else(|| fail(AbelsqStatus::NullPointer, "null output pointer"))
}

unsafe fn in_arg<'a, T>(p: *const T) -> Result<&'a T, AbelsqStatus> {
    p.as_ref()
        .ok_or_else(|| fail(AbelsqStatus::NullPointer, "null handle"))
}

/// Message of the last failing call on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn abelsq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn abelsq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a word written with letters `a`, `b`, ... or with the digits `0`/`1`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn abelsq_word_from_text(
    text: *const c_char,
    out: *mut *mut AbelsqWord,
) -> AbelsqStatus {
    guard(|| {
        let out = out_arg(out)?;
        let s = str_arg(text)?;
        let trimmed: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let w = if !trimmed.is_empty() && trimmed.chars().all(|c| c == '0' || c == '1') {
            Word::parse_binary(&trimmed)
        } else {
            Word::from_letters(&trimmed)
        }
        .map_err(lib_err)?;
        *out = Box::into_raw(Box::new(AbelsqWord(w)));
        Ok(())
    })
}

/// First `len` letters of the Thue-Morse word, over `{0, 1}`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn abelsq_word_thue_morse(
    len: usize,
    out: *mut *mut AbelsqWord,
) -> AbelsqStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = Box::into_raw(Box::new(AbelsqWord(tm_prefix(len))));
        Ok(())
    })
}

/// First `len` letters of the Fibonacci word `abaababaab...`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn abelsq_word_fibonacci(
    len: usize,
    out: *mut *mut AbelsqWord,
) -> AbelsqStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = Box::into_raw(Box::new(AbelsqWord(fibonacci_prefix(len))));
        Ok(())
    })
}

/// Length of a word; `0` for a null handle.
///
/// # Safety
/// `word` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn abelsq_word_len(word: *const AbelsqWord) -> usize {
    word.as_ref().map_or(0, |w| w.0.len())
}

/// Writes the word as text into `buf` (nul-terminated). `needed` receives the size
/// including the terminator; with a short buffer nothing is written but `needed`.
///
/// # Safety
/// `word` must be a live handle, `buf` valid for `buf_len` bytes (or null with `buf_len == 0`),
/// `needed` null or valid.
#[no_mangle]
pub unsafe extern "C" fn abelsq_word_text(
    word: *const AbelsqWord,
    buf: *mut c_char,
    buf_len: usize,
    needed: *mut usize,
) -> AbelsqStatus {
    guard(|| {
        let w = in_arg(word)?;
        write_string(&w.0.to_string(), buf, buf_len, needed)
    })
}

/// # Safety
/// `word` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn abelsq_word_free(word: *mut AbelsqWord) {
    if !word.is_null() {
        drop(Box::from_raw(word));
    }
}

unsafe fn write_string(
    s: &str,
    buf: *mut c_char,
    buf_len: usize,
    needed: *mut usize,
) -> Result<(), AbelsqStatus> {
    let n = s.len() + 1;
    if let Some(k) = needed.as_mut() {
        *k = n;
    }
    if buf.is_null() || buf_len < n {
        return Err(fail(
            AbelsqStatus::BufferTooSmall,
            format!("buffer needs {n} bytes"),
        ));
    }
    ptr::copy_nonoverlapping(s.as_ptr(), buf.cast::<u8>(), s.len());
    *buf.add(s.len()) = 0;
    Ok(())
}

/// Counts distinct abelian squares of every length in `word`.
///
/// # Safety
/// `word` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn abelsq_spectrum_new(
    word: *const AbelsqWord,
    out: *mut *mut AbelsqSpectrum,
) -> AbelsqStatus {
    guard(|| {
        let out = out_arg(out)?;
        let w = in_arg(word)?;
        *out = Box::into_raw(Box::new(AbelsqSpectrum(spectrum(&w.0))));
        Ok(())
    })
}

/// Number of distinct abelian squares of length `m`.
///
/// # Safety
/// `spec` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn abelsq_spectrum_count_at(spec: *const AbelsqSpectrum, m: usize) -> u64 {
    spec.as_ref().map_or(0, |s| s.0.at(m))
}

/// Total number of distinct abelian squares.
///
/// # Safety
/// `spec` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn abelsq_spectrum_total(spec: *const AbelsqSpectrum) -> u64 {
    spec.as_ref().map_or(0, |s| s.0.total)
}

/// # Safety
/// `spec` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn abelsq_spectrum_free(spec: *mut AbelsqSpectrum) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// `f(n)`, the number of distinct abelian squares of order `n` (length `2n`) in the
/// Thue-Morse word, as a decimal string. `method` is 0 for the matrix evaluator and
/// 1 for the recurrences.
///
/// # Safety
/// `buf` valid for `buf_len` bytes (or null with `buf_len == 0`), `needed` null or valid.
#[no_mangle]
pub unsafe extern "C" fn abelsq_tm_f(
    n: u64,
    method: u32,
    buf: *mut c_char,
    buf_len: usize,
    needed: *mut usize,
) -> AbelsqStatus {
    guard(|| {
        let v = match method {
            0 => tm_f_linear_rep(n),
            1 => tm_f_recurrence(n),
            _ => {
                return Err(fail(
                    AbelsqStatus::InvalidArgument,
                    format!("unknown method {method}"),
                ))
            }
        }
        .map_err(lib_err)?;
        write_string(&v.to_string(), buf, buf_len, needed)
    })
}

/// `f(n)` by the matrix evaluator, when it fits in 64 bits.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn abelsq_tm_f_u64(n: u64, out: *mut u64) -> AbelsqStatus {
    guard(|| {
        let out = out_arg(out)?;
        let v = tm_f_linear_rep(n).map_err(lib_err)?;
        *out = u64::try_from(&v).map_err(|_| {
            fail(
                AbelsqStatus::Numeric,
                format!("f({n}) = {v} exceeds 64 bits"),
            )
        })?;
        Ok(())
    })
}

/// Parses `α` from a continued fraction such as `[0; | 1]` or `[0; 2, 3, 1]`.
/// `precision_cap` bounds the convergents used; 0 selects the default.
///
/// # Safety
/// `cf` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn abelsq_alpha_from_cf(
    cf: *const c_char,
    precision_cap: usize,
    out: *mut *mut AbelsqAlpha,
) -> AbelsqStatus {
    guard(|| {
        let out = out_arg(out)?;
        let cf: ContinuedFraction = str_arg(cf)?.parse().map_err(lib_err)?;
        if cf.a0 != 0 || cf.quotient(1).is_none() {
            return Err(fail(
                AbelsqStatus::InvalidArgument,
                "α must lie in (0, 1): [0; a1, ...]",
            ));
        }
        let alpha = if precision_cap == 0 {
            CertifiedReal::new(cf)
        } else {
            CertifiedReal::with_cap(cf, precision_cap)
        };
        *out = Box::into_raw(Box::new(AbelsqAlpha(alpha)));
        Ok(())
    })
}

/// # Safety
/// `alpha` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn abelsq_alpha_free(alpha: *mut AbelsqAlpha) {
    if !alpha.is_null() {
        drop(Box::from_raw(alpha));
    }
}

/// Distinct abelian squares of length `n` in the characteristic Sturmian word of slope `α`.
///
/// # Safety
/// `alpha` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn abelsq_sturmian_as_count(
    alpha: *const AbelsqAlpha,
    n: usize,
    out: *mut u64,
) -> AbelsqStatus {
    guard(|| {
        let out = out_arg(out)?;
        let a = in_arg(alpha)?;
        *out = if n % 2 == 1 {
            0
        } else {
            sturmian_as_count(&a.0, n).map_err(lib_err)?
        };
        Ok(())
    })
}

/// `N · D_N` for the points `{kα}`, `0 <= k <= N`, as a double.
///
/// # Safety
/// `alpha` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn abelsq_discrepancy_scaled(
    alpha: *const AbelsqAlpha,
    n: usize,
    out: *mut f64,
) -> AbelsqStatus {
    guard(|| {
        let out = out_arg(out)?;
        let a = in_arg(alpha)?;
        *out = discrepancy(&a.0, n).map_err(lib_err)?.scaled();
        Ok(())
    })
}
