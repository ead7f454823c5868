//! C ABI over `parity_lab`.
//!
//! Values cross the boundary as opaque handles (`PlPoly`, `PlRational`,
//! `PlBiPoly`) created by the `*_parse` functions and released with the
//! matching `*_free`. Every fallible call returns a [`PlStatus`]; on failure
//! [`pl_last_error`] describes the problem. Strings returned by the library
//! are owned by the caller and must be released with [`pl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use parity_lab::bipoly::BiPoly;
use parity_lab::cli::dispatch;
use parity_lab::cyclic::{right_cyclic_classify, PrimeModulus, RightCyclicResult};
use parity_lab::error::{CyclicError, ParseError, RationalFnError};
use parity_lab::parity::{classify_rpe, classify_rpo, RpeClassification, RpoClassification};
use parity_lab::parse::{parse_bi, parse_rational, parse_uni};
use parity_lab::ratfn::RationalFunction;
use parity_lab::{CyclicClass, UniPoly};

/// Opaque univariate polynomial.
pub struct PlPoly(UniPoly);

/// Opaque rational function.
pub struct PlRational(RationalFunction);

/// Opaque polynomial in `z` and `w`.
pub struct PlBiPoly(BiPoly);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidModulus = 4,
    DegenerateComposition = 5,
    WitnessCheckFailed = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlClassKind {
    /// The zero function, a member of every class.
    Zero = 0,
    NotCyclic = 1,
    Cyclic = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlCyclicClass {
    pub kind: PlClassKind,
    /// The residue `k` when `kind` is `Cyclic`, otherwise 0.
    pub residue: u64,
}

/// Case letters of the even/odd classifiers.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlCase {
    /// Even (odd for the odd classifier).
    A = 0,
    /// Odd plus a constant.
    B = 1,
    /// Quadratic of odd: `(s + d)^2 + k`.
    C = 2,
    None = 3,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn pl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn guard(f: impl FnOnce() -> Result<(), (PlStatus, String)>) -> PlStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PlStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PlStatus::Panic
        }
    }
}

type Failure = (PlStatus, String);

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err((PlStatus::NullArgument, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (PlStatus::InvalidUtf8, "argument is not valid UTF-8".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| (PlStatus::NullArgument, "null handle".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err((PlStatus::NullArgument, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

fn parse_failure(e: ParseError) -> Failure {
    (PlStatus::ParseError, e.to_string())
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

fn class_out(c: CyclicClass) -> PlCyclicClass {
    match c {
        CyclicClass::Zero => PlCyclicClass {
            kind: PlClassKind::Zero,
            residue: 0,
        },
        CyclicClass::NotCyclic => PlCyclicClass {
            kind: PlClassKind::NotCyclic,
            residue: 0,
        },
        CyclicClass::Class(k) => PlCyclicClass {
            kind: PlClassKind::Cyclic,
            residue: k,
        },
    }
}

// ---- polynomials ----

/// Parses a polynomial in `z`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pl_poly_parse(text: *const c_char, out: *mut *mut PlPoly) -> PlStatus {
    guard(|| {
        let p = parse_uni(read_str(text)?).map_err(parse_failure)?;
        write_out(out, Box::into_raw(Box::new(PlPoly(p))))
    })
}

/// # Safety
/// `p` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pl_poly_free(p: *mut PlPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Canonical text, or NULL if `p` is NULL. Free with [`pl_string_free`].
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pl_poly_to_string(p: *const PlPoly) -> *mut c_char {
    p.as_ref()
        .map_or(ptr::null_mut(), |p| to_c_string(p.0.to_string()))
}

/// Degree, or -1 for the zero polynomial and for NULL.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pl_poly_degree(p: *const PlPoly) -> i64 {
    p.as_ref().and_then(|p| p.0.degree()).map_or(-1, i64::from)
}

/// `f∘g`.
///
/// # Safety
/// `f` and `g` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pl_poly_compose(
    f: *const PlPoly,
    g: *const PlPoly,
    out: *mut *mut PlPoly,
) -> PlStatus {
    guard(|| {
        let c = handle(f)?.0.compose(&handle(g)?.0);
        write_out(out, Box::into_raw(Box::new(PlPoly(c))))
    })
}

/// Cyclic class modulo `modulus >= 2`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pl_poly_cyclic_class(
    p: *const PlPoly,
    modulus: u64,
    out: *mut PlCyclicClass,
) -> PlStatus {
    guard(|| {
        let c = handle(p)?
            .0
            .cyclic_class(modulus)
            .map_err(|e| (PlStatus::InvalidModulus, e.to_string()))?;
        write_out(out, class_out(c))
    })
}

/// Even classifier. When `witness` is non-NULL it receives the witness text
/// (NULL when there is none), to be freed with [`pl_string_free`].
///
/// # Safety
/// `p` must be a live handle; `out` must be writable; `witness` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn pl_poly_classify_rpe(
    p: *const PlPoly,
    out: *mut PlCase,
    witness: *mut *mut c_char,
) -> PlStatus {
    guard(|| {
        let c = classify_rpe(&handle(p)?.0);
        let case = match c {
            RpeClassification::EvenA => PlCase::A,
            RpeClassification::OddPlusConstB { .. } => PlCase::B,
            RpeClassification::QuadOddC(_) => PlCase::C,
            RpeClassification::NotRpe => PlCase::None,
        };
        write_out(out, case)?;
        if !witness.is_null() {
            witness.write(
                c.witness()
                    .map_or(ptr::null_mut(), |w| to_c_string(w.to_string())),
            );
        }
        Ok(())
    })
}

/// Odd classifier. Case `B` is odd plus a nonzero constant, `C` the
/// quadratic-of-odd shape.
///
/// # Safety
/// As for [`pl_poly_classify_rpe`].
#[no_mangle]
pub unsafe extern "C" fn pl_poly_classify_rpo(
    p: *const PlPoly,
    out: *mut PlCase,
    witness: *mut *mut c_char,
) -> PlStatus {
    guard(|| {
        let c = classify_rpo(&handle(p)?.0);
        let case = match c {
            RpoClassification::OddA => PlCase::A,
            RpoClassification::OddPlusConst { .. } => PlCase::B,
            RpoClassification::QuadOddB(_) => PlCase::C,
            RpoClassification::NotRpo => PlCase::None,
        };
        write_out(out, case)?;
        if !witness.is_null() {
            witness.write(
                c.witness()
                    .map_or(ptr::null_mut(), |w| to_c_string(w.to_string())),
            );
        }
        Ok(())
    })
}

/// Whether some non-constant `f` puts `f∘p` in a cyclic class modulo the
/// prime `modulus >= 3`. On a yes, `k` receives the class of `p - p(0)`.
///
/// # Safety
/// `p` must be a live handle; `is_cyclic` and `k` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pl_poly_right_cyclic(
    p: *const PlPoly,
    modulus: u64,
    is_cyclic: *mut bool,
    k: *mut u64,
) -> PlStatus {
    guard(|| {
        let m =
            PrimeModulus::new(modulus).map_err(|e| (PlStatus::InvalidModulus, e.to_string()))?;
        let result = right_cyclic_classify(&handle(p)?.0, m).map_err(|e| match e {
            CyclicError::WitnessCheckFailed(_) => (PlStatus::WitnessCheckFailed, e.to_string()),
            _ => (PlStatus::InvalidModulus, e.to_string()),
        })?;
        match result {
            RightCyclicResult::No => {
                write_out(is_cyclic, false)?;
                write_out(k, 0)
            }
            RightCyclicResult::Yes { k: class, .. } => {
                write_out(is_cyclic, true)?;
                write_out(k, class)
            }
        }
    })
}

// ---- rational functions ----

/// Parses a rational function; polynomials are accepted as `p / 1`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pl_rational_parse(
    text: *const c_char,
    out: *mut *mut PlRational,
) -> PlStatus {
    guard(|| {
        let f = parse_rational(read_str(text)?).map_err(parse_failure)?;
        write_out(out, Box::into_raw(Box::new(PlRational(f))))
    })
}

/// # Safety
/// `f` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pl_rational_free(f: *mut PlRational) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Canonical `(P) / (Q)` text, or NULL if `f` is NULL.
///
/// # Safety
/// `f` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pl_rational_to_string(f: *const PlRational) -> *mut c_char {
    f.as_ref()
        .map_or(ptr::null_mut(), |f| to_c_string(f.0.to_string()))
}

/// `f∘g` in lowest terms.
///
/// # Safety
/// `f` and `g` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pl_rational_compose(
    f: *const PlRational,
    g: *const PlRational,
    out: *mut *mut PlRational,
) -> PlStatus {
    guard(|| {
        let c = handle(f)?.0.compose(&handle(g)?.0).map_err(|e| match e {
            RationalFnError::DegenerateComposition | RationalFnError::ZeroDenominator => {
                (PlStatus::DegenerateComposition, e.to_string())
            }
        })?;
        write_out(out, Box::into_raw(Box::new(PlRational(c))))
    })
}

/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pl_rational_cyclic_class(
    f: *const PlRational,
    modulus: u64,
    out: *mut PlCyclicClass,
) -> PlStatus {
    guard(|| {
        let c = handle(f)?
            .0
            .cyclic_class(modulus)
            .map_err(|e| (PlStatus::InvalidModulus, e.to_string()))?;
        write_out(out, class_out(c))
    })
}

// ---- bivariate polynomials ----

/// Parses a polynomial in `z` and `w`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pl_bipoly_parse(text: *const c_char, out: *mut *mut PlBiPoly) -> PlStatus {
    guard(|| {
        let p = parse_bi(read_str(text)?).map_err(parse_failure)?;
        write_out(out, Box::into_raw(Box::new(PlBiPoly(p))))
    })
}

/// # Safety
/// `p` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pl_bipoly_free(p: *mut PlBiPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pl_bipoly_to_string(p: *const PlBiPoly) -> *mut c_char {
    p.as_ref()
        .map_or(ptr::null_mut(), |p| to_c_string(p.0.to_string()))
}

/// Even in the sense `P(-z, -w) = P(z, w)`. False for NULL.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pl_bipoly_is_even(p: *const PlBiPoly) -> bool {
    p.as_ref().is_some_and(|p| p.0.is_even())
}

/// `P(z, w) = P(w, z)`. False for NULL.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pl_bipoly_is_symmetric(p: *const PlBiPoly) -> bool {
    p.as_ref().is_some_and(|p| p.0.is_symmetric())
}

/// `P(q(z), r(z))`.
///
/// # Safety
/// All handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pl_bipoly_subst(
    p: *const PlBiPoly,
    q: *const PlPoly,
    r: *const PlPoly,
    out: *mut *mut PlPoly,
) -> PlStatus {
    guard(|| {
        let s = handle(p)?.0.subst_uni(&handle(q)?.0, &handle(r)?.0);
        write_out(out, Box::into_raw(Box::new(PlPoly(s))))
    })
}

// ---- command runner ----

/// Runs a command-line invocation (`argv[0]` is the program name) and
/// returns its exit code. `out` and `err` receive the printed text, to be
/// freed with [`pl_string_free`]; either may be NULL to discard it. Returns
/// -1 when the arguments themselves are invalid.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn pl_run_command(
    argc: c_int,
    argv: *const *const c_char,
    out: *mut *mut c_char,
    err: *mut *mut c_char,
) -> c_int {
    let mut code = -1;
    let status = guard(|| {
        if argv.is_null() || argc < 0 {
            return Err((PlStatus::NullArgument, "null argv".into()));
        }
        let mut args = Vec::with_capacity(argc as usize);
        for i in 0..argc as usize {
            args.push(read_str(*argv.add(i))?.to_string());
        }
        let outcome = dispatch(args);
        code = outcome.code;
        if !out.is_null() {
            out.write(to_c_string(outcome.stdout));
        }
        if !err.is_null() {
            err.write(to_c_string(outcome.stderr));
        }
        Ok(())
    });
    if status == PlStatus::Ok {
        code
    } else {
        -1
    }
}
