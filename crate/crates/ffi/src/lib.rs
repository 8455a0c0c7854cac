//! C interface to `relcat`.
//!
//! Formulae and arrow terms cross the boundary as opaque handles created by
//! the `*_parse` functions and released with the matching `*_free`. Every
//! fallible function returns a [`RelcatStatus`]; on failure a description is
//! available from [`relcat_last_error_message`] on the same thread. Strings
//! returned through `char **` out-parameters are owned by the caller and must
//! be released with [`relcat_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use relcat::isocalc::{arith_eval, parse_assignment, s_equal, IsoError};
use relcat::pointedsets::{check_equation, default_valuations};
use relcat::relcoherence::{decide_remon_eq, CoherenceError};
use relcat::syntax::{parse_arrow_term, parse_formula, ArrowTerm, Formula};
use relcat::theories::{Equation, EquationError};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelcatStatus {
    Ok = 0,
    /// The call succeeded and the answer is negative. Only returned where documented.
    False = 1,
    ParseError = 2,
    TypeError = 3,
    ModelError = 4,
    OutOfFragment = 5,
    NullPointer = 6,
    InvalidUtf8 = 7,
    InvalidArgument = 8,
    Panic = 9,
}

/// A parsed formula.
pub struct RelcatFormula(Formula);

/// A parsed arrow term.
pub struct RelcatTerm(ArrowTerm);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl ToString) {
    let text = message.to_string().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("interior NULs removed"));
}

type Outcome = Result<RelcatStatus, (RelcatStatus, String)>;

/// Runs `body`, records any error message, and maps panics to [`RelcatStatus::Panic`].
fn guard(body: impl FnOnce() -> Outcome) -> RelcatStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => {
            set_error("");
            status
        }
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            RelcatStatus::Panic
        }
    }
}

unsafe fn input<'a>(s: *const c_char) -> Result<&'a str, (RelcatStatus, String)> {
    if s.is_null() {
        return Err((RelcatStatus::NullPointer, "input string is NULL".into()));
    }
    // SAFETY: the caller passes a NUL-terminated string that outlives the call.
    unsafe { CStr::from_ptr(s) }
        .to_str()
        .map_err(|e| (RelcatStatus::InvalidUtf8, e.to_string()))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, (RelcatStatus, String)> {
    // SAFETY: non-NULL handles come from this library and are live.
    unsafe { p.as_ref() }
        .ok_or_else(|| (RelcatStatus::NullPointer, format!("{what} handle is NULL")))
}

unsafe fn store<T>(out: *mut T, value: T) -> Result<(), (RelcatStatus, String)> {
    if out.is_null() {
        return Err((RelcatStatus::NullPointer, "output pointer is NULL".into()));
    }
    // SAFETY: checked non-NULL; the caller provides writable storage.
    unsafe { out.write(value) };
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("interior NULs removed")
        .into_raw()
}

fn parse_failure(e: impl ToString) -> (RelcatStatus, String) {
    (RelcatStatus::ParseError, e.to_string())
}

fn iso_failure(e: IsoError) -> (RelcatStatus, String) {
    let status = match e {
        IsoError::NotInFragment(_) => RelcatStatus::OutOfFragment,
        IsoError::Assignment(_) | IsoError::UnboundLetter(_) => RelcatStatus::InvalidArgument,
        IsoError::TooLarge(_) => RelcatStatus::ModelError,
        IsoError::DepthCap { .. } | IsoError::Workers(_) => RelcatStatus::InvalidArgument,
    };
    (status, e.to_string())
}

/// Parses `text` into a new formula handle stored in `*out`.
///
/// # Safety
/// `text` must be NULL or a NUL-terminated string; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn relcat_formula_parse(
    text: *const c_char,
    out: *mut *mut RelcatFormula,
) -> RelcatStatus {
    guard(|| unsafe {
        let f = parse_formula(input(text)?).map_err(parse_failure)?;
        store(out, Box::into_raw(Box::new(RelcatFormula(f))))?;
        Ok(RelcatStatus::Ok)
    })
}

/// Releases a formula handle. NULL is ignored.
///
/// # Safety
/// `formula` must be NULL or a handle from [`relcat_formula_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn relcat_formula_free(formula: *mut RelcatFormula) {
    if !formula.is_null() {
        // SAFETY: ownership returns to Rust exactly once.
        drop(unsafe { Box::from_raw(formula) });
    }
}

/// Prints a formula in surface syntax.
///
/// # Safety
/// `formula` must be a live handle or NULL; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn relcat_formula_to_string(
    formula: *const RelcatFormula,
    out: *mut *mut c_char,
) -> RelcatStatus {
    guard(|| unsafe {
        let f = handle(formula, "formula")?;
        store(out, owned_string(f.0.to_string()))?;
        Ok(RelcatStatus::Ok)
    })
}

/// Parses `text` into a new arrow-term handle stored in `*out`. Typing is not checked here.
///
/// # Safety
/// As [`relcat_formula_parse`].
#[no_mangle]
pub unsafe extern "C" fn relcat_term_parse(
    text: *const c_char,
    out: *mut *mut RelcatTerm,
) -> RelcatStatus {
    guard(|| unsafe {
        let t = parse_arrow_term(input(text)?).map_err(parse_failure)?;
        store(out, Box::into_raw(Box::new(RelcatTerm(t))))?;
        Ok(RelcatStatus::Ok)
    })
}

/// Releases a term handle. NULL is ignored.
///
/// # Safety
/// `term` must be NULL or a handle from [`relcat_term_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn relcat_term_free(term: *mut RelcatTerm) {
    if !term.is_null() {
        // SAFETY: ownership returns to Rust exactly once.
        drop(unsafe { Box::from_raw(term) });
    }
}

/// Prints a term in surface syntax.
///
/// # Safety
/// `term` must be a live handle or NULL; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn relcat_term_to_string(
    term: *const RelcatTerm,
    out: *mut *mut c_char,
) -> RelcatStatus {
    guard(|| unsafe {
        let t = handle(term, "term")?;
        store(out, owned_string(t.0.to_string()))?;
        Ok(RelcatStatus::Ok)
    })
}

/// Infers the type of a term and prints it as `A ⊢ B`.
///
/// # Safety
/// As [`relcat_term_to_string`].
#[no_mangle]
pub unsafe extern "C" fn relcat_term_type(
    term: *const RelcatTerm,
    out: *mut *mut c_char,
) -> RelcatStatus {
    guard(|| unsafe {
        let t = handle(term, "term")?;
        let ty =
            t.0.infer_type()
                .map_err(|e| (RelcatStatus::TypeError, e.to_string()))?;
        store(out, owned_string(ty.to_string()))?;
        Ok(RelcatStatus::Ok)
    })
}

/// Decides equality in the calculus S; the answer goes to `*equal`.
///
/// # Safety
/// Handles must be live or NULL; `equal` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn relcat_s_equal(
    lhs: *const RelcatFormula,
    rhs: *const RelcatFormula,
    equal: *mut bool,
) -> RelcatStatus {
    guard(|| unsafe {
        let (a, b) = (handle(lhs, "formula")?, handle(rhs, "formula")?);
        store(equal, s_equal(&a.0, &b.0).map_err(iso_failure)?)?;
        Ok(RelcatStatus::Ok)
    })
}

/// Evaluates a formula arithmetically under `assignment` (`p=2,q=3`) and
/// writes the value in decimal to `*out`.
///
/// # Safety
/// `formula` must be a live handle or NULL; `assignment` NULL or NUL-terminated; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn relcat_arith_eval(
    formula: *const RelcatFormula,
    assignment: *const c_char,
    out: *mut *mut c_char,
) -> RelcatStatus {
    guard(|| unsafe {
        let f = handle(formula, "formula")?;
        let sigma = parse_assignment(input(assignment)?).map_err(iso_failure)?;
        let v = arith_eval(&f.0, &sigma).map_err(iso_failure)?;
        store(out, owned_string(v.to_string()))?;
        Ok(RelcatStatus::Ok)
    })
}

/// Decides equality of two terms in the free relevant monoidal category.
/// Terms of different types are unequal.
///
/// # Safety
/// Handles must be live or NULL; `equal` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn relcat_remon_equal(
    lhs: *const RelcatTerm,
    rhs: *const RelcatTerm,
    equal: *mut bool,
) -> RelcatStatus {
    guard(|| unsafe {
        let (f, g) = (handle(lhs, "term")?, handle(rhs, "term")?);
        let verdict = decide_remon_eq(&f.0, &g.0).map_err(|e| match e {
            CoherenceError::OutOfFragment(_) => (RelcatStatus::OutOfFragment, e.to_string()),
            CoherenceError::Type(_) => (RelcatStatus::TypeError, e.to_string()),
        })?;
        store(equal, verdict.is_equal())?;
        Ok(RelcatStatus::Ok)
    })
}

/// Checks `lhs = rhs` in finite pointed sets under every assignment of sizes
/// 1 to 3 to the letters (at most 27). Returns [`RelcatStatus::Ok`] when it
/// holds and [`RelcatStatus::False`] when a counterexample exists.
///
/// # Safety
/// Handles must be live or NULL.
#[no_mangle]
pub unsafe extern "C" fn relcat_check_equation(
    lhs: *const RelcatTerm,
    rhs: *const RelcatTerm,
) -> RelcatStatus {
    guard(|| unsafe {
        let (f, g) = (handle(lhs, "term")?, handle(rhs, "term")?);
        let eq = Equation::new(f.0.clone(), g.0.clone())
            .map_err(|e: EquationError| (RelcatStatus::TypeError, e.to_string()))?;
        let verdict = check_equation(&eq, &default_valuations(&eq.letters()))
            .map_err(|e| (RelcatStatus::ModelError, e.to_string()))?;
        if verdict.holds() {
            Ok(RelcatStatus::Ok)
        } else {
            Err((RelcatStatus::False, format!("counterexample: {verdict:?}")))
        }
    })
}

/// Message describing the last failed call on this thread; empty after a
/// success. Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn relcat_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn relcat_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: the string was allocated by `CString::into_raw`.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// The library version, as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn relcat_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}
