//! C ABI over `bruhat-core`.
//!
//! Systems and elements are opaque handles released with their `_free`
//! functions. Every fallible call returns a [`BhStatus`]; on failure the
//! message is available from [`bh_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use bruhat_core::coxeter::DEFAULT_SIZE_CAP;
use bruhat_core::fiber::certify_interval_sphere;
use bruhat_core::hecke::{bruhat_leq, demazure, sorting_subword, weak_leq};
use bruhat_core::homology::Field;
use bruhat_core::subword::{Classification, SubwordComplex};
use bruhat_core::verify::{parse_groups, verify_groups};
use bruhat_core::{CoxeterSystem, CoxeterType, Element, Error, Word};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BhStatus {
    Ok = 0,
    NullPointer = 1,
    /// Malformed matrix, type name, word or letter.
    InvalidArgument = 2,
    /// Group size, braid closure or face budget exceeded.
    LimitExceeded = 3,
    /// Inputs well formed but outside the operation's domain.
    Precondition = 4,
    /// Output buffer too short; the needed length is still written.
    BufferTooSmall = 5,
    /// Internal panic, caught at the boundary.
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BhClassification {
    Ball = 0,
    Sphere = 1,
}

/// Opaque finite Coxeter system.
pub struct BhSystem(CoxeterSystem);

/// Opaque group element. Only meaningful with the system that made it.
pub struct BhElement(Element);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> BhStatus {
    match err {
        Error::InvalidMatrix(_)
        | Error::UnknownType(_)
        | Error::GeneratorOutOfRange { .. }
        | Error::NotReduced(_)
        | Error::Parse(_) => BhStatus::InvalidArgument,
        Error::SizeCapExceeded { .. } | Error::BraidBudgetExceeded { .. } | Error::FaceBudgetExceeded { .. } => {
            BhStatus::LimitExceeded
        }
        _ => BhStatus::Precondition,
    }
}

enum Fail {
    Null(&'static str),
    Core(Error),
    Buffer(usize),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> BhStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BhStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            BhStatus::NullPointer
        }
        Ok(Err(Fail::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Buffer(needed))) => {
            set_error(format!("buffer too small: {needed} entries needed"));
            BhStatus::BufferTooSmall
        }
        Err(_) => {
            set_error("internal panic".into());
            BhStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Core(Error::Parse(format!("{what} is not UTF-8"))))
}

unsafe fn word_arg(letters: *const u8, len: usize) -> Result<Word, Fail> {
    if len == 0 {
        return Ok(Word::empty());
    }
    if letters.is_null() {
        return Err(Fail::Null("letters"));
    }
    Ok(Word::new(slice::from_raw_parts(letters, len).to_vec()))
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Message of the last failed call on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Named system such as `"A3"`, `"B2"`, `"I2:5"` or `"H3"`.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bh_system_new_named(name: *const c_char, out_system: *mut *mut BhSystem) -> BhStatus {
    guard(|| {
        let out_system = out(out_system, "out_system")?;
        let kind: CoxeterType = str_arg(name, "name")?.parse()?;
        *out_system = boxed(BhSystem(CoxeterSystem::named(kind)?));
        Ok(())
    })
}

/// System from an `n x n` row-major Coxeter matrix, enumerating at most
/// `size_cap` elements (0 picks the default of 50000). Entries below 2 off
/// the diagonal are rejected; an infinite group fails later, at the cap.
///
/// # Safety
/// `entries` must point to `n * n` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bh_system_new_matrix(
    entries: *const u32,
    n: usize,
    size_cap: usize,
    out_system: *mut *mut BhSystem,
) -> BhStatus {
    guard(|| {
        let out_system = out(out_system, "out_system")?;
        if entries.is_null() {
            return Err(Fail::Null("entries"));
        }
        let flat = slice::from_raw_parts(entries, n * n);
        let matrix = flat.chunks(n.max(1)).take(n).map(|r| r.iter().map(|&m| m as usize).collect()).collect();
        *out_system = boxed(BhSystem(CoxeterSystem::new(matrix, if size_cap == 0 { DEFAULT_SIZE_CAP } else { size_cap })?));
        Ok(())
    })
}

/// # Safety
/// `system` must come from a `bh_system_new_*` call, or be null.
#[no_mangle]
pub unsafe extern "C" fn bh_system_free(system: *mut BhSystem) {
    if !system.is_null() {
        drop(Box::from_raw(system));
    }
}

/// Number of generators, or 0 for a null handle.
///
/// # Safety
/// `system` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn bh_system_rank(system: *const BhSystem) -> usize {
    system.as_ref().map_or(0, |s| s.0.rank())
}

/// Number of group elements, by enumeration.
///
/// # Safety
/// `system` must be a live handle; `out_order` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bh_system_order(system: *const BhSystem, out_order: *mut u64) -> BhStatus {
    guard(|| {
        let sys = &deref(system, "system")?.0;
        *out(out_order, "out_order")? = sys.enumerate_group()?.len() as u64;
        Ok(())
    })
}

/// Longest element.
///
/// # Safety
/// `system` must be a live handle; `out_element` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bh_system_longest(system: *const BhSystem, out_element: *mut *mut BhElement) -> BhStatus {
    guard(|| {
        let sys = &deref(system, "system")?.0;
        let out_element = out(out_element, "out_element")?;
        *out_element = boxed(BhElement(sys.longest_element()?));
        Ok(())
    })
}

/// Product of the generators `letters[0..len]` (1-based), in canonical form.
///
/// # Safety
/// `letters` must hold `len` bytes (may be null when `len` is 0).
#[no_mangle]
pub unsafe extern "C" fn bh_element_from_word(
    system: *const BhSystem,
    letters: *const u8,
    len: usize,
    out_element: *mut *mut BhElement,
) -> BhStatus {
    guard(|| {
        let sys = &deref(system, "system")?.0;
        let out_element = out(out_element, "out_element")?;
        *out_element = boxed(BhElement(sys.canonicalize(&word_arg(letters, len)?)?));
        Ok(())
    })
}

/// # Safety
/// `element` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn bh_element_free(element: *mut BhElement) {
    if !element.is_null() {
        drop(Box::from_raw(element));
    }
}

/// Coxeter length, or 0 for a null handle.
///
/// # Safety
/// `element` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn bh_element_length(element: *const BhElement) -> usize {
    element.as_ref().map_or(0, |e| e.0.length())
}

/// Copies the lex-minimal reduced word into `buf`. `out_len` always
/// receives the word length; `BH_STATUS_BUFFER_TOO_SMALL` if `cap` is short.
///
/// # Safety
/// `buf` must hold `cap` bytes (may be null when `cap` is 0).
#[no_mangle]
pub unsafe extern "C" fn bh_element_word(
    element: *const BhElement,
    buf: *mut u8,
    cap: usize,
    out_len: *mut usize,
) -> BhStatus {
    guard(|| {
        let letters = deref(element, "element")?.0.canonical_word().letters();
        *out(out_len, "out_len")? = letters.len();
        if letters.len() > cap {
            return Err(Fail::Buffer(letters.len()));
        }
        if !letters.is_empty() {
            if buf.is_null() {
                return Err(Fail::Null("buf"));
            }
            ptr::copy_nonoverlapping(letters.as_ptr(), buf, letters.len());
        }
        Ok(())
    })
}

/// Whether two handles hold the same group element.
///
/// # Safety
/// Both handles must be live.
#[no_mangle]
pub unsafe extern "C" fn bh_element_equal(a: *const BhElement, b: *const BhElement, out_equal: *mut bool) -> BhStatus {
    guard(|| {
        let eq = deref(a, "a")?.0 == deref(b, "b")?.0;
        *out(out_equal, "out_equal")? = eq;
        Ok(())
    })
}

/// Demazure product of an arbitrary word.
///
/// # Safety
/// As for [`bh_element_from_word`].
#[no_mangle]
pub unsafe extern "C" fn bh_demazure(
    system: *const BhSystem,
    letters: *const u8,
    len: usize,
    out_element: *mut *mut BhElement,
) -> BhStatus {
    guard(|| {
        let sys = &deref(system, "system")?.0;
        let out_element = out(out_element, "out_element")?;
        *out_element = boxed(BhElement(demazure(sys, &word_arg(letters, len)?)?));
        Ok(())
    })
}

/// `u <= v` in Bruhat order.
///
/// # Safety
/// All handles live; `out_leq` writable.
#[no_mangle]
pub unsafe extern "C" fn bh_bruhat_leq(
    system: *const BhSystem,
    u: *const BhElement,
    v: *const BhElement,
    out_leq: *mut bool,
) -> BhStatus {
    guard(|| {
        let leq = bruhat_leq(&deref(system, "system")?.0, &deref(u, "u")?.0, &deref(v, "v")?.0)?;
        *out(out_leq, "out_leq")? = leq;
        Ok(())
    })
}

/// `u <= v` in right weak order.
///
/// # Safety
/// All handles live; `out_leq` writable.
#[no_mangle]
pub unsafe extern "C" fn bh_weak_leq(
    system: *const BhSystem,
    u: *const BhElement,
    v: *const BhElement,
    out_leq: *mut bool,
) -> BhStatus {
    guard(|| {
        let leq = weak_leq(&deref(system, "system")?.0, &deref(u, "u")?.0, &deref(v, "v")?.0)?;
        *out(out_leq, "out_leq")? = leq;
        Ok(())
    })
}

/// Greedy sorting subword of `u` in the reduced word `q`, as a bit mask:
/// bit `k` set for position `k + 1`.
///
/// # Safety
/// `q` must hold `len` bytes; handles live; `out_mask` writable.
#[no_mangle]
pub unsafe extern "C" fn bh_sorting_subword(
    system: *const BhSystem,
    q: *const u8,
    len: usize,
    u: *const BhElement,
    out_mask: *mut u64,
) -> BhStatus {
    guard(|| {
        let set = sorting_subword(&deref(system, "system")?.0, &word_arg(q, len)?, &deref(u, "u")?.0)?;
        *out(out_mask, "out_mask")? = set.mask();
        Ok(())
    })
}

/// Whether the subword complex of `q` and `w` is a ball or a sphere.
/// `BH_STATUS_PRECONDITION` when the complex is void.
///
/// # Safety
/// `q` must hold `len` bytes; handles live; `out_class` writable.
#[no_mangle]
pub unsafe extern "C" fn bh_subword_classify(
    system: *const BhSystem,
    q: *const u8,
    len: usize,
    w: *const BhElement,
    out_class: *mut BhClassification,
) -> BhStatus {
    guard(|| {
        let complex = SubwordComplex::build(&deref(system, "system")?.0, &word_arg(q, len)?, &deref(w, "w")?.0)?;
        *out(out_class, "out_class")? = match complex.classify()? {
            Classification::Ball => BhClassification::Ball,
            Classification::Sphere => BhClassification::Sphere,
        };
        Ok(())
    })
}

/// Whether the open Bruhat interval `(u, w)` has the homology of a sphere
/// of dimension `l(w) - l(u) - 2` over GF(2) and Q. Needs `u < w` with a
/// length gap of at least 2.
///
/// # Safety
/// Handles live; `out_sphere` writable.
#[no_mangle]
pub unsafe extern "C" fn bh_interval_is_sphere(
    system: *const BhSystem,
    u: *const BhElement,
    w: *const BhElement,
    out_sphere: *mut bool,
) -> BhStatus {
    guard(|| {
        let fields = [Field::GF2, Field::Rationals];
        let report = certify_interval_sphere(&deref(system, "system")?.0, &deref(u, "u")?.0, &deref(w, "w")?.0, &fields)?;
        *out(out_sphere, "out_sphere")? = report.passed();
        Ok(())
    })
}

/// Runs the full verification on comma-separated groups such as
/// `"A3,B2,I2:5"` and returns the JSON report. `out_passed` tells whether
/// every check held. Release the string with [`bh_string_free`].
///
/// # Safety
/// `groups` must be nul-terminated; outputs writable.
#[no_mangle]
pub unsafe extern "C" fn bh_verify_json(
    groups: *const c_char,
    seed: u64,
    out_json: *mut *mut c_char,
    out_passed: *mut bool,
) -> BhStatus {
    guard(|| {
        let out_json = out(out_json, "out_json")?;
        let out_passed = out(out_passed, "out_passed")?;
        let report = verify_groups(parse_groups(str_arg(groups, "groups")?)?, seed);
        *out_passed = report.passed();
        *out_json = CString::new(report.to_json()).expect("json has no nul").into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn bh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
