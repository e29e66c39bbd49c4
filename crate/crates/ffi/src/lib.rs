//! C ABI over `branchzeta`.
//!
//! Semigroups and cyclotomic products cross the boundary as opaque handles
//! (`BzBranch`, `BzCyclo`) owned by the caller and released with the matching
//! `*_free` function. Every fallible call returns a `BzStatus`; on failure the
//! thread-local message from `bz_last_error` describes the cause. Strings
//! handed out (`char **out`) are NUL-terminated UTF-8 and must be released
//! with `bz_string_free`.

use branchzeta::cli::{cmd_equations, cmd_lefschetz, Format};
use branchzeta::invariants::{self, Check};
use branchzeta::{analyze, BranchData, CycloProduct, Error};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BzStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    NotCoprime = 4,
    RedundantGenerator = 5,
    OrderViolation = 6,
    NotRepresentable = 7,
    DualLevel = 8,
    OutOfRange = 9,
    Internal = 10,
    Panic = 11,
}

/// Invariants available through `bz_branch_invariant`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BzInvariant {
    Poincare = 0,
    Orbit = 1,
    ZTilde = 2,
    ZMonodromy = 3,
    EgzRhs = 4,
}

/// Identities available through `bz_branch_verify`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BzCheck {
    Cdg = 0,
    Egz = 1,
    Propjan = 2,
    Lemma1 = 3,
}

/// Opaque validated semigroup.
pub struct BzBranch(BranchData);

/// Opaque product of factors `(1 - T^l)^a`.
pub struct BzCyclo(CycloProduct);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(err: &Error) -> BzStatus {
    match err {
        Error::NotCoprime { .. } => BzStatus::NotCoprime,
        Error::RedundantGenerator { .. } => BzStatus::RedundantGenerator,
        Error::OrderViolation { .. } => BzStatus::OrderViolation,
        Error::NotRepresentable { .. } => BzStatus::NotRepresentable,
        Error::DualLevel { .. } => BzStatus::DualLevel,
        Error::IndexOutOfRange { .. } | Error::SmoothBranch => BzStatus::OutOfRange,
        Error::Internal(_) => BzStatus::Internal,
        _ => BzStatus::InvalidInput,
    }
}

/// Runs `f`, recording errors and converting panics.
fn guard<F>(f: F) -> BzStatus
where
    F: FnOnce() -> Result<(), (BzStatus, String)>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            BzStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside branchzeta");
            BzStatus::Panic
        }
    }
}

fn lib_err(err: Error) -> (BzStatus, String) {
    (status_of(&err), err.to_string())
}

fn null(what: &str) -> (BzStatus, String) {
    (BzStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (BzStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), (BzStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (BzStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|_| (BzStatus::Internal, "interior NUL in output".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (BzStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (BzStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// Message describing the last failure on this thread (empty after success).
/// The pointer stays valid until the next call into the library on the same
/// thread.
#[no_mangle]
pub extern "C" fn bz_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn bz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Validates the generators `gens[0..len]` and returns a branch handle.
///
/// # Safety
/// `gens` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bz_branch_new(
    gens: *const u64,
    len: usize,
    out: *mut *mut BzBranch,
) -> BzStatus {
    guard(|| {
        if gens.is_null() && len > 0 {
            return Err(null("gens"));
        }
        let slice = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(gens, len)
        };
        let bd = analyze(slice).map_err(lib_err)?;
        put(out, BzBranch(bd))
    })
}

/// # Safety
/// `branch` must be null or a handle from `bz_branch_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bz_branch_free(branch: *mut BzBranch) {
    if !branch.is_null() {
        drop(Box::from_raw(branch));
    }
}

/// Number of characteristic pairs, 0 for a null handle.
///
/// # Safety
/// `branch` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bz_branch_g(branch: *const BzBranch) -> usize {
    branch.as_ref().map_or(0, |b| b.0.g())
}

/// # Safety
/// `branch` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bz_branch_conductor(branch: *const BzBranch) -> u64 {
    branch.as_ref().map_or(0, |b| b.0.conductor())
}

/// # Safety
/// `branch` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bz_branch_delta(branch: *const BzBranch) -> u64 {
    branch.as_ref().map_or(0, |b| b.0.delta())
}

/// Structure constants as JSON (`beta`, `e`, `n`, `d`, `L`, `conductor`, `delta`).
///
/// # Safety
/// `branch` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bz_branch_to_json(
    branch: *const BzBranch,
    out: *mut *mut c_char,
) -> BzStatus {
    guard(|| {
        let b = deref(branch, "branch")?;
        put_string(out, to_json(&b.0))
    })
}

/// # Safety
/// `branch` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bz_branch_invariant(
    branch: *const BzBranch,
    which: BzInvariant,
    out: *mut *mut BzCyclo,
) -> BzStatus {
    guard(|| {
        let bd = &deref(branch, "branch")?.0;
        let p = match which {
            BzInvariant::Poincare => invariants::poincare(bd),
            BzInvariant::Orbit => invariants::orbit_invariant(bd),
            BzInvariant::ZTilde => invariants::z_tilde(bd).map_err(lib_err)?,
            BzInvariant::ZMonodromy => invariants::z_monodromy(bd).map_err(lib_err)?,
            BzInvariant::EgzRhs => invariants::egz_rhs(bd).map_err(lib_err)?,
        };
        put(out, BzCyclo(p))
    })
}

/// Relative zeta function `zeta~_j`, `1 <= j <= g`.
///
/// # Safety
/// `branch` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bz_branch_zeta_tilde(
    branch: *const BzBranch,
    j: usize,
    out: *mut *mut BzCyclo,
) -> BzStatus {
    guard(|| {
        let bd = &deref(branch, "branch")?.0;
        put(
            out,
            BzCyclo(invariants::zeta_tilde(bd, j).map_err(lib_err)?),
        )
    })
}

/// Saito dual of `zeta~_j` at the level `d_j`, `1 <= j <= g`.
///
/// # Safety
/// `branch` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bz_branch_dual(
    branch: *const BzBranch,
    j: usize,
    out: *mut *mut BzCyclo,
) -> BzStatus {
    guard(|| {
        let bd = &deref(branch, "branch")?.0;
        put(
            out,
            BzCyclo(invariants::dual_at_full_level(bd, j).map_err(lib_err)?),
        )
    })
}

/// Runs one identity check; `*holds` receives the verdict.
///
/// # Safety
/// `branch` must be a live handle; `holds` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bz_branch_verify(
    branch: *const BzBranch,
    check: BzCheck,
    holds: *mut bool,
) -> BzStatus {
    guard(|| {
        let bd = &deref(branch, "branch")?.0;
        if holds.is_null() {
            return Err(null("holds"));
        }
        let check = match check {
            BzCheck::Cdg => Check::Cdg,
            BzCheck::Egz => Check::Egz,
            BzCheck::Propjan => Check::Propjan,
            BzCheck::Lemma1 => Check::Lemma1,
        };
        *holds = check.run(bd).map_err(lib_err)?.holds;
        Ok(())
    })
}

/// Monomial equations and eliminated plane-curve equation, in the JSON shape
/// of the `equations` CLI command. Needs `g >= 1`.
///
/// # Safety
/// `branch` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bz_branch_equations_json(
    branch: *const BzBranch,
    out: *mut *mut c_char,
) -> BzStatus {
    guard(|| {
        let bd = &deref(branch, "branch")?.0;
        let gens: Vec<String> = bd.beta().iter().map(u64::to_string).collect();
        let outcome = cmd_equations(&gens.join(","), Format::Json).map_err(lib_err)?;
        put_string(out, outcome.stdout)
    })
}

/// The constant product 1.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bz_cyclo_one(out: *mut *mut BzCyclo) -> BzStatus {
    guard(|| put(out, BzCyclo(CycloProduct::one())))
}

/// `(1 - T^l)^a`; `l` must be at least 1.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bz_cyclo_factor(l: u64, a: i64, out: *mut *mut BzCyclo) -> BzStatus {
    guard(|| put(out, BzCyclo(CycloProduct::factor(l, a).map_err(lib_err)?)))
}

/// Parses `{"factors": [[l, a], ...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bz_cyclo_from_json(
    json: *const c_char,
    out: *mut *mut BzCyclo,
) -> BzStatus {
    guard(|| {
        let s = read_str(json, "json")?;
        let p: CycloProduct = serde_json::from_str(s)
            .map_err(|e| (BzStatus::InvalidInput, format!("product json: {e}")))?;
        put(out, BzCyclo(p))
    })
}

/// # Safety
/// `cyclo` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bz_cyclo_free(cyclo: *mut BzCyclo) {
    if !cyclo.is_null() {
        drop(Box::from_raw(cyclo));
    }
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bz_cyclo_mul(
    a: *const BzCyclo,
    b: *const BzCyclo,
    out: *mut *mut BzCyclo,
) -> BzStatus {
    guard(|| {
        let (a, b) = (deref(a, "a")?, deref(b, "b")?);
        put(out, BzCyclo(a.0.mul(&b.0)))
    })
}

/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bz_cyclo_inv(a: *const BzCyclo, out: *mut *mut BzCyclo) -> BzStatus {
    guard(|| put(out, BzCyclo(deref(a, "a")?.0.inv())))
}

/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bz_cyclo_pow(
    a: *const BzCyclo,
    k: i64,
    out: *mut *mut BzCyclo,
) -> BzStatus {
    guard(|| put(out, BzCyclo(deref(a, "a")?.0.pow(k))))
}

/// `T -> T^k`, `k >= 1`.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bz_cyclo_substitute(
    a: *const BzCyclo,
    k: u64,
    out: *mut *mut BzCyclo,
) -> BzStatus {
    guard(|| {
        let p = deref(a, "a")?.0.substitute(k).map_err(lib_err)?;
        put(out, BzCyclo(p))
    })
}

/// Saito dual at level `d`; fails with `BZ_STATUS_DUAL_LEVEL` when some cycle
/// length does not divide `d`.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bz_cyclo_saito_dual(
    a: *const BzCyclo,
    d: u64,
    out: *mut *mut BzCyclo,
) -> BzStatus {
    guard(|| {
        let p = deref(a, "a")?.0.saito_dual(d).map_err(lib_err)?;
        put(out, BzCyclo(p))
    })
}

/// Structural equality; false if either handle is null.
///
/// # Safety
/// `a`, `b` must be null or live handles.
#[no_mangle]
pub unsafe extern "C" fn bz_cyclo_equal(a: *const BzCyclo, b: *const BzCyclo) -> bool {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => a.0 == b.0,
        _ => false,
    }
}

/// `{"factors": [[l, a], ...]}` with `l` ascending.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bz_cyclo_to_json(a: *const BzCyclo, out: *mut *mut c_char) -> BzStatus {
    guard(|| put_string(out, to_json(&deref(a, "a")?.0)))
}

/// Human-readable form such as `(1-T^6)/((1-T^2)(1-T^3))`.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bz_cyclo_to_string(a: *const BzCyclo, out: *mut *mut c_char) -> BzStatus {
    guard(|| put_string(out, deref(a, "a")?.0.to_string()))
}

/// Expansion through `T^order` as `{"order": N, "coeffs": ["1", ...]}`.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bz_cyclo_expand_json(
    a: *const BzCyclo,
    order: usize,
    out: *mut *mut c_char,
) -> BzStatus {
    guard(|| put_string(out, to_json(&deref(a, "a")?.0.expand(order))))
}

/// Zeta function from Lefschetz numbers, homology maps or point counts; same
/// JSON input and output as the `lefschetz` CLI command.
///
/// # Safety
/// `input` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bz_lefschetz_json(
    input: *const c_char,
    out: *mut *mut c_char,
) -> BzStatus {
    guard(|| {
        let s = read_str(input, "input")?;
        let outcome = cmd_lefschetz(s).map_err(lib_err)?;
        put_string(out, outcome.stdout)
    })
}
