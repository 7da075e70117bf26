//! C ABI for the `chaincalc` library.
//!
//! Conventions:
//! - Every fallible call returns a [`CcStatus`]; results travel through
//!   out-parameters that are written only on `CcStatus_Ok`.
//! - Handles (`CcExpr`, `CcSeries`) are opaque and owned by the caller once
//!   returned; release them with the matching `*_free` function exactly once.
//! - Strings returned through `char **` out-parameters are NUL-terminated,
//!   allocated by this library, and must be released with [`cc_string_free`].
//!   Exact integers and rationals are returned as decimal strings because
//!   they routinely exceed any fixed-width C type.
//! - After any non-`Ok` status, [`cc_last_error_message`] returns a
//!   description of the failure for the current thread.
//! - Panics never unwind across the boundary; they are caught and reported
//!   as `CcStatus_InternalPanic`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use libc::c_char;

use chaincalc::hstar::chain_to_hstar;
use chaincalc::identities::check_by_name;
use chaincalc::inverse::solve;
use chaincalc::oracle::IdealLattice;
use chaincalc::poset::PosetExpr;
use chaincalc::probability::{
    format_rational, nhg_expectation, nhg_normalization, nhg_pmf, NHGParams,
};
use chaincalc::series::ChainSeries;
use chaincalc::CalcError;

/// Result of every fallible call in this interface.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CcStatus {
    /// Success; out-parameters are valid.
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// An expression or series failed to parse.
    ParseError = 3,
    /// An argument was outside the documented domain.
    InvalidArgument = 4,
    /// The input exceeded a hard size limit.
    SizeLimit = 5,
    /// The target series cannot come from any word of the searched family.
    Infeasible = 6,
    /// The series is not representable in the requested form.
    NotRepresentable = 7,
    /// The search exceeded its candidate cap.
    SearchCap = 8,
    /// An internal invariant failed; the library state is still consistent.
    InternalPanic = 9,
}

/// Opaque handle to a parsed poset expression.
pub struct CcExpr {
    inner: PosetExpr,
}

/// Opaque handle to an exact chain-basis series.
pub struct CcSeries {
    inner: ChainSeries,
}

/// Structural invariants of a poset expression.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct CcInvariants {
    /// Number of points.
    pub n_points: u32,
    /// Length of the longest chain.
    pub max_chain: u32,
    /// First Betti number of the Hasse diagram.
    pub betti: u32,
    /// Number of connected components.
    pub components: u32,
    /// Concatenation nodes in the desugared word.
    pub mu_count: u32,
    /// Handle-attachment nodes in the desugared word.
    pub dee_count: u32,
    /// Leaf points of the desugared word.
    pub leaf_count: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<Vec<u8>>) {
    let stored = CString::new(message).unwrap_or_else(|_| CString::new("invalid error").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(stored));
}

fn status_for(err: &CalcError) -> CcStatus {
    match err {
        CalcError::Syntax { .. } => CcStatus::ParseError,
        CalcError::InvalidSize { .. }
        | CalcError::CompositionMismatch { .. }
        | CalcError::Domain(_) => CcStatus::InvalidArgument,
        CalcError::SizeLimit { .. } => CcStatus::SizeLimit,
        CalcError::Infeasible { .. } => CcStatus::Infeasible,
        CalcError::NotRepresentable { .. } => CcStatus::NotRepresentable,
        CalcError::SearchCap { .. } => CcStatus::SearchCap,
    }
}

fn fail(err: CalcError) -> CcStatus {
    let status = status_for(&err);
    set_error(err.to_string());
    status
}

/// Runs `body` with panics converted to `InternalPanic`.
fn guarded(body: impl FnOnce() -> CcStatus) -> CcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("internal panic: {message}"));
            CcStatus::InternalPanic
        }
    }
}

/// Reads a required UTF-8 string argument.
///
/// # Safety
/// `ptr` must be NULL or a valid NUL-terminated string.
unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, CcStatus> {
    if ptr.is_null() {
        set_error("string argument is NULL");
        return Err(CcStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        CcStatus::InvalidUtf8
    })
}

fn write_string(out: *mut *mut c_char, text: String) -> CcStatus {
    match CString::new(text) {
        Ok(s) => {
            unsafe { *out = s.into_raw() };
            CcStatus::Ok
        }
        Err(_) => {
            set_error("result contained an interior NUL byte");
            CcStatus::InternalPanic
        }
    }
}

/// Returns the error message for the most recent non-`Ok` status on this
/// thread, or NULL when no error has occurred. The caller owns the returned
/// string and must release it with [`cc_string_free`].
#[no_mangle]
pub extern "C" fn cc_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|s| s.clone().into_raw())
            .unwrap_or(std::ptr::null_mut())
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a pointer previously returned by a `chaincalc`
/// function and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a poset expression such as `"d(mu(1,c2))"` into a new handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_expr_parse(text: *const c_char, out: *mut *mut CcExpr) -> CcStatus {
    guarded(|| {
        if out.is_null() {
            set_error("out pointer is NULL");
            return CcStatus::NullPointer;
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match text.parse::<PosetExpr>() {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(CcExpr { inner }));
                CcStatus::Ok
            }
            Err(err) => fail(err),
        }
    })
}

/// Releases an expression handle. NULL is ignored.
///
/// # Safety
/// `expr` must be NULL or a handle from [`cc_expr_parse`], freed exactly once.
#[no_mangle]
pub unsafe extern "C" fn cc_expr_free(expr: *mut CcExpr) {
    if !expr.is_null() {
        drop(Box::from_raw(expr));
    }
}

/// Writes the canonical text of an expression.
///
/// # Safety
/// `expr` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_expr_to_string(expr: *const CcExpr, out: *mut *mut c_char) -> CcStatus {
    guarded(|| {
        if expr.is_null() || out.is_null() {
            set_error("argument is NULL");
            return CcStatus::NullPointer;
        }
        write_string(out, (*expr).inner.to_string())
    })
}

/// Evaluates the strict-map order series of an expression into a new
/// series handle.
///
/// # Safety
/// `expr` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_expr_eval(expr: *const CcExpr, out: *mut *mut CcSeries) -> CcStatus {
    guarded(|| {
        if expr.is_null() || out.is_null() {
            set_error("argument is NULL");
            return CcStatus::NullPointer;
        }
        let inner = (*expr).inner.eval_strict();
        *out = Box::into_raw(Box::new(CcSeries { inner }));
        CcStatus::Ok
    })
}

/// Fills `out` with the structural invariants of an expression.
///
/// # Safety
/// `expr` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_expr_invariants(
    expr: *const CcExpr,
    out: *mut CcInvariants,
) -> CcStatus {
    guarded(|| {
        if expr.is_null() || out.is_null() {
            set_error("argument is NULL");
            return CcStatus::NullPointer;
        }
        let inv = (*expr).inner.invariants();
        *out = CcInvariants {
            n_points: inv.n_points,
            max_chain: inv.max_chain,
            betti: inv.betti,
            components: inv.components,
            mu_count: inv.mu_count,
            dee_count: inv.dee_count,
            leaf_count: inv.leaf_count,
        };
        CcStatus::Ok
    })
}

/// Counts maps to chains with the brute-force ideal-lattice oracle,
/// independent of the chain-basis algebra. Writes the counts for
/// n = 0..n_max as a comma-separated decimal string.
///
/// # Safety
/// `expr` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_expr_oracle_counts(
    expr: *const CcExpr,
    n_max: u32,
    strict: bool,
    out: *mut *mut c_char,
) -> CcStatus {
    guarded(|| {
        if expr.is_null() || out.is_null() {
            set_error("argument is NULL");
            return CcStatus::NullPointer;
        }
        let lattice = match IdealLattice::new(&(*expr).inner.hasse()) {
            Ok(l) => l,
            Err(err) => return fail(err),
        };
        let counts = if strict {
            lattice.counts_strict(n_max)
        } else {
            lattice.counts_nonstrict(n_max)
        };
        write_string(out, join_decimal(counts.iter()))
    })
}

/// Parses a chain-basis series such as `"3*z[6] + 4*z[7]"`.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_series_parse(text: *const c_char, out: *mut *mut CcSeries) -> CcStatus {
    guarded(|| {
        if out.is_null() {
            set_error("out pointer is NULL");
            return CcStatus::NullPointer;
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match text.parse::<ChainSeries>() {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(CcSeries { inner }));
                CcStatus::Ok
            }
            Err(err) => fail(err),
        }
    })
}

/// Releases a series handle. NULL is ignored.
///
/// # Safety
/// `series` must be NULL or a live series handle, freed exactly once.
#[no_mangle]
pub unsafe extern "C" fn cc_series_free(series: *mut CcSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// Writes the canonical text of a series, e.g. `"1*z[3] + 2*z[4]"`.
///
/// # Safety
/// `series` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_series_to_string(
    series: *const CcSeries,
    out: *mut *mut c_char,
) -> CcStatus {
    guarded(|| {
        if series.is_null() || out.is_null() {
            set_error("argument is NULL");
            return CcStatus::NullPointer;
        }
        write_string(out, (*series).inner.to_string())
    })
}

/// Concatenation product of two series (new handle).
///
/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_series_star(
    a: *const CcSeries,
    b: *const CcSeries,
    out: *mut *mut CcSeries,
) -> CcStatus {
    binary_op(a, b, out, |x, y| x.star(y))
}

/// Disjoint-union (Hadamard) product of two series (new handle).
///
/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_series_hadamard(
    a: *const CcSeries,
    b: *const CcSeries,
    out: *mut *mut CcSeries,
) -> CcStatus {
    binary_op(a, b, out, |x, y| x.hadamard(y))
}

/// Handle-attachment operator applied to a series (new handle).
///
/// # Safety
/// `series` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_series_dee(
    series: *const CcSeries,
    out: *mut *mut CcSeries,
) -> CcStatus {
    guarded(|| {
        if series.is_null() || out.is_null() {
            set_error("argument is NULL");
            return CcStatus::NullPointer;
        }
        let inner = unsafe { &(*series).inner }.dee();
        unsafe { *out = Box::into_raw(Box::new(CcSeries { inner })) };
        CcStatus::Ok
    })
}

/// Writes the number of strict maps to the n-chain for n = 0..n_max as a
/// comma-separated decimal string.
///
/// # Safety
/// `series` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_series_expand(
    series: *const CcSeries,
    n_max: u32,
    out: *mut *mut c_char,
) -> CcStatus {
    guarded(|| {
        if series.is_null() || out.is_null() {
            set_error("argument is NULL");
            return CcStatus::NullPointer;
        }
        write_string(out, join_decimal((*series).inner.expand(n_max).iter()))
    })
}

/// Converts a series of a poset with `size` points to its h*-vector,
/// written as `"(1,2,0,0,0,0)"`.
///
/// # Safety
/// `series` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_series_hstar(
    series: *const CcSeries,
    size: u32,
    out: *mut *mut c_char,
) -> CcStatus {
    guarded(|| {
        if series.is_null() || out.is_null() {
            set_error("argument is NULL");
            return CcStatus::NullPointer;
        }
        match chain_to_hstar(&(*series).inner, size) {
            Ok(h) => write_string(out, h.to_string()),
            Err(err) => fail(err),
        }
    })
}

/// Searches for all handle words whose series equals the target, up to
/// isomorphism. Writes one line per class, members space-separated; writes
/// an empty string when the target is feasible but unattained.
///
/// # Safety
/// `series` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_series_solve(
    series: *const CcSeries,
    out: *mut *mut c_char,
) -> CcStatus {
    guarded(|| {
        if series.is_null() || out.is_null() {
            set_error("argument is NULL");
            return CcStatus::NullPointer;
        }
        match solve(&(*series).inner) {
            Ok(classes) => {
                let lines: Vec<String> = classes
                    .iter()
                    .map(|class| {
                        class
                            .members
                            .iter()
                            .map(|m| m.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect();
                write_string(out, lines.join("\n"))
            }
            Err(err) => fail(err),
        }
    })
}

/// Runs one named binomial-identity sweep (see the library documentation
/// for the names). Sets `out_pass` and writes the one-line report.
///
/// # Safety
/// `name` must be a valid NUL-terminated string; `out_pass` and
/// `out_report` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn cc_identity_check(
    name: *const c_char,
    perturb: bool,
    out_pass: *mut bool,
    out_report: *mut *mut c_char,
) -> CcStatus {
    guarded(|| {
        if out_pass.is_null() || out_report.is_null() {
            set_error("argument is NULL");
            return CcStatus::NullPointer;
        }
        let name = match read_str(name) {
            Ok(n) => n,
            Err(status) => return status,
        };
        match check_by_name(name, perturb) {
            Some(report) => {
                *out_pass = report.pass;
                write_string(out_report, report.to_string())
            }
            None => {
                set_error(format!("unknown identity name: {name}"));
                CcStatus::InvalidArgument
            }
        }
    })
}

/// Probability of drawing exactly `counts[j]` from group `j` when `draws`
/// items are taken without replacement from groups of the given sizes.
/// The result is an exact rational written as `"num/den"`.
///
/// # Safety
/// `group_sizes` and `counts` must point to `n_groups` readable u64 values;
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_nhg_pmf(
    group_sizes: *const u64,
    n_groups: usize,
    draws: u64,
    counts: *const u64,
    out: *mut *mut c_char,
) -> CcStatus {
    guarded(|| {
        if group_sizes.is_null() || counts.is_null() || out.is_null() {
            set_error("argument is NULL");
            return CcStatus::NullPointer;
        }
        let sizes = std::slice::from_raw_parts(group_sizes, n_groups).to_vec();
        let counts = std::slice::from_raw_parts(counts, n_groups);
        let params = match NHGParams::new(sizes, draws) {
            Ok(p) => p,
            Err(err) => return fail(err),
        };
        match nhg_pmf(&params, counts) {
            Ok(p) => write_string(out, p.to_string()),
            Err(err) => fail(err),
        }
    })
}

/// Sum of all group-count probabilities for the given parameters, written
/// as `"num/den"`; exactly `"1/1"` for every valid input.
///
/// # Safety
/// `group_sizes` must point to `n_groups` readable u64 values; `out` must
/// be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_nhg_normalization(
    group_sizes: *const u64,
    n_groups: usize,
    draws: u64,
    out: *mut *mut c_char,
) -> CcStatus {
    guarded(|| {
        if group_sizes.is_null() || out.is_null() {
            set_error("argument is NULL");
            return CcStatus::NullPointer;
        }
        let sizes = std::slice::from_raw_parts(group_sizes, n_groups).to_vec();
        let params = match NHGParams::new(sizes, draws) {
            Ok(p) => p,
            Err(err) => return fail(err),
        };
        write_string(out, nhg_normalization(&params).to_string())
    })
}

/// Expected number drawn from 1-based group `group`, written as
/// `"num/den"`.
///
/// # Safety
/// `group_sizes` must point to `n_groups` readable u64 values; `out` must
/// be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_nhg_expectation(
    group_sizes: *const u64,
    n_groups: usize,
    draws: u64,
    group: usize,
    out: *mut *mut c_char,
) -> CcStatus {
    guarded(|| {
        if group_sizes.is_null() || out.is_null() {
            set_error("argument is NULL");
            return CcStatus::NullPointer;
        }
        let sizes = std::slice::from_raw_parts(group_sizes, n_groups).to_vec();
        let params = match NHGParams::new(sizes, draws) {
            Ok(p) => p,
            Err(err) => return fail(err),
        };
        match nhg_expectation(&params, group) {
            Ok(value) => write_string(out, format_rational(&value)),
            Err(err) => fail(err),
        }
    })
}

/// Shared body for the binary series operators.
///
/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
unsafe fn binary_op(
    a: *const CcSeries,
    b: *const CcSeries,
    out: *mut *mut CcSeries,
    op: impl Fn(&ChainSeries, &ChainSeries) -> ChainSeries,
) -> CcStatus {
    guarded(|| {
        if a.is_null() || b.is_null() || out.is_null() {
            set_error("argument is NULL");
            return CcStatus::NullPointer;
        }
        let inner = op(unsafe { &(*a).inner }, unsafe { &(*b).inner });
        unsafe { *out = Box::into_raw(Box::new(CcSeries { inner })) };
        CcStatus::Ok
    })
}

fn join_decimal<T: ToString>(values: impl Iterator<Item = T>) -> String {
    values
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;
    use std::ptr;

    unsafe fn take_string(ptr: *mut c_char) -> String {
        assert!(!ptr.is_null());
        let text = CStr::from_ptr(ptr).to_str().unwrap().to_string();
        cc_string_free(ptr);
        text
    }

    #[test]
    fn parse_eval_expand_round_trip() {
        unsafe {
            let text = CString::new("d(c2)").unwrap();
            let mut expr: *mut CcExpr = ptr::null_mut();
            assert_eq!(cc_expr_parse(text.as_ptr(), &mut expr), CcStatus::Ok);

            let mut series: *mut CcSeries = ptr::null_mut();
            assert_eq!(cc_expr_eval(expr, &mut series), CcStatus::Ok);

            let mut printed: *mut c_char = ptr::null_mut();
            assert_eq!(cc_series_to_string(series, &mut printed), CcStatus::Ok);
            assert_eq!(take_string(printed), "2*z[4] + 3*z[5]");

            let mut expanded: *mut c_char = ptr::null_mut();
            assert_eq!(cc_series_expand(series, 4, &mut expanded), CcStatus::Ok);
            assert_eq!(take_string(expanded), "0,0,0,0,2");

            let mut hstar: *mut c_char = ptr::null_mut();
            assert_eq!(cc_series_hstar(series, 5, &mut hstar), CcStatus::Ok);
            assert_eq!(take_string(hstar), "(1,2,0,0,0,0)");

            cc_series_free(series);
            cc_expr_free(expr);
        }
    }

    #[test]
    fn invariants_and_oracle_agree_with_library() {
        unsafe {
            let text = CString::new("d(c2)").unwrap();
            let mut expr: *mut CcExpr = ptr::null_mut();
            assert_eq!(cc_expr_parse(text.as_ptr(), &mut expr), CcStatus::Ok);

            let mut inv = CcInvariants::default();
            assert_eq!(cc_expr_invariants(expr, &mut inv), CcStatus::Ok);
            assert_eq!(inv.n_points, 5);
            assert_eq!(inv.max_chain, 4);
            assert_eq!(inv.betti, 1);

            let mut counts: *mut c_char = ptr::null_mut();
            assert_eq!(
                cc_expr_oracle_counts(expr, 6, true, &mut counts),
                CcStatus::Ok
            );
            assert_eq!(take_string(counts), "0,0,0,0,2,13,48");

            cc_expr_free(expr);
        }
    }

    #[test]
    fn operators_build_new_series() {
        unsafe {
            let text = CString::new("1*z[1]").unwrap();
            let mut z1: *mut CcSeries = ptr::null_mut();
            assert_eq!(cc_series_parse(text.as_ptr(), &mut z1), CcStatus::Ok);

            let mut prod: *mut CcSeries = ptr::null_mut();
            assert_eq!(cc_series_star(z1, z1, &mut prod), CcStatus::Ok);
            let mut printed: *mut c_char = ptr::null_mut();
            assert_eq!(cc_series_to_string(prod, &mut printed), CcStatus::Ok);
            assert_eq!(take_string(printed), "1*z[2]");

            let mut had: *mut CcSeries = ptr::null_mut();
            assert_eq!(cc_series_hadamard(z1, z1, &mut had), CcStatus::Ok);
            assert_eq!(cc_series_to_string(had, &mut printed), CcStatus::Ok);
            assert_eq!(take_string(printed), "1*z[1] + 2*z[2]");

            let mut deed: *mut CcSeries = ptr::null_mut();
            assert_eq!(cc_series_dee(z1, &mut deed), CcStatus::Ok);
            assert_eq!(cc_series_to_string(deed, &mut printed), CcStatus::Ok);
            assert_eq!(take_string(printed), "1*z[3] + 2*z[4]");

            cc_series_free(deed);
            cc_series_free(had);
            cc_series_free(prod);
            cc_series_free(z1);
        }
    }

    #[test]
    fn solve_writes_doppelganger_class() {
        unsafe {
            let text = CString::new("3*z[6] + 4*z[7]").unwrap();
            let mut series: *mut CcSeries = ptr::null_mut();
            assert_eq!(cc_series_parse(text.as_ptr(), &mut series), CcStatus::Ok);

            let mut classes: *mut c_char = ptr::null_mut();
            assert_eq!(cc_series_solve(series, &mut classes), CcStatus::Ok);
            assert_eq!(take_string(classes), "mu(1,d(c3)) mu(d(c3),1)");

            cc_series_free(series);
        }
    }

    #[test]
    fn errors_set_status_and_message() {
        unsafe {
            let text = CString::new("d((").unwrap();
            let mut expr: *mut CcExpr = ptr::null_mut();
            assert_eq!(cc_expr_parse(text.as_ptr(), &mut expr), CcStatus::ParseError);
            assert!(expr.is_null());
            let message = take_string(cc_last_error_message());
            assert!(message.contains("syntax"), "unexpected message: {message}");

            let infeasible = CString::new("2*z[3]").unwrap();
            let mut series: *mut CcSeries = ptr::null_mut();
            assert_eq!(cc_series_parse(infeasible.as_ptr(), &mut series), CcStatus::Ok);
            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(cc_series_solve(series, &mut out), CcStatus::Infeasible);
            cc_series_free(series);

            assert_eq!(
                cc_expr_parse(ptr::null(), &mut expr),
                CcStatus::NullPointer
            );
        }
    }

    #[test]
    fn identity_check_reports_pass_and_perturbation() {
        unsafe {
            let name = CString::new("structural-pc").unwrap();
            let mut pass = false;
            let mut report: *mut c_char = ptr::null_mut();
            assert_eq!(
                cc_identity_check(name.as_ptr(), false, &mut pass, &mut report),
                CcStatus::Ok
            );
            assert!(pass);
            assert!(take_string(report).starts_with("pass structural-pc"));

            assert_eq!(
                cc_identity_check(name.as_ptr(), true, &mut pass, &mut report),
                CcStatus::Ok
            );
            assert!(!pass);
            assert!(take_string(report).starts_with("fail structural-pc"));

            let bogus = CString::new("bogus").unwrap();
            assert_eq!(
                cc_identity_check(bogus.as_ptr(), false, &mut pass, &mut report),
                CcStatus::InvalidArgument
            );
        }
    }

    #[test]
    fn probability_calls_return_exact_rationals() {
        unsafe {
            let sizes = [1u64, 1u64];
            let counts = [1u64, 1u64];
            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(
                cc_nhg_pmf(sizes.as_ptr(), 2, 2, counts.as_ptr(), &mut out),
                CcStatus::Ok
            );
            assert_eq!(take_string(out), "1/3");

            let sizes = [2u64, 3u64];
            assert_eq!(
                cc_nhg_normalization(sizes.as_ptr(), 2, 3, &mut out),
                CcStatus::Ok
            );
            assert_eq!(take_string(out), "1/1");

            assert_eq!(
                cc_nhg_expectation(sizes.as_ptr(), 2, 3, 1, &mut out),
                CcStatus::Ok
            );
            assert_eq!(take_string(out), "6/5");

            assert_eq!(
                cc_nhg_expectation(sizes.as_ptr(), 2, 3, 9, &mut out),
                CcStatus::InvalidArgument
            );
        }
    }
}
