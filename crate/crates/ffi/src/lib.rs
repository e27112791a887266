//! C ABI over `ternary-gf`.
//!
//! Objects cross the boundary as opaque handles created by `tg_*_new` style
//! constructors and released by the matching `tg_*_free`. Every fallible
//! call returns a [`TgStatus`]; on anything other than `TG_STATUS_OK` the
//! message is available from [`tg_last_error_message`] until the next call
//! on the same thread. Big integers and rationals are returned as
//! NUL-terminated decimal strings (`p` or `p/q`) that the caller releases
//! with [`tg_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::c_char;
use ternary_gf::algebra::BiSeries;
use ternary_gf::combinatorics::{self, Triangle};
use ternary_gf::gf::{self, CheckReport, GfContext};
use ternary_gf::trees::{self, TernaryTree};
use ternary_gf::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BoundExceeded = 3,
    ParseError = 4,
    OutOfRange = 5,
    Panic = 6,
}

/// Identity checks available on a [`TgContext`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TgCheck {
    CubicResidual = 0,
    VietaProduct = 1,
    Factorization = 2,
    XiGolden = 3,
}

/// Outcome of an identity check. When `passed` is false, `offending_i` and
/// `offending_j` locate the first coefficient that differs.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TgCheckResult {
    pub passed: bool,
    pub grid_1: usize,
    pub grid_2: usize,
    pub offending_i: usize,
    pub offending_j: usize,
}

/// Opaque table `T(n, k)`.
pub struct TgTriangle(Triangle);

/// Opaque series context on a `(t, U)` grid.
pub struct TgContext {
    ctx: GfContext,
    xi_tau: BiSeries,
}

/// Opaque ternary tree.
pub struct TgTree(TernaryTree);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn status_of(err: &Error) -> TgStatus {
    match err {
        Error::BoundExceeded { .. } => TgStatus::BoundExceeded,
        Error::Parse { .. } => TgStatus::ParseError,
        Error::IndexOutOfRange { .. } => TgStatus::OutOfRange,
        _ => TgStatus::InvalidArgument,
    }
}

/// Runs `f`, translating panics and errors into a status code.
fn guard(f: impl FnOnce() -> Result<(), (TgStatus, String)>) -> TgStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TgStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(msg);
            TgStatus::Panic
        }
    }
}

fn fail(err: Error) -> (TgStatus, String) {
    (status_of(&err), err.to_string())
}

fn null(what: &str) -> (TgStatus, String) {
    (TgStatus::NullPointer, format!("{what} is NULL"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

fn write_out<T>(out: *mut T, value: T) -> Result<(), (TgStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    // SAFETY: checked non-null; the caller guarantees it is writable.
    unsafe { out.write(value) };
    Ok(())
}

fn check_result(r: &CheckReport) -> TgCheckResult {
    let (i, j) = r.first_offending.as_ref().map_or((0, 0), |(i, j, _)| (*i, *j));
    TgCheckResult {
        passed: r.passed,
        grid_1: r.grid.0,
        grid_2: r.grid.1,
        offending_i: i,
        offending_j: j,
    }
}

/// Message describing the last failed call on this thread. The pointer is
/// owned by the library and valid until the next `tg_*` call on the thread.
#[no_mangle]
pub extern "C" fn tg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `T(n, k)` as a decimal string.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_t_closed(n: u64, k: u64, out: *mut *mut c_char) -> TgStatus {
    guard(|| write_out(out, into_c_string(combinatorics::t_closed(n, k).to_string())))
}

/// Closed-form table for rows `0..=nmax`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_triangle_closed(nmax: usize, out: *mut *mut TgTriangle) -> TgStatus {
    guard(|| {
        let tri = combinatorics::triangle_closed(nmax);
        write_out(out, Box::into_raw(Box::new(TgTriangle(tri))))
    })
}

/// Brute-force table by exhaustive enumeration; fails with
/// `TG_STATUS_BOUND_EXCEEDED` above the enumeration bound.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_triangle_oracle(nmax: usize, out: *mut *mut TgTriangle) -> TgStatus {
    guard(|| {
        let tri = trees::triangle_oracle(nmax).map_err(fail)?;
        write_out(out, Box::into_raw(Box::new(TgTriangle(tri))))
    })
}

/// # Safety
/// `tri` must be NULL or a live handle from `tg_triangle_*`.
#[no_mangle]
pub unsafe extern "C" fn tg_triangle_nmax(tri: *const TgTriangle) -> usize {
    tri.as_ref().map_or(0, |t| t.0.nmax())
}

/// Entry `(n, k)` as a decimal string. `k` past the end of row `n` gives
/// zero; `n` beyond the table's `nmax` is out of range.
///
/// # Safety
/// `tri` must be a live handle and `out` valid writable storage.
#[no_mangle]
pub unsafe extern "C" fn tg_triangle_entry(tri: *const TgTriangle, n: usize, k: usize, out: *mut *mut c_char) -> TgStatus {
    guard(|| {
        let tri = tri.as_ref().ok_or_else(|| null("triangle"))?;
        if n > tri.0.nmax() {
            return Err((TgStatus::OutOfRange, format!("row {n} beyond nmax {}", tri.0.nmax())));
        }
        write_out(out, into_c_string(tri.0.get(n, k).to_string()))
    })
}

/// # Safety
/// `a`, `b` must be live handles and `out` valid writable storage.
#[no_mangle]
pub unsafe extern "C" fn tg_triangle_equal(a: *const TgTriangle, b: *const TgTriangle, out: *mut bool) -> TgStatus {
    guard(|| {
        let a = a.as_ref().ok_or_else(|| null("first triangle"))?;
        let b = b.as_ref().ok_or_else(|| null("second triangle"))?;
        write_out(out, a.0 == b.0)
    })
}

/// # Safety
/// `tri` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tg_triangle_free(tri: *mut TgTriangle) {
    if !tri.is_null() {
        drop(Box::from_raw(tri));
    }
}

/// Builds every standard series on the `(t, U)` grid `(order_t, order_u)`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_context_new(order_t: usize, order_u: usize, out: *mut *mut TgContext) -> TgStatus {
    guard(|| {
        if order_t == 0 || order_u == 0 {
            return Err((TgStatus::InvalidArgument, "orders must be positive".into()));
        }
        let ctx = GfContext::new(order_t, order_u);
        let xi_tau = gf::xi_in_tau(ctx.xi_series(), order_t).map_err(fail)?;
        write_out(out, Box::into_raw(Box::new(TgContext { ctx, xi_tau })))
    })
}

/// # Safety
/// `ctx` must be a live handle and `out` valid writable storage.
#[no_mangle]
pub unsafe extern "C" fn tg_context_check(ctx: *const TgContext, check: TgCheck, out: *mut TgCheckResult) -> TgStatus {
    guard(|| {
        let c = ctx.as_ref().ok_or_else(|| null("context"))?;
        let report = match check {
            TgCheck::CubicResidual => c.ctx.cubic_residual_check(),
            TgCheck::VietaProduct => c.ctx.vieta_product_check(),
            TgCheck::Factorization => c.ctx.factorization_check(),
            TgCheck::XiGolden => gf::xi_golden_check(&c.xi_tau),
        };
        write_out(out, check_result(&report))
    })
}

/// Coefficient of `tau^n U^j` in the expansion of `Xi`, as `p/q`.
///
/// # Safety
/// `ctx` must be a live handle and `out` valid writable storage.
#[no_mangle]
pub unsafe extern "C" fn tg_context_xi_coeff(ctx: *const TgContext, n: usize, j: usize, out: *mut *mut c_char) -> TgStatus {
    guard(|| {
        let c = ctx.as_ref().ok_or_else(|| null("context"))?;
        let v = c.xi_tau.coeff(n, j).map_err(fail)?;
        write_out(out, into_c_string(v.to_string()))
    })
}

/// # Safety
/// `ctx` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tg_context_free(ctx: *mut TgContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// `r1` composed with the reversion of the substitution equals the tree
/// generating function on the `(x, u)` grid `(order_x, order_u)`.
///
/// # Safety
/// `out` must be valid writable storage.
#[no_mangle]
pub unsafe extern "C" fn tg_compose_g_check(order_x: usize, order_u: usize, out: *mut TgCheckResult) -> TgStatus {
    guard(|| write_out(out, check_result(&gf::compose_g_check(order_x, order_u))))
}

/// Parses the preorder serialization (`N` node, `.` empty slot).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` valid writable storage.
#[no_mangle]
pub unsafe extern "C" fn tg_tree_parse(text: *const c_char, out: *mut *mut TgTree) -> TgStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("tree string"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| (TgStatus::ParseError, format!("tree string is not UTF-8: {e}")))?;
        let tree = TernaryTree::parse(s).map_err(fail)?;
        write_out(out, Box::into_raw(Box::new(TgTree(tree))))
    })
}

/// The 17-node example tree with three middle edges.
///
/// # Safety
/// `out` must be valid writable storage.
#[no_mangle]
pub unsafe extern "C" fn tg_tree_example(out: *mut *mut TgTree) -> TgStatus {
    guard(|| write_out(out, Box::into_raw(Box::new(TgTree(trees::figure_tree())))))
}

/// # Safety
/// `tree` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tg_tree_nodes(tree: *const TgTree) -> usize {
    tree.as_ref().map_or(0, |t| t.0.nodes())
}

/// # Safety
/// `tree` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tg_tree_middle_edges(tree: *const TgTree) -> usize {
    tree.as_ref().map_or(0, |t| trees::middle_edges(&t.0))
}

/// # Safety
/// `tree` must be a live handle and `out` valid writable storage.
#[no_mangle]
pub unsafe extern "C" fn tg_tree_to_dot(tree: *const TgTree, out: *mut *mut c_char) -> TgStatus {
    guard(|| {
        let t = tree.as_ref().ok_or_else(|| null("tree"))?;
        write_out(out, into_c_string(trees::to_dot(&t.0)))
    })
}

/// # Safety
/// `tree` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tg_tree_free(tree: *mut TgTree) {
    if !tree.is_null() {
        drop(Box::from_raw(tree));
    }
}
