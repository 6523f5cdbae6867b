//! C ABI over the `quantile-welfare` solvers.
//!
//! Instances and reports are opaque heap handles released with their `_free`
//! function. Every fallible call returns a [`QwStatus`]; on failure the
//! message is available from [`qw_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use quantile_welfare::io::InstanceFile;
use quantile_welfare::oracle::{opt_welfare, EnumerationBudget};
use quantile_welfare::{solve, Algorithm, Allocation, Error, Instance, Kind, Objective, Quantile};

pub const QW_KIND_GOODS: u32 = 0;
pub const QW_KIND_CHORES: u32 = 1;

pub const QW_OBJECTIVE_USW: u32 = 0;
pub const QW_OBJECTIVE_ESW: u32 = 1;
pub const QW_OBJECTIVE_USC: u32 = 2;
pub const QW_OBJECTIVE_ESC: u32 = 3;

/// Status codes; 1 and 2 match the exit codes of the `qwelfare` binary.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QwStatus {
    Ok = 0,
    /// Well-formed request outside what the solvers handle.
    Unsupported = 1,
    /// Malformed instance, allocation or argument.
    Invalid = 2,
    NullPointer = 3,
    /// A Rust panic was caught at the boundary.
    Panic = 4,
}

pub struct QwInstance {
    inner: Instance,
}

pub struct QwReport {
    owner: Vec<usize>,
    welfare: i64,
    feasible: bool,
    algorithm: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let text = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

enum Fail {
    Status(QwStatus, String),
    Solver(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Solver(e)
    }
}

fn status_of(e: &Error) -> QwStatus {
    match e {
        Error::IntractableQuantile(_)
        | Error::Unsupported(_)
        | Error::BudgetExceeded { .. }
        | Error::KindMismatch { .. }
        | Error::HeterogeneousQuantiles(_)
        | Error::QuantileMismatch { .. }
        | Error::NoOptimisticAgent
        | Error::TooFewAgents { .. }
        | Error::BoundViolation { .. } => QwStatus::Unsupported,
        _ => QwStatus::Invalid,
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            QwStatus::Ok
        }
        Ok(Err(Fail::Status(status, msg))) => {
            set_error(&msg);
            status
        }
        Ok(Err(Fail::Solver(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("panic in qwelfare");
            QwStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail::Status(QwStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: String) -> Fail {
    Fail::Status(QwStatus::Invalid, msg)
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| invalid(format!("{what} is not UTF-8")))
}

fn objective(code: u32) -> Result<Objective, Fail> {
    match code {
        QW_OBJECTIVE_USW => Ok(Objective::Usw),
        QW_OBJECTIVE_ESW => Ok(Objective::Esw),
        QW_OBJECTIVE_USC => Ok(Objective::Usc),
        QW_OBJECTIVE_ESC => Ok(Objective::Esc),
        _ => Err(invalid(format!("unknown objective code {code}"))),
    }
}

fn report(owner: Vec<usize>, welfare: i64, feasible: bool, algorithm: &str, out: *mut *mut QwReport) {
    let boxed = Box::new(QwReport {
        owner,
        welfare,
        feasible,
        algorithm: CString::new(algorithm).unwrap_or_default(),
    });
    unsafe { *out = Box::into_raw(boxed) };
}

/// Message of the last failed call on this thread, or an empty string.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn qw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses an instance from its JSON file format.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qw_instance_from_json(json: *const c_char, out: *mut *mut QwInstance) -> QwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let inner = InstanceFile::parse(text(json, "json")?)?;
        *out = Box::into_raw(Box::new(QwInstance { inner }));
        Ok(())
    })
}

/// Builds an instance from row-major `values` (`agents * items` entries) and
/// per-agent quantiles `tau_num[i] / tau_den[i]`.
///
/// # Safety
/// The arrays must hold the stated number of elements and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qw_instance_new(
    kind: u32,
    agents: usize,
    items: usize,
    tau_num: *const u32,
    tau_den: *const u32,
    values: *const u32,
    out: *mut *mut QwInstance,
) -> QwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let kind = match kind {
            QW_KIND_GOODS => Kind::Goods,
            QW_KIND_CHORES => Kind::Chores,
            _ => return Err(invalid(format!("unknown kind code {kind}"))),
        };
        let cells = agents
            .checked_mul(items)
            .ok_or_else(|| invalid("agents * items overflows".into()))?;
        let nums = slice(tau_num, agents, "tau_num")?;
        let dens = slice(tau_den, agents, "tau_den")?;
        let values = slice(values, cells, "values")?;
        let quantiles = nums
            .iter()
            .zip(dens)
            .map(|(&p, &q)| Quantile::new(p, q))
            .collect::<Result<Vec<_>, _>>()?;
        let rows = if items == 0 {
            vec![Vec::new(); agents]
        } else {
            values.chunks(items).map(<[u32]>::to_vec).collect()
        };
        let inner = Instance::new(kind, quantiles, rows)?;
        *out = Box::into_raw(Box::new(QwInstance { inner }));
        Ok(())
    })
}

/// # Safety
/// `instance` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qw_instance_free(instance: *mut QwInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Number of agents, or 0 for a null handle.
///
/// # Safety
/// `instance` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qw_instance_agents(instance: *const QwInstance) -> usize {
    instance.as_ref().map_or(0, |i| i.inner.agents())
}

/// Number of items, or 0 for a null handle.
///
/// # Safety
/// `instance` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qw_instance_items(instance: *const QwInstance) -> usize {
    instance.as_ref().map_or(0, |i| i.inner.items())
}

/// Runs a solver. `algorithm` is a solver name such as `"greedy"`; null means `"auto"`.
///
/// # Safety
/// `instance` must be a live handle, `algorithm` null or NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qw_solve(
    instance: *const QwInstance,
    objective_code: u32,
    balanced: bool,
    algorithm: *const c_char,
    out: *mut *mut QwReport,
) -> QwStatus {
    guard(|| {
        let instance = deref(instance, "instance")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let algorithm: Algorithm = if algorithm.is_null() {
            Algorithm::Auto
        } else {
            text(algorithm, "algorithm")?.parse()?
        };
        let r = solve(&instance.inner, objective(objective_code)?, balanced, algorithm)?;
        report(r.allocation.into_owner(), r.welfare.get(), r.feasible, r.algorithm, out);
        Ok(())
    })
}

/// Exact optimum by exhaustive enumeration of at most `budget` allocations.
///
/// # Safety
/// `instance` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qw_oracle(
    instance: *const QwInstance,
    objective_code: u32,
    balanced: bool,
    budget: u64,
    out: *mut *mut QwReport,
) -> QwStatus {
    guard(|| {
        let instance = deref(instance, "instance")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let (welfare, allocation) = opt_welfare(
            &instance.inner,
            objective(objective_code)?,
            balanced,
            EnumerationBudget::new(budget),
        )?;
        report(allocation.into_owner(), welfare.get(), true, "oracle", out);
        Ok(())
    })
}

/// Objective value of the allocation giving item `g` to agent `owner[g]`.
///
/// # Safety
/// `owner` must hold `items` entries and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qw_evaluate(
    instance: *const QwInstance,
    objective_code: u32,
    owner: *const usize,
    items: usize,
    out: *mut i64,
) -> QwStatus {
    guard(|| {
        let instance = deref(instance, "instance")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let owner = slice(owner, items, "owner")?.to_vec();
        let allocation = Allocation::for_instance(owner, &instance.inner)?;
        *out = objective(objective_code)?.evaluate(&instance.inner, &allocation)?.get();
        Ok(())
    })
}

/// # Safety
/// `report` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qw_report_free(report: *mut QwReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn qw_report_welfare(report: *const QwReport) -> i64 {
    report.as_ref().map_or(0, |r| r.welfare)
}

/// False when a decision procedure found the target infeasible.
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn qw_report_feasible(report: *const QwReport) -> bool {
    report.as_ref().is_some_and(|r| r.feasible)
}

/// Name of the algorithm that produced the report; owned by the report.
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn qw_report_algorithm(report: *const QwReport) -> *const c_char {
    report.as_ref().map_or(ptr::null(), |r| r.algorithm.as_ptr())
}

/// Number of items in the reported allocation.
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn qw_report_items(report: *const QwReport) -> usize {
    report.as_ref().map_or(0, |r| r.owner.len())
}

/// Copies the owner of each item into `buffer`, which must hold at least
/// `qw_report_items(report)` entries.
///
/// # Safety
/// `report` must be a live handle and `buffer` writable for `len` entries.
#[no_mangle]
pub unsafe extern "C" fn qw_report_owner(report: *const QwReport, buffer: *mut usize, len: usize) -> QwStatus {
    guard(|| {
        let report = deref(report, "report")?;
        if len < report.owner.len() {
            return Err(invalid(format!("buffer holds {len} entries, need {}", report.owner.len())));
        }
        if !report.owner.is_empty() {
            if buffer.is_null() {
                return Err(null("buffer"));
            }
            ptr::copy_nonoverlapping(report.owner.as_ptr(), buffer, report.owner.len());
        }
        Ok(())
    })
}
