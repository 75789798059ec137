//! C ABI over the `fanocheck` engine.
//!
//! Every function returns an [`FcStatus`]; on failure the message is kept in
//! a thread-local buffer readable through [`fc_last_error_message`]. Result
//! sets come back as opaque handles that must be released with the matching
//! `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fanocheck::engine::{
    divcont_solutions, flop_table, nonfano_search, DivContSolution, FlopTable, NonFanoVerdict,
    Payload, Scenario, ScenarioKind, SearchOptions, TableRow,
};
use fanocheck::golden::GoldenTables;
use fanocheck::lattice::{blowup_invariants, rr_h0, Center};
use fanocheck::raytypes::{RaySubtype, RayType};
use fanocheck::{verify, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FcStatus {
    Ok = 0,
    InvalidArgument = 1,
    OutOfRange = 2,
    Overflow = 3,
    Contract = 4,
    BudgetExceeded = 5,
    NullPointer = 6,
    IndexOutOfBounds = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FcScenario {
    Point = 0,
    Conic = 1,
    Line = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FcRayType {
    E2 = 0,
    D = 1,
    C = 2,
    E1 = 3,
    E34 = 4,
    E5 = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FcSubtype {
    None = 0,
    C1 = 1,
    C2 = 2,
    D1 = 3,
    D2 = 4,
    D3 = 5,
}

/// One table row. Payload fields that do not apply to the ray type are 0.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FcRow {
    pub g: i64,
    pub ray_type: FcRayType,
    pub subtype: FcSubtype,
    pub alpha: i64,
    pub beta: i64,
    pub d3: i64,
    /// E1 and E2: index of the target.
    pub r_w: i64,
    /// E1 and E2: `(-K_W)^3`.
    pub kw3: i64,
    /// E1: `(-K_W).B`.
    pub kwb: i64,
    /// E1: genus of the blown-up curve.
    pub g_b: i64,
    /// C: degree of the discriminant.
    pub deg_delta: i64,
    /// D: `D.(-K)^2`.
    pub dk2: i64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FcInvariants {
    pub i3: i64,
    pub i2: i64,
    pub i1: i64,
    pub e3: i64,
}

/// Opaque two-ray-game table.
pub struct FcFlopTable(FlopTable);

/// Opaque divisorial-contraction list.
pub struct FcDivCont(Vec<DivContSolution>);

/// Opaque non-Fano search verdict.
pub struct FcVerdict(NonFanoVerdict);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FcStatus {
    match e {
        Error::Overflow => FcStatus::Overflow,
        Error::InvalidArgument(_) => FcStatus::InvalidArgument,
        Error::Contract(_) => FcStatus::Contract,
        Error::OutOfRange { .. } => FcStatus::OutOfRange,
        Error::BudgetExceeded { .. } => FcStatus::BudgetExceeded,
    }
}

/// Runs `f`, converting errors and panics into a status plus message.
fn guard(f: impl FnOnce() -> Result<(), (FcStatus, String)>) -> FcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FcStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside fanocheck");
            FcStatus::Panic
        }
    }
}

fn engine<T>(r: fanocheck::Result<T>) -> Result<T, (FcStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null_check<T>(p: *const T, name: &str) -> Result<(), (FcStatus, String)> {
    if p.is_null() {
        Err((FcStatus::NullPointer, format!("{name} is null")))
    } else {
        Ok(())
    }
}

fn kind_of(s: FcScenario) -> ScenarioKind {
    match s {
        FcScenario::Point => ScenarioKind::PointBlowup,
        FcScenario::Conic => ScenarioKind::ConicBlowup,
        FcScenario::Line => ScenarioKind::LineBlowup,
    }
}

fn to_row(r: &TableRow) -> FcRow {
    let ray_type = match r.ray {
        RayType::E2 => FcRayType::E2,
        RayType::D => FcRayType::D,
        RayType::C => FcRayType::C,
        RayType::E1 => FcRayType::E1,
        RayType::E34 => FcRayType::E34,
        RayType::E5 => FcRayType::E5,
    };
    let subtype = match r.subtype {
        None => FcSubtype::None,
        Some(RaySubtype::C1) => FcSubtype::C1,
        Some(RaySubtype::C2) => FcSubtype::C2,
        Some(RaySubtype::D1) => FcSubtype::D1,
        Some(RaySubtype::D2) => FcSubtype::D2,
        Some(RaySubtype::D3) => FcSubtype::D3,
    };
    let mut out = FcRow {
        g: r.g,
        ray_type,
        subtype,
        alpha: r.alpha,
        beta: r.beta,
        d3: r.d3,
        r_w: 0,
        kw3: 0,
        kwb: 0,
        g_b: 0,
        deg_delta: 0,
        dk2: 0,
    };
    match r.payload {
        Payload::E1 { r_w, kw3, kwb, g_b } => {
            (out.r_w, out.kw3, out.kwb, out.g_b) = (r_w, kw3, kwb, g_b);
        }
        Payload::E2 { r_w, kw3 } => (out.r_w, out.kw3) = (r_w, kw3),
        Payload::C { deg_delta } => out.deg_delta = deg_delta,
        Payload::D { dk2 } => out.dk2 = dk2,
        Payload::None => {}
    }
    out
}

/// Message for the last failing call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// `((-K)^3, (-K)^2.E, (-K).E^2, E^3)` for a point (`d = 0`) or a curve of
/// degree `d >= 1` and genus `h`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fc_blowup_invariants(
    g: i64,
    d: i64,
    h: i64,
    out: *mut FcInvariants,
) -> FcStatus {
    guard(|| {
        null_check(out, "out")?;
        let center = if d == 0 && h == 0 {
            Center::Point
        } else {
            engine(Center::curve(d, h))?
        };
        let inv = engine(blowup_invariants(g, center))?;
        // SAFETY: checked non-null; the caller guarantees validity.
        unsafe {
            *out = FcInvariants {
                i3: inv.i3,
                i2: inv.i2,
                i1: inv.i1,
                e3: inv.e3,
            }
        };
        Ok(())
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fc_rr_h0(g: i64, m: i64, out: *mut i64) -> FcStatus {
    guard(|| {
        null_check(out, "out")?;
        let v = engine(rr_h0(g, m))?;
        // SAFETY: checked non-null.
        unsafe { *out = v };
        Ok(())
    })
}

/// Builds the two-ray-game table over `[g_min, g_max]`.
///
/// # Safety
/// `out` must be valid for writes. On success `*out` owns a table that must be
/// released with [`fc_flop_table_free`].
#[no_mangle]
pub unsafe extern "C" fn fc_flop_table_new(
    scenario: FcScenario,
    g_min: i64,
    g_max: i64,
    geometric: bool,
    out: *mut *mut FcFlopTable,
) -> FcStatus {
    guard(|| {
        null_check(out, "out")?;
        let s = engine(Scenario::new(kind_of(scenario), g_min, g_max))?.with_geometric(geometric);
        let t = engine(flop_table(&s, &SearchOptions::default()))?;
        // SAFETY: checked non-null.
        unsafe { *out = Box::into_raw(Box::new(FcFlopTable(t))) };
        Ok(())
    })
}

/// Number of kept rows; 0 for NULL.
///
/// # Safety
/// `t` must be NULL or a live handle from [`fc_flop_table_new`].
#[no_mangle]
pub unsafe extern "C" fn fc_flop_table_len(t: *const FcFlopTable) -> usize {
    // SAFETY: caller contract.
    unsafe { t.as_ref() }.map_or(0, |t| t.0.rows.len())
}

/// Number of rows removed by prune rules; 0 for NULL.
///
/// # Safety
/// `t` must be NULL or a live handle from [`fc_flop_table_new`].
#[no_mangle]
pub unsafe extern "C" fn fc_flop_table_excluded_len(t: *const FcFlopTable) -> usize {
    // SAFETY: caller contract.
    unsafe { t.as_ref() }.map_or(0, |t| t.0.excluded.len())
}

/// # Safety
/// `t` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fc_flop_table_row(
    t: *const FcFlopTable,
    index: usize,
    out: *mut FcRow,
) -> FcStatus {
    guard(|| {
        null_check(t, "table")?;
        null_check(out, "out")?;
        // SAFETY: checked non-null; caller guarantees liveness.
        let t = unsafe { &*t };
        let row = t.0.rows.get(index).ok_or_else(|| {
            (
                FcStatus::IndexOutOfBounds,
                format!("row {index} of {}", t.0.rows.len()),
            )
        })?;
        // SAFETY: checked non-null.
        unsafe { *out = to_row(row) };
        Ok(())
    })
}

/// # Safety
/// `t` must be NULL or a handle from [`fc_flop_table_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fc_flop_table_free(t: *mut FcFlopTable) {
    if !t.is_null() {
        // SAFETY: produced by Box::into_raw in fc_flop_table_new.
        drop(unsafe { Box::from_raw(t) });
    }
}

/// Divisorial-contraction solutions over the scenario's default genus range.
///
/// # Safety
/// `out` must be valid for writes; release with [`fc_divcont_free`].
#[no_mangle]
pub unsafe extern "C" fn fc_divcont_new(
    scenario: FcScenario,
    out: *mut *mut FcDivCont,
) -> FcStatus {
    guard(|| {
        null_check(out, "out")?;
        let sols = engine(divcont_solutions(&Scenario::default_for(kind_of(scenario))))?;
        // SAFETY: checked non-null.
        unsafe { *out = Box::into_raw(Box::new(FcDivCont(sols))) };
        Ok(())
    })
}

/// # Safety
/// `h` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fc_divcont_len(h: *const FcDivCont) -> usize {
    // SAFETY: caller contract.
    unsafe { h.as_ref() }.map_or(0, |h| h.0.len())
}

/// Writes `(g, α, β)` of solution `index`.
///
/// # Safety
/// `h` must be a live handle; `g`, `alpha`, `beta` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fc_divcont_get(
    h: *const FcDivCont,
    index: usize,
    g: *mut i64,
    alpha: *mut i64,
    beta: *mut i64,
) -> FcStatus {
    guard(|| {
        null_check(h, "handle")?;
        null_check(g, "g")?;
        null_check(alpha, "alpha")?;
        null_check(beta, "beta")?;
        // SAFETY: checked non-null; caller guarantees liveness.
        let list = unsafe { &(*h).0 };
        let s = list.get(index).ok_or_else(|| {
            (
                FcStatus::IndexOutOfBounds,
                format!("solution {index} of {}", list.len()),
            )
        })?;
        // SAFETY: checked non-null.
        unsafe { (*g, *alpha, *beta) = (s.g, s.alpha, s.beta) };
        Ok(())
    })
}

/// # Safety
/// `h` must be NULL or a handle from [`fc_divcont_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fc_divcont_free(h: *mut FcDivCont) {
    if !h.is_null() {
        // SAFETY: produced by Box::into_raw in fc_divcont_new.
        drop(unsafe { Box::from_raw(h) });
    }
}

/// Non-Fano search over `6 <= g <= 12`.
///
/// # Safety
/// `out` must be valid for writes; release with [`fc_verdict_free`].
#[no_mangle]
pub unsafe extern "C" fn fc_nonfano_new(
    curated: bool,
    geometric: bool,
    out: *mut *mut FcVerdict,
) -> FcStatus {
    guard(|| {
        null_check(out, "out")?;
        let s = Scenario::default_for(ScenarioKind::GeneralCurve)
            .with_curated(curated)
            .with_geometric(geometric);
        let v = engine(nonfano_search(&s, &SearchOptions::default()))?;
        // SAFETY: checked non-null.
        unsafe { *out = Box::into_raw(Box::new(FcVerdict(v))) };
        Ok(())
    })
}

/// All arithmetic survivors, excluded or not.
///
/// # Safety
/// `v` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fc_verdict_survivor_count(v: *const FcVerdict) -> usize {
    // SAFETY: caller contract.
    unsafe { v.as_ref() }.map_or(0, |v| v.0.survivors().count())
}

/// Survivors without an exclusion.
///
/// # Safety
/// `v` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fc_verdict_unresolved_count(v: *const FcVerdict) -> usize {
    // SAFETY: caller contract.
    unsafe { v.as_ref() }.map_or(0, |v| v.0.unresolved().count())
}

/// # Safety
/// `v` must be NULL or a handle from [`fc_nonfano_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fc_verdict_free(v: *mut FcVerdict) {
    if !v.is_null() {
        // SAFETY: produced by Box::into_raw in fc_nonfano_new.
        drop(unsafe { Box::from_raw(v) });
    }
}

/// Runs every check against the embedded golden data and writes the number
/// of passing and failing checks.
///
/// # Safety
/// `passed` and `failed` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fc_verify(
    bounds_scale: i64,
    passed: *mut u32,
    failed: *mut u32,
) -> FcStatus {
    guard(|| {
        null_check(passed, "passed")?;
        null_check(failed, "failed")?;
        if !(1..=16).contains(&bounds_scale) {
            return Err((
                FcStatus::OutOfRange,
                format!("bounds_scale = {bounds_scale} outside [1, 16]"),
            ));
        }
        let checks = verify::run_all(
            &GoldenTables::embedded(),
            bounds_scale,
            &SearchOptions::default(),
        );
        let ok = checks.iter().filter(|c| c.pass).count() as u32;
        if let Some(c) = checks.iter().find(|c| !c.pass) {
            set_error(&format!("{}: {}", c.name, c.detail));
        }
        // SAFETY: checked non-null.
        unsafe { (*passed, *failed) = (ok, checks.len() as u32 - ok) };
        Ok(())
    })
}
