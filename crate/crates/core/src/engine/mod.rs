//! Bounded exhaustive enumerators over the intersection lattice.
//!
//! Every enumerator splits its work by genus `g`, runs the slices (optionally
//! on the rayon pool), and concatenates the results in slice order before a
//! final canonical sort. Parallel and sequential runs therefore agree exactly.

mod defect;
mod divcont;
mod flop;
mod identity;
mod nonfano;
mod scan;

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{blowup_invariants, section_lower_bound, Center, YInvariants};

pub use defect::{defect_check, DefectResult};
pub use divcont::{
    divcont_parity_witness, divcont_solutions, DivContSolution, Obstruction, ParityWitness,
};
pub use flop::{flop_table, ExcludedRow, FlopTable, Payload, TableRow};
pub use identity::{identity_sweep, IdentityGrid};
pub use nonfano::{
    nonfano_search, CuratedConstraint, Disposition, ExclusionId, NonFanoVerdict, Survivor,
    SurvivorTuple, K1, K2,
};
pub use scan::{bound_stability, gbound_scan, gbound_scan_for, Enumerator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    PointBlowup,
    ConicBlowup,
    LineBlowup,
    GeneralCurve,
}

impl ScenarioKind {
    /// Smallest genus the scenario accepts.
    pub fn min_g(self) -> i64 {
        match self {
            ScenarioKind::PointBlowup => 6,
            ScenarioKind::ConicBlowup => 5,
            ScenarioKind::LineBlowup => 4,
            ScenarioKind::GeneralCurve => 6,
        }
    }

    pub fn max_g(self) -> Option<i64> {
        match self {
            ScenarioKind::GeneralCurve => Some(12),
            _ => None,
        }
    }

    /// Upper bound for `w = βH^3/2` on E1 targets.
    pub fn w_max(self) -> i64 {
        match self {
            ScenarioKind::PointBlowup => 12,
            _ => 11,
        }
    }

    pub fn center(self) -> Option<Center> {
        match self {
            ScenarioKind::PointBlowup => Some(Center::Point),
            ScenarioKind::ConicBlowup => Some(Center::CONIC),
            ScenarioKind::LineBlowup => Some(Center::LINE),
            ScenarioKind::GeneralCurve => None,
        }
    }

    pub fn is_flop(self) -> bool {
        self != ScenarioKind::GeneralCurve
    }

    /// Default genus range used by the CLI and the acceptance checks.
    pub fn default_range(self) -> (i64, i64) {
        match self {
            ScenarioKind::PointBlowup => (6, 40),
            ScenarioKind::ConicBlowup => (5, 40),
            ScenarioKind::LineBlowup => (4, 12),
            ScenarioKind::GeneralCurve => (6, 12),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    pub kind: ScenarioKind,
    pub g_min: i64,
    pub g_max: i64,
    /// Apply the curated prune rules.
    pub geometric: bool,
    /// Apply the curated degree/genus constraints (general curves only).
    pub curated: bool,
}

impl Scenario {
    pub fn new(kind: ScenarioKind, g_min: i64, g_max: i64) -> Result<Self> {
        let lo = kind.min_g();
        let hi = kind.max_g().unwrap_or(1_000_000);
        for (what, value) in [("g_min", g_min), ("g_max", g_max)] {
            if !(lo..=hi).contains(&value) {
                return Err(Error::OutOfRange {
                    what,
                    value,
                    lo,
                    hi,
                });
            }
        }
        if g_min > g_max {
            return Err(Error::InvalidArgument(format!(
                "empty genus range [{g_min}, {g_max}]"
            )));
        }
        Ok(Scenario {
            kind,
            g_min,
            g_max,
            geometric: true,
            curated: true,
        })
    }

    pub fn default_for(kind: ScenarioKind) -> Self {
        let (lo, hi) = kind.default_range();
        Scenario::new(kind, lo, hi).expect("default ranges are valid")
    }

    pub fn with_geometric(mut self, on: bool) -> Self {
        self.geometric = on;
        self
    }

    pub fn with_curated(mut self, on: bool) -> Self {
        self.curated = on;
        self
    }

    pub fn genera(&self) -> Vec<i64> {
        (self.g_min..=self.g_max).collect()
    }

    /// Invariants of `Y` itself, with the true `E^3`.
    pub fn y_invariants(&self, g: i64) -> Result<YInvariants> {
        let center = self.flop_center()?;
        blowup_invariants(g, center)
    }

    /// Invariants used on the flopped side `Y+`. The conic case runs on the
    /// point quadruple at `g + 1`, which agrees with the conic invariants in
    /// everything but `E^3`.
    pub fn flop_invariants(&self, g: i64) -> Result<YInvariants> {
        match self.kind {
            ScenarioKind::ConicBlowup => blowup_invariants(g + 1, Center::Point),
            _ => self.y_invariants(g),
        }
    }

    pub fn lower_bound(&self, g: i64) -> Result<i64> {
        section_lower_bound(&self.y_invariants(g)?, self.flop_center()?)
    }

    fn flop_center(&self) -> Result<Center> {
        self.kind.center().ok_or_else(|| {
            Error::InvalidArgument(format!("{:?} has no fixed blowup center", self.kind))
        })
    }
}

/// Knobs shared by every enumerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Multiplier applied to every derived search cap.
    pub scale: i64,
    pub parallel: bool,
    /// Maximum number of candidates a single call may evaluate.
    pub budget: u64,
}

pub const MAX_SCALE: i64 = 64;

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            scale: 1,
            parallel: true,
            budget: 200_000_000,
        }
    }
}

impl SearchOptions {
    pub fn sequential() -> Self {
        SearchOptions {
            parallel: false,
            ..Self::default()
        }
    }

    pub fn scaled(self, scale: i64) -> Self {
        SearchOptions { scale, ..self }
    }

    fn validate(&self) -> Result<()> {
        if !(1..=MAX_SCALE).contains(&self.scale) {
            return Err(Error::OutOfRange {
                what: "scale",
                value: self.scale,
                lo: 1,
                hi: MAX_SCALE,
            });
        }
        Ok(())
    }
}

/// Shared candidate counter enforcing [`SearchOptions::budget`].
pub(crate) struct Budget {
    used: AtomicU64,
    limit: u64,
}

impl Budget {
    pub(crate) fn new(limit: u64) -> Self {
        Budget {
            used: AtomicU64::new(0),
            limit,
        }
    }

    pub(crate) fn charge(&self, n: u64) -> Result<()> {
        let used = self.used.fetch_add(n, Ordering::Relaxed) + n;
        if used > self.limit {
            return Err(Error::BudgetExceeded {
                evaluated: used,
                budget: self.limit,
            });
        }
        Ok(())
    }
}

/// Run `f` on each genus and concatenate in genus order.
pub(crate) fn per_genus<T, F>(genera: &[i64], parallel: bool, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(i64) -> Result<Vec<T>> + Sync,
{
    let slices: Vec<Vec<T>> = if parallel {
        genera.par_iter().map(|&g| f(g)).collect::<Result<_>>()?
    } else {
        genera.iter().map(|&g| f(g)).collect::<Result<_>>()?
    };
    Ok(slices.into_iter().flatten().collect())
}

/// `floor(num / den)` for `den > 0`, clamped below at zero.
pub(crate) fn floor_div_nonneg(num: i64, den: i64) -> i64 {
    debug_assert!(den > 0);
    num.div_euclid(den).max(0)
}
