//! Search for blowups of curves with ample `-K_Y`, `6 <= g <= 12`.
//!
//! Four sub-searches run over the curve data `(g, d, h)` with
//! `h <= g - 2` and `2h - 1 <= d <= h + g - 3`: one per target ray family.
//! Every arithmetic survivor ends up either excluded with a cited reason or
//! flagged unresolved.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{floor_div_nonneg, per_genus, Budget, Scenario, ScenarioKind, SearchOptions};
use crate::checked::{add, gcd, isqrt, mul, sub, sum_of_products};
use crate::error::{Error, Result};
use crate::lattice::{
    blowup_invariants, d_intersections, section_lower_bound, Center, DivisorClass, YInvariants,
};
use crate::raytypes::{
    allowed_hw3, apply_prune_rules, type_signature, BetaDomain, Candidate, PruneOutcome, PruneRule,
    RayType, RuleId, R2, R3,
};

/// Upper end of the `γ` range before scaling.
const GAMMA_MAX: i64 = 13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ExclusionId {
    R1,
    R2,
    R3,
    K1,
    K2,
}

impl From<RuleId> for ExclusionId {
    fn from(r: RuleId) -> Self {
        match r {
            RuleId::R1 => ExclusionId::R1,
            RuleId::R2 => ExclusionId::R2,
            RuleId::R3 => ExclusionId::R3,
        }
    }
}

impl fmt::Display for ExclusionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A curated restriction on the blown-up curve, applied before prune rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CuratedConstraint {
    pub id: ExclusionId,
    pub citation: &'static str,
}

pub const K1: CuratedConstraint = CuratedConstraint {
    id: ExclusionId::K1,
    citation: "d <= 2 means the curve is a line or a conic, and those blowups never have ample -K",
};

pub const K2: CuratedConstraint = CuratedConstraint {
    id: ExclusionId::K2,
    citation: "a cubic of positive genus is a plane cubic, and X being cut out by quadrics forces \
               that plane into X",
};

impl CuratedConstraint {
    fn violated(&self, d: i64, h: i64) -> bool {
        match self.id {
            ExclusionId::K1 => d < 3,
            ExclusionId::K2 => h >= 1 && d < 4,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum SurvivorTuple {
    /// `α = βγ - 1`, `v = H_W^3`.
    E1 {
        g: i64,
        d: i64,
        h: i64,
        beta: i64,
        gamma: i64,
        v: i64,
    },
    Ray {
        ray: RayType,
        g: i64,
        d: i64,
        h: i64,
        alpha: i64,
        beta: i64,
    },
}

impl SurvivorTuple {
    pub fn ray(&self) -> RayType {
        match *self {
            SurvivorTuple::E1 { .. } => RayType::E1,
            SurvivorTuple::Ray { ray, .. } => ray,
        }
    }

    pub fn gdh(&self) -> (i64, i64, i64) {
        match *self {
            SurvivorTuple::E1 { g, d, h, .. } | SurvivorTuple::Ray { g, d, h, .. } => (g, d, h),
        }
    }

    pub fn class(&self) -> DivisorClass {
        match *self {
            SurvivorTuple::E1 { beta, gamma, .. } => DivisorClass {
                alpha: beta * gamma - 1,
                beta,
            },
            SurvivorTuple::Ray { alpha, beta, .. } => DivisorClass { alpha, beta },
        }
    }
}

impl fmt::Display for SurvivorTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SurvivorTuple::E1 {
                g,
                d,
                h,
                beta,
                gamma,
                v,
            } => {
                write!(
                    f,
                    "E1 (g,d,h,beta,gamma,v)=({g},{d},{h},{beta},{gamma},{v})"
                )
            }
            SurvivorTuple::Ray {
                ray,
                g,
                d,
                h,
                alpha,
                beta,
            } => {
                write!(f, "{ray} (g,d,h,alpha,beta)=({g},{d},{h},{alpha},{beta})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Disposition {
    Excluded {
        by: ExclusionId,
        lower_bound: i64,
        citation: String,
    },
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Survivor {
    pub tuple: SurvivorTuple,
    pub disposition: Disposition,
}

/// Arithmetic survivors of each sub-search with their dispositions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonFanoVerdict {
    pub e1: Vec<Survivor>,
    pub c: Vec<Survivor>,
    /// Types E2 through E5.
    pub e: Vec<Survivor>,
    pub d: Vec<Survivor>,
}

impl NonFanoVerdict {
    pub fn survivors(&self) -> impl Iterator<Item = &Survivor> {
        self.e1.iter().chain(&self.c).chain(&self.e).chain(&self.d)
    }

    pub fn unresolved(&self) -> impl Iterator<Item = &Survivor> {
        self.survivors()
            .filter(|s| s.disposition == Disposition::Unresolved)
    }

    pub fn fully_excluded(&self) -> bool {
        self.unresolved().next().is_none()
    }
}

const NONFANO_RULES: [PruneRule; 2] = [R2, R3];

pub fn nonfano_search(s: &Scenario, opts: &SearchOptions) -> Result<NonFanoVerdict> {
    if s.kind != ScenarioKind::GeneralCurve {
        return Err(Error::InvalidArgument(format!(
            "{:?} is not a general-curve scenario",
            s.kind
        )));
    }
    opts.validate()?;
    let budget = Budget::new(opts.budget);
    let tuples = per_genus(&s.genera(), opts.parallel, |g| {
        genus_tuples(g, opts.scale, &budget)
    })?;

    let mut v = NonFanoVerdict::default();
    for tuple in tuples {
        let surv = Survivor {
            tuple,
            disposition: dispose(s, &tuple)?,
        };
        match tuple.ray() {
            RayType::E1 => v.e1.push(surv),
            RayType::C => v.c.push(surv),
            RayType::D => v.d.push(surv),
            RayType::E2 | RayType::E34 | RayType::E5 => v.e.push(surv),
        }
    }
    for list in [&mut v.e1, &mut v.c, &mut v.e, &mut v.d] {
        list.sort_by_key(|x| x.tuple);
        list.dedup();
    }
    Ok(v)
}

fn dispose(s: &Scenario, t: &SurvivorTuple) -> Result<Disposition> {
    let (g, d, h) = t.gdh();
    let center = Center::curve(d, h)?;
    let lb = section_lower_bound(&blowup_invariants(g, center)?, center)?;
    if s.curated {
        if let Some(k) = [K1, K2].iter().find(|k| k.violated(d, h)) {
            return Ok(Disposition::Excluded {
                by: k.id,
                lower_bound: lb,
                citation: k.citation.to_string(),
            });
        }
    }
    if s.geometric {
        let cand = Candidate {
            ray: t.ray(),
            class: t.class(),
        };
        if let PruneOutcome::Exclude(rule) = apply_prune_rules(&cand, &NONFANO_RULES, lb) {
            return Ok(Disposition::Excluded {
                by: rule.id.into(),
                lower_bound: lb,
                citation: rule.citation.to_string(),
            });
        }
    }
    Ok(Disposition::Unresolved)
}

/// Curve data `(d, h)` allowed at genus `g`.
fn curve_domain(g: i64) -> impl Iterator<Item = (i64, i64)> {
    (0..=g - 2).flat_map(move |h| ((2 * h - 1).max(1)..=h + g - 3).map(move |d| (d, h)))
}

fn genus_tuples(g: i64, scale: i64, budget: &Budget) -> Result<Vec<SurvivorTuple>> {
    let mut out = Vec::new();
    for (d, h) in curve_domain(g) {
        let inv = blowup_invariants(g, Center::curve(d, h)?)?;
        if inv.i3 < 2 || inv.i2 < 1 {
            return Err(Error::Contract(format!(
                "domain point (g,d,h)=({g},{d},{h}) has i3 < 2 or i2 < 1"
            )));
        }
        out.extend(e1_tuples(g, d, h, scale, budget)?);
        for ray in [
            RayType::C,
            RayType::E2,
            RayType::E34,
            RayType::E5,
            RayType::D,
        ] {
            out.extend(ray_tuples(&inv, g, d, h, ray, scale, budget)?);
        }
    }
    Ok(out)
}

/// `(β, v)` pairs allowed for the E1 target (`w_max = 11`).
fn e1_targets() -> Result<Vec<(i64, i64)>> {
    let mut out = Vec::new();
    for beta in 1..=4 {
        for v in allowed_hw3(beta, ScenarioKind::GeneralCurve.w_max())? {
            out.push((beta, v));
        }
    }
    Ok(out)
}

fn e1_tuples(g: i64, d: i64, h: i64, scale: i64, budget: &Budget) -> Result<Vec<SurvivorTuple>> {
    let targets = e1_targets()?;
    let gamma_max = mul(GAMMA_MAX, scale)?;
    budget.charge(gamma_max as u64 * targets.len() as u64)?;
    let mut out = Vec::new();
    for gamma in 1..=gamma_max {
        // volume of W: βv = 2[(g-d+h-2)γ^2 - (d-2h+2)γ + (h-1)]
        let vol_rhs = mul(
            2,
            sum_of_products(&[
                &[g - d + h - 2, gamma, gamma],
                &[-(d - 2 * h + 2), gamma],
                &[h - 1],
            ])?,
        )?;
        // from the D^3 relation with (-K_W).B eliminated: (βγ-1)v = (d-2h+2)γ^2 - 2(2h-2)γ - (d+2h-2)
        let rel_rhs = sum_of_products(&[
            &[d - 2 * h + 2, gamma, gamma],
            &[-2, 2 * h - 2, gamma],
            &[-(d + 2 * h - 2)],
        ])?;
        for &(beta, v) in &targets {
            if (beta, gamma) == (1, 1) {
                continue;
            }
            if mul(beta, v)? == vol_rhs && mul(sub(mul(beta, gamma)?, 1)?, v)? == rel_rhs {
                out.push(SurvivorTuple::E1 {
                    g,
                    d,
                    h,
                    beta,
                    gamma,
                    v,
                });
            }
        }
    }
    Ok(out)
}

/// For E2..E5, `2α + D^3 = β(α+β)[d(β-α) + (2h-2)(α+β)]` makes `β(α+β)`
/// divide a positive number at most `2α + D^3`, so `β^2 <= D^3` once `β >= 2`.
fn e_beta_cap(d3: i64, scale: i64) -> Result<i64> {
    mul(isqrt(d3).max(1), scale)
}

fn ray_tuples(
    inv: &YInvariants,
    g: i64,
    d: i64,
    h: i64,
    ray: RayType,
    scale: i64,
    budget: &Budget,
) -> Result<Vec<SurvivorTuple>> {
    let sig = type_signature(ray);
    let (lo, hi) = sig.dk2_range.expect("non-E1 rays fix a dk2 range");
    let d2k_target = sig.d2k_expected.expect("non-E1 rays fix D^2.(-K)");
    let d3_target = sig.d3_expected.expect("non-E1 rays fix D^3");
    let betas: Vec<i64> = match (ray, sig.beta_domain) {
        (RayType::C | RayType::D, BetaDomain::Fixed(bs)) => bs.to_vec(),
        _ => (1..=e_beta_cap(d3_target, scale)?).collect(),
    };
    let needs_coprime = matches!(ray, RayType::C | RayType::D);
    let mut out = Vec::new();
    for beta in betas {
        let alpha_cap = mul(
            floor_div_nonneg(add(hi, mul(beta, inv.i2)?)?, inv.i3),
            scale,
        )?;
        budget.charge(alpha_cap as u64)?;
        for alpha in 1..=alpha_cap {
            if needs_coprime && gcd(alpha, beta) != 1 {
                continue;
            }
            let x = d_intersections(inv, DivisorClass { alpha, beta })?;
            if x.d3 == d3_target && x.d2k == d2k_target && (lo..=hi).contains(&x.dk2) {
                out.push(SurvivorTuple::Ray {
                    ray,
                    g,
                    d,
                    h,
                    alpha,
                    beta,
                });
            }
        }
    }
    Ok(out)
}
