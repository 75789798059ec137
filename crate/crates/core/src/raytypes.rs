//! Extremal-ray constraint signatures, the Fano index table for type E1
//! targets, and curated prune rules.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::checked::{add, mul, sub, sum_of_products};
use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, YInvariants};

/// Type of the second extremal ray.
///
/// Declaration order is the canonical row order: E2 < D < C < E1 < E3/E4 < E5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RayType {
    E2,
    D,
    C,
    E1,
    /// E3 and E4 share every numeric constant.
    #[serde(rename = "E3/E4")]
    E34,
    E5,
}

impl RayType {
    pub const ALL: [RayType; 6] = [
        RayType::E2,
        RayType::D,
        RayType::C,
        RayType::E1,
        RayType::E34,
        RayType::E5,
    ];

    pub fn is_divisorial(self) -> bool {
        matches!(self, RayType::E1 | RayType::E2 | RayType::E34 | RayType::E5)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RayType::E2 => "E2",
            RayType::D => "D",
            RayType::C => "C",
            RayType::E1 => "E1",
            RayType::E34 => "E3/E4",
            RayType::E5 => "E5",
        }
    }
}

impl fmt::Display for RayType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RaySubtype {
    C1,
    C2,
    D1,
    D2,
    D3,
}

impl fmt::Display for RaySubtype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Where the admissible values of `β` come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetaDomain {
    Fixed(&'static [i64]),
    /// No stated range; the engine derives a cap from the intersection numbers.
    Derived,
}

/// Numeric constants a ray type imposes on `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstraintSignature {
    pub d3_expected: Option<i64>,
    pub d2k_expected: Option<i64>,
    pub dk2_range: Option<(i64, i64)>,
    pub beta_domain: BetaDomain,
    pub kappa_d: i64,
    pub h0_d: Option<i64>,
}

pub fn type_signature(t: RayType) -> ConstraintSignature {
    let e = |d3, dk2, beta_domain| ConstraintSignature {
        d3_expected: Some(d3),
        d2k_expected: Some(-2),
        dk2_range: Some((dk2, dk2)),
        beta_domain,
        kappa_d: 0,
        h0_d: Some(1),
    };
    match t {
        RayType::C => ConstraintSignature {
            d3_expected: Some(0),
            d2k_expected: Some(2),
            dk2_range: Some((0, 12)),
            beta_domain: BetaDomain::Fixed(&[1, 2]),
            kappa_d: 2,
            h0_d: Some(3),
        },
        RayType::D => ConstraintSignature {
            d3_expected: Some(0),
            d2k_expected: Some(0),
            dk2_range: Some((1, 9)),
            beta_domain: BetaDomain::Fixed(&[1, 2, 3]),
            kappa_d: 1,
            h0_d: Some(2),
        },
        // β is the Fano index of the target.
        RayType::E2 => e(1, 4, BetaDomain::Fixed(&[1, 2, 3, 4])),
        RayType::E34 => e(2, 2, BetaDomain::Derived),
        RayType::E5 => e(4, 1, BetaDomain::Derived),
        RayType::E1 => ConstraintSignature {
            d3_expected: None,
            d2k_expected: None,
            dk2_range: None,
            beta_domain: BetaDomain::Fixed(&[1, 2, 3, 4]),
            kappa_d: 0,
            h0_d: Some(1),
        },
    }
}

/// Admissible `H^3` for a Fano threefold of index `β` and Picard rank one,
/// restricted so that `w = βH^3/2` lies in `[1, w_max]`.
pub fn allowed_hw3(beta: i64, w_max: i64) -> Result<Vec<i64>> {
    if w_max < 1 {
        return Err(Error::InvalidArgument(format!(
            "w_max = {w_max} must be >= 1"
        )));
    }
    let candidates: Vec<i64> = match beta {
        4 => vec![1],
        3 => vec![2],
        2 => (1..=5).collect(),
        1 => (1..=w_max).map(|w| 2 * w).collect(),
        _ => {
            return Err(Error::OutOfRange {
                what: "beta",
                value: beta,
                lo: 1,
                hi: 4,
            })
        }
    };
    Ok(candidates
        .into_iter()
        .filter(|&h| {
            let bh = beta * h;
            bh % 2 == 0 && (1..=w_max).contains(&(bh / 2))
        })
        .collect())
}

/// Invariants of the E1 target `W` and of the blown-up curve `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct E1Derived {
    /// `(-K_W)^3`
    pub kw3: i64,
    /// `(-K_W).B`
    pub kwb: i64,
    /// `2g(B) - 2`
    pub two_gb_minus_2: i64,
    /// `D^3` on `Y+`
    pub d3: i64,
}

impl E1Derived {
    pub fn g_b(&self) -> i64 {
        (self.two_gb_minus_2 + 2) / 2
    }
}

/// Requires `β | α + 1`.
pub fn e1_derived(inv: &YInvariants, dc: DivisorClass) -> Result<E1Derived> {
    let (a, b) = (dc.alpha, dc.beta);
    let a1 = add(a, 1)?;
    if a1 % b != 0 {
        return Err(Error::Contract(format!(
            "alpha + 1 = {a1} is not divisible by beta = {b}"
        )));
    }
    let YInvariants { i3, i2, i1, .. } = *inv;
    let two_a1 = add(mul(2, a)?, 1)?;
    let kw3 = sum_of_products(&[&[a1, a1, i3], &[-2, a1, b, i2], &[b, b, i1]])?;
    let kwb = sum_of_products(&[&[a, a1, i3], &[-1, two_a1, b, i2], &[b, b, i1]])?;
    let two_gb_minus_2 = sum_of_products(&[&[a, a, i3], &[-2, a, b, i2], &[b, b, i1]])?;
    let d3 = sub(sub(kw3, i3)?, mul(3, kwb)?)?;
    Ok(E1Derived {
        kw3,
        kwb,
        two_gb_minus_2,
        d3,
    })
}

/// `(-K_W)^3` for an E2 contraction: `((-K) + 2D)^3` with the E2 constants.
pub fn e2_target_volume(inv: &YInvariants) -> Result<i64> {
    add(inv.i3, 8)
}

pub fn subclassify(t: RayType, dk2: i64) -> Result<Option<RaySubtype>> {
    let check = |lo: i64, hi: i64| {
        if (lo..=hi).contains(&dk2) {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                what: "D.(-K)^2",
                value: dk2,
                lo,
                hi,
            })
        }
    };
    match t {
        RayType::C => {
            check(0, 12)?;
            Ok(Some(if 12 - dk2 > 0 {
                RaySubtype::C1
            } else {
                RaySubtype::C2
            }))
        }
        RayType::D => {
            check(1, 9)?;
            Ok(Some(match dk2 {
                8 => RaySubtype::D2,
                9 => RaySubtype::D3,
                _ => RaySubtype::D1,
            }))
        }
        _ => Ok(None),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RuleId {
    R1,
    R2,
    R3,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A geometric exclusion recorded as data. The engine applies these but does
/// not prove them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PruneRule {
    pub id: RuleId,
    pub citation: &'static str,
}

pub const R1: PruneRule = PruneRule {
    id: RuleId::R1,
    citation: "exceptional divisor of a type E ray has h^0(D) = 1, but alpha >= beta writes D \
               as (alpha - beta)(-K) + beta(-K - E) with h^0(-K - E) >= 2",
};

pub const R2: PruneRule = PruneRule {
    id: RuleId::R2,
    citation: "alpha > beta makes D a positive multiple of the big class -K plus an effective \
               class, so kappa(D) = 3, above the ray type's Iitaka dimension",
};

pub const R3: PruneRule = PruneRule {
    id: RuleId::R3,
    citation: "alpha = beta gives D = beta(-K - E) with at least 3 sections, but the fibre \
               class of a type D ray has h^0(D) = 2",
};

/// What a prune rule looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Candidate {
    pub ray: RayType,
    pub class: DivisorClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PruneOutcome {
    Keep,
    Exclude(PruneRule),
}

impl PruneRule {
    pub fn applies(&self, cand: &Candidate, lb: i64) -> bool {
        let DivisorClass { alpha, beta } = cand.class;
        match self.id {
            RuleId::R1 => cand.ray.is_divisorial() && alpha >= beta && lb >= 2,
            RuleId::R2 => type_signature(cand.ray).kappa_d <= 2 && alpha > beta && lb >= 1,
            RuleId::R3 => {
                let h0 = type_signature(cand.ray).h0_d.unwrap_or(i64::MAX - 1);
                cand.ray == RayType::D && alpha == beta && lb > h0
            }
        }
    }
}

/// First matching rule in list order, or keep.
pub fn apply_prune_rules(cand: &Candidate, rules: &[PruneRule], lb: i64) -> PruneOutcome {
    rules
        .iter()
        .find(|r| r.applies(cand, lb))
        .map_or(PruneOutcome::Keep, |r| PruneOutcome::Exclude(*r))
}
