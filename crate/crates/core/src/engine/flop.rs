//! Two-ray game tables for point, conic and line blowups.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{floor_div_nonneg, per_genus, Budget, Scenario, SearchOptions};
use crate::checked::{add, gcd, isqrt, mul, sub};
use crate::error::{Error, Result};
use crate::lattice::{d_intersections, DivisorClass, YInvariants};
use crate::raytypes::{
    allowed_hw3, apply_prune_rules, e1_derived, e2_target_volume, subclassify, type_signature,
    BetaDomain, Candidate, PruneOutcome, PruneRule, RaySubtype, RayType, RuleId, R1, R2,
};

/// Target data attached to a row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Payload {
    E1 {
        r_w: i64,
        kw3: i64,
        kwb: i64,
        g_b: i64,
    },
    E2 {
        r_w: i64,
        kw3: i64,
    },
    C {
        deg_delta: i64,
    },
    D {
        dk2: i64,
    },
    /// E3/E4 and E5 carry nothing beyond the signature.
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TableRow {
    pub g: i64,
    pub ray: RayType,
    pub subtype: Option<RaySubtype>,
    pub alpha: i64,
    pub beta: i64,
    pub d3: i64,
    pub payload: Payload,
}

impl TableRow {
    pub fn class(&self) -> DivisorClass {
        DivisorClass {
            alpha: self.alpha,
            beta: self.beta,
        }
    }

    pub fn sort_key(&self) -> (i64, RayType, i64, i64, Payload, i64) {
        (
            self.g,
            self.ray,
            self.alpha,
            self.beta,
            self.payload,
            self.d3,
        )
    }

    /// Type label with subtype when there is one, e.g. `C1`.
    pub fn label(&self) -> String {
        match self.subtype {
            Some(s) => s.to_string(),
            None => self.ray.to_string(),
        }
    }

    /// Payload rendered as in the printed tables.
    pub fn payload_text(&self) -> String {
        match self.payload {
            Payload::E1 { r_w, kw3, kwb, g_b } => format!("({r_w}, {kw3}, {kwb}, {g_b})"),
            Payload::E2 { r_w, kw3 } => format!("({r_w}, {kw3})"),
            Payload::C { deg_delta } => format!("deg Δ = {deg_delta}"),
            Payload::D { dk2 } => format!("D.(-K)^2 = {dk2}"),
            Payload::None => "-".to_string(),
        }
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "g={} {} ({},{}) D^3={} {}",
            self.g,
            self.label(),
            self.alpha,
            self.beta,
            self.d3,
            self.payload_text()
        )
    }
}

/// A row that passed the arithmetic but was removed by a prune rule.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExcludedRow {
    pub row: TableRow,
    pub rule: RuleId,
    pub lower_bound: i64,
    pub citation: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlopTable {
    pub rows: Vec<TableRow>,
    pub excluded: Vec<ExcludedRow>,
}

impl FlopTable {
    pub fn max_g(&self) -> Option<i64> {
        self.rows.iter().map(|r| r.g).max()
    }
}

const FLOP_RULES: [PruneRule; 2] = [R1, R2];

pub fn flop_table(s: &Scenario, opts: &SearchOptions) -> Result<FlopTable> {
    if !s.kind.is_flop() {
        return Err(Error::InvalidArgument(format!(
            "{:?} has no flop table",
            s.kind
        )));
    }
    opts.validate()?;
    let budget = Budget::new(opts.budget);
    let genera = s.genera();
    let raw = per_genus(&genera, opts.parallel, |g| {
        genus_rows(s, g, opts.scale, &budget)
    })?;

    let rules: &[PruneRule] = if s.geometric { &FLOP_RULES } else { &[] };
    let mut out = FlopTable::default();
    for (row, lb) in raw {
        let cand = Candidate {
            ray: row.ray,
            class: row.class(),
        };
        match apply_prune_rules(&cand, rules, lb) {
            PruneOutcome::Keep => out.rows.push(row),
            PruneOutcome::Exclude(rule) => out.excluded.push(ExcludedRow {
                row,
                rule: rule.id,
                lower_bound: lb,
                citation: rule.citation.to_string(),
            }),
        }
    }
    out.rows.sort_by_key(TableRow::sort_key);
    out.rows.dedup();
    out.excluded.sort_by_key(|e| e.row.sort_key());
    out.excluded.dedup();
    Ok(out)
}

/// All arithmetic-feasible rows at genus `g`, each paired with the section
/// lower bound the prune rules need.
fn genus_rows(s: &Scenario, g: i64, scale: i64, budget: &Budget) -> Result<Vec<(TableRow, i64)>> {
    let inv = s.flop_invariants(g)?;
    let lb = s.lower_bound(g)?;
    if inv.i3 < 2 {
        return Err(Error::Contract(format!(
            "(-K)^3 = {} < 2 on Y+ at g = {g}",
            inv.i3
        )));
    }
    let mut rows = Vec::new();
    for ray in [
        RayType::E2,
        RayType::D,
        RayType::C,
        RayType::E34,
        RayType::E5,
    ] {
        rows.extend(signature_rows(&inv, g, ray, scale, budget)?);
    }
    rows.extend(e1_rows(&inv, g, s.kind.w_max(), scale, budget)?);
    Ok(rows.into_iter().map(|r| (r, lb)).collect())
}

/// Cap on `β` for rays without a stated index range.
///
/// `dk2^2 - d2k * i3 = β^2 (i2^2 - i1 i3)` holds identically, and the
/// signature fixes both `dk2` and `d2k`.
fn derived_beta_cap(inv: &YInvariants, dk2: i64, d2k: i64, scale: i64) -> Result<i64> {
    let q = sub(mul(inv.i2, inv.i2)?, mul(inv.i1, inv.i3)?)?;
    if q <= 0 {
        return Err(Error::Contract(format!(
            "i2^2 - i1 i3 = {q} is not positive"
        )));
    }
    let rhs = sub(mul(dk2, dk2)?, mul(d2k, inv.i3)?)?;
    mul(isqrt(rhs / q).max(1), scale)
}

fn signature_rows(
    inv: &YInvariants,
    g: i64,
    ray: RayType,
    scale: i64,
    budget: &Budget,
) -> Result<Vec<TableRow>> {
    let sig = type_signature(ray);
    let (dk2_lo, dk2_hi) = sig.dk2_range.expect("non-E1 rays fix a dk2 range");
    let d2k_target = sig.d2k_expected.expect("non-E1 rays fix D^2.(-K)");
    let betas: Vec<i64> = match sig.beta_domain {
        BetaDomain::Fixed(bs) => bs.to_vec(),
        BetaDomain::Derived => (1..=derived_beta_cap(inv, dk2_hi, d2k_target, scale)?).collect(),
    };
    let mut rows = Vec::new();
    for beta in betas {
        let alpha_cap = mul(
            floor_div_nonneg(add(dk2_hi, mul(beta, inv.i2)?)?, inv.i3),
            scale,
        )?;
        budget.charge(alpha_cap.max(0) as u64)?;
        for alpha in 1..=alpha_cap {
            let dc = DivisorClass { alpha, beta };
            let x = d_intersections(inv, dc)?;
            if x.d2k != d2k_target || !(dk2_lo..=dk2_hi).contains(&x.dk2) {
                continue;
            }
            let coprime = gcd(alpha, beta) == 1;
            let payload = match ray {
                RayType::C if coprime => Payload::C {
                    deg_delta: 12 - x.dk2,
                },
                RayType::D if coprime => Payload::D { dk2: x.dk2 },
                RayType::E2 if (2 * alpha + 1) % beta == 0 => Payload::E2 {
                    r_w: beta,
                    kw3: e2_target_volume(inv)?,
                },
                RayType::E34 | RayType::E5 => Payload::None,
                _ => continue,
            };
            rows.push(TableRow {
                g,
                ray,
                subtype: subclassify(ray, x.dk2)?,
                alpha,
                beta,
                d3: sig.d3_expected.expect("non-E1 rays fix D^3"),
                payload,
            });
        }
    }
    Ok(rows)
}

/// Largest `γ` worth trying: `βH^3 = i3 γ^2 - 2 i2 γ + i1` must stay within `2 w_max`.
fn gamma_cap(inv: &YInvariants, w_max: i64, scale: i64) -> Result<i64> {
    let disc = sub(
        mul(inv.i2, inv.i2)?,
        mul(inv.i3, sub(inv.i1, mul(2, w_max)?)?)?,
    )?;
    let root = floor_div_nonneg(add(inv.i2, isqrt(disc))?, inv.i3);
    mul(add(root, 1)?, scale)
}

fn e1_rows(
    inv: &YInvariants,
    g: i64,
    w_max: i64,
    scale: i64,
    budget: &Budget,
) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    let cap = gamma_cap(inv, w_max, scale)?;
    for beta in 1..=4 {
        let hw3 = allowed_hw3(beta, w_max)?;
        budget.charge(cap.max(0) as u64)?;
        for gamma in 1..=cap {
            let alpha = sub(mul(beta, gamma)?, 1)?;
            if alpha < 1 {
                continue;
            }
            let e = e1_derived(inv, DivisorClass { alpha, beta })?;
            let b3 = beta * beta * beta;
            if e.kw3 % b3 != 0 || !hw3.contains(&(e.kw3 / b3)) {
                continue;
            }
            if e.two_gb_minus_2 < -2 || e.kwb < 1 {
                continue;
            }
            rows.push(TableRow {
                g,
                ray: RayType::E1,
                subtype: None,
                alpha,
                beta,
                d3: e.d3,
                payload: Payload::E1 {
                    r_w: beta,
                    kw3: e.kw3,
                    kwb: e.kwb,
                    g_b: e.g_b(),
                },
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::ScenarioKind;
    use crate::lattice::triple_product;

    fn table(kind: ScenarioKind, lo: i64, hi: i64) -> FlopTable {
        let s = Scenario::new(kind, lo, hi).unwrap();
        flop_table(&s, &SearchOptions::default()).unwrap()
    }

    #[test]
    fn line_g4_has_four_e1_rows() {
        let t = table(ScenarioKind::LineBlowup, 4, 4);
        let got: Vec<_> = t
            .rows
            .iter()
            .map(|r| (r.ray, r.alpha, r.beta, r.d3, r.payload))
            .collect();
        let e1 = |a, b, d3, r_w, kw3, kwb, g_b| {
            (RayType::E1, a, b, d3, Payload::E1 { r_w, kw3, kwb, g_b })
        };
        assert_eq!(
            got,
            vec![
                e1(3, 1, 1, 1, 6, 1, 0),
                e1(4, 1, -17, 1, 18, 11, 4),
                e1(7, 2, -20, 2, 24, 14, 4),
                e1(11, 3, -65, 3, 54, 39, 14),
            ]
        );
    }

    #[test]
    fn point_g10_e1_goes_to_r1() {
        let t = table(ScenarioKind::PointBlowup, 10, 10);
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.rows[0].payload, Payload::D { dk2: 6 });
        assert_eq!(t.excluded.len(), 1);
        let ex = &t.excluded[0];
        assert_eq!(
            (
                ex.row.ray,
                ex.row.alpha,
                ex.row.beta,
                ex.rule,
                ex.lower_bound
            ),
            (RayType::E1, 1, 1, RuleId::R1, 2)
        );
    }

    #[test]
    fn line_g6_alpha3_beta2_goes_to_r2() {
        let t = table(ScenarioKind::LineBlowup, 6, 6);
        assert!(t
            .excluded
            .iter()
            .any(|e| (e.row.alpha, e.row.beta, e.rule) == (3, 2, RuleId::R2)));
    }

    #[test]
    fn no_rows_past_the_bound() {
        assert!(table(ScenarioKind::ConicBlowup, 13, 40).rows.is_empty());
        assert!(table(ScenarioKind::PointBlowup, 14, 40).rows.is_empty());
    }

    #[test]
    fn geometric_off_keeps_superset() {
        let s = Scenario::default_for(ScenarioKind::PointBlowup);
        let on = flop_table(&s, &SearchOptions::default()).unwrap();
        let off = flop_table(&s.with_geometric(false), &SearchOptions::default()).unwrap();
        assert!(off.excluded.is_empty());
        assert_eq!(off.rows.len(), on.rows.len() + on.excluded.len());
    }

    #[test]
    fn rejects_general_curve() {
        let s = Scenario::default_for(ScenarioKind::GeneralCurve);
        assert!(flop_table(&s, &SearchOptions::default()).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let s = Scenario::default_for(ScenarioKind::PointBlowup);
        let opts = SearchOptions {
            budget: 10,
            ..SearchOptions::default()
        };
        assert!(matches!(
            flop_table(&s, &opts),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    /// Signature constants re-derived through the trilinear form.
    #[test]
    fn rows_satisfy_signature_via_triple_product() {
        for kind in [
            ScenarioKind::PointBlowup,
            ScenarioKind::ConicBlowup,
            ScenarioKind::LineBlowup,
        ] {
            let s = Scenario::default_for(kind).with_geometric(false);
            for row in flop_table(&s, &SearchOptions::default()).unwrap().rows {
                let inv = s.flop_invariants(row.g).unwrap();
                let d = row.class().as_pair();
                let d2k = triple_product(&inv, d, d, (1, 0)).unwrap();
                let dk2 = triple_product(&inv, d, (1, 0), (1, 0)).unwrap();
                let sig = type_signature(row.ray);
                if let Some(want) = sig.d2k_expected {
                    assert_eq!(d2k, want, "{row}");
                }
                if let Some((lo, hi)) = sig.dk2_range {
                    assert!((lo..=hi).contains(&dk2), "{row}");
                }
                if let Payload::E1 { r_w, kw3, .. } = row.payload {
                    let kw = (row.alpha + 1, -row.beta);
                    assert_eq!(kw3, triple_product(&inv, kw, kw, (1, 0)).unwrap(), "{row}");
                    assert_eq!(kw3 % (r_w * r_w * r_w), 0);
                }
            }
        }
    }
}
