//! Grid check of `-α D^2.(-K) + D^3 = dβ(β-α)(α+β) + (2h-2)β(α+β)^2`.

use std::ops::RangeInclusive;

use crate::checked::{add, mul, prod, sub};
use crate::error::Result;
use crate::lattice::{blowup_invariants, d_intersections, Center, DivisorClass};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityGrid {
    pub g: RangeInclusive<i64>,
    pub d: RangeInclusive<i64>,
    pub h: RangeInclusive<i64>,
    pub alpha: RangeInclusive<i64>,
    pub beta: RangeInclusive<i64>,
}

impl Default for IdentityGrid {
    fn default() -> Self {
        IdentityGrid {
            g: 6..=12,
            d: 1..=19,
            h: 0..=10,
            alpha: 1..=8,
            beta: 1..=8,
        }
    }
}

/// Both sides of the identity at one point.
pub fn identity_sides(g: i64, d: i64, h: i64, alpha: i64, beta: i64) -> Result<(i64, i64)> {
    let inv = blowup_invariants(g, Center::curve(d, h)?)?;
    let x = d_intersections(&inv, DivisorClass::new(alpha, beta)?)?;
    let lhs = add(mul(-x.d2k, alpha)?, x.d3)?;
    let ab = add(alpha, beta)?;
    let rhs = add(
        prod(&[d, beta, sub(beta, alpha)?, ab])?,
        prod(&[sub(mul(2, h)?, 2)?, beta, ab, ab])?,
    )?;
    Ok((lhs, rhs))
}

/// `(g, d, h, α, β)`
pub type GridPoint = (i64, i64, i64, i64, i64);

/// First grid point where the sides differ, if any.
pub fn identity_counterexample(grid: &IdentityGrid) -> Result<Option<GridPoint>> {
    for g in grid.g.clone() {
        for d in grid.d.clone() {
            for h in grid.h.clone() {
                for a in grid.alpha.clone() {
                    for b in grid.beta.clone() {
                        let (l, r) = identity_sides(g, d, h, a, b)?;
                        if l != r {
                            return Ok(Some((g, d, h, a, b)));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

pub fn identity_sweep(grid: &IdentityGrid) -> Result<bool> {
    Ok(identity_counterexample(grid)?.is_none())
}
