//! Intersection algebra on the rank-2 Picard lattice of a blowup `Y -> X`.
//!
//! Classes are written in the basis `(-K_Y, E)`: the pair `(a, b)` stands for
//! `a(-K_Y) + bE`. A divisor `D ~ -αK_Y - βE` is therefore the pair `(α, -β)`.

use serde::{Deserialize, Serialize};

use crate::checked::{add, mul, prod, sub, sum_of_products};
use crate::error::{Error, Result};

/// Center of the blowup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Center {
    Point,
    /// Smooth curve of anticanonical degree `d` and genus `h`.
    Curve {
        d: i64,
        h: i64,
    },
}

impl Center {
    pub const LINE: Center = Center::Curve { d: 1, h: 0 };
    pub const CONIC: Center = Center::Curve { d: 2, h: 0 };

    pub fn curve(d: i64, h: i64) -> Result<Self> {
        let c = Center::Curve { d, h };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Center::Point => Ok(()),
            Center::Curve { d, h } if d >= 1 && h >= 0 => Ok(()),
            Center::Curve { d, h } => Err(Error::InvalidArgument(format!(
                "curve center needs d >= 1 and h >= 0, got d = {d}, h = {h}"
            ))),
        }
    }

    /// Genus of the center; a point counts as genus 0.
    pub fn genus(&self) -> i64 {
        match *self {
            Center::Point => 0,
            Center::Curve { h, .. } => h,
        }
    }
}

/// `((-K)^3, (-K)^2.E, (-K).E^2, E^3)` on the blowup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct YInvariants {
    pub i3: i64,
    pub i2: i64,
    pub i1: i64,
    pub e3: i64,
}

impl YInvariants {
    pub const fn new(i3: i64, i2: i64, i1: i64, e3: i64) -> Self {
        YInvariants { i3, i2, i1, e3 }
    }

    /// The invariant with `k` factors of `E`.
    fn by_e_count(&self, k: usize) -> i64 {
        [self.i3, self.i2, self.i1, self.e3][k]
    }

    /// Same quadruple with `E^3` replaced; flops keep the first three numbers.
    pub const fn with_e3(self, e3: i64) -> Self {
        YInvariants { e3, ..self }
    }
}

/// `D ~ -αK_Y - βE` with `α, β >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DivisorClass {
    pub alpha: i64,
    pub beta: i64,
}

impl DivisorClass {
    pub fn new(alpha: i64, beta: i64) -> Result<Self> {
        if alpha < 1 || beta < 1 {
            return Err(Error::InvalidArgument(format!(
                "divisor class needs alpha, beta >= 1, got ({alpha}, {beta})"
            )));
        }
        Ok(DivisorClass { alpha, beta })
    }

    /// Coordinates in the `(-K, E)` basis.
    pub fn as_pair(&self) -> (i64, i64) {
        (self.alpha, -self.beta)
    }
}

pub fn blowup_invariants(g: i64, center: Center) -> Result<YInvariants> {
    if g < 2 {
        return Err(Error::InvalidArgument(format!(
            "genus g = {g} must be >= 2"
        )));
    }
    center.validate()?;
    match center {
        Center::Point => Ok(YInvariants::new(sub(mul(2, g)?, 10)?, 4, -2, 1)),
        Center::Curve { d, h } => {
            let two_h = mul(2, h)?;
            // 2g - 2d + 2h - 4
            let i3 = sub(add(sub(mul(2, g)?, mul(2, d)?)?, two_h)?, 4)?;
            let i2 = add(sub(d, two_h)?, 2)?;
            let i1 = sub(two_h, 2)?;
            let e3 = sub(0, sub(add(d, two_h)?, 2)?)?;
            Ok(YInvariants::new(i3, i2, i1, e3))
        }
    }
}

/// `(a1(-K)+b1E).(a2(-K)+b2E).(a3(-K)+b3E)` by expanding all eight monomials.
pub fn triple_product(
    inv: &YInvariants,
    u: (i64, i64),
    v: (i64, i64),
    w: (i64, i64),
) -> Result<i64> {
    let mut total = 0i64;
    for mask in 0u8..8 {
        let pick = |arg: (i64, i64), bit: u8| if mask & bit == 0 { arg.0 } else { arg.1 };
        let k = mask.count_ones() as usize;
        let term = prod(&[pick(u, 1), pick(v, 2), pick(w, 4), inv.by_e_count(k)])?;
        total = add(total, term)?;
    }
    Ok(total)
}

/// `D^3`, `D^2.(-K)` and `D.(-K)^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DIntersections {
    pub d3: i64,
    pub d2k: i64,
    pub dk2: i64,
}

pub fn d_intersections(inv: &YInvariants, dc: DivisorClass) -> Result<DIntersections> {
    let (a, b) = (dc.alpha, dc.beta);
    let YInvariants { i3, i2, i1, e3 } = *inv;
    let d3 = sum_of_products(&[
        &[a, a, a, i3],
        &[-3, a, a, b, i2],
        &[3, a, b, b, i1],
        &[-1, b, b, b, e3],
    ])?;
    let d2k = sum_of_products(&[&[a, a, i3], &[-2, a, b, i2], &[b, b, i1]])?;
    let dk2 = sum_of_products(&[&[a, i3], &[-1, b, i2]])?;
    Ok(DIntersections { d3, d2k, dk2 })
}

/// `(K_Y + D)^2 . D`.
pub fn omega_d_squared(inv: &YInvariants, dc: DivisorClass) -> Result<i64> {
    let kd = (sub(dc.alpha, 1)?, -dc.beta);
    triple_product(inv, kd, kd, dc.as_pair())
}

/// `chi(Y, -K_Y) = (-K_Y)^3 / 2 + 3`.
pub fn chi_minus_k(inv: &YInvariants) -> Result<i64> {
    if inv.i3 % 2 != 0 {
        return Err(Error::Contract(format!("(-K)^3 = {} is odd", inv.i3)));
    }
    add(inv.i3 / 2, 3)
}

/// `chi(E, -K_Y|_E)` for a point or a rational curve.
///
/// Rejects centers of positive genus; use [`chi_exceptional_general`] for
/// those.
pub fn chi_exceptional(inv: &YInvariants, center: Center) -> Result<i64> {
    if center.genus() != 0 {
        return Err(Error::Contract(format!(
            "restricted form covers genus 0 centers only, got h = {}",
            center.genus()
        )));
    }
    chi_exceptional_general(inv, center)
}

/// `chi(E, -K_Y|_E) = (1 - h) + (-K)^2.E - (-K).E^2 / 2`, with `chi(O_E) = 1 - h`.
pub fn chi_exceptional_general(inv: &YInvariants, center: Center) -> Result<i64> {
    if inv.i1 % 2 != 0 {
        return Err(Error::Contract(format!("(-K).E^2 = {} is odd", inv.i1)));
    }
    sub(add(sub(1, center.genus())?, inv.i2)?, inv.i1 / 2)
}

/// Lower bound for `h^0(Y, -K_Y - E)`.
pub fn section_lower_bound(inv: &YInvariants, center: Center) -> Result<i64> {
    sub(chi_minus_k(inv)?, chi_exceptional_general(inv, center)?)
}

/// `h^0(X, -mK_X)` from Riemann-Roch and Kodaira vanishing.
pub fn rr_h0(g: i64, m: i64) -> Result<i64> {
    if m < 0 {
        return Err(Error::InvalidArgument(format!("m = {m} must be >= 0")));
    }
    let top = prod(&[m, add(m, 1)?, add(mul(2, m)?, 1)?, sub(mul(2, g)?, 2)?])?;
    if top % 12 != 0 {
        return Err(Error::Contract(format!("{top} is not divisible by 12")));
    }
    add(top / 12, add(mul(2, m)?, 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(g: i64) -> YInvariants {
        blowup_invariants(g, Center::Point).unwrap()
    }

    #[test]
    fn blowup_examples() {
        assert_eq!(pt(12), YInvariants::new(14, 4, -2, 1));
        assert_eq!(
            blowup_invariants(8, Center::LINE).unwrap(),
            YInvariants::new(10, 3, -2, 1)
        );
        assert_eq!(
            blowup_invariants(5, Center::CONIC).unwrap(),
            YInvariants::new(2, 4, -2, 0)
        );
        assert_eq!(
            blowup_invariants(8, Center::curve(4, 1).unwrap()).unwrap(),
            YInvariants::new(6, 4, 0, -4)
        );
    }

    #[test]
    fn blowup_rejects_bad_input() {
        assert!(blowup_invariants(1, Center::Point).is_err());
        assert!(Center::curve(0, 0).is_err());
        assert!(blowup_invariants(5, Center::Curve { d: 1, h: -1 }).is_err());
        assert_eq!(
            blowup_invariants(i64::MAX, Center::Point),
            Err(Error::Overflow)
        );
        assert!(blowup_invariants(1_000_000, Center::curve(3, 2).unwrap()).is_ok());
    }

    #[test]
    fn triple_product_examples() {
        let inv = YInvariants::new(2, 4, -2, 1);
        assert_eq!(triple_product(&inv, (1, 0), (1, 0), (1, 0)), Ok(2));
        assert_eq!(triple_product(&inv, (0, 1), (0, 1), (0, 1)), Ok(1));
        assert_eq!(triple_product(&pt(12), (1, -1), (1, -1), (1, 0)), Ok(4));
    }

    #[test]
    fn d_intersection_examples() {
        let one = DivisorClass::new(1, 1).unwrap();
        assert_eq!(d_intersections(&pt(13), one).unwrap().d3, 2 * 13 - 29);
        let r = d_intersections(&pt(10), one).unwrap();
        assert_eq!((r.d2k, r.dk2), (0, 6));
        // conic g = 6 computed on the shifted point quadruple
        let shifted = pt(7);
        assert_eq!(
            d_intersections(&shifted, one).unwrap().dk2,
            shifted.i3 - shifted.i2
        );
    }

    #[test]
    fn omega_examples() {
        let conic6 = blowup_invariants(6, Center::CONIC).unwrap();
        assert_eq!(
            omega_d_squared(&conic6, DivisorClass::new(1, 1).unwrap()),
            Ok(-2)
        );
        assert_eq!(
            omega_d_squared(&pt(6), DivisorClass::new(2, 1).unwrap()),
            Ok(-25)
        );
        let zero = YInvariants::new(0, 0, 0, 0);
        assert_eq!(
            omega_d_squared(&zero, DivisorClass::new(1, 7).unwrap()),
            Ok(0)
        );
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi_minus_k(&pt(12)), Ok(10));
        assert_eq!(
            chi_minus_k(&blowup_invariants(8, Center::LINE).unwrap()),
            Ok(8)
        );
        assert_eq!(chi_minus_k(&YInvariants::new(0, 1, 2, 3)), Ok(3));
        assert!(matches!(
            chi_minus_k(&YInvariants::new(3, 0, 0, 0)),
            Err(Error::Contract(_))
        ));

        assert_eq!(chi_exceptional(&pt(9), Center::Point), Ok(6));
        let line = blowup_invariants(9, Center::LINE).unwrap();
        assert_eq!(chi_exceptional(&line, Center::LINE), Ok(5));
        let c41 = Center::curve(4, 1).unwrap();
        let inv41 = blowup_invariants(8, c41).unwrap();
        assert!(chi_exceptional(&inv41, c41).is_err());
        assert_eq!(chi_exceptional_general(&inv41, c41), Ok(4));
        assert!(chi_exceptional_general(&YInvariants::new(0, 0, 1, 0), Center::Point).is_err());
    }

    #[test]
    fn section_bound_examples() {
        assert_eq!(section_lower_bound(&pt(12), Center::Point), Ok(4));
        let conic9 = blowup_invariants(9, Center::CONIC).unwrap();
        assert_eq!(section_lower_bound(&conic9, Center::CONIC), Ok(2));
        let c41 = Center::curve(4, 1).unwrap();
        assert_eq!(
            section_lower_bound(&blowup_invariants(8, c41).unwrap(), c41),
            Ok(2)
        );
    }

    #[test]
    fn section_bound_closed_forms() {
        for g in 4..40 {
            assert_eq!(section_lower_bound(&pt(g), Center::Point), Ok(g - 8));
            let line = blowup_invariants(g, Center::LINE).unwrap();
            assert_eq!(section_lower_bound(&line, Center::LINE), Ok(g - 5));
            let conic = blowup_invariants(g, Center::CONIC).unwrap();
            assert_eq!(section_lower_bound(&conic, Center::CONIC), Ok(g - 7));
            for d in 1..12 {
                for h in 0..6 {
                    let c = Center::curve(d, h).unwrap();
                    let inv = blowup_invariants(g, c).unwrap();
                    assert_eq!(section_lower_bound(&inv, c), Ok(g - 2 * d + 5 * h - 3));
                    assert_eq!(chi_exceptional_general(&inv, c), Ok(d - 4 * h + 4));
                }
            }
        }
    }

    #[test]
    fn rr_examples() {
        assert_eq!(rr_h0(4, 2), Ok(20));
        assert_eq!(rr_h0(4, 3), Ok(49));
        assert_eq!(rr_h0(5, 2), Ok(25));
        assert_eq!(rr_h0(7, 0), Ok(1));
        for g in 2..=100 {
            assert_eq!(rr_h0(g, 1), Ok(g + 2));
        }
        assert!(rr_h0(4, -1).is_err());
    }

    #[test]
    fn conic_is_shifted_point_except_e3() {
        for g in 5..40 {
            let conic = blowup_invariants(g, Center::CONIC).unwrap();
            let shifted = pt(g + 1);
            assert_eq!(shifted.with_e3(0), conic);
            assert_eq!(shifted.e3, 1);
        }
    }
}
