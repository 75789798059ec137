//! Divisorial contractions `Y -> W` with `α(-K)^3 = β(-K)^2.E`, `β ∈ {1, 2}`.

use serde::{Deserialize, Serialize};

use super::Scenario;
use crate::checked::mul;
use crate::error::{Error, Result};
use crate::lattice::{omega_d_squared, DivisorClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DivContSolution {
    pub g: i64,
    pub alpha: i64,
    pub beta: i64,
}

/// Solved exactly per genus; there is no search bound to tune.
pub fn divcont_solutions(s: &Scenario) -> Result<Vec<DivContSolution>> {
    if !s.kind.is_flop() {
        return Err(Error::InvalidArgument(format!(
            "{:?} has no divisorial list",
            s.kind
        )));
    }
    let mut out = Vec::new();
    for g in s.genera() {
        let inv = s.y_invariants(g)?;
        for beta in [1, 2] {
            let rhs = mul(inv.i2, beta)?;
            if inv.i3 > 0 && rhs % inv.i3 == 0 && rhs / inv.i3 >= 1 {
                out.push(DivContSolution {
                    g,
                    alpha: rhs / inv.i3,
                    beta,
                });
            }
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Obstruction {
    /// `ω_D^2` is odd.
    OddVsEven,
    /// `ω_D^2` is even but not divisible by 4.
    NotDiv4,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParityWitness {
    pub omega_sq: i64,
    pub obstruction: Obstruction,
}

/// `ω_D^2 = (K_Y + D)^2.D` must lie in `4Z` when `β = 1`.
pub fn divcont_parity_witness(s: &Scenario, sol: DivContSolution) -> Result<ParityWitness> {
    if sol.beta != 1 {
        return Err(Error::InvalidArgument(format!(
            "parity witness needs beta = 1, got {}",
            sol.beta
        )));
    }
    let inv = s.y_invariants(sol.g)?;
    let omega_sq = omega_d_squared(&inv, DivisorClass::new(sol.alpha, sol.beta)?)?;
    let obstruction = match omega_sq.rem_euclid(4) {
        1 | 3 => Obstruction::OddVsEven,
        2 => Obstruction::NotDiv4,
        _ => Obstruction::None,
    };
    Ok(ParityWitness {
        omega_sq,
        obstruction,
    })
}
