//! Genus-bound scan and the bound-stability oracle.

use serde::{Deserialize, Serialize};

use super::{divcont_solutions, flop_table, nonfano_search, Scenario, ScenarioKind, SearchOptions};
use crate::error::{Error, Result};

/// Largest genus with any feasible flop row or divisorial solution over
/// `[min_g, g_max]`.
pub fn gbound_scan_for(
    kind: ScenarioKind,
    g_max: i64,
    opts: &SearchOptions,
) -> Result<Option<i64>> {
    let s = Scenario::new(kind, kind.min_g(), g_max)?;
    let flop = flop_table(&s, opts)?.max_g();
    let div = divcont_solutions(&s)?.iter().map(|x| x.g).max();
    Ok(flop.max(div))
}

/// The conic-blowup bound; requires `g_max >= 13`.
pub fn gbound_scan(g_max: i64, opts: &SearchOptions) -> Result<i64> {
    if g_max < 13 {
        return Err(Error::OutOfRange {
            what: "g_max",
            value: g_max,
            lo: 13,
            hi: i64::MAX,
        });
    }
    gbound_scan_for(ScenarioKind::ConicBlowup, g_max, opts)?
        .ok_or_else(|| Error::Contract("no feasible conic case at all".into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "enumerator", content = "scenario", rename_all = "snake_case")]
pub enum Enumerator {
    FlopTable(ScenarioKind),
    DivCont(ScenarioKind),
    NonFano,
}

impl Enumerator {
    pub fn all() -> Vec<Enumerator> {
        let flops = [
            ScenarioKind::PointBlowup,
            ScenarioKind::ConicBlowup,
            ScenarioKind::LineBlowup,
        ];
        let mut v: Vec<_> = flops.iter().map(|&k| Enumerator::FlopTable(k)).collect();
        v.extend(flops.iter().map(|&k| Enumerator::DivCont(k)));
        v.push(Enumerator::NonFano);
        v
    }

    /// Serialized result on the default scenario, for set comparison.
    fn run(&self, opts: &SearchOptions) -> Result<String> {
        let json = |r: std::result::Result<String, serde_json::Error>| {
            r.map_err(|e| Error::Contract(format!("serialization failed: {e}")))
        };
        match *self {
            Enumerator::FlopTable(k) => json(serde_json::to_string(&flop_table(
                &Scenario::default_for(k),
                opts,
            )?)),
            Enumerator::DivCont(k) => json(serde_json::to_string(&divcont_solutions(
                &Scenario::default_for(k),
            )?)),
            Enumerator::NonFano => json(serde_json::to_string(&nonfano_search(
                &Scenario::default_for(ScenarioKind::GeneralCurve),
                opts,
            )?)),
        }
    }
}

/// Re-runs `target` with every derived cap multiplied by `scale` and reports
/// whether the output is unchanged.
pub fn bound_stability(target: Enumerator, scale: i64, opts: &SearchOptions) -> Result<bool> {
    if scale < 2 {
        return Err(Error::OutOfRange {
            what: "scale",
            value: scale,
            lo: 2,
            hi: super::MAX_SCALE,
        });
    }
    let base = target.run(&opts.scaled(1))?;
    let wide = target.run(&opts.scaled(scale))?;
    Ok(base == wide)
}
