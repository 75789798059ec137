//! Flopping-curve defect: `D^3` recomputed with the un-flopped `E^3`.

use serde::{Deserialize, Serialize};

use super::{Scenario, TableRow};
use crate::error::Result;
use crate::lattice::d_intersections;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DefectResult {
    pub row: TableRow,
    /// `D^3` if `(E+)^3` were equal to `E^3`.
    pub assumed_d3: i64,
    pub table_d3: i64,
    pub mismatch: bool,
}

pub fn defect_check(s: &Scenario, row: &TableRow) -> Result<DefectResult> {
    let inv = s.y_invariants(row.g)?;
    let assumed_d3 = d_intersections(&inv, row.class())?.d3;
    Ok(DefectResult {
        row: *row,
        assumed_d3,
        table_d3: row.d3,
        mismatch: assumed_d3 != row.d3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{flop_table, ScenarioKind, SearchOptions};
    use crate::raytypes::RayType;

    fn find(kind: ScenarioKind, g: i64, ray: RayType, alpha: i64, beta: i64) -> DefectResult {
        let s = Scenario::default_for(kind);
        let t = flop_table(&s, &SearchOptions::default()).unwrap();
        let row = t
            .rows
            .iter()
            .find(|r| (r.g, r.ray, r.alpha, r.beta) == (g, ray, alpha, beta))
            .expect("row present");
        defect_check(&s, row).unwrap()
    }

    #[test]
    fn spot_values() {
        let r = find(ScenarioKind::PointBlowup, 7, RayType::E2, 2, 1);
        assert_eq!((r.assumed_d3, r.table_d3, r.mismatch), (-29, 1, true));
        let r = find(ScenarioKind::LineBlowup, 12, RayType::E1, 1, 2);
        assert_eq!((r.assumed_d3, r.table_d3, r.mismatch), (-32, -8, true));
        let r = find(ScenarioKind::ConicBlowup, 7, RayType::E1, 3, 2);
        assert_eq!((r.assumed_d3, r.table_d3, r.mismatch), (-126, -6, true));
    }

    #[test]
    fn point_formula() {
        // (2g-10)α^3 - 12α^2β - 6αβ^2 - β^3
        let s = Scenario::default_for(ScenarioKind::PointBlowup);
        for row in flop_table(&s, &SearchOptions::default()).unwrap().rows {
            let (a, b) = (row.alpha, row.beta);
            let want = (2 * row.g - 10) * a * a * a - 12 * a * a * b - 6 * a * b * b - b * b * b;
            assert_eq!(defect_check(&s, &row).unwrap().assumed_d3, want);
        }
    }
}
