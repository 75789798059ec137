//! Reference rows for the three two-ray-game tables and the other result sets, in canonical row
//! order `(g, type, α, β)`.

use serde::{Deserialize, Serialize};

use crate::engine::{DivContSolution, Payload, ScenarioKind, SurvivorTuple, TableRow};
use crate::raytypes::{RaySubtype, RayType};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonFanoGolden {
    pub e1_raw: Vec<SurvivorTuple>,
    pub c_raw: Vec<SurvivorTuple>,
    pub e_raw: Vec<SurvivorTuple>,
    pub d_raw: Vec<SurvivorTuple>,
    /// Type D tuples left after the curated degree/genus constraints.
    pub d_curated: Vec<SurvivorTuple>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenTables {
    pub points: Vec<TableRow>,
    pub conics: Vec<TableRow>,
    pub lines: Vec<TableRow>,
    pub divcont_points: Vec<DivContSolution>,
    pub divcont_conics: Vec<DivContSolution>,
    pub divcont_lines: Vec<DivContSolution>,
    pub nonfano: NonFanoGolden,
}

#[allow(clippy::too_many_arguments)]
fn e1(g: i64, alpha: i64, beta: i64, d3: i64, r_w: i64, kw3: i64, kwb: i64, g_b: i64) -> TableRow {
    TableRow {
        g,
        ray: RayType::E1,
        subtype: None,
        alpha,
        beta,
        d3,
        payload: Payload::E1 { r_w, kw3, kwb, g_b },
    }
}

fn e2(g: i64, alpha: i64, beta: i64, r_w: i64, kw3: i64) -> TableRow {
    TableRow {
        g,
        ray: RayType::E2,
        subtype: None,
        alpha,
        beta,
        d3: 1,
        payload: Payload::E2 { r_w, kw3 },
    }
}

fn c1(g: i64, alpha: i64, beta: i64, deg_delta: i64) -> TableRow {
    TableRow {
        g,
        ray: RayType::C,
        subtype: Some(RaySubtype::C1),
        alpha,
        beta,
        d3: 0,
        payload: Payload::C { deg_delta },
    }
}

fn d1(g: i64, alpha: i64, beta: i64, dk2: i64) -> TableRow {
    TableRow {
        g,
        ray: RayType::D,
        subtype: Some(RaySubtype::D1),
        alpha,
        beta,
        d3: 0,
        payload: Payload::D { dk2 },
    }
}

fn dc(list: &[(i64, i64, i64)]) -> Vec<DivContSolution> {
    list.iter()
        .map(|&(g, alpha, beta)| DivContSolution { g, alpha, beta })
        .collect()
}

fn ray(ray: RayType, g: i64, d: i64, h: i64, alpha: i64, beta: i64) -> SurvivorTuple {
    SurvivorTuple::Ray {
        ray,
        g,
        d,
        h,
        alpha,
        beta,
    }
}

impl GoldenTables {
    pub fn embedded() -> Self {
        let points = vec![
            e2(6, 4, 1, 1, 10),
            e1(6, 4, 1, 0, 1, 8, 2, 0),
            e1(6, 5, 1, -22, 1, 22, 14, 5),
            e1(6, 9, 2, -30, 2, 32, 20, 6),
            e2(7, 2, 1, 1, 12),
            e1(7, 2, 1, 0, 1, 10, 2, 0),
            e1(7, 5, 2, -36, 2, 40, 24, 7),
            e1(8, 3, 2, -6, 2, 24, 8, 0),
            e1(8, 5, 3, -42, 3, 54, 30, 7),
            e2(9, 1, 1, 1, 16),
            e1(9, 1, 1, 0, 1, 14, 2, 0),
            d1(10, 1, 1, 6),
            c1(11, 1, 1, 4),
            e1(12, 3, 4, -22, 4, 64, 24, 0),
            e1(13, 2, 3, -16, 3, 54, 18, 0),
        ];
        let conics = vec![
            e2(5, 4, 1, 1, 10),
            e1(5, 4, 1, 0, 1, 8, 2, 0),
            e1(5, 5, 1, -22, 1, 22, 14, 5),
            e1(5, 9, 2, -30, 2, 32, 20, 6),
            e2(6, 2, 1, 1, 12),
            e1(6, 2, 1, 0, 1, 10, 2, 0),
            e1(6, 5, 2, -36, 2, 40, 24, 7),
            e1(7, 3, 2, -6, 2, 24, 8, 0),
            e1(7, 5, 3, -42, 3, 54, 30, 7),
            e2(8, 1, 1, 1, 16),
            e1(8, 1, 1, 0, 1, 14, 2, 0),
            d1(9, 1, 1, 6),
            c1(10, 1, 1, 4),
            e1(11, 3, 4, -22, 4, 64, 24, 0),
            e1(12, 2, 3, -16, 3, 54, 18, 0),
        ];
        let lines = vec![
            e1(4, 3, 1, 1, 1, 6, 1, 0),
            e1(4, 4, 1, -17, 1, 18, 11, 4),
            e1(4, 7, 2, -20, 2, 24, 14, 4),
            e1(4, 11, 3, -65, 3, 54, 39, 14),
            c1(5, 2, 1, 7),
            e1(5, 2, 1, -9, 1, 16, 7, 2),
            e1(6, 1, 1, 1, 1, 10, 1, 0),
            d1(7, 1, 1, 5),
            c1(8, 1, 1, 5),
            e1(9, 3, 4, -32, 4, 64, 28, 3),
            e1(10, 2, 3, -23, 3, 54, 21, 2),
            e1(12, 1, 2, -8, 2, 40, 10, 0),
        ];
        GoldenTables {
            points,
            conics,
            lines,
            divcont_points: dc(&[(6, 2, 1), (6, 4, 2), (7, 1, 1), (7, 2, 2), (9, 1, 2)]),
            divcont_conics: dc(&[(5, 2, 1), (5, 4, 2), (6, 1, 1), (6, 2, 2), (8, 1, 2)]),
            divcont_lines: dc(&[(4, 3, 2), (6, 1, 2)]),
            nonfano: NonFanoGolden {
                e1_raw: vec![SurvivorTuple::E1 {
                    g: 8,
                    d: 4,
                    h: 1,
                    beta: 2,
                    gamma: 2,
                    v: 4,
                }],
                c_raw: vec![],
                e_raw: vec![],
                d_raw: vec![
                    ray(RayType::D, 7, 3, 1, 1, 1),
                    ray(RayType::D, 9, 4, 1, 1, 1),
                    ray(RayType::D, 11, 5, 1, 1, 1),
                ],
                d_curated: vec![
                    ray(RayType::D, 9, 4, 1, 1, 1),
                    ray(RayType::D, 11, 5, 1, 1, 1),
                ],
            },
        }
    }

    pub fn table(&self, kind: ScenarioKind) -> &[TableRow] {
        match kind {
            ScenarioKind::PointBlowup => &self.points,
            ScenarioKind::ConicBlowup => &self.conics,
            ScenarioKind::LineBlowup => &self.lines,
            ScenarioKind::GeneralCurve => &[],
        }
    }

    pub fn divcont(&self, kind: ScenarioKind) -> &[DivContSolution] {
        match kind {
            ScenarioKind::PointBlowup => &self.divcont_points,
            ScenarioKind::ConicBlowup => &self.divcont_conics,
            ScenarioKind::LineBlowup => &self.divcont_lines,
            ScenarioKind::GeneralCurve => &[],
        }
    }
}
