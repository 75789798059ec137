//! The full battery of checks behind `fanocheck verify`, one per criterion.

use crate::engine::{
    bound_stability, defect_check, divcont_parity_witness, divcont_solutions, flop_table,
    gbound_scan, identity_sweep, nonfano_search, Disposition, Enumerator, IdentityGrid,
    Obstruction, Scenario, ScenarioKind, SearchOptions, Survivor, SurvivorTuple,
};
use crate::error::Result;
use crate::golden::GoldenTables;
use crate::lattice::rr_h0;
use crate::report::{diff_rows, kind_name, CheckRow};

/// Outcome of one check before it is numbered.
type Outcome = Result<std::result::Result<String, String>>;

fn row(criterion: u32, name: &str, outcome: Outcome) -> CheckRow {
    let (pass, detail) = match outcome {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(e) => (false, format!("error: {e}")),
    };
    CheckRow {
        criterion,
        name: name.to_string(),
        pass,
        detail,
    }
}

fn table_check(kind: ScenarioKind, golden: &GoldenTables, opts: &SearchOptions) -> Outcome {
    let s = Scenario::default_for(kind);
    let t = flop_table(&s, opts)?;
    let d = diff_rows(kind_name(kind), &t.rows, golden.table(kind));
    if !d.is_empty() {
        return Ok(Err(format!("added {:?}, missing {:?}", d.added, d.missing)));
    }
    Ok(Ok(format!(
        "{} rows over g in [{}, {}], max g = {}",
        t.rows.len(),
        s.g_min,
        s.g_max,
        t.max_g().map_or("-".into(), |g| g.to_string())
    )))
}

pub fn check_points_table(golden: &GoldenTables, opts: &SearchOptions) -> CheckRow {
    row(
        1,
        "points-table",
        table_check(ScenarioKind::PointBlowup, golden, opts),
    )
}

pub fn check_conics_table(golden: &GoldenTables, opts: &SearchOptions) -> CheckRow {
    let outcome = (|| {
        let base = table_check(ScenarioKind::ConicBlowup, golden, opts)?;
        let bound = gbound_scan(40, opts)?;
        Ok(match base {
            Ok(d) if bound == 12 => Ok(format!("{d}; genus bound 12")),
            Ok(_) => Err(format!("genus bound scan gave {bound}, expected 12")),
            Err(e) => Err(e),
        })
    })();
    row(2, "conics-table", outcome)
}

pub fn check_lines_table(golden: &GoldenTables, opts: &SearchOptions) -> CheckRow {
    row(
        3,
        "lines-table",
        table_check(ScenarioKind::LineBlowup, golden, opts),
    )
}

pub fn check_divcont(golden: &GoldenTables) -> CheckRow {
    let outcome = (|| {
        let mut failures = Vec::new();
        for kind in [
            ScenarioKind::PointBlowup,
            ScenarioKind::ConicBlowup,
            ScenarioKind::LineBlowup,
        ] {
            let got = divcont_solutions(&Scenario::default_for(kind))?;
            let want = golden.divcont(kind);
            if got != want {
                failures.push(format!(
                    "{}: got {got:?}, expected {want:?}",
                    kind_name(kind)
                ));
            }
        }
        Ok(if failures.is_empty() {
            Ok("point 5, conic 5, line 2 solutions".to_string())
        } else {
            Err(failures.join("; "))
        })
    })();
    row(4, "divcont", outcome)
}

pub fn check_parity() -> CheckRow {
    let outcome = (|| {
        let pt = Scenario::default_for(ScenarioKind::PointBlowup);
        for sol in divcont_solutions(&pt)?.into_iter().filter(|s| s.beta == 1) {
            let w = divcont_parity_witness(&pt, sol)?;
            if w.obstruction != Obstruction::OddVsEven {
                return Ok(Err(format!(
                    "point {sol:?}: omega_D^2 = {} is even",
                    w.omega_sq
                )));
            }
        }
        let conic = Scenario::default_for(ScenarioKind::ConicBlowup);
        for sol in divcont_solutions(&conic)?
            .into_iter()
            .filter(|s| s.beta == 1 && s.g >= 6)
        {
            let w = divcont_parity_witness(&conic, sol)?;
            if w.obstruction == Obstruction::None {
                return Ok(Err(format!(
                    "conic {sol:?}: omega_D^2 = {} is in 4Z",
                    w.omega_sq
                )));
            }
            if (sol.g, sol.alpha) == (6, 1) && w.omega_sq != -2 {
                return Ok(Err(format!(
                    "conic (6,1,1): omega_D^2 = {}, expected -2",
                    w.omega_sq
                )));
            }
        }
        Ok(Ok(
            "point beta=1 solutions odd; conic (6,1,1) gives -2".to_string()
        ))
    })();
    row(5, "parity", outcome)
}

pub fn check_defect(opts: &SearchOptions) -> CheckRow {
    let outcome = (|| {
        let mut total = 0;
        for kind in [
            ScenarioKind::PointBlowup,
            ScenarioKind::ConicBlowup,
            ScenarioKind::LineBlowup,
        ] {
            let s = Scenario::default_for(kind);
            for r in flop_table(&s, opts)?.rows {
                let d = defect_check(&s, &r)?;
                if !d.mismatch {
                    return Ok(Err(format!("{} {r}: no defect", kind_name(kind))));
                }
                total += 1;
            }
        }
        Ok(Ok(format!("mismatch on all {total} rows")))
    })();
    row(6, "defect", outcome)
}

fn tuples(list: &[Survivor]) -> Vec<SurvivorTuple> {
    list.iter().map(|s| s.tuple).collect()
}

pub fn check_nonfano(golden: &GoldenTables, opts: &SearchOptions) -> CheckRow {
    let outcome = (|| {
        let base = Scenario::default_for(ScenarioKind::GeneralCurve);
        let raw = nonfano_search(&base.with_curated(false).with_geometric(false), opts)?;
        let g = &golden.nonfano;
        let sets = [
            ("E1", tuples(&raw.e1), &g.e1_raw),
            ("C", tuples(&raw.c), &g.c_raw),
            ("E2-E5", tuples(&raw.e), &g.e_raw),
            ("D", tuples(&raw.d), &g.d_raw),
        ];
        for (name, got, want) in &sets {
            if got != *want {
                return Ok(Err(format!("raw {name} set {got:?}, expected {want:?}")));
            }
        }
        let curated = nonfano_search(&base.with_geometric(false), opts)?;
        let d_left: Vec<_> = curated
            .d
            .iter()
            .filter(|s| s.disposition == Disposition::Unresolved)
            .map(|s| s.tuple)
            .collect();
        if d_left != g.d_curated {
            return Ok(Err(format!(
                "curated D set {d_left:?}, expected {:?}",
                g.d_curated
            )));
        }
        let full = nonfano_search(&base, opts)?;
        if let Some(s) = full.unresolved().next() {
            return Ok(Err(format!("unresolved survivor {}", s.tuple)));
        }
        let uncited = full.survivors().any(|s| match &s.disposition {
            Disposition::Excluded { citation, .. } => citation.is_empty(),
            Disposition::Unresolved => true,
        });
        if uncited {
            return Ok(Err("exclusion without citation".into()));
        }
        Ok(Ok(format!(
            "{} survivors, all excluded with citations",
            full.survivors().count()
        )))
    })();
    row(7, "nonfano", outcome)
}

pub fn check_identity() -> CheckRow {
    let outcome = identity_sweep(&IdentityGrid::default()).map(|ok| {
        if ok {
            Ok("identity holds on g 6..12, d 1..19, h 0..10, alpha, beta 1..8".to_string())
        } else {
            Err("identity fails on the grid".to_string())
        }
    });
    row(8, "identity", outcome)
}

pub fn check_riemann_roch() -> CheckRow {
    let outcome = (|| {
        for g in 3..=12 {
            let v = rr_h0(g, 1)?;
            if v != g + 2 {
                return Ok(Err(format!("h0(-K) at g = {g} is {v}")));
            }
        }
        let inst = [(rr_h0(4, 2)?, 20), (rr_h0(4, 3)?, 49), (rr_h0(5, 2)?, 25)];
        if inst.iter().any(|(a, b)| a != b) {
            return Ok(Err(format!("instances {inst:?}")));
        }
        Ok(Ok("m=1 gives g+2; 20, 49, 25".to_string()))
    })();
    row(9, "riemann-roch", outcome)
}

pub fn check_bound_stability(scale: i64, opts: &SearchOptions) -> CheckRow {
    let outcome = (|| {
        if scale < 2 {
            return Ok(Ok("skipped at bounds-scale 1".to_string()));
        }
        for e in Enumerator::all() {
            if !bound_stability(e, scale, opts)? {
                return Ok(Err(format!("{e:?} changes at scale {scale}")));
            }
        }
        Ok(Ok(format!("all enumerators unchanged at scale {scale}")))
    })();
    row(10, "bound-stability", outcome)
}

/// Parallel and single-threaded runs must agree exactly.
pub fn check_determinism(opts: &SearchOptions) -> CheckRow {
    let outcome = (|| {
        let par = SearchOptions {
            parallel: true,
            ..*opts
        };
        let seq = SearchOptions {
            parallel: false,
            ..*opts
        };
        for kind in [
            ScenarioKind::PointBlowup,
            ScenarioKind::ConicBlowup,
            ScenarioKind::LineBlowup,
        ] {
            let s = Scenario::default_for(kind).with_geometric(false);
            if flop_table(&s, &par)? != flop_table(&s, &seq)? {
                return Ok(Err(format!("{} table differs", kind_name(kind))));
            }
        }
        let s = Scenario::default_for(ScenarioKind::GeneralCurve);
        if nonfano_search(&s, &par)? != nonfano_search(&s, &seq)? {
            return Ok(Err("non-Fano verdict differs".into()));
        }
        Ok(Ok("parallel and sequential outputs identical".to_string()))
    })();
    row(11, "determinism", outcome)
}

pub fn run_all(golden: &GoldenTables, scale: i64, opts: &SearchOptions) -> Vec<CheckRow> {
    vec![
        check_points_table(golden, opts),
        check_conics_table(golden, opts),
        check_lines_table(golden, opts),
        check_divcont(golden),
        check_parity(),
        check_defect(opts),
        check_nonfano(golden, opts),
        check_identity(),
        check_riemann_roch(),
        check_bound_stability(scale, opts),
        check_determinism(opts),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn everything_passes_on_embedded_data() {
        let golden = GoldenTables::embedded();
        for c in run_all(&golden, 2, &SearchOptions::default()) {
            assert!(c.pass, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn corrupted_golden_is_caught() {
        let mut golden = GoldenTables::embedded();
        golden.lines[4].d3 += 1;
        let c = check_lines_table(&golden, &SearchOptions::default());
        assert!(!c.pass);
        assert!(c.detail.contains("missing"));
    }
}
