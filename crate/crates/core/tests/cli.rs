use std::process::{Command, Output};

use fanocheck::golden::GoldenTables;
use fanocheck::report::{OutputDocument, Row};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fanocheck"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn tables_point_markdown() {
    let o = run(&["tables", "point", "--format", "md"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.ends_with("| kept |")).count(), 15);
    assert!(text.contains("| 6 | E1 | (5, 1) | -22 | (1, 22, 14, 5) | kept |"));
    assert!(text.contains("excluded by R1"));
}

#[test]
fn tables_line_g4_csv() {
    let o = run(&[
        "tables", "line", "--g-min", "4", "--g-max", "4", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(
        lines[0],
        "g,type,alpha,beta,d3,r_w,kw3,kwb,g_b,deg_delta,dk2,status,rule"
    );
    assert_eq!(lines.len(), 5);
    assert!(lines[1..].iter().all(|l| l.starts_with("4,E1,")));
}

#[test]
fn tables_conic_past_bound_is_empty() {
    let o = run(&[
        "tables", "conic", "--g-min", "13", "--g-max", "40", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: OutputDocument = serde_json::from_slice(&o.stdout).unwrap();
    assert!(doc.rows.is_empty());
}

#[test]
fn json_round_trip_is_identity() {
    for args in [
        &["tables", "line", "--format", "json"][..],
        &["nonfano", "--format", "json"],
        &["divcont", "point", "--format", "json"],
        &["defect", "line", "--format", "json"],
        &["gbound", "--format", "json"],
    ] {
        let o = run(args);
        let text = stdout(&o);
        let doc: OutputDocument = serde_json::from_str(&text).unwrap();
        let mut again = serde_json::to_string_pretty(&doc).unwrap();
        again.push('\n');
        assert_eq!(again, text, "{args:?}");
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let mut keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        keys.sort();
        assert_eq!(keys, ["diff", "rows", "scenario", "verdict"]);
    }
}

#[test]
fn nonfano_flags() {
    assert_eq!(run(&["nonfano"]).status.code(), Some(0));
    let o = run(&["nonfano", "--no-geometric"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&[
        "nonfano",
        "--no-curated",
        "--no-geometric",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("D,7,3,1,1,1,,,unresolved,,"));
}

#[test]
fn verify_passes_and_negative_control_fails() {
    let o = run(&["verify", "--bounds-scale", "2"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );

    let mut golden = GoldenTables::embedded();
    golden.conics[3].d3 -= 1;
    let dir = std::env::temp_dir().join(format!("fanocheck-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("golden.json");
    std::fs::write(&path, serde_json::to_string(&golden).unwrap()).unwrap();
    let o = run(&[
        "verify",
        "--golden-file",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("conics-table"));
    let doc: OutputDocument = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc.verdict.failures, ["conics-table"]);
    let failing: Vec<_> = doc
        .rows
        .iter()
        .filter_map(|r| match r {
            Row::Check(c) if !c.pass => Some(c.criterion),
            _ => None,
        })
        .collect();
    assert_eq!(failing, [2]);
}

#[test]
fn emit_golden_round_trips() {
    let o = run(&["--emit-golden"]);
    assert_eq!(o.status.code(), Some(0));
    let g: GoldenTables = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(g, GoldenTables::embedded());
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["tables", "hexagon"][..],
        &["tables"],
        &["tables", "point", "--g-min", "3"],
        &["nonfano", "--g-max", "13"],
        &["gbound", "--g-max", "12"],
        &["verify", "--bounds-scale", "0"],
        &["--format", "xml", "gbound"],
        &[],
        &["verify", "--golden-file", "/nonexistent/golden.json"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn gbound_reports_both_scenarios() {
    let o = run(&["gbound", "--g-max", "13", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "scenario,g_max,max_feasible_g\nconic,13,12\npoint,13,13\n"
    );
}

#[test]
fn divcont_line_and_defect_exit_codes() {
    let o = run(&["divcont", "line", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "g,alpha,beta,omega_sq,obstruction\n4,3,2,,\n6,1,2,,\n"
    );
    let o = run(&["defect", "point", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("7,E2,2,1,1,-29,true"));
}
