//! Output documents and their markdown, CSV and JSON renderings.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::engine::{
    DefectResult, Disposition, DivContSolution, ExcludedRow, Obstruction, ScenarioKind, Survivor,
    SurvivorTuple, TableRow,
};
use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Markdown,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "md" | "markdown" => Ok(Format::Markdown),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidArgument(format!("unknown format {other:?}"))),
        }
    }
}

/// What produced the document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioMeta {
    pub command: String,
    pub kind: Option<ScenarioKind>,
    pub g_min: Option<i64>,
    pub g_max: Option<i64>,
    pub geometric: bool,
    pub curated: bool,
    pub bounds_scale: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivContRow {
    pub g: i64,
    pub alpha: i64,
    pub beta: i64,
    pub omega_sq: Option<i64>,
    pub obstruction: Option<Obstruction>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    pub criterion: u32,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub kind: ScenarioKind,
    pub g_max: i64,
    pub max_feasible_g: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
pub enum Row {
    Table(TableRow),
    Excluded(ExcludedRow),
    DivCont(DivContRow),
    Defect(DefectResult),
    Survivor(Survivor),
    Check(CheckRow),
    Bound(BoundRow),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocVerdict {
    pub pass: bool,
    pub failures: Vec<String>,
}

impl DocVerdict {
    pub fn from_failures(failures: Vec<String>) -> Self {
        DocVerdict {
            pass: failures.is_empty(),
            failures,
        }
    }
}

/// Rows present on only one side of a golden comparison.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffSummary {
    pub target: String,
    pub added: Vec<String>,
    pub missing: Vec<String>,
}

impl DiffSummary {
    pub fn is_empty(&self) -> bool {
        self.added.is_empty() && self.missing.is_empty()
    }
}

/// Set difference of two row lists, rendered with `Display`.
pub fn diff_rows<T: PartialEq + ToString>(
    target: &str,
    computed: &[T],
    golden: &[T],
) -> DiffSummary {
    DiffSummary {
        target: target.to_string(),
        added: computed
            .iter()
            .filter(|r| !golden.contains(r))
            .map(T::to_string)
            .collect(),
        missing: golden
            .iter()
            .filter(|r| !computed.contains(r))
            .map(T::to_string)
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub scenario: ScenarioMeta,
    pub rows: Vec<Row>,
    pub verdict: DocVerdict,
    pub diff: Option<DiffSummary>,
}

impl OutputDocument {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("document serializes");
                s.push('\n');
                s
            }
            Format::Csv => render_csv(&self.rows),
            Format::Markdown => self.render_markdown(),
        }
    }

    fn render_markdown(&self) -> String {
        let mut out = String::new();
        let m = &self.scenario;
        let _ = write!(out, "## {}", m.command);
        if let Some(k) = m.kind {
            let _ = write!(out, " {}", kind_name(k));
        }
        if let (Some(lo), Some(hi)) = (m.g_min, m.g_max) {
            let _ = write!(out, " (g in [{lo}, {hi}])");
        }
        out.push_str("\n\n");
        for group in groups(&self.rows) {
            let (header, sep) = md_header(group[0]);
            out.push_str(header);
            out.push('\n');
            out.push_str(sep);
            out.push('\n');
            for r in group {
                out.push_str(&md_line(r));
                out.push('\n');
            }
            out.push('\n');
        }
        if self.rows.is_empty() {
            out.push_str("(no rows)\n\n");
        }
        if let Some(d) = &self.diff {
            if d.is_empty() {
                let _ = writeln!(out, "diff vs golden {}: none\n", d.target);
            } else {
                let _ = writeln!(out, "diff vs golden {}:", d.target);
                for a in &d.added {
                    let _ = writeln!(out, "+ {a}");
                }
                for x in &d.missing {
                    let _ = writeln!(out, "- {x}");
                }
                out.push('\n');
            }
        }
        let _ = writeln!(
            out,
            "verdict: {}",
            if self.verdict.pass { "PASS" } else { "FAIL" }
        );
        for f in &self.verdict.failures {
            let _ = writeln!(out, "  failed: {f}");
        }
        out
    }
}

pub fn kind_name(k: ScenarioKind) -> &'static str {
    match k {
        ScenarioKind::PointBlowup => "point",
        ScenarioKind::ConicBlowup => "conic",
        ScenarioKind::LineBlowup => "line",
        ScenarioKind::GeneralCurve => "general",
    }
}

/// Rows sharing a column layout. Table and excluded rows share one.
fn layout(r: &Row) -> u8 {
    match r {
        Row::Table(_) | Row::Excluded(_) => 0,
        Row::DivCont(_) => 1,
        Row::Defect(_) => 2,
        Row::Survivor(_) => 3,
        Row::Check(_) => 4,
        Row::Bound(_) => 5,
    }
}

fn groups(rows: &[Row]) -> Vec<Vec<&Row>> {
    let mut out: Vec<Vec<&Row>> = Vec::new();
    for r in rows {
        match out.last_mut() {
            Some(g) if layout(g[0]) == layout(r) => g.push(r),
            _ => out.push(vec![r]),
        }
    }
    out
}

fn md_header(r: &Row) -> (&'static str, &'static str) {
    match layout(r) {
        0 => (
            "| g | type | D | D^3 | other | status |",
            "|---|---|---|---|---|---|",
        ),
        1 => (
            "| g | alpha | beta | omega_D^2 | obstruction |",
            "|---|---|---|---|---|",
        ),
        2 => (
            "| g | type | D | D^3 (table) | D^3 (E^3 unchanged) | mismatch |",
            "|---|---|---|---|---|---|",
        ),
        3 => ("| type | tuple | status | reason |", "|---|---|---|---|"),
        4 => ("| # | check | result | detail |", "|---|---|---|---|"),
        _ => ("| scenario | g_max | max feasible g |", "|---|---|---|"),
    }
}

fn class_text(alpha: i64, beta: i64) -> String {
    format!("({alpha}, {beta})")
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

fn obstruction_name(o: Obstruction) -> &'static str {
    match o {
        Obstruction::OddVsEven => "odd",
        Obstruction::NotDiv4 => "not_div_4",
        Obstruction::None => "none",
    }
}

fn tuple_text(t: &SurvivorTuple) -> String {
    match *t {
        SurvivorTuple::E1 {
            g,
            d,
            h,
            beta,
            gamma,
            v,
        } => format!("(g,d,h,beta,gamma,v) = ({g},{d},{h},{beta},{gamma},{v})"),
        SurvivorTuple::Ray {
            g,
            d,
            h,
            alpha,
            beta,
            ..
        } => format!("(g,d,h,alpha,beta) = ({g},{d},{h},{alpha},{beta})"),
    }
}

fn disposition_parts(d: &Disposition) -> (String, String) {
    match d {
        Disposition::Excluded {
            by,
            lower_bound,
            citation,
        } => (
            format!("excluded by {by}"),
            format!("lb = {lower_bound}; {citation}"),
        ),
        Disposition::Unresolved => ("unresolved".to_string(), "-".to_string()),
    }
}

fn md_line(r: &Row) -> String {
    match r {
        Row::Table(t) => format!(
            "| {} | {} | {} | {} | {} | kept |",
            t.g,
            t.label(),
            class_text(t.alpha, t.beta),
            t.d3,
            t.payload_text()
        ),
        Row::Excluded(e) => format!(
            "| {} | {} | {} | {} | {} | excluded by {} (lb = {}): {} |",
            e.row.g,
            e.row.label(),
            class_text(e.row.alpha, e.row.beta),
            e.row.d3,
            e.row.payload_text(),
            e.rule,
            e.lower_bound,
            e.citation
        ),
        Row::DivCont(d) => format!(
            "| {} | {} | {} | {} | {} |",
            d.g,
            d.alpha,
            d.beta,
            opt(&d.omega_sq),
            d.obstruction.map_or("-", obstruction_name)
        ),
        Row::Defect(d) => format!(
            "| {} | {} | {} | {} | {} | {} |",
            d.row.g,
            d.row.label(),
            class_text(d.row.alpha, d.row.beta),
            d.table_d3,
            d.assumed_d3,
            d.mismatch
        ),
        Row::Survivor(s) => {
            let (status, reason) = disposition_parts(&s.disposition);
            format!(
                "| {} | {} | {} | {} |",
                s.tuple.ray(),
                tuple_text(&s.tuple),
                status,
                reason
            )
        }
        Row::Check(c) => format!(
            "| {} | {} | {} | {} |",
            c.criterion,
            c.name,
            if c.pass { "pass" } else { "FAIL" },
            c.detail
        ),
        Row::Bound(b) => format!(
            "| {} | {} | {} |",
            kind_name(b.kind),
            b.g_max,
            b.max_feasible_g
        ),
    }
}

fn csv_header(r: &Row) -> &'static str {
    match layout(r) {
        0 => "g,type,alpha,beta,d3,r_w,kw3,kwb,g_b,deg_delta,dk2,status,rule",
        1 => "g,alpha,beta,omega_sq,obstruction",
        2 => "g,type,alpha,beta,table_d3,assumed_d3,mismatch",
        3 => "type,g,d,h,alpha,beta,gamma,v,status,rule,lower_bound",
        4 => "criterion,name,pass",
        _ => "scenario,g_max,max_feasible_g",
    }
}

fn table_cells(t: &TableRow) -> String {
    use crate::engine::Payload;
    let e = String::new;
    let (r_w, kw3, kwb, g_b, deg_delta, dk2) = match t.payload {
        Payload::E1 { r_w, kw3, kwb, g_b } => (
            r_w.to_string(),
            kw3.to_string(),
            kwb.to_string(),
            g_b.to_string(),
            e(),
            e(),
        ),
        Payload::E2 { r_w, kw3 } => (r_w.to_string(), kw3.to_string(), e(), e(), e(), e()),
        Payload::C { deg_delta } => (e(), e(), e(), e(), deg_delta.to_string(), e()),
        Payload::D { dk2 } => (e(), e(), e(), e(), e(), dk2.to_string()),
        Payload::None => (e(), e(), e(), e(), e(), e()),
    };
    format!(
        "{},{},{},{},{},{r_w},{kw3},{kwb},{g_b},{deg_delta},{dk2}",
        t.g,
        t.label(),
        t.alpha,
        t.beta,
        t.d3
    )
}

fn csv_line(r: &Row) -> String {
    match r {
        Row::Table(t) => format!("{},kept,", table_cells(t)),
        Row::Excluded(x) => format!("{},excluded,{}", table_cells(&x.row), x.rule),
        Row::DivCont(d) => format!(
            "{},{},{},{},{}",
            d.g,
            d.alpha,
            d.beta,
            d.omega_sq.map_or_else(String::new, |v| v.to_string()),
            d.obstruction.map_or("", obstruction_name)
        ),
        Row::Defect(d) => format!(
            "{},{},{},{},{},{},{}",
            d.row.g,
            d.row.label(),
            d.row.alpha,
            d.row.beta,
            d.table_d3,
            d.assumed_d3,
            d.mismatch
        ),
        Row::Survivor(s) => {
            let (g, d, h) = s.tuple.gdh();
            let (alpha, beta, gamma, v) = match s.tuple {
                SurvivorTuple::E1 { beta, gamma, v, .. } => (
                    (beta * gamma - 1).to_string(),
                    beta.to_string(),
                    gamma.to_string(),
                    v.to_string(),
                ),
                SurvivorTuple::Ray { alpha, beta, .. } => (
                    alpha.to_string(),
                    beta.to_string(),
                    String::new(),
                    String::new(),
                ),
            };
            let (status, rule, lb) = match &s.disposition {
                Disposition::Excluded {
                    by, lower_bound, ..
                } => ("excluded", by.to_string(), lower_bound.to_string()),
                Disposition::Unresolved => ("unresolved", String::new(), String::new()),
            };
            format!(
                "{},{g},{d},{h},{alpha},{beta},{gamma},{v},{status},{rule},{lb}",
                s.tuple.ray()
            )
        }
        Row::Check(c) => format!("{},{},{}", c.criterion, c.name, c.pass),
        Row::Bound(b) => format!("{},{},{}", kind_name(b.kind), b.g_max, b.max_feasible_g),
    }
}

fn render_csv(rows: &[Row]) -> String {
    let mut out = String::new();
    for (i, group) in groups(rows).iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(csv_header(group[0]));
        out.push('\n');
        for r in group {
            out.push_str(&csv_line(r));
            out.push('\n');
        }
    }
    out
}

/// Rows for a divisorial-contraction list, with the parity witness where it applies.
pub fn divcont_row(sol: &DivContSolution, witness: Option<(i64, Obstruction)>) -> Row {
    Row::DivCont(DivContRow {
        g: sol.g,
        alpha: sol.alpha,
        beta: sol.beta,
        omega_sq: witness.map(|w| w.0),
        obstruction: witness.map(|w| w.1),
    })
}
