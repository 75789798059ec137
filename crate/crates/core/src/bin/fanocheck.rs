use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fanocheck::engine::{
    defect_check, divcont_parity_witness, divcont_solutions, flop_table, gbound_scan_for,
    nonfano_search, Scenario, ScenarioKind, SearchOptions,
};
use fanocheck::golden::GoldenTables;
use fanocheck::report::{
    diff_rows, divcont_row, kind_name, BoundRow, DocVerdict, Format, OutputDocument, Row,
    ScenarioMeta,
};
use fanocheck::{verify, Error};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Md,
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Md => Format::Markdown,
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Center {
    Point,
    Conic,
    Line,
}

impl From<Center> for ScenarioKind {
    fn from(c: Center) -> Self {
        match c {
            Center::Point => ScenarioKind::PointBlowup,
            Center::Conic => ScenarioKind::ConicBlowup,
            Center::Line => ScenarioKind::LineBlowup,
        }
    }
}

/// Exact-integer checks for two-ray games on blowups of Fano threefolds.
#[derive(Debug, Parser)]
#[command(name = "fanocheck", version)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "md")]
    format: FormatArg,
    /// Disable the curated prune rules.
    #[arg(long, global = true)]
    no_geometric: bool,
    /// Disable the curated degree/genus constraints of the non-Fano search.
    #[arg(long, global = true)]
    no_curated: bool,
    #[arg(long, global = true)]
    g_min: Option<i64>,
    #[arg(long, global = true)]
    g_max: Option<i64>,
    /// Worker threads for the enumerators; 1 runs everything on the calling thread.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
    /// Compare against golden data read from a JSON file instead of the embedded copy.
    #[arg(long, global = true)]
    golden_file: Option<PathBuf>,
    /// Print the embedded golden data as JSON and exit.
    #[arg(long)]
    emit_golden: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Two-ray game table for a blowup center.
    Tables { center: Center },
    /// Divisorial-contraction solutions with parity witnesses.
    Divcont { center: Center },
    /// Flopping-curve defect for every table row.
    Defect { center: Center },
    /// Search for blowups of curves with ample anticanonical class.
    Nonfano,
    /// Largest genus with a feasible conic-blowup case.
    Gbound,
    /// Run every check and fail on the first mismatch.
    Verify {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(i64).range(1..=16))]
        bounds_scale: i64,
    },
}

/// Failure that maps onto an exit code.
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::OutOfRange { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

struct Ctx {
    format: Format,
    geometric: bool,
    curated: bool,
    g_min: Option<i64>,
    g_max: Option<i64>,
    opts: SearchOptions,
    golden: GoldenTables,
}

impl Ctx {
    fn scenario(&self, kind: ScenarioKind) -> Result<Scenario, Failure> {
        let (lo, hi) = kind.default_range();
        let s = Scenario::new(kind, self.g_min.unwrap_or(lo), self.g_max.unwrap_or(hi))?;
        Ok(s.with_geometric(self.geometric).with_curated(self.curated))
    }

    fn meta(&self, command: &str, s: Option<&Scenario>, bounds_scale: Option<i64>) -> ScenarioMeta {
        ScenarioMeta {
            command: command.to_string(),
            kind: s.map(|s| s.kind),
            g_min: s.map(|s| s.g_min),
            g_max: s.map(|s| s.g_max),
            geometric: self.geometric,
            curated: self.curated,
            bounds_scale,
        }
    }
}

fn cmd_tables(ctx: &Ctx, kind: ScenarioKind) -> Result<OutputDocument, Failure> {
    let s = ctx.scenario(kind)?;
    let t = flop_table(&s, &ctx.opts)?;
    let mut rows: Vec<Row> = t.rows.iter().copied().map(Row::Table).collect();
    rows.extend(t.excluded.iter().cloned().map(Row::Excluded));
    let diff = s.geometric.then(|| {
        let golden: Vec<_> = ctx
            .golden
            .table(kind)
            .iter()
            .filter(|r| (s.g_min..=s.g_max).contains(&r.g))
            .copied()
            .collect();
        diff_rows(kind_name(kind), &t.rows, &golden)
    });
    let failures = match &diff {
        Some(d) if !d.is_empty() => vec![format!("{}-table", kind_name(kind))],
        _ => vec![],
    };
    Ok(OutputDocument {
        scenario: ctx.meta("tables", Some(&s), None),
        rows,
        verdict: DocVerdict::from_failures(failures),
        diff,
    })
}

fn cmd_divcont(ctx: &Ctx, kind: ScenarioKind) -> Result<OutputDocument, Failure> {
    let s = ctx.scenario(kind)?;
    let sols = divcont_solutions(&s)?;
    let mut rows = Vec::new();
    for sol in &sols {
        let w = if sol.beta == 1 {
            let w = divcont_parity_witness(&s, *sol)?;
            Some((w.omega_sq, w.obstruction))
        } else {
            None
        };
        rows.push(divcont_row(sol, w));
    }
    let golden: Vec<_> = ctx
        .golden
        .divcont(kind)
        .iter()
        .filter(|x| (s.g_min..=s.g_max).contains(&x.g))
        .copied()
        .collect();
    let fmt = |v: &[fanocheck::engine::DivContSolution]| -> Vec<String> {
        v.iter()
            .map(|x| format!("({},{},{})", x.g, x.alpha, x.beta))
            .collect()
    };
    let diff = diff_rows(
        &format!("{}-divcont", kind_name(kind)),
        &fmt(&sols),
        &fmt(&golden),
    );
    let failures = if diff.is_empty() {
        vec![]
    } else {
        vec![diff.target.clone()]
    };
    Ok(OutputDocument {
        scenario: ctx.meta("divcont", Some(&s), None),
        rows,
        verdict: DocVerdict::from_failures(failures),
        diff: Some(diff),
    })
}

fn cmd_defect(ctx: &Ctx, kind: ScenarioKind) -> Result<OutputDocument, Failure> {
    let s = ctx.scenario(kind)?;
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for r in flop_table(&s, &ctx.opts)?.rows {
        let d = defect_check(&s, &r)?;
        if !d.mismatch {
            failures.push(format!("no defect on {r}"));
        }
        rows.push(Row::Defect(d));
    }
    Ok(OutputDocument {
        scenario: ctx.meta("defect", Some(&s), None),
        rows,
        verdict: DocVerdict::from_failures(failures),
        diff: None,
    })
}

fn cmd_nonfano(ctx: &Ctx) -> Result<OutputDocument, Failure> {
    let s = ctx.scenario(ScenarioKind::GeneralCurve)?;
    let v = nonfano_search(&s, &ctx.opts)?;
    let failures = v
        .unresolved()
        .map(|x| format!("unresolved {}", x.tuple))
        .collect();
    Ok(OutputDocument {
        scenario: ctx.meta("nonfano", Some(&s), None),
        rows: v.survivors().cloned().map(Row::Survivor).collect(),
        verdict: DocVerdict::from_failures(failures),
        diff: None,
    })
}

fn cmd_gbound(ctx: &Ctx) -> Result<OutputDocument, Failure> {
    let g_max = ctx.g_max.unwrap_or(60);
    if g_max < 13 {
        return Err(Failure::Usage(format!(
            "gbound needs --g-max >= 13, got {g_max}"
        )));
    }
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (kind, expected) in [
        (ScenarioKind::ConicBlowup, 12),
        (ScenarioKind::PointBlowup, 13),
    ] {
        let max = gbound_scan_for(kind, g_max, &ctx.opts)?.unwrap_or(i64::MIN);
        if max != expected {
            failures.push(format!(
                "{} bound {max}, expected {expected}",
                kind_name(kind)
            ));
        }
        rows.push(Row::Bound(BoundRow {
            kind,
            g_max,
            max_feasible_g: max,
        }));
    }
    Ok(OutputDocument {
        scenario: ctx.meta("gbound", None, None),
        rows,
        verdict: DocVerdict::from_failures(failures),
        diff: None,
    })
}

fn cmd_verify(ctx: &Ctx, scale: i64) -> Result<OutputDocument, Failure> {
    let checks = verify::run_all(&ctx.golden, scale, &ctx.opts);
    let failures = checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.name.clone())
        .collect();
    Ok(OutputDocument {
        scenario: ctx.meta("verify", None, Some(scale)),
        rows: checks.into_iter().map(Row::Check).collect(),
        verdict: DocVerdict::from_failures(failures),
        diff: None,
    })
}

fn load_golden(path: Option<&PathBuf>) -> Result<GoldenTables, Failure> {
    let Some(path) = path else {
        return Ok(GoldenTables::embedded());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("bad golden file {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    if cli.emit_golden {
        let text = serde_json::to_string_pretty(&GoldenTables::embedded())
            .map_err(|e| Failure::Internal(e.to_string()))?;
        println!("{text}");
        return Ok(0);
    }
    let Some(command) = cli.command else {
        return Err(Failure::Usage("missing subcommand (try --help)".into()));
    };
    let mut opts = SearchOptions::default();
    if cli.threads == Some(1) {
        opts.parallel = false;
    }
    let ctx = Ctx {
        format: cli.format.into(),
        geometric: !cli.no_geometric,
        curated: !cli.no_curated,
        g_min: cli.g_min,
        g_max: cli.g_max,
        opts,
        golden: load_golden(cli.golden_file.as_ref())?,
    };
    let exec = || match command {
        Command::Tables { center } => cmd_tables(&ctx, center.into()),
        Command::Divcont { center } => cmd_divcont(&ctx, center.into()),
        Command::Defect { center } => cmd_defect(&ctx, center.into()),
        Command::Nonfano => cmd_nonfano(&ctx),
        Command::Gbound => cmd_gbound(&ctx),
        Command::Verify { bounds_scale } => cmd_verify(&ctx, bounds_scale),
    };
    let doc = match cli.threads {
        Some(n) if n > 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build()
            .map_err(|e| Failure::Internal(e.to_string()))?
            .install(exec)?,
        _ => exec()?,
    };
    print!("{}", doc.render(ctx.format));
    if doc.verdict.pass {
        Ok(0)
    } else {
        let first = doc
            .verdict
            .failures
            .first()
            .map_or("unknown", String::as_str);
        eprintln!("verification failed: {first}");
        Ok(EXIT_FAIL)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}
