//! Command-line front end for `plectic-core`.
//!
//! Subcommands print the entropy table of the iterated cross-product stack,
//! sample the closed-form entropy and disorder curves, verify the two worked
//! local-presentation examples and run the seeded property suites.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use plectic_core::checks::{self, Suite, SuiteReport};
use plectic_core::deform::examples::{cross3_omega, cross3_potential, plectic6_omega, plectic6_potential};
use plectic_core::deform::{verify_local_presentation, DeformError, LocalPresentation, VectorPolyForm};
use plectic_core::operad::{curve_disorder, curve_entropy, iterated_cross_entropy, OperadError};
use plectic_core::plectic::parse_vector;
use plectic_core::rational::{self, Rational};

/// Tolerance between the closed-form curves and the table at integer points.
pub const CURVE_TABLE_TOLERANCE: f64 = 1e-12;

/// Decimal places of printed entropy and disorder values.
pub const PRINTED_PLACES: u32 = 4;

pub const DEFAULT_C2: &str = "10,0.5,0.5";

#[derive(Debug, Parser)]
#[command(name = "plectic", version, about = "Exact computations with vector-valued multisymplectic forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Entropy and disorder of the iterated cross-product stack.
    EntropyTable(TableArgs),
    /// Sample the closed-form entropy and disorder curves as CSV.
    EntropyCurve(CurveArgs),
    /// Verify a worked local-presentation example exactly.
    VerifyExample(VerifyArgs),
    /// Run a seeded property suite.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, default_value_t = 1)]
    pub j_min: usize,
    #[arg(long, default_value_t = 5)]
    pub j_max: usize,
    /// Squared cross-product components c₁², c₂², c₃² (positive decimals or p/q).
    #[arg(long, default_value = DEFAULT_C2, value_parser = parse_c2)]
    pub c2: C2,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Print every digit instead of rounding to four decimals.
    #[arg(long)]
    pub full_precision: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long, default_value = "0", value_parser = parse_rational, allow_hyphen_values = true)]
    pub x_min: Rational,
    #[arg(long, default_value = "5", value_parser = parse_rational, allow_hyphen_values = true)]
    pub x_max: Rational,
    #[arg(long, default_value = "0.25", value_parser = parse_rational)]
    pub step: Rational,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub full_precision: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Example {
    /// ℝ³-valued 2-form on ℝ³ given by the cross product.
    Cross3,
    /// 2-plectic form on ℝ⁶ with a nonconstant coefficient.
    Plectic6,
}

impl Example {
    pub fn name(&self) -> &'static str {
        match self {
            Example::Cross3 => "cross3",
            Example::Plectic6 => "plectic6",
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub example: Example,
    /// Point to expand around, as comma-separated rationals (default: origin).
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub center: Option<Point>,
    /// Double the first component of the displayed potential; the check must then fail.
    #[arg(long)]
    pub perturb: bool,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Nondeg,
    Operad,
    Entropy,
    Poincare,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Nondeg => Suite::Nondeg,
            SuiteArg::Operad => Suite::Operad,
            SuiteArg::Entropy => Suite::Entropy,
            SuiteArg::Poincare => Suite::Poincare,
        }
    }
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(value_enum)]
    pub suite: SuiteArg,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Three squared components, parsed exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct C2(pub [Rational; 3]);

#[derive(Debug, Clone, PartialEq)]
pub struct Point(pub Vec<Rational>);

fn parse_rational(text: &str) -> Result<Rational, String> {
    rational::parse(text).map_err(|e| e.to_string())
}

fn parse_point(text: &str) -> Result<Point, String> {
    parse_vector(text).map(Point).map_err(|e| e.to_string())
}

pub fn parse_c2(text: &str) -> Result<C2, String> {
    let values = parse_vector(text).map_err(|e| e.to_string())?;
    let values: [Rational; 3] = values
        .try_into()
        .map_err(|v: Vec<Rational>| format!("expected three values, found {}", v.len()))?;
    if values.iter().any(|c| c <= &Rational::from_integer(0.into())) {
        return Err("all three values must be positive".to_string());
    }
    Ok(C2(values))
}

/// How a successful run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 3,
        }
    }
}

impl From<OperadError> for CliError {
    fn from(e: OperadError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<DeformError> for CliError {
    fn from(e: DeformError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }
}

/// Runs a parsed command, writing the report to `--out` or `stdout`.
pub fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<Outcome, CliError> {
    let mut buffer = Vec::new();
    let outcome = run(cli, &mut buffer, stderr)?;
    let out = match &cli.command {
        Command::EntropyTable(a) => &a.out,
        Command::EntropyCurve(a) => &a.out,
        Command::VerifyExample(a) => &a.out,
        Command::Check(a) => &a.out,
    };
    match out {
        Some(path) => fs::write(path, &buffer)?,
        None => stdout.write_all(&buffer)?,
    }
    Ok(outcome)
}

/// Runs a parsed command, writing the report to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write, diagnostics: &mut dyn Write) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::EntropyTable(a) => entropy_table(a, out),
        Command::EntropyCurve(a) => entropy_curve(a, out, diagnostics),
        Command::VerifyExample(a) => verify_example(a, out),
        Command::Check(a) => check(a, out),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TableRow {
    pub j: usize,
    pub entropy: f64,
    pub disorder: f64,
}

pub fn table_rows(j_min: usize, j_max: usize, c2: &C2) -> Result<Vec<TableRow>, CliError> {
    if j_min > j_max {
        return Err(CliError::Usage(format!("empty range: --j-min {j_min} exceeds --j-max {j_max}")));
    }
    (j_min..=j_max)
        .map(|j| {
            let r = iterated_cross_entropy(j, &c2.0)?;
            Ok(TableRow {
                j,
                entropy: r.entropy,
                disorder: r.disorder,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveRow {
    #[serde(serialize_with = "serialize_as_f64")]
    pub x: Rational,
    pub entropy: f64,
    pub disorder: f64,
}

fn serialize_as_f64<S: serde::Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(rational::to_f64(x))
}

/// Grid `x_min, x_min + step, …` up to `x_max`, computed exactly.
pub fn curve_grid(x_min: &Rational, x_max: &Rational, step: &Rational) -> Result<Vec<Rational>, CliError> {
    let zero = Rational::from_integer(0.into());
    if step <= &zero {
        return Err(CliError::Usage("--step must be positive".to_string()));
    }
    if x_min > x_max {
        return Err(CliError::Usage("empty range: --x-min exceeds --x-max".to_string()));
    }
    let mut grid = Vec::new();
    let mut x = x_min.clone();
    while &x <= x_max {
        grid.push(x.clone());
        x += step;
    }
    Ok(grid)
}

pub fn curve_rows(grid: &[Rational]) -> Result<Vec<CurveRow>, CliError> {
    grid.iter()
        .map(|x| {
            let xf = rational::to_f64(x);
            Ok(CurveRow {
                x: x.clone(),
                entropy: curve_entropy(xf)?,
                disorder: curve_disorder(xf)?,
            })
        })
        .collect()
}

/// Rows at nonnegative integer `x` whose curve values differ from the table.
pub fn curve_table_mismatches(rows: &[CurveRow]) -> Result<Vec<String>, CliError> {
    let c2 = parse_c2(DEFAULT_C2).map_err(CliError::Usage)?;
    let mut out = Vec::new();
    for row in rows {
        if !row.x.is_integer() || row.x < Rational::from_integer(0.into()) {
            continue;
        }
        let j: usize = row.x.to_integer().try_into().map_err(|_| CliError::Usage("x too large".into()))?;
        let t = iterated_cross_entropy(j, &c2.0)?;
        let (de, dd) = ((row.entropy - t.entropy).abs(), (row.disorder - t.disorder).abs());
        if de > CURVE_TABLE_TOLERANCE || dd > CURVE_TABLE_TOLERANCE {
            out.push(format!("x = {j}: curve ({}, {}) vs table ({}, {})", row.entropy, row.disorder, t.entropy, t.disorder));
        }
    }
    Ok(out)
}

fn number(x: f64, full: bool) -> String {
    if full {
        format!("{x}")
    } else {
        match rational::from_f64(x) {
            Some(r) => rational::to_decimal(&r, PRINTED_PLACES),
            None => format!("{x}"),
        }
    }
}

fn write_rows(
    out: &mut dyn Write,
    format: Format,
    header: [&str; 3],
    rows: &[(String, f64, f64)],
    json: serde_json::Value,
    full: bool,
) -> Result<(), CliError> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
            w.write_record(header)?;
            for (label, e, d) in rows {
                w.write_record([label.clone(), number(*e, full), number(*d, full)])?;
            }
            w.flush()?;
        }
        Format::Text => {
            let width = if full { 20 } else { 8 };
            writeln!(out, "{:>4}  {:>width$}  {:>width$}", header[0], header[1], header[2])?;
            for (label, e, d) in rows {
                writeln!(out, "{label:>4}  {:>width$}  {:>width$}", number(*e, full), number(*d, full))?;
            }
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &json)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn entropy_table(a: &TableArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let rows = table_rows(a.j_min, a.j_max, &a.c2)?;
    let printed: Vec<_> = rows.iter().map(|r| (r.j.to_string(), r.entropy, r.disorder)).collect();
    let json = json!({
        "c2": a.c2.0.iter().map(rational::format).collect::<Vec<_>>(),
        "rows": rows,
    });
    write_rows(out, a.format, ["j", "entropy", "disorder"], &printed, json, a.full_precision)?;
    Ok(Outcome::Pass)
}

fn entropy_curve(a: &CurveArgs, out: &mut dyn Write, diagnostics: &mut dyn Write) -> Result<Outcome, CliError> {
    let grid = curve_grid(&a.x_min, &a.x_max, &a.step)?;
    let rows = curve_rows(&grid)?;
    let mismatches = curve_table_mismatches(&rows)?;
    let printed: Vec<_> = rows
        .iter()
        .map(|r| (format!("{}", rational::to_f64(&r.x)), r.entropy, r.disorder))
        .collect();
    let json = json!({ "rows": rows });
    write_rows(out, a.format, ["x", "entropy", "disorder"], &printed, json, a.full_precision)?;
    for m in &mismatches {
        writeln!(diagnostics, "curve/table mismatch at {m}")?;
    }
    Ok(if mismatches.is_empty() { Outcome::Pass } else { Outcome::Fail })
}

/// Both presentations of one example: the displayed potential and the computed one.
#[derive(Debug, Clone)]
pub struct ExampleReport {
    pub example: Example,
    pub perturbed: bool,
    pub supplied: LocalPresentation,
    pub computed: LocalPresentation,
}

impl ExampleReport {
    pub fn passed(&self) -> bool {
        self.supplied.holds() && self.computed.holds()
    }
}

pub fn example_data(example: Example, perturb: bool) -> (VectorPolyForm, VectorPolyForm) {
    let (omega, potential) = match example {
        Example::Cross3 => (cross3_omega(), cross3_potential()),
        Example::Plectic6 => (plectic6_omega(), plectic6_potential()),
    };
    if !perturb {
        return (omega, potential);
    }
    let mut comps = potential.components().to_vec();
    comps[0] = comps[0].scale(&Rational::from_integer(2.into()));
    (omega, VectorPolyForm::new(comps).expect("same shape"))
}

pub fn run_example(example: Example, center: Option<&[Rational]>, perturb: bool) -> Result<ExampleReport, CliError> {
    let (omega, potential) = example_data(example, perturb);
    let origin = vec![Rational::from_integer(0.into()); omega.nvars()];
    let center = center.unwrap_or(&origin);
    Ok(ExampleReport {
        example,
        perturbed: perturb,
        supplied: verify_local_presentation(&omega, center, Some(&potential))?,
        computed: verify_local_presentation(&omega, center, None)?,
    })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn write_presentation(out: &mut dyn Write, title: &str, p: &LocalPresentation) -> io::Result<()> {
    writeln!(out, "{title}: {}", verdict(p.holds()))?;
    for (i, a) in p.potential.components().iter().enumerate() {
        writeln!(out, "  alpha{} = {a}", i + 1)?;
    }
    let n = p.chart.n();
    for (i, f) in p.embedding.components().iter().enumerate().skip(n) {
        if !f.is_zero() {
            writeln!(out, "  {} = {f}", p.chart.coordinate_name(i + 1))?;
        }
    }
    if p.holds() {
        writeln!(out, "  residual f*Omega - omega = 0")?;
    } else {
        for (i, r) in p.residual.components().iter().enumerate() {
            writeln!(out, "  residual[{}] = {r}", i + 1)?;
        }
    }
    Ok(())
}

fn verify_example(a: &VerifyArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let report = run_example(a.example, a.center.as_ref().map(|p| p.0.as_slice()), a.perturb)?;
    let outcome = if report.passed() { Outcome::Pass } else { Outcome::Fail };
    match a.format {
        ReportFormat::Json => {
            let value = json!({
                "example": a.example.name(),
                "perturbed": report.perturbed,
                "supplied": report.supplied.to_record(),
                "computed": report.computed.to_record(),
                "passed": report.passed(),
            });
            serde_json::to_writer_pretty(&mut *out, &value)?;
            writeln!(out)?;
        }
        ReportFormat::Text => {
            let c = &report.supplied.chart;
            writeln!(
                out,
                "example {}: n={} k={} m={}, chart dimension {}",
                a.example.name(),
                c.n(),
                c.k(),
                c.m(),
                c.nvars()
            )?;
            let center: Vec<String> = report.supplied.center.iter().map(rational::format).collect();
            writeln!(out, "center: ({})", center.join(", "))?;
            for w in report.supplied.warnings() {
                writeln!(out, "warning: {w}")?;
            }
            let title = if a.perturb { "displayed potential (perturbed)" } else { "displayed potential" };
            write_presentation(out, title, &report.supplied)?;
            write_presentation(out, "computed potential", &report.computed)?;
            writeln!(out, "result: {}", verdict(report.passed()))?;
        }
    }
    Ok(outcome)
}

fn suite_json(report: &SuiteReport) -> serde_json::Value {
    json!({
        "suite": report.suite.name(),
        "seed": report.seed,
        "passed": report.passed(),
        "properties": report.properties.iter().map(|p| json!({
            "name": p.name,
            "trials": p.trials,
            "failures": p.failures,
            "worst": p.worst,
            "note": p.note,
        })).collect::<Vec<_>>(),
    })
}

fn check(a: &CheckArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let report = checks::run(a.suite.into(), a.seed);
    match a.format {
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &suite_json(&report))?;
            writeln!(out)?;
        }
        ReportFormat::Text => {
            writeln!(out, "suite {}, seed {}", report.suite.name(), report.seed)?;
            for p in &report.properties {
                let mut line = format!(
                    "  {}  {:<30} {:>5}/{:<5}",
                    verdict(p.passed()),
                    p.name,
                    p.trials - p.failures,
                    p.trials
                );
                if let Some(w) = p.worst {
                    line.push_str(&format!("  worst {w:.3e}"));
                }
                if !p.note.is_empty() {
                    line.push_str(&format!("  ({})", p.note));
                }
                writeln!(out, "{}", line.trim_end())?;
            }
            let failures: usize = report.properties.iter().map(|p| p.failures).sum();
            writeln!(
                out,
                "result: {} ({} properties, {} failures)",
                verdict(report.passed()),
                report.properties.len(),
                failures
            )?;
        }
    }
    Ok(if report.passed() { Outcome::Pass } else { Outcome::Fail })
}
