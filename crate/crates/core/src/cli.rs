//! The `cesaro-oc` command line. `run` returns the exit code and the text for
//! stdout and stderr so the binary stays a thin wrapper and tests can call it.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cesaro::cesaro_transform;
use crate::doc::{self, BatteryDoc, FunctionDoc};
use crate::error::{Error, Result};
use crate::norms;
use crate::oc::{self, Verdict};
use crate::oracle::search::adversarial_family_search;
use crate::oracle::{self, battery, OracleReport, QUADRATURE_TOL, TRUNCATION};
use crate::ppl::Ppl;
use crate::rearrange::RearrangedFunction;
use crate::space::{NormMethod, SpaceDescriptor};

/// Environment variable overriding the default oracle tolerance.
pub const TOL_ENV: &str = "CESARO_OC_TOL";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_ANALYTIC: i32 = 3;
pub const EXIT_INAPPLICABLE: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Structured,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Theorem,
    ClosedForm,
    Direct,
    All,
}

#[derive(Debug, Parser)]
#[command(name = "cesaro-oc", version, about = "Norms, rearrangements and order-continuity verdicts for Cesaro spaces")]
pub struct Cli {
    /// Seed of the adversarial family search.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Oracle tolerance; defaults to $CESARO_OC_TOL, then 1e-7.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Structured)]
    pub out: OutFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Norm of a function in a space.
    Norm { function: PathBuf, space: PathBuf },
    /// Decreasing rearrangement: samples of f* and the exact step function when there is one.
    Rearrange {
        function: PathBuf,
        #[arg(long, default_value_t = 16)]
        grid: usize,
    },
    /// Exact Cesaro transform as a function document (samples with --out csv).
    Cesaro {
        function: PathBuf,
        #[arg(long, default_value_t = 16)]
        grid: usize,
    },
    /// Order-continuity verdict for a function in a Cesaro space.
    OcPoint {
        function: PathBuf,
        space: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Theorem)]
        method: Method,
        /// Families tried by the adversarial search with --method direct or all; 0 skips it.
        #[arg(long, default_value_t = 0)]
        search: usize,
    },
    /// Order-continuity verdict for a whole space.
    OcSpace { space: PathBuf },
    /// Run the oracles over a battery document, or the built-in battery with `default`.
    Verify {
        battery: String,
        #[arg(long, default_value_t = battery::REARRANGEMENT_GRID)]
        grid: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::Domain(_)
        | Error::InvalidFunction(_)
        | Error::Representation(_)
        | Error::InvalidSpace(_)
        | Error::InvalidFamily(_) => EXIT_PARSE,
        Error::NotIntegrable(_) | Error::CesaroUndefined(_) | Error::NotRearrangeable | Error::NotInSpace(_) => {
            EXIT_ANALYTIC
        }
        Error::Inapplicable(_) => EXIT_INAPPLICABLE,
    }
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(o) => o,
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn tolerance(cli: &Cli) -> Result<f64> {
    if let Some(t) = cli.tol {
        return positive(t, "--tol");
    }
    match std::env::var(TOL_ENV) {
        Ok(s) => {
            let t = s.trim().parse::<f64>().map_err(|_| Error::Parse(format!("{TOL_ENV}: not a number: {s}")))?;
            positive(t, TOL_ENV)
        }
        Err(_) => Ok(QUADRATURE_TOL),
    }
}

fn positive(t: f64, what: &str) -> Result<f64> {
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err(Error::Parse(format!("{what} must be a positive number")))
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    }
}

fn load_function(path: &Path) -> Result<Ppl> {
    doc::parse_function(&read(path)?).map_err(in_file(path))
}

fn load_space(path: &Path) -> Result<SpaceDescriptor> {
    doc::parse_space(&read(path)?).map_err(in_file(path))
}

fn structured(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Norm { function, space } => norm_command(cli, &load_function(function)?, &load_space(space)?),
        Command::Rearrange { function, grid } => rearrange_command(cli, &load_function(function)?, *grid),
        Command::Cesaro { function, grid } => cesaro_command(cli, &load_function(function)?, *grid),
        Command::OcPoint { function, space, method, search } => {
            oc_point_command(cli, &load_function(function)?, &load_space(space)?, *method, *search)
        }
        Command::OcSpace { space } => {
            let v = oc::oc_space(&load_space(space)?)?;
            Ok(Outcome::ok(match cli.out {
                OutFormat::Structured => structured(&doc::verdict_value(&v)),
                OutFormat::Csv => format!("subject,verdict,rule\n{},{},{}\n", v.subject, v.verdict, v.rule),
            }))
        }
        Command::Verify { battery, grid } => verify_command(cli, battery, *grid),
    }
}

fn norm_command(cli: &Cli, f: &Ppl, x: &SpaceDescriptor) -> Result<Outcome> {
    f.domain().check_same(x.domain)?;
    let r = norms::norm(f, x)?;
    let method = match r.method {
        NormMethod::Exact => "exact",
        NormMethod::Quadrature => "quadrature",
    };
    Ok(Outcome::ok(match cli.out {
        OutFormat::Structured => structured(&json!({
            "subject": x.name(),
            "value": doc::ext_value(r.value),
            "method": method,
            "error_bound": doc::ext_value(r.error_bound),
        })),
        OutFormat::Csv => format!(
            "subject,value,method,error_bound\n{},{},{method},{}\n",
            x.name(),
            doc::number(r.value),
            doc::number(r.error_bound)
        ),
    }))
}

fn check_grid(grid: usize) -> Result<()> {
    if grid == 0 {
        Err(Error::Parse("--grid must be positive".into()))
    } else {
        Ok(())
    }
}

fn samples_csv(header: &str, samples: &[(f64, f64)]) -> String {
    let mut s = format!("{header}\n");
    for &(t, v) in samples {
        s.push_str(&format!("{},{}\n", doc::number(t), doc::number(v)));
    }
    s
}

fn samples_value(samples: &[(f64, f64)]) -> Value {
    Value::Array(samples.iter().map(|&(t, v)| json!([doc::ext_value(t), doc::ext_value(v)])).collect())
}

/// `f*` at the left ends `s_i = i T / grid` of a uniform grid on `[0, T]`, where `T`
/// is the measure of the support, capped at the oracle truncation.
fn rearrange_command(cli: &Cli, f: &Ppl, grid: usize) -> Result<Outcome> {
    check_grid(grid)?;
    let rf = RearrangedFunction::new(f)?;
    let m = rf.support_measure();
    let top = if m.is_finite() && m > 0.0 { m } else { TRUNCATION.min(f.domain().end()) };
    let samples: Vec<(f64, f64)> = (0..grid)
        .map(|i| {
            let s = top * i as f64 / grid as f64;
            (s, rf.eval(s))
        })
        .collect();
    let exact = rf.as_step_ppl();
    Ok(Outcome::ok(match cli.out {
        OutFormat::Structured => structured(&json!({
            "samples": samples_value(&samples),
            "exact": exact.as_ref().map(FunctionDoc::from_ppl),
        })),
        OutFormat::Csv => samples_csv("s,f_star", &samples),
    }))
}

/// With `--out csv`, `Cf` at the right ends of a uniform grid on `[0, T]`: `T = 1`
/// on the unit interval, twice the support end (capped at the truncation) otherwise.
fn cesaro_command(cli: &Cli, f: &Ppl, grid: usize) -> Result<Outcome> {
    check_grid(grid)?;
    let g = cesaro_transform(f)?;
    Ok(Outcome::ok(match cli.out {
        OutFormat::Structured => {
            let mut s = doc::emit_function(&g);
            s.push('\n');
            s
        }
        OutFormat::Csv => {
            let end = f.domain().end();
            let top = if end.is_finite() { end } else { (2.0 * f.support_end()).clamp(1.0, TRUNCATION) };
            let samples: Vec<(f64, f64)> = (1..=grid)
                .map(|i| {
                    let t = top * i as f64 / grid as f64;
                    g.evaluate(t).map(|v| (t, v))
                })
                .collect::<Result<_>>()?;
            samples_csv("t,cf", &samples)
        }
    }))
}

fn oc_point_command(cli: &Cli, f: &Ppl, cx: &SpaceDescriptor, method: Method, search: usize) -> Result<Outcome> {
    if !cx.is_cesaro() {
        return Err(Error::Inapplicable(format!(
            "oc-point decides order continuity in a Cesaro space; {} is symmetric (wrap it in a cesaro document)",
            cx.name()
        )));
    }
    f.domain().check_same(cx.domain)?;
    let x = cx.symmetric();
    let mut rows: Vec<(&str, Verdict, String)> = Vec::new();
    let mut parts = serde_json::Map::new();
    let mut direct_falsified = false;
    if matches!(method, Method::Theorem | Method::All) {
        let v = oc::oc_point_in_cx(f, &x)?;
        rows.push(("theorem", v.verdict, v.rule.to_string()));
        parts.insert("theorem".into(), doc::verdict_value(&v));
    }
    if matches!(method, Method::ClosedForm | Method::All) {
        match oc::oc_point_closed_form(f, &x) {
            Ok(v) => {
                rows.push(("closed-form", v.verdict, v.rule.to_string()));
                parts.insert("closed-form".into(), doc::verdict_value(&v));
            }
            Err(Error::Inapplicable(why)) if method == Method::All => {
                parts.insert("closed-form".into(), json!({"inapplicable": why}));
            }
            Err(e) => return Err(e),
        }
    }
    if matches!(method, Method::Direct | Method::All) {
        let d = oc::direct_oc_check(f, &x, None)?;
        direct_falsified = d.falsified;
        let mut v = doc::direct_value(&d);
        if search > 0 {
            let s = adversarial_family_search(f, &x, search, cli.seed)?;
            direct_falsified |= s.falsified;
            v["search"] = json!({
                "family": s.best.as_ref().map(|(fam, _)| fam.describe()),
                "falsified": s.falsified,
                "persistent_norm": doc::ext_value(s.persistent_norm),
                "evaluated": s.evaluated,
            });
        }
        parts.insert("direct".into(), v);
    }
    let mut conflicts = Vec::new();
    let decisive: Vec<&(&str, Verdict, String)> =
        rows.iter().filter(|r| matches!(r.1, Verdict::Oc | Verdict::NotOc)).collect();
    if let Some(first) = decisive.first() {
        for r in &decisive[1..] {
            if r.1 != first.1 {
                conflicts.push(format!("{} says {} ({}) but {} says {} ({})", first.0, first.1, first.2, r.0, r.1, r.2));
            }
        }
    }
    for r in &rows {
        if r.1 == Verdict::Oc && direct_falsified {
            conflicts.push(format!("{} says OC ({}) but the direct check falsifies it", r.0, r.2));
        }
    }
    let code = if conflicts.is_empty() { EXIT_OK } else { EXIT_VERIFY_FAILED };
    let stdout = match cli.out {
        OutFormat::Structured => {
            let body = if method == Method::All || parts.len() != 1 {
                json!({"subject": format!("f in {}", cx.name()), "methods": parts, "conflicts": conflicts})
            } else {
                parts.into_iter().next().map(|(_, v)| v).expect("one method ran")
            };
            structured(&body)
        }
        OutFormat::Csv => {
            let mut s = String::from("method,verdict,rule\n");
            for r in &rows {
                s.push_str(&format!("{},{},{}\n", r.0, r.1, r.2));
            }
            if let Some(d) = parts.get("direct") {
                s.push_str(&format!("direct,falsified={},{}\n", d["falsified"], d["estimate"]["decision"].as_str().unwrap_or("")));
            }
            s
        }
    };
    let stderr = conflicts.iter().map(|c| format!("conflict: {c}\n")).collect();
    Ok(Outcome { code, stdout, stderr })
}

fn verify_command(cli: &Cli, battery_arg: &str, grid: usize) -> Result<Outcome> {
    check_grid(grid)?;
    let tol = tolerance(cli)?;
    let cases: Vec<(String, Ppl, SpaceDescriptor)> = if battery_arg == "default" {
        battery::default_battery().into_iter().map(|c| (c.id, c.f, c.x)).collect()
    } else {
        let path = Path::new(battery_arg);
        doc::from_json::<BatteryDoc>(&read(path)?)
            .and_then(|b| b.cases())
            .map_err(in_file(path))?
    };
    let mut rows: Vec<(String, OracleReport)> = Vec::new();
    for (id, f, x) in &cases {
        f.domain().check_same(x.domain)?;
        rows.push((id.clone(), oracle::quadrature_norm_oracle(f, x, tol)?));
        rows.push((id.clone(), oracle::rearrangement_oracle(f, grid, 4.0 / grid as f64)?));
    }
    let failed = rows.iter().filter(|(_, r)| r.is_hard_failure()).count();
    let mut out = format!("{}\n", doc::REPORT_CSV_HEADER);
    for (id, r) in &rows {
        out.push_str(&doc::report_csv_row(id, r));
        out.push('\n');
    }
    let code = if failed == 0 { EXIT_OK } else { EXIT_VERIFY_FAILED };
    let stderr = if failed == 0 { String::new() } else { format!("{failed} oracle report(s) failed\n") };
    Ok(Outcome { code, stdout: out, stderr })
}
