//! Argument parsing and dispatch for the `ambig` binary.

use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use ambig_core::contverify::matrix::inversion_differential_check;
use ambig_core::contverify::registry::{existence_registry, query};
use ambig_core::contverify::{Construction, LatticeSpec, SamplePlan};
use ambig_core::ecurve::CurveSpec;
use ambig_core::finfield::{prime_power, FieldSpec, MAX_FIELD_ORDER};
use ambig_core::iafun;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::formats::{scan_csv, ScanRow, Witness};
use crate::spec::{parse_curve, parse_group};
use crate::{CliError, RunReport, Status, VERSION};

#[derive(Debug, Parser)]
#[command(name = "ambig", version, about = "Inverse ambiguous functions: decide, construct, verify, scan, check")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; curve-scan defaults to csv, everything else to json
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the output here instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a finite group admits an inverse ambiguous function
    GroupDecide { spec: String },
    /// Build a witness table for a finite group
    GroupConstruct { spec: String },
    /// Check a witness table; reads standard input without --witness
    GroupVerify {
        /// Group spec; defaults to the group named in the witness file
        spec: Option<String>,
        /// Witness JSON file, or `-` for standard input
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Point census of a curve E(q;a=..,b=..)
    CurveCensus { spec: String },
    /// Existence verdict for the point group of a curve
    CurveDecide { spec: String },
    /// Census and verdict of y^2 = x^3 + ax + b over a range of q
    CurveScan(ScanArgs),
    /// Sampled check of a continuous construction
    ContCheck(ContArgs),
    /// Continuous constructions (`cont check <name>`)
    Cont {
        #[command(subcommand)]
        action: ContAction,
    },
    /// Known verdicts for Lie groups; lists all entries without a query
    Registry { query: Option<String> },
}

#[derive(Debug, Subcommand)]
pub enum ContAction {
    Check(ContArgs),
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub b: i64,
    #[arg(long, default_value_t = 5)]
    pub qmin: u64,
    #[arg(long)]
    pub qmax: Option<u64>,
    /// Explicit list of field orders, e.g. --q 5,7,49
    #[arg(long, value_delimiter = ',')]
    pub q: Vec<u64>,
}

#[derive(Debug, Args)]
pub struct ContArgs {
    /// One of the construction names, or inversion-differential
    pub construction: String,
    /// Dimension: number of coordinates, or matrix size
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Absolute tolerance; defaults to the construction's own
    #[arg(long)]
    pub tol: Option<f64>,
    /// Finite-difference step for inversion-differential
    #[arg(long)]
    pub h: Option<f64>,
    /// Lattice generators as re1,im1,re2,im2
    #[arg(long, allow_hyphen_values = true)]
    pub lattice: Option<String>,
}

enum Body {
    Json(Value),
    Scan { a: i64, b: i64, rows: Vec<ScanRow> },
}

/// Rendered output and exit status of one invocation.
pub struct Output {
    pub status: Status,
    pub text: String,
    /// Message for standard error, if any.
    pub diagnostic: Option<String>,
}

pub fn run(cli: &Cli) -> Output {
    let start = Instant::now();
    let result = dispatch(&cli.command);
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let default_format = match cli.command {
        Command::CurveScan(_) => Format::Csv,
        _ => Format::Json,
    };
    let format = cli.format.unwrap_or(default_format);
    match result {
        Ok((status, body)) => {
            let text = match (body, format) {
                (Body::Scan { rows, .. }, Format::Csv) => scan_csv(&rows),
                (Body::Scan { rows, .. }, Format::Table) => Ok(scan_table(&rows)),
                (Body::Scan { a, b, rows }, Format::Json) => Ok(report_json(status, json!({"a": a, "b": b, "rows": rows}), elapsed_ms)),
                (Body::Json(payload), Format::Table) => Ok(table(&payload)),
                (Body::Json(payload), _) => Ok(report_json(status, payload, elapsed_ms)),
            };
            match text {
                Ok(text) => Output { status, text, diagnostic: None },
                Err(e) => error_output(e, elapsed_ms),
            }
        }
        Err(e) => error_output(e, elapsed_ms),
    }
}

fn error_output(e: CliError, elapsed_ms: u64) -> Output {
    let msg = e.to_string();
    Output {
        status: Status::Error,
        text: report_json(Status::Error, json!({ "error": msg }), elapsed_ms),
        diagnostic: Some(msg),
    }
}

fn report_json(status: Status, payload: Value, elapsed_ms: u64) -> String {
    let report = RunReport {
        status,
        payload,
        elapsed_ms,
        version: VERSION,
    };
    let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
    s.push('\n');
    s
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            let joined: Vec<String> = items.iter().map(scalar).collect();
            out.push((prefix.to_string(), joined.join(" ")));
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), v, out);
            }
        }
        _ => out.push((prefix.to_string(), scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn table(payload: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", payload, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

fn scan_table(rows: &[ScanRow]) -> String {
    let mut out = format!("{:>8} {:>6} {:>6} {:>8} {:>5} {:>8}  exists\n", "q", "a", "b", "total", "roots", "nq");
    for r in rows {
        out.push_str(&format!(
            "{:>8} {:>6} {:>6} {:>8} {:>5} {:>8}  {}\n",
            r.q, r.a, r.b, r.total, r.roots, r.nq, r.exists
        ));
    }
    out
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("payload serializes")
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn dispatch(cmd: &Command) -> Result<(Status, Body), CliError> {
    let ok = |v: Value| Ok((Status::Ok, Body::Json(v)));
    match cmd {
        Command::GroupDecide { spec } => {
            let g = parse_group(spec)?;
            let verdict = iafun::decide_existence(&g);
            ok(merge(json!({"group": g.to_string(), "order": g.order()}), to_value(&verdict)))
        }
        Command::GroupConstruct { spec } => {
            let g = parse_group(spec)?;
            let witness = iafun::construct(&g).map(|f| Witness::from_permutation(spec, &f));
            ok(json!({
                "group": g.to_string(),
                "order": g.order(),
                "exists": witness.is_some(),
                "witness": witness,
            }))
        }
        Command::GroupVerify { spec, witness } => group_verify(spec.as_deref(), witness.as_ref()),
        Command::CurveCensus { spec } => {
            let c = parse_curve(spec)?;
            ok(merge(json!({"curve": c.to_string()}), to_value(&c.census())))
        }
        Command::CurveDecide { spec } => {
            let c = parse_curve(spec)?;
            let verdict = c.decide_existence();
            let census = to_value(&c.census());
            ok(merge(merge(json!({"curve": c.to_string()}), census), to_value(&verdict)))
        }
        Command::CurveScan(args) => {
            let rows = curve_scan(args)?;
            Ok((Status::Ok, Body::Scan { a: args.a, b: args.b, rows }))
        }
        Command::ContCheck(args) | Command::Cont { action: ContAction::Check(args) } => cont_check(args),
        Command::Registry { query: None } => ok(json!({ "entries": existence_registry() })),
        Command::Registry { query: Some(q) } => {
            let answer = query(q).map_err(|e| CliError::BadInput(e.to_string()))?;
            ok(to_value(&answer))
        }
    }
}

fn group_verify(spec: Option<&str>, witness: Option<&PathBuf>) -> Result<(Status, Body), CliError> {
    let text = match witness {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
            s
        }
    };
    let w = Witness::from_json(&text)?;
    let spec = spec.unwrap_or(&w.group);
    let g = parse_group(spec)?;
    let report = iafun::verify(&g, &w.table).map_err(|e| CliError::BadInput(e.to_string()))?;
    let status = if report.passed { Status::Ok } else { Status::Fail };
    let payload = merge(json!({"group": g.to_string()}), to_value(&report));
    Ok((status, Body::Json(payload)))
}

/// Field orders `p^n` with `p >= 5`, from an explicit list or a range.
pub fn scan_orders(list: &[u64], qmin: u64, qmax: Option<u64>) -> Result<Vec<u64>, CliError> {
    let usable = |q: u64| matches!(prime_power(q), Some((p, _)) if p >= 5);
    if !list.is_empty() {
        let mut qs = list.to_vec();
        for &q in &qs {
            if q > MAX_FIELD_ORDER || !usable(q) {
                return Err(CliError::BadRange(format!("{q} is not a prime power p^n with p >= 5 and q <= 2^20")));
            }
        }
        qs.sort_unstable();
        qs.dedup();
        return Ok(qs);
    }
    let qmax = qmax.ok_or_else(|| CliError::BadRange("give --qmax or --q".into()))?;
    if qmax > MAX_FIELD_ORDER {
        return Err(CliError::BadRange(format!("qmax {qmax} exceeds 2^20")));
    }
    Ok((qmin..=qmax).filter(|&q| usable(q)).collect())
}

fn curve_scan(args: &ScanArgs) -> Result<Vec<ScanRow>, CliError> {
    let mut rows = Vec::new();
    for q in scan_orders(&args.q, args.qmin, args.qmax)? {
        let (p, n) = prime_power(q).expect("filtered to prime powers");
        let field = FieldSpec::new(p, n).map_err(|e| CliError::BadRange(e.to_string()))?;
        let curve = match CurveSpec::from_integers(field, args.a, args.b) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("skipping q = {q}: {e}");
                continue;
            }
        };
        let census = curve.census();
        let verdict = curve.decide_existence();
        rows.push(ScanRow {
            q,
            a: args.a,
            b: args.b,
            total: census.total,
            roots: census.roots_of_g,
            nq: census.nq,
            exists: verdict.exists,
        });
    }
    Ok(rows)
}

fn parse_lattice(s: &str) -> Result<LatticeSpec, CliError> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::BadInput(format!("lattice {s:?}: expected re1,im1,re2,im2")))?;
    if v.len() != 4 {
        return Err(CliError::BadInput(format!("lattice {s:?}: expected four numbers")));
    }
    LatticeSpec::new((v[0], v[1]), (v[2], v[3])).map_err(|e| CliError::BadInput(e.to_string()))
}

fn cont_check(args: &ContArgs) -> Result<(Status, Body), CliError> {
    let bad = |e: ambig_core::contverify::ContError| CliError::BadInput(e.to_string());
    let status = |passed: bool| if passed { Status::Ok } else { Status::Fail };
    if args.construction == "inversion-differential" {
        let n = args.n.unwrap_or(3);
        let h = args.h.unwrap_or(1e-6);
        let r = inversion_differential_check(n, h).map_err(bad)?;
        let payload = merge(json!({"construction": "inversion-differential", "n": n, "h": h}), to_value(&r));
        return Ok((status(r.passed), Body::Json(payload)));
    }
    let lattice = args.lattice.as_deref().map(parse_lattice).transpose()?;
    let c = Construction::from_name(&args.construction, args.n, lattice).map_err(bad)?;
    let tol = args.tol.unwrap_or_else(|| c.default_tol());
    let plan = SamplePlan::new(args.samples, args.seed, tol).map_err(bad)?;
    let r = c.run(&plan).map_err(bad)?;
    // Top-level fields are those of the square-law report.
    let mut top = Map::new();
    top.insert("construction".into(), json!(r.construction));
    if let Value::Object(sq) = to_value(&r.square_law) {
        top.extend(sq);
    }
    top.insert("passed".into(), json!(r.passed));
    top.insert("square_law".into(), to_value(&r.square_law));
    top.insert("fourth_power".into(), to_value(&r.fourth_power));
    top.insert("properties".into(), to_value(&r.properties));
    Ok((status(r.passed), Body::Json(Value::Object(top))))
}
