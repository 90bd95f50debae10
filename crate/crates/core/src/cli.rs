//! Command-line front end.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::divisor::{default_points, graded_dim, parse_csv, DivisorJson, PointP1, QDivisor};
use crate::error::{Error, Result};
use crate::exactla::FieldSpec;
use crate::presentation::{
    brute_force_oracle, compute_report, default_limits, scan_configs, stability_scan, ConfigPoints,
    EngineOptions, OracleOutcome, Realization, Report, ScanConfig, ScanOptions, ScanReport,
};
use crate::ratapprox::Fraction;
use crate::twopoint::{two_point_presentation, TwoPointJson};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNSTABLE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "canring", version, about = "Presentations of canonical rings of Q-divisors on P^1")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// dim S_d for 0 <= d <= max-degree
    Dims(Opts),
    /// Closed-form presentation for at most two points
    Twopoint(Opts),
    /// Minimal generators
    Gens(Opts),
    /// Minimal generators and minimal relations
    Rels(Opts),
    /// Leading terms of a truncated Groebner basis
    Groebner(Opts),
    /// Compare generator degrees (and leading terms) across point configurations
    Scan(Opts),
    /// Cross-check the engine against the brute-force oracle
    Oracle(Opts),
}

#[derive(Args, Debug, Clone, Default)]
pub struct Opts {
    /// Divisor JSON file: {"points": [...], "alphas": [...], "char": p}
    #[arg(long, conflicts_with = "alphas")]
    pub divisor: Option<PathBuf>,
    /// Comma-separated coefficients, e.g. -1/2,1/3,1/5
    #[arg(long, allow_hyphen_values = true)]
    pub alphas: Option<String>,
    /// Comma-separated points (inf or rationals); default inf,0,1,-1,2,...
    #[arg(long, allow_hyphen_values = true, requires = "alphas")]
    pub points: Option<String>,
    /// Characteristic (0 for the rationals); `scan` accepts a list
    #[arg(long = "char")]
    pub characteristic: Option<String>,
    /// Extension degree of the finite field
    #[arg(long)]
    pub ext: Option<u32>,
    #[arg(long)]
    pub max_degree: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Seeded configurations per characteristic
    #[arg(long, default_value_t = 20)]
    pub configs: usize,
    #[arg(long, conflicts_with = "pretty")]
    pub json: bool,
    #[arg(long)]
    pub pretty: bool,
    /// Degree through which relations or leading terms are computed
    #[arg(long)]
    pub truncation: Option<u64>,
    /// `scan`: also record minimal relation degrees
    #[arg(long)]
    pub relations: bool,
    /// Also write the JSON report here
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::GeneratorsIncomplete { .. } | Error::IncompleteSpan { .. } | Error::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    }
}

struct Input {
    divisor: QDivisor,
    fields: Vec<FieldSpec>,
}

fn load(opts: &Opts) -> Result<Input> {
    let (divisor, file_field) = match (&opts.divisor, &opts.alphas) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
            DivisorJson::parse(&text)?.to_divisor()?
        }
        (None, Some(csv)) => {
            let alphas: Vec<Fraction> = parse_csv(csv)?;
            let points = match &opts.points {
                Some(p) => parse_csv::<PointP1>(p)?,
                None => default_points(alphas.len()),
            };
            (QDivisor::new(points, alphas)?, FieldSpec::rationals())
        }
        (None, None) => return Err(Error::InvalidArgument("give --divisor FILE or --alphas CSV".into())),
    };
    let fields = match &opts.characteristic {
        None => vec![file_field],
        Some(csv) => csv
            .split(',')
            .map(|s| {
                let p: u64 =
                    s.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad characteristic `{s}`")))?;
                FieldSpec::new(p, opts.ext.unwrap_or(1))
            })
            .collect::<Result<_>>()?,
    };
    if fields.is_empty() {
        return Err(Error::InvalidArgument("no field given".into()));
    }
    Ok(Input { divisor, fields })
}

fn single_field(input: &Input) -> Result<FieldSpec> {
    match input.fields.as_slice() {
        [f] => Ok(*f),
        _ => Err(Error::InvalidArgument("this command takes a single characteristic".into())),
    }
}

#[derive(Serialize)]
struct DimRow {
    d: u64,
    dim: usize,
}

#[derive(Serialize)]
struct OracleJson {
    engine: OracleOutcome,
    oracle: OracleOutcome,
    verdict: &'static str,
}

/// What a command produced: the JSON document, the text summary, the exit code.
struct Outcome {
    json: serde_json::Value,
    text: String,
    code: i32,
}

fn to_value<T: Serialize>(v: &T) -> Result<serde_json::Value> {
    serde_json::to_value(v).map_err(|e| Error::Internal(e.to_string()))
}

fn summarize_report(rep: &Report) -> String {
    let mut s = format!("field {}  points {}\n", rep.config.field, rep.config.points.join(","));
    s += &format!("{} generators\n", rep.generators.len());
    for g in &rep.generators {
        let c: Vec<String> = g.monomial.c.iter().map(ToString::to_string).collect();
        s += &format!("  degree {:>4}  c = ({})\n", g.degree, c.join(", "));
    }
    if !rep.relations.is_empty() {
        s += &format!("{} minimal relations\n", rep.relations.len());
        for r in &rep.relations {
            s += &format!("  degree {:>4}  {} terms\n", r.degree, r.support_size);
        }
    }
    if let Some(g) = &rep.groebner {
        s += &format!("{} leading terms through degree {}\n", g.leading_terms.len(), g.truncation);
        for l in &g.leading_terms {
            s += &format!("  degree {:>4}  {:?}\n", l.degree, l.exponents);
        }
    }
    s
}

fn summarize_scan(rep: &ScanReport) -> String {
    let mut s = String::new();
    for o in &rep.outcomes {
        let what = match (&o.signature, &o.skipped) {
            (Some(sig), _) => format!("{:?}", sig.generator_degrees),
            (None, Some(why)) => format!("skipped: {why}"),
            (None, None) => "skipped".into(),
        };
        let flag = if rep.disagreeing.contains(&o.index) { "  <- differs" } else { "" };
        s += &format!("{:>3} {:<10} [{}] {}{}\n", o.index, o.config.field, o.config.points.join(","), what, flag);
    }
    if let Some(t) = rep.xgen_threshold {
        s += &format!("stable selection guaranteed from degree {t}\n");
    }
    s += if rep.stable { "STABLE\n" } else { "UNSTABLE\n" };
    s
}

fn dispatch(cmd: &Command) -> Result<Outcome> {
    let (opts, kind) = match cmd {
        Command::Dims(o) => (o, "dims"),
        Command::Twopoint(o) => (o, "twopoint"),
        Command::Gens(o) => (o, "gens"),
        Command::Rels(o) => (o, "rels"),
        Command::Groebner(o) => (o, "groebner"),
        Command::Scan(o) => (o, "scan"),
        Command::Oracle(o) => (o, "oracle"),
    };
    let input = load(opts)?;
    let div = &input.divisor;
    match kind {
        "dims" => {
            let max = opts.max_degree.unwrap_or(30);
            let rows: Vec<DimRow> = (0..=max).map(|d| DimRow { d, dim: graded_dim(div, d) }).collect();
            let text = rows.iter().map(|r| format!("{:>4} {}\n", r.d, r.dim)).collect();
            Ok(Outcome { json: to_value(&rows)?, text, code: EXIT_OK })
        }
        "twopoint" => {
            let d = div.with_ghost();
            if d.n() != 2 {
                return Err(Error::InvalidArgument(format!("twopoint needs at most two points, got {}", div.n())));
            }
            let p = two_point_presentation(&d.alphas()[0], &d.alphas()[1])?;
            let mut text = format!("{} generators (offset {})\n", p.generators.len(), p.offset);
            for g in &p.generators {
                text += &format!("  ({}, {})\n", g.d, g.c);
            }
            text += &format!("{} relations\n", p.relations.len());
            for r in &p.relations {
                text += &format!("  v{} + v{} = {} v{} + {} v{}\n", r.i, r.j, r.a, r.h, r.b, r.h + 1);
            }
            Ok(Outcome { json: to_value(&TwoPointJson::from(&p))?, text, code: EXIT_OK })
        }
        "gens" | "rels" | "groebner" => {
            let field = single_field(&input)?;
            let eopts = EngineOptions {
                gen_up_to: opts.max_degree,
                truncation: opts.truncation,
                relations: kind == "rels",
                groebner: kind == "groebner",
            };
            let rep = compute_report(div, field, eopts)?;
            Ok(Outcome { text: summarize_report(&rep), json: to_value(&rep)?, code: EXIT_OK })
        }
        "scan" => {
            let mut configs = vec![ScanConfig { field: input.fields[0], points: ConfigPoints::Explicit(div.points().to_vec()) }];
            let chars: Vec<u64> = input.fields.iter().map(|f| f.characteristic()).collect();
            configs.extend(scan_configs(div.with_ghost().n(), &chars, opts.configs, opts.seed)?);
            let relations = match (opts.relations, opts.truncation) {
                (false, _) => None,
                (true, Some(t)) => Some(t),
                (true, None) => Some(default_limits(div)?.rel_bound),
            };
            let sopts = ScanOptions { gen_up_to: opts.max_degree, groebner: opts.truncation, relations };
            let rep = stability_scan(div, &configs, sopts);
            let code = if rep.stable { EXIT_OK } else { EXIT_UNSTABLE };
            Ok(Outcome { text: summarize_scan(&rep), json: to_value(&rep)?, code })
        }
        "oracle" => {
            let field = single_field(&input)?;
            let limits = default_limits(div)?;
            let gen_up_to = opts.max_degree.unwrap_or(limits.gen_bound);
            let rel_up_to = opts.truncation.unwrap_or(limits.rel_bound);
            let eopts = EngineOptions { gen_up_to: Some(gen_up_to), truncation: Some(rel_up_to), relations: true, groebner: false };
            let rep = compute_report(div, field, eopts)?;
            let mut rel = rep.relation_degrees();
            rel.sort_unstable();
            let engine = OracleOutcome { generator_degrees: rep.generator_degrees(), relation_degrees: rel };
            let oracle = crate::with_field!(field, |f| {
                let real = Realization::new(div, f)?;
                brute_force_oracle(&real, gen_up_to, rel_up_to)
            })?;
            let ok = engine == oracle;
            let verdict = if ok { "MATCH" } else { "MISMATCH" };
            let text = format!(
                "engine generators {:?} relations {:?}\noracle generators {:?} relations {:?}\n{verdict}\n",
                engine.generator_degrees, engine.relation_degrees, oracle.generator_degrees, oracle.relation_degrees
            );
            let code = if ok { EXIT_OK } else { EXIT_INTERNAL };
            Ok(Outcome { json: to_value(&OracleJson { engine, oracle, verdict })?, text, code })
        }
        _ => unreachable!(),
    }
}

fn opts_of(cmd: &Command) -> &Opts {
    match cmd {
        Command::Dims(o)
        | Command::Twopoint(o)
        | Command::Gens(o)
        | Command::Rels(o)
        | Command::Groebner(o)
        | Command::Scan(o)
        | Command::Oracle(o) => o,
    }
}

/// Runs one command, writing to `out` and `err`; returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let opts = opts_of(&cli.command);
    let outcome = match dispatch(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    let render = |pretty: bool| {
        if pretty {
            serde_json::to_string_pretty(&outcome.json)
        } else {
            serde_json::to_string(&outcome.json)
        }
        .expect("values serialize")
    };
    let printed = if opts.json || opts.pretty {
        writeln!(out, "{}", render(opts.pretty))
    } else {
        write!(out, "{}", outcome.text)
    };
    if let Err(e) = printed {
        let _ = writeln!(err, "error: {e}");
        return EXIT_INPUT;
    }
    if let Some(path) = &opts.output {
        if let Err(e) = fs::write(path, render(opts.pretty) + "\n") {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            return EXIT_INPUT;
        }
    }
    outcome.code
}
