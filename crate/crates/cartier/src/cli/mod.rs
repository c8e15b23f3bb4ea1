//! Command-line front end.

pub mod checks;
pub mod parse;
pub mod repro;

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cartier_mod::{CartierModule, CartierStructure};
use crate::error::{Error, Result};
use crate::field_poly::Ring;
use crate::groebner::{vector_to_string, FreeSubmodule};
use crate::testmod::{fpt, Convention, PairSpec, TauEngine};
use crate::vfilt::{compute_vfiltration, gr_is_crystal_zero, gr_range, verify_axioms, GrConvention};

pub use parse::{parse_matrix, parse_polynomial, parse_range, parse_rational, parse_rows, parse_vars};

#[derive(Parser, Debug)]
#[command(name = "cartier", version, about = "Test modules and V-filtrations of Cartier modules over F_p[x_1..x_n]")]
pub struct Cli {
    /// Emit a single JSON object instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Record wall-clock time per phase.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct PairArgs {
    #[arg(long)]
    pub p: u64,
    /// Comma-separated variable names.
    #[arg(long, default_value = "x")]
    pub vars: String,
    /// Twist matrix: rows separated by ';', entries by ','.
    #[arg(long, default_value = "1")]
    pub twist: String,
    #[arg(long)]
    pub f: String,
    /// Test element; defaults to u f (rank one) or f det(U).
    #[arg(long)]
    pub c: Option<String>,
    /// Numerator generators as vectors separated by ';'; default the free module.
    #[arg(long)]
    pub gens: Option<String>,
    /// Denominator generators as vectors separated by ';'; default zero.
    #[arg(long)]
    pub rels: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExponentArg {
    CeilPe,
    CeilPeMinus1,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GrArg {
    A,
    B,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
pub enum Suite {
    #[value(name = "prop32")]
    #[serde(rename = "prop32")]
    FrobeniusRecursion,
    #[value(name = "skoda")]
    #[serde(rename = "skoda")]
    Skoda,
    #[value(name = "lemma31")]
    #[serde(rename = "lemma31")]
    ConventionEquivalence,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
pub enum ReproTarget {
    #[value(name = "ex712")]
    #[serde(rename = "ex712")]
    TwistedLine,
    #[value(name = "ex621")]
    #[serde(rename = "ex621")]
    CuspShriek,
    #[value(name = "cor79")]
    #[serde(rename = "cor79")]
    SmoothFormula,
    #[value(name = "prop38")]
    #[serde(rename = "prop38")]
    GraphConstruction,
    #[value(name = "thm75")]
    #[serde(rename = "thm75")]
    EtaleTransformation,
    #[value(name = "lemma62")]
    #[serde(rename = "lemma62")]
    PushforwardFiltration,
}

#[derive(Subcommand, Clone, Debug, Serialize)]
#[serde(tag = "subcommand", rename_all = "lowercase")]
pub enum Command {
    /// Test module at a single t.
    Tau {
        #[command(flatten)]
        #[serde(flatten)]
        pair: PairArgs,
        #[arg(long)]
        t: String,
        #[arg(long, value_enum, default_value = "ceil-pe")]
        exponents: ExponentArg,
    },
    /// F-pure threshold of f, cross-checked against nu invariants.
    Fpt {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value = "x")]
        vars: String,
        #[arg(long)]
        f: String,
        #[arg(long, default_value_t = 12)]
        max_denominator: i64,
    },
    /// Jumping numbers on (lo, hi] relative to a candidate grid.
    Jumps {
        #[command(flatten)]
        #[serde(flatten)]
        pair: PairArgs,
        #[arg(long, default_value = "0..1")]
        range: String,
        #[arg(long, default_value_t = 12)]
        max_denominator: i64,
    },
    /// V-filtration table and its axioms.
    Vfilt {
        #[command(flatten)]
        #[serde(flatten)]
        pair: PairArgs,
        #[arg(long, default_value = "0..2")]
        range: String,
        #[arg(long, default_value_t = 12)]
        max_denominator: i64,
    },
    /// Nonzero graded pieces over an interval.
    Gr {
        #[command(flatten)]
        #[serde(flatten)]
        pair: PairArgs,
        #[arg(long, default_value = "0..1")]
        range: String,
        #[arg(long, default_value_t = 12)]
        max_denominator: i64,
        #[arg(long, value_enum, default_value = "a")]
        convention: GrArg,
    },
    /// Randomized property suite.
    Check {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        cases: usize,
    },
    /// Worked example with hard-coded expected outcome.
    Repro {
        #[arg(value_enum)]
        target: ReproTarget,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub p: Option<u64>,
    pub vars: Vec<String>,
    pub query: Value,
    pub result: Value,
    pub certified: bool,
    pub stabilized_at_e: Option<u32>,
    pub timings_ms: BTreeMap<String, u64>,
}

/// A report and whether every verification in it passed.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub ok: bool,
}

struct Timer {
    on: bool,
    start: Instant,
    phases: BTreeMap<String, u64>,
}

impl Timer {
    fn new(on: bool) -> Self {
        Timer {
            on,
            start: Instant::now(),
            phases: BTreeMap::new(),
        }
    }

    fn lap(&mut self, name: &str) {
        if self.on {
            self.phases
                .insert(name.to_string(), self.start.elapsed().as_millis() as u64);
            self.start = Instant::now();
        }
    }
}

pub struct Pair {
    pub ring: Arc<Ring>,
    pub module: CartierModule,
    pub spec: PairSpec,
}

fn vectors(text: &str, ring: &Arc<Ring>, r: usize) -> Result<FreeSubmodule> {
    let rows = parse_rows(text, ring)?;
    if let Some(bad) = rows.iter().find(|v| v.len() != r) {
        return Err(Error::RankMismatch {
            expected: r,
            found: bad.len(),
        });
    }
    FreeSubmodule::new(ring, r, rows)
}

pub fn build_pair(args: &PairArgs) -> Result<Pair> {
    let ring = Ring::with_names(args.p, parse_vars(&args.vars))?;
    let twist = parse_matrix(&args.twist, &ring)?;
    let r = twist.len();
    let num = match &args.gens {
        Some(g) => vectors(g, &ring, r)?,
        None => FreeSubmodule::full(&ring, r),
    };
    let den = match &args.rels {
        Some(g) => vectors(g, &ring, r)?,
        None => FreeSubmodule::zero(&ring, r),
    };
    let module = CartierModule::from_parts(num, den, CartierStructure::new(twist)?)?;
    let f = parse_polynomial(&args.f, &ring)?;
    let zero = Rational64::from_integer(0);
    let spec = match &args.c {
        Some(c) => PairSpec::with_test_element(module.clone(), f, zero, parse_polynomial(c, &ring)?)?,
        None => PairSpec::new(module.clone(), f, zero)?,
    };
    Ok(Pair { ring, module, spec })
}

pub fn generators(w: &FreeSubmodule) -> Vec<String> {
    w.reduced().generators().iter().map(|g| vector_to_string(g)).collect()
}

fn rational_list(ts: &[Rational64]) -> Vec<String> {
    ts.iter().map(|t| t.to_string()).collect()
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let mut timer = Timer::new(cli.timings);
    let query = serde_json::to_value(&cli.command).expect("query serializes");
    let mut report = Report {
        p: None,
        vars: Vec::new(),
        query,
        result: Value::Null,
        certified: true,
        stabilized_at_e: None,
        timings_ms: BTreeMap::new(),
    };
    let mut ok = true;
    match &cli.command {
        Command::Tau { pair, t, exponents } => {
            let pr = build_pair(pair)?;
            timer.lap("parse");
            let t = parse_rational(t)?;
            let conv = match exponents {
                ExponentArg::CeilPe => Convention::CeilPe,
                ExponentArg::CeilPeMinus1 => Convention::CeilPeMinus1,
            };
            let spec = pr.spec.at(t).convention(conv);
            let res = TauEngine::new(&spec)?.tau(t)?;
            timer.lap("tau");
            report.p = Some(pr.ring.p());
            report.vars = pr.ring.vars().to_vec();
            report.certified = res.certified;
            report.stabilized_at_e = Some(res.stabilized_at_e);
            report.result = json!({
                "t": t.to_string(),
                "generators": generators(&res.value),
                "path": res.path,
                "test_element": spec.c.to_string(),
            });
        }
        Command::Fpt {
            p,
            vars,
            f,
            max_denominator,
        } => {
            let ring = Ring::with_names(*p, parse_vars(vars))?;
            let f = parse_polynomial(f, &ring)?;
            timer.lap("parse");
            let res = fpt(&f, *max_denominator)?;
            timer.lap("fpt");
            report.p = Some(*p);
            report.vars = ring.vars().to_vec();
            let nu: Vec<Value> = res.nu.iter().map(|(e, v)| json!({"e": e, "nu": v})).collect();
            report.result = json!({
                "fpt": res.value.to_string(),
                "previous_candidate": res.below.to_string(),
                "nu": nu,
            });
        }
        Command::Jumps {
            pair,
            range,
            max_denominator,
        } => {
            let pr = build_pair(pair)?;
            let (lo, hi) = parse_range(range)?;
            timer.lap("parse");
            let scan = TauEngine::new(&pr.spec)?.jumping_numbers(lo, hi, *max_denominator)?;
            timer.lap("scan");
            report.p = Some(pr.ring.p());
            report.vars = pr.ring.vars().to_vec();
            report.certified = scan.values.iter().all(|v| v.certified) && scan.base.certified;
            report.stabilized_at_e = scan.values.iter().map(|v| v.stabilized_at_e).max();
            let values: Vec<Vec<String>> = scan.values.iter().map(|v| generators(&v.value)).collect();
            report.result = json!({
                "jumps": rational_list(&scan.jumps),
                "values": values,
                "candidate_count": scan.candidates,
                "max_denominator": scan.max_denominator,
            });
        }
        Command::Vfilt {
            pair,
            range,
            max_denominator,
        } => {
            let pr = build_pair(pair)?;
            let (lo, hi) = parse_range(range)?;
            timer.lap("parse");
            let table = compute_vfiltration(&pr.spec, lo, hi, *max_denominator)?;
            timer.lap("filtration");
            let axioms = verify_axioms(&table)?;
            timer.lap("axioms");
            ok = axioms.all_pass();
            report.p = Some(pr.ring.p());
            report.vars = pr.ring.vars().to_vec();
            let pieces: Vec<Value> = table
                .pieces
                .iter()
                .map(|(t, v)| json!({"from": t.to_string(), "generators": generators(v)}))
                .collect();
            report.result = json!({
                "jumps": rational_list(&table.jumps()),
                "pieces": pieces,
                "axioms": axioms,
            });
        }
        Command::Gr {
            pair,
            range,
            max_denominator,
            convention,
        } => {
            let pr = build_pair(pair)?;
            let (lo, hi) = parse_range(range)?;
            timer.lap("parse");
            let conv = match convention {
                GrArg::A => GrConvention::A,
                GrArg::B => GrConvention::B,
            };
            let (tlo, thi) = (Rational64::from_integer(0), hi.max(Rational64::from_integer(1)));
            let table = compute_vfiltration(&pr.spec, tlo, thi, *max_denominator)?;
            timer.lap("filtration");
            let mut pieces = Vec::new();
            for piece in gr_range(&table, lo, hi, conv)? {
                pieces.push(json!({
                    "t": piece.t.to_string(),
                    "twist_exponent": piece.twist_exponent,
                    "numerator": generators(piece.module.numerator()),
                    "denominator": generators(piece.module.denominator()),
                    "crystal_zero": gr_is_crystal_zero(&piece)?,
                }));
            }
            timer.lap("pieces");
            report.p = Some(pr.ring.p());
            report.vars = pr.ring.vars().to_vec();
            report.result = json!({"convention": conv, "pieces": pieces});
        }
        Command::Check { suite, seed, cases } => {
            let name = serde_json::to_value(suite).unwrap();
            let res = checks::run(name.as_str().unwrap(), *seed, *cases)?;
            timer.lap("suite");
            ok = res.ok();
            report.result = serde_json::to_value(&res).unwrap();
        }
        Command::Repro { target } => {
            let name = serde_json::to_value(target).unwrap();
            let res = repro::run(name.as_str().unwrap())?;
            timer.lap("repro");
            ok = res.passed();
            report.result = serde_json::to_value(&res).unwrap();
        }
    }
    report.timings_ms = timer.phases;
    Ok(Outcome { report, ok })
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, x, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object()) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

/// JSON object or an aligned two-column table.
pub fn emit(report: &Report, json_mode: bool) -> String {
    if json_mode {
        return serde_json::to_string(report).expect("report serializes");
    }
    let mut rows = Vec::new();
    if let Some(p) = report.p {
        rows.push(("p".to_string(), p.to_string()));
        rows.push(("vars".to_string(), report.vars.join(",")));
    }
    flatten("", &report.result, &mut rows);
    rows.push(("certified".to_string(), report.certified.to_string()));
    if let Some(e) = report.stabilized_at_e {
        rows.push(("stabilized_at_e".to_string(), e.to_string()));
    }
    for (k, v) in &report.timings_ms {
        rows.push((format!("time.{k}_ms"), v.to_string()));
    }
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        out.push_str(&format!("{k:<width$}  {v}\n"));
    }
    out
}

/// Runs the command line and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", emit(&out.report, cli.json));
            if cli.json {
                println!();
            }
            if out.ok {
                0
            } else {
                eprintln!("verification failed");
                2
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

