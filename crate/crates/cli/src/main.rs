//! Command-line front end: construct Dickson polynomials, factor them with
//! the explicit engine, verify against the generic oracle, test the
//! permutation criterion, and tabulate batches as NDJSON.
//!
//! Exit codes: 0 success, 1 domain error, 2 verification mismatch, 3 usage
//! error.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use dickson_core::dickson::{is_permutation, DicksonKind, DicksonSpec};
use dickson_core::engine::{classify, factor_dickson, FactorEntry, FactorReport};
use dickson_core::field::{parse_field_spec, FieldCtx, FieldElement};
use dickson_core::oracle;
use dickson_core::{Factorization, Polynomial};

#[derive(Parser)]
#[command(name = "dickson", version, about = "Dickson polynomials over finite fields: construction and explicit factorization")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Factor D_n(x, a) or E_n(x, a) and print the factors with provenance
    Factor(FactorArgs),
    /// Run both the engine and the oracle and report whether they agree
    Verify(VerifyArgs),
    /// Print the Dickson polynomial itself
    Dickson(DicksonArgs),
    /// Permutation-polynomial test for the first kind
    PpTest(PpArgs),
    /// Stream one JSON record per admissible (n, a) up to a degree bound
    Table(TableArgs),
}

#[derive(Args)]
struct FieldOpts {
    /// Field spec: a prime "p" or a prime power "p^k"
    #[arg(long)]
    field: String,
    /// Modulus coefficients for extension fields, ascending: c0,c1,...,1
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u64>>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindOpt {
    First,
    Second,
}

impl From<KindOpt> for DicksonKind {
    fn from(k: KindOpt) -> DicksonKind {
        match k {
            KindOpt::First => DicksonKind::First,
            KindOpt::Second => DicksonKind::Second,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatOpt {
    Text,
    Json,
}

#[derive(Args)]
struct FactorArgs {
    #[command(flatten)]
    field: FieldOpts,
    #[arg(long, value_enum)]
    kind: KindOpt,
    #[arg(long)]
    n: u64,
    /// Parameter a as a canonical element code
    #[arg(long)]
    a: u64,
    /// Also check reconstruction, per-factor irreducibility and oracle agreement
    #[arg(long)]
    verify: bool,
    /// Re-multiply the factors and compare against the input polynomial
    #[arg(long)]
    check_product: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatOpt,
    /// Seed for the oracle's equal-degree splitting
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    field: FieldOpts,
    #[arg(long, value_enum)]
    kind: KindOpt,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    a: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct DicksonArgs {
    #[command(flatten)]
    field: FieldOpts,
    #[arg(long, value_enum)]
    kind: KindOpt,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    a: u64,
}

#[derive(Args)]
struct PpArgs {
    #[command(flatten)]
    field: FieldOpts,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    a: u64,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    field: FieldOpts,
    #[arg(long, value_enum)]
    kind: KindOpt,
    #[arg(long)]
    n_max: u64,
    /// Sweep every nonzero a instead of a = 1
    #[arg(long)]
    all_a: bool,
    /// Emit records in (n, a) order instead of completion order
    #[arg(long)]
    deterministic_order: bool,
}

enum Failure {
    Domain(String),
    Mismatch(String),
}

impl From<dickson_core::Error> for Failure {
    fn from(e: dickson_core::Error) -> Failure {
        Failure::Domain(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn build_field(opts: &FieldOpts) -> Result<FieldCtx, Failure> {
    let (p, k) = parse_field_spec(&opts.field)
        .ok_or_else(|| Failure::Domain(format!("malformed field spec '{}'", opts.field)))?;
    Ok(FieldCtx::new(p, k, opts.modulus.as_deref())?)
}

fn element(ctx: &FieldCtx, code: u64) -> Result<FieldElement, Failure> {
    if code >= ctx.q() {
        return Err(Failure::Domain(format!("element code {} out of range for {}", code, ctx)));
    }
    Ok(ctx.element(code))
}

fn entry_json(poly: &Polynomial, mult: usize, entry: &FactorEntry) -> serde_json::Value {
    json!({
        "poly": poly.to_string(),
        "mult": mult,
        "t": entry.t,
        "alpha": entry.alpha.as_ref().map(|e| e.code()),
        "descended": entry.descended,
        "special": entry.special.map(|s| s.as_str()),
    })
}

fn run_json(
    ctx: &FieldCtx,
    kind: DicksonKind,
    n: u64,
    a: u64,
    fact: &Factorization,
    report: &FactorReport,
) -> serde_json::Value {
    let factors: Vec<serde_json::Value> = fact
        .factors()
        .iter()
        .zip(&report.entries)
        .map(|((poly, mult), entry)| entry_json(poly, *mult, entry))
        .collect();
    json!({
        "field": {"p": ctx.p(), "k": ctx.k(), "modulus": ctx.modulus()},
        "kind": kind.to_string(),
        "n": n,
        "a": a,
        "lead": fact.lead().code(),
        "factors": factors,
        "case": report.tag.as_str(),
    })
}

fn print_text(fact: &Factorization, report: &FactorReport) {
    println!("{}", fact);
    println!("case: {}", report.tag.as_str());
    for ((poly, mult), entry) in fact.factors().iter().zip(&report.entries) {
        let t = entry.t.map_or("-".to_string(), |t| t.to_string());
        let alpha = entry.alpha.as_ref().map_or("-".to_string(), |e| e.code().to_string());
        let b = entry.b.as_ref().map_or("-".to_string(), |e| e.code().to_string());
        let special = entry.special.map_or("-", |s| s.as_str());
        println!(
            "factor: ({})^{} | t={} alpha={} b={} descended={} special={}",
            poly, mult, t, alpha, b, entry.descended, special
        );
    }
}

fn cmd_factor(args: &FactorArgs) -> CmdResult {
    let ctx = build_field(&args.field)?;
    let a = element(&ctx, args.a)?;
    let kind: DicksonKind = args.kind.into();
    let (fact, report) = factor_dickson(kind, args.n, &a, args.verify)?;
    let target = DicksonSpec::new(kind, args.n, a.clone()).polynomial()?;
    if args.verify {
        let reference = oracle::factor(&target, args.seed);
        if fact.canonicalize() != reference {
            return Err(Failure::Mismatch(format!(
                "engine and oracle disagree:\n  engine: {}\n  oracle: {}",
                fact, reference
            )));
        }
    }
    if args.check_product && fact.expand() != target {
        return Err(Failure::Mismatch("factor product does not reproduce the input polynomial".into()));
    }
    match args.format {
        FormatOpt::Text => {
            print_text(&fact, &report);
            if args.check_product {
                println!("check-product: ok");
            }
        }
        FormatOpt::Json => {
            println!("{}", run_json(&ctx, kind, args.n, args.a, &fact, &report));
        }
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> CmdResult {
    let ctx = build_field(&args.field)?;
    let a = element(&ctx, args.a)?;
    let kind: DicksonKind = args.kind.into();
    let (fact, _) = factor_dickson(kind, args.n, &a, false)?;
    let target = DicksonSpec::new(kind, args.n, a).polynomial()?;
    let reference = oracle::factor(&target, args.seed);
    if fact.canonicalize() == reference {
        println!("agreement: true");
        println!("{}", fact);
        Ok(())
    } else {
        println!("agreement: false");
        println!("engine: {}", fact);
        println!("oracle: {}", reference);
        Err(Failure::Mismatch(String::new()))
    }
}

fn cmd_dickson(args: &DicksonArgs) -> CmdResult {
    let ctx = build_field(&args.field)?;
    let a = element(&ctx, args.a)?;
    let poly = DicksonSpec::new(args.kind.into(), args.n, a).polynomial()?;
    println!("{}", poly);
    Ok(())
}

fn cmd_pp_test(args: &PpArgs) -> CmdResult {
    let ctx = build_field(&args.field)?;
    let a = element(&ctx, args.a)?;
    let verdict = is_permutation(DicksonKind::First, args.n, &a)?;
    println!("{}", verdict);
    Ok(())
}

fn cmd_table(args: &TableArgs) -> CmdResult {
    let ctx = build_field(&args.field)?;
    let kind: DicksonKind = args.kind.into();
    let a_codes: Vec<u64> = if args.all_a { (1..ctx.q()).collect() } else { vec![1] };
    let mut jobs = Vec::new();
    for n in 1..=args.n_max {
        for &a_code in &a_codes {
            if classify(kind, n, &ctx.element(a_code)).is_ok() {
                jobs.push((n, a_code));
            }
        }
    }
    let render = |&(n, a_code): &(u64, u64)| -> String {
        let a = ctx.element(a_code);
        let (fact, report) = factor_dickson(kind, n, &a, false).expect("classify admitted this run");
        run_json(&ctx, kind, n, a_code, &fact, &report).to_string()
    };
    if args.deterministic_order {
        let stdout = std::io::stdout();
        let mut out = stdout.lock();
        for job in &jobs {
            writeln!(out, "{}", render(job)).expect("stdout");
        }
    } else {
        jobs.par_iter().for_each(|job| {
            let line = render(job);
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            writeln!(out, "{}", line).expect("stdout");
        });
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's own help/version output is not an error
            if e.use_stderr() {
                let _ = e.print();
                return ExitCode::from(3);
            }
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let result = match &cli.cmd {
        Cmd::Factor(args) => cmd_factor(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Dickson(args) => cmd_dickson(args),
        Cmd::PpTest(args) => cmd_pp_test(args),
        Cmd::Table(args) => cmd_table(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Mismatch(msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(2)
        }
    }
}
