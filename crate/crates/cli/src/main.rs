//! `qsuper`: configure a datum, run verification suites, emit JSON reports.
//!
//! Exit codes: 0 when no row fails, 1 when some row fails or a computation
//! errors, 2 for invalid input.

mod cache;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qsuper::freealg::{parse_word, Alphabet};
use qsuper::grading::Bicharacter;
use qsuper::pairing::PairingSpec;
use qsuper::presentations::{comp_string, extract_rll, relation_string, SignPair};
use qsuper::rmatrix::{build_r, Mat};
use qsuper::suites::{Context, Suite, SuiteOptions};
use qsuper::{RootDatum, Weight};
use serde_json::{json, Value};

use report::{datum_json, report_json, summary, SuiteEntry};

#[derive(Parser)]
#[command(name = "qsuper", version, about = "Exact checks for gl and osp quantum supergroups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run any combination of suites.
    Run(RunArgs),
    /// Build the R-matrix or check its structure.
    #[command(subcommand)]
    Rmatrix(RmatrixCmd),
    /// Evaluate skew pairings on words.
    #[command(subcommand)]
    Pairing(PairingCmd),
    /// Extract RLL relations and compare presentations.
    #[command(subcommand)]
    Present(PresentCmd),
    /// Root vectors, Gram matrices and the DF correspondence.
    #[command(subcommand)]
    Roots(RootsCmd),
}

#[derive(Subcommand)]
enum RmatrixCmd {
    /// Print the nonzero entries of R, R⁻¹, R_s and R_u.
    Build(BuildArgs),
    /// Structure checks and the Serre and Chevalley relations.
    Check(ReportArgs),
}

#[derive(Subcommand)]
enum PairingCmd {
    /// Pair two words, e.g. `--left "lp1_2" --right "lm2_1"`.
    Eval(EvalArgs),
}

#[derive(Subcommand)]
enum PresentCmd {
    /// Print the RLL relations of one sign pair.
    Extract(ExtractArgs),
    /// Twist equivalence of the two braidings.
    Twistcheck(ReportArgs),
    /// Cross relations from the pairing against the mixed RLL relations.
    Crosscheck(ReportArgs),
    /// Relation tables in the representation model.
    Tables(ReportArgs),
}

#[derive(Subcommand)]
enum RootsCmd {
    /// Gram matrices of PBW monomials.
    Gram(ReportArgs),
    /// Ordered product of local factors against R_u.
    Factorize(ReportArgs),
    /// DF images, roundtrips, root-vector images and pairing anchors.
    Correspondence(ReportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Gl,
    Osp,
}

#[derive(Args, Clone)]
struct DatumArgs {
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Parity sequence, e.g. `0110`.
    #[arg(long)]
    parity: String,
    /// ϑ signs for osp, e.g. `++-+`.
    #[arg(long)]
    theta: Option<String>,
}

impl DatumArgs {
    fn datum(&self) -> Result<RootDatum, String> {
        let d = match self.mode {
            ModeArg::Gl => {
                if self.theta.is_some() {
                    return Err("--theta applies to osp only".into());
                }
                RootDatum::gl_str(&self.parity)
            }
            ModeArg::Osp => RootDatum::osp_str(&self.parity, self.theta.as_deref()),
        };
        d.map_err(|e| e.to_string())
    }
}

#[derive(Args, Clone)]
struct ReportArgs {
    #[command(flatten)]
    datum: DatumArgs,
    /// Height bound for PBW monomials.
    #[arg(long, default_value_t = 4)]
    height: u32,
    /// Restrict Gram checks to one Q-degree, e.g. `1,0,-1`.
    #[arg(long, allow_hyphen_values = true)]
    degree: Option<String>,
    /// Write the JSON report here; the summary goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Parallelize within suites.
    #[arg(long)]
    parallel: bool,
    /// Read and write the pairing memo tables at this path.
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: ReportArgs,
    /// Comma separated suite names, or `all`.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    suites: Vec<String>,
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    datum: DatumArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpecArg {
    Sigma,
    SigmaTilde,
    Dj,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    datum: DatumArgs,
    #[arg(long, value_enum, default_value = "sigma")]
    spec: SpecArg,
    #[arg(long, allow_hyphen_values = true)]
    left: String,
    #[arg(long, allow_hyphen_values = true)]
    right: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum BraidingArg {
    Standard,
    Twisted,
}

#[derive(Args)]
struct ExtractArgs {
    #[command(flatten)]
    datum: DatumArgs,
    /// `pp`, `mm` or `pm` (also `++`, `--`, `+-`).
    #[arg(long, default_value = "pp", allow_hyphen_values = true)]
    signs: String,
    #[arg(long, value_enum, default_value = "standard")]
    braiding: BraidingArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure kinds, mapped to exit codes.
enum Failure {
    Usage(String),
    Runtime(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Runtime(_) => 1,
        }
    }
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn runtime(e: impl ToString) -> Failure {
    Failure::Runtime(e.to_string())
}

fn parse_suites(names: &[String]) -> Result<Vec<Suite>, Failure> {
    if names.is_empty() {
        return Err(usage("--suites must name at least one suite"));
    }
    let mut out = Vec::new();
    for n in names {
        let n = n.trim();
        if n == "all" {
            out.extend(Suite::ALL);
        } else {
            let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
            out.push(
                Suite::parse(n).ok_or_else(|| usage(format!("unknown suite {n:?}; expected one of {}, all", names.join(", "))))?,
            );
        }
    }
    // module order, each suite once
    out.sort();
    out.dedup();
    Ok(out)
}

fn parse_degree(s: &str) -> Result<Weight, Failure> {
    let v: Result<Vec<i32>, _> = s.split(',').map(|t| t.trim().parse::<i32>()).collect();
    let v = v.map_err(|_| usage(format!("--degree: expected comma separated integers, got {s:?}")))?;
    Weight::from_slice(&v).ok_or_else(|| usage("--degree has too many coordinates"))
}

fn parse_signs(s: &str) -> Result<SignPair, Failure> {
    match s {
        "pp" | "++" => Ok(SignPair::PlusPlus),
        "mm" | "--" => Ok(SignPair::MinusMinus),
        "pm" | "+-" => Ok(SignPair::PlusMinus),
        _ => Err(usage(format!("--signs: expected pp, mm or pm, got {s:?}"))),
    }
}

fn emit(v: &Value, out: &Option<PathBuf>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).expect("json value") + "\n";
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| runtime(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Runs `suites` and writes the report. Returns whether every row passed.
fn run_suites(args: &ReportArgs, suites: &[Suite]) -> Result<bool, Failure> {
    let d = args.datum.datum().map_err(usage)?;
    let degree = args.degree.as_deref().map(parse_degree).transpose()?;
    let opts = SuiteOptions {
        height: args.height,
        degree,
        parallel: args.parallel,
        ..SuiteOptions::default()
    };
    let ctx = Context::new(d).map_err(runtime)?;
    if let Some(p) = &args.cache {
        cache::load(p, ctx.datum(), &ctx.sigma, &ctx.sigma_tilde).map_err(runtime)?;
    }
    let mut entries = Vec::new();
    for &s in suites {
        let (rows, elapsed_ms) = ctx.run_timed(s, &opts).map_err(|e| runtime(format!("suite {}: {e}", s.name())))?;
        entries.push(SuiteEntry {
            name: s.name().into(),
            rows,
            elapsed_ms,
        });
    }
    if let Some(p) = &args.cache {
        cache::store(p, ctx.datum(), &ctx.sigma, &ctx.sigma_tilde).map_err(runtime)?;
    }
    let json = report_json(ctx.datum(), &entries);
    let text = summary(ctx.datum(), &entries);
    if args.out.is_some() {
        print!("{text}");
    } else {
        eprint!("{text}");
    }
    emit(&json, &args.out)?;
    Ok(entries.iter().all(|e| !e.rows.iter().any(|r| r.is_fail())))
}

fn matrix_json(m: &Mat) -> Value {
    let mut entries: Vec<(String, String)> = m
        .entries()
        .map(|(k, c)| {
            let idx = m.unpack(k);
            let label = idx
                .iter()
                .map(|(a, b)| format!("E{},{}", a + 1, b + 1))
                .collect::<Vec<_>>()
                .join("⊗");
            (label, c.to_string())
        })
        .collect();
    entries.sort();
    Value::Object(entries.into_iter().map(|(k, v)| (k, Value::String(v))).collect())
}

fn build(args: &BuildArgs) -> Result<bool, Failure> {
    let d = Arc::new(args.datum.datum().map_err(usage)?);
    let b = build_r(&d).map_err(runtime)?;
    let v = json!({
        "datum": datum_json(&d),
        "R": matrix_json(&b.r),
        "R_inv": matrix_json(&b.r_inv),
        "R_s": matrix_json(&b.r_s),
        "R_u": matrix_json(&b.r_u),
    });
    emit(&v, &args.out)?;
    Ok(true)
}

fn eval(args: &EvalArgs) -> Result<bool, Failure> {
    let d = Arc::new(args.datum.datum().map_err(usage)?);
    let left = parse_word(&args.left).map_err(usage)?;
    let right = parse_word(&args.right).map_err(usage)?;
    let alph = Arc::new(Alphabet::new(d.clone()));
    let spec = match args.spec {
        SpecArg::Dj => PairingSpec::dj(alph),
        SpecArg::Sigma | SpecArg::SigmaTilde => {
            let b = build_r(&d).map_err(runtime)?;
            if matches!(args.spec, SpecArg::Sigma) {
                PairingSpec::sigma_r(&b, alph)
            } else {
                PairingSpec::sigma_tilde_r(&b, alph).map_err(runtime)?
            }
        }
    };
    let v = spec.pair_words(&left, &right).map_err(usage)?;
    println!("{v}");
    Ok(true)
}

fn extract(args: &ExtractArgs) -> Result<bool, Failure> {
    let d = Arc::new(args.datum.datum().map_err(usage)?);
    let signs = parse_signs(&args.signs)?;
    let braiding = match args.braiding {
        BraidingArg::Standard => Bicharacter::Standard,
        BraidingArg::Twisted => Bicharacter::Twisted,
    };
    let b = build_r(&d).map_err(runtime)?;
    let rels = extract_rll(&b, signs, braiding).map_err(runtime)?;
    let rows: Vec<Value> = rels
        .iter()
        .filter(|(_, r)| !r.is_empty())
        .map(|(k, r)| json!({ "component": comp_string(k), "relation": relation_string(r) }))
        .collect();
    let v = json!({
        "datum": datum_json(&d),
        "signs": signs.name(),
        "braiding": format!("{:?}", braiding),
        "relations": rows,
    });
    emit(&v, &args.out)?;
    Ok(true)
}

fn dispatch(cmd: &Cmd) -> Result<bool, Failure> {
    match cmd {
        Cmd::Run(a) => run_suites(&a.common, &parse_suites(&a.suites)?),
        Cmd::Rmatrix(RmatrixCmd::Build(a)) => build(a),
        Cmd::Rmatrix(RmatrixCmd::Check(a)) => run_suites(a, &[Suite::Structure, Suite::Relations]),
        Cmd::Pairing(PairingCmd::Eval(a)) => eval(a),
        Cmd::Present(PresentCmd::Extract(a)) => extract(a),
        Cmd::Present(PresentCmd::Twistcheck(a)) => run_suites(a, &[Suite::Twist]),
        Cmd::Present(PresentCmd::Crosscheck(a)) => run_suites(a, &[Suite::Cross]),
        Cmd::Present(PresentCmd::Tables(a)) => run_suites(a, &[Suite::Tables]),
        Cmd::Roots(RootsCmd::Gram(a)) => run_suites(a, &[Suite::Gram]),
        Cmd::Roots(RootsCmd::Factorize(a)) => run_suites(a, &[Suite::Factorize]),
        Cmd::Roots(RootsCmd::Correspondence(a)) => run_suites(a, &[Suite::Correspondence]),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            let (Failure::Usage(m) | Failure::Runtime(m)) = &f;
            eprintln!("error: {m}");
            ExitCode::from(f.code())
        }
    }
}
