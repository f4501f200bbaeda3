//! `homdim`: homological invariants of bound quiver algebras and checks of
//! the dimension bounds along triangular recollements, from JSON files.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use homdim::algebra::{AlgebraJson, Gluing};
use homdim::complexes::{resolve, BoundedComplex};
use homdim::harness::{bound_report, corollary_3_checks, fuzz_corpus, triangular_recollement_glued, BoundReport, Verdict};
use homdim::igusa_todorov::{phi, phi_dim, PhiDimMode};
use homdim::invariants::{finitistic_dimension, global_dimension, gorenstein_profile, FdMode};
use homdim::module::Module;
use homdim::session::{HomDim, Session, DEFAULT_DEPTH_LIMIT};
use homdim::{Algebra, Error, FieldSpec, Rational, Scalar, F101, F1009, F2147483647, F65521};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "homdim", version, about = "Homological dimensions of bound quiver algebras")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Maximum number of syzygy steps before a dimension is reported unknown.
    #[arg(long, global = true, default_value_t = DEFAULT_DEPTH_LIMIT)]
    depth_limit: usize,
    /// Treat an exceeded depth limit as fatal (exit code 4).
    #[arg(long, global = true)]
    strict: bool,
    /// Ground field, `rational` or a supported prime; overrides the files.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Global, finitistic, selfinjective and phi-dimension of an algebra.
    Invariants { algebra: PathBuf },
    /// The Igusa-Todorov function of a module, with its rank trace.
    Phi { algebra: PathBuf, module: PathBuf },
    /// phi-dimension of an algebra.
    Phidim {
        algebra: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
    },
    /// Minimal projective resolution of a module or complex.
    Resolve {
        algebra: PathBuf,
        input: PathBuf,
        /// Number of degrees to resolve below the input.
        #[arg(long)]
        degrees: Option<usize>,
    },
    /// Checks the recollement bounds for `[B 0; M C]`, or for a seeded
    /// random corpus.
    CheckRecollement {
        #[arg(long, requires_all = ["c", "bimodule"], conflicts_with = "seed")]
        b: Option<PathBuf>,
        #[arg(long)]
        c: Option<PathBuf>,
        /// Gluing of `M`: connecting arrows from `C` to `B` and relations.
        #[arg(long)]
        bimodule: Option<PathBuf>,
        #[arg(long, required_unless_present = "b")]
        seed: Option<u64>,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// `T_n(A)` is `(m+1)`-Gorenstein exactly when `A` is `m`-Gorenstein.
    CheckTn {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        n: usize,
        /// Largest `m` to check.
        #[arg(long, default_value_t = 4)]
        m_max: usize,
    },
    /// Seeded fuzz corpus of triangular recollements with a summary.
    Fuzz {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Summarizes reports written by `fuzz` or `check-recollement`.
    Report { input: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Auto,
    RepFinite,
    GldimFinite,
    Corpus,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Core(Error),
    /// A check produced a violation; the report has been written.
    Violation,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Violation => 5,
            Failure::Core(e) => match e {
                Error::Parse(_)
                | Error::InvalidInput(_)
                | Error::NonAdmissible(_)
                | Error::BadKupisch(_)
                | Error::NotMonomialRealizable(_)
                | Error::NotNakayama(_) => 2,
                Error::FieldUnsupported(_) => 3,
                Error::DepthLimitExceeded { .. } => 4,
                Error::ZeroModule | Error::NotPerfect | Error::ZeroComplex => 1,
            },
        }
    }
}

type Out = std::result::Result<Value, Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_field(s: &str) -> std::result::Result<FieldSpec, Failure> {
    if s.eq_ignore_ascii_case("rational") || s == "Q" {
        return Ok(FieldSpec::Rational);
    }
    let p: u64 = s.parse().map_err(|_| Failure::Core(Error::FieldUnsupported(s.to_string())))?;
    Ok(FieldSpec::Prime { p })
}

/// Parses an algebra file, optionally over another field.
fn load_algebra(path: &Path, field: Option<FieldSpec>) -> std::result::Result<Arc<Algebra>, Failure> {
    let mut j: AlgebraJson = serde_json::from_str(&read(path)?).map_err(|e| Failure::Core(Error::Parse(e.to_string())))?;
    if let Some(f) = field {
        j.field = f;
    }
    j.field.validate()?;
    Ok(Arc::new(j.build()?))
}

macro_rules! dispatch {
    ($field:expr, $S:ident => $body:expr) => {
        match $field {
            FieldSpec::Rational => {
                type $S = Rational;
                $body
            }
            FieldSpec::Prime { p: 101 } => {
                type $S = F101;
                $body
            }
            FieldSpec::Prime { p: 1009 } => {
                type $S = F1009;
                $body
            }
            FieldSpec::Prime { p: 65521 } => {
                type $S = F65521;
                $body
            }
            FieldSpec::Prime { p: 2147483647 } => {
                type $S = F2147483647;
                $body
            }
            FieldSpec::Prime { p } => Err(Failure::Core(Error::FieldUnsupported(format!(
                "prime {p} is not one of 101, 1009, 65521, 2147483647"
            )))),
        }
    };
}

/// A depth-limit failure becomes an `unknown` entry unless `--strict`.
fn tolerate(common: &Common, r: Out) -> Out {
    match r {
        Err(Failure::Core(e @ Error::DepthLimitExceeded { .. })) if !common.strict => {
            Ok(json!({ "status": "unknown", "reason": e.to_string() }))
        }
        other => other,
    }
}

fn strict_homdim(common: &Common, h: HomDim) -> std::result::Result<HomDim, Failure> {
    match h {
        HomDim::Unknown { limit } if common.strict => Err(Failure::Core(Error::DepthLimitExceeded { limit })),
        h => Ok(h),
    }
}

fn auto_phi_mode<S: Scalar>(s: &Session<S>, alg: &Arc<Algebra>) -> homdim::Result<PhiDimMode> {
    if alg.nakayama_shape().is_some() {
        return Ok(PhiDimMode::RepFinite);
    }
    Ok(if global_dimension(s, alg)?.is_finite() { PhiDimMode::GldimFinite } else { PhiDimMode::Corpus })
}

fn invariants<S: Scalar>(common: &Common, alg: &Arc<Algebra>) -> Out {
    let s: Session<S> = Session::new(common.depth_limit);
    let gl = strict_homdim(common, global_dimension(&s, alg)?)?;
    let prof = gorenstein_profile(&s, alg)?;
    strict_homdim(common, prof.id_right)?;
    strict_homdim(common, prof.id_left)?;
    let fin_dim = if let Some(g) = gl.finite() {
        json!({ "value": g, "exact": true, "mode": "gldim-finite" })
    } else {
        let mode = if alg.nakayama_shape().is_some() { FdMode::RepFinite } else { FdMode::Corpus };
        serde_json::to_value(finitistic_dimension(&s, alg, mode)?).expect("serializable")
    };
    let phi_dim = serde_json::to_value(phi_dim(&s, alg, auto_phi_mode(&s, alg)?)?).expect("serializable");
    Ok(json!({
        "field": alg.field().to_string(),
        "vertices": alg.num_vertices(),
        "dim": alg.dim(),
        "gldim": gl,
        "fin_dim": fin_dim,
        "id_right": prof.id_right,
        "id_left": prof.id_left,
        "selfinjective": prof.id_right == HomDim::Finite(0),
        "gorenstein": prof.gorenstein,
        "gorenstein_level": prof.min_level,
        "phi_dim": phi_dim,
    }))
}

fn load_module<S: Scalar>(alg: &Arc<Algebra>, path: &Path) -> std::result::Result<Module<S>, Failure> {
    Ok(Module::from_json_str(alg.clone(), &read(path)?)?)
}

fn cmd_phi<S: Scalar>(common: &Common, alg: &Arc<Algebra>, module: &Path) -> Out {
    let m = load_module::<S>(alg, module)?;
    let s: Session<S> = Session::new(common.depth_limit);
    let p = phi(&s, &m)?;
    Ok(json!({ "phi": p.value, "trace": p.trace }))
}

fn cmd_phidim<S: Scalar>(common: &Common, alg: &Arc<Algebra>, mode: Mode) -> Out {
    let s: Session<S> = Session::new(common.depth_limit);
    let mode = match mode {
        Mode::Auto => auto_phi_mode(&s, alg)?,
        Mode::RepFinite => PhiDimMode::RepFinite,
        Mode::GldimFinite => PhiDimMode::GldimFinite,
        Mode::Corpus => PhiDimMode::Corpus,
    };
    Ok(serde_json::to_value(phi_dim(&s, alg, mode)?).expect("serializable"))
}

fn cmd_resolve<S: Scalar>(common: &Common, alg: &Arc<Algebra>, input: &Path, degrees: Option<usize>) -> Out {
    let text = read(input)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Core(Error::Parse(e.to_string())))?;
    let x = if v.get("range").is_some() {
        BoundedComplex::<S>::from_json_str(alg.clone(), &text)?
    } else {
        BoundedComplex::stalk(&Module::<S>::from_json_str(alg.clone(), &text)?, 0)
    };
    let limit = degrees.unwrap_or(common.depth_limit);
    let mut r = resolve(&x, limit)?;
    if !r.complete && common.strict {
        return Err(Failure::Core(Error::DepthLimitExceeded { limit }));
    }
    r.minimize(&x);
    let c = r.complex.trimmed();
    let terms: Vec<Value> = match c.support() {
        None => Vec::new(),
        Some((lo, hi)) => (lo..=hi)
            .map(|i| {
                let gens: Vec<&str> = c.term(i).iter().map(|&v| alg.vertex_label(v)).collect();
                json!({ "degree": i, "generators": gens, "dims": c.module((i - c.low) as usize).dims() })
            })
            .collect(),
    };
    Ok(json!({
        "complete": r.complete,
        "range": c.support().map(|(a, b)| vec![a, b]),
        "terms": terms,
        "complex": c.to_bounded().to_json(),
    }))
}

fn report_value(r: &BoundReport) -> Value {
    serde_json::to_value(r).expect("serializable")
}

fn check_glued<S: Scalar>(common: &Common, b: &Arc<Algebra>, c: &Arc<Algebra>, gluing: &Gluing) -> Out {
    let d = triangular_recollement_glued::<S>(b, c, gluing)?;
    let s: Session<S> = Session::new(common.depth_limit);
    let r = bound_report(&s, &d, "input")?;
    Ok(report_value(&r))
}

fn run_corpus<S: Scalar>(common: &Common, seed: u64, count: usize, jobs: usize, field: FieldSpec) -> std::result::Result<Vec<Value>, Failure> {
    let corpus = fuzz_corpus(seed, count, &field);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Failure::Input(e.to_string()))?;
    let limit = common.depth_limit;
    let reports: Vec<homdim::Result<Value>> = pool.install(|| {
        corpus
            .par_iter()
            .map(|inst| {
                let d = inst.datum::<S>(&field)?;
                let s: Session<S> = Session::new(limit);
                let mut v = report_value(&bound_report(&s, &d, &inst.name)?);
                v["corners"] = json!({ "B": inst.b, "C": inst.c, "gluing": inst.gluing });
                Ok(v)
            })
            .collect()
    });
    Ok(reports.into_iter().collect::<homdim::Result<Vec<_>>>()?)
}

fn has_violation(reports: &[Value]) -> bool {
    reports.iter().any(|r| {
        r["checks"].as_array().is_some_and(|cs| cs.iter().any(|c| c["verdict"] == json!(Verdict::Violation)))
    })
}

/// Verdict counts per check name, over a list of reports.
fn summarize(reports: &[Value]) -> Value {
    let mut per: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
    let mut totals: BTreeMap<String, usize> = BTreeMap::new();
    let mut tight = 0;
    let mut violations = Vec::new();
    for r in reports {
        for c in r["checks"].as_array().into_iter().flatten() {
            let name = c["name"].as_str().unwrap_or("?").to_string();
            let verdict = c["verdict"].as_str().unwrap_or("?").to_string();
            if verdict == "VIOLATION" {
                violations.push(json!({ "instance": r["instance"], "check": name }));
            }
            if c["tight"] == json!(true) {
                tight += 1;
            }
            *per.entry(name).or_default().entry(verdict.clone()).or_default() += 1;
            *totals.entry(verdict).or_default() += 1;
        }
    }
    let all: usize = totals.values().sum();
    let inconclusive = totals.get("inconclusive").copied().unwrap_or(0);
    let rate = if all == 0 { 0.0 } else { inconclusive as f64 / all as f64 };
    json!({
        "instances": reports.len(),
        "checks": all,
        "verdicts": totals,
        "tight": tight,
        "inconclusive_rate": (rate * 1e4).round() / 1e4,
        "per_check": per,
        "violations": violations,
    })
}

fn field_override(common: &Common) -> std::result::Result<Option<FieldSpec>, Failure> {
    common.field.as_deref().map(parse_field).transpose()
}

fn run(cli: &Cli) -> std::result::Result<(Value, bool), Failure> {
    let common = &cli.common;
    let field = field_override(common)?;
    if let Some(f) = field {
        f.validate()?;
    }
    let corpus_field = field.unwrap_or(FieldSpec::Rational);
    let out = match &cli.command {
        Command::Invariants { algebra } => {
            let alg = load_algebra(algebra, field)?;
            tolerate(common, dispatch!(*alg.field(), S => invariants::<S>(common, &alg)))?
        }
        Command::Phi { algebra, module } => {
            let alg = load_algebra(algebra, field)?;
            tolerate(common, dispatch!(*alg.field(), S => cmd_phi::<S>(common, &alg, module)))?
        }
        Command::Phidim { algebra, mode } => {
            let alg = load_algebra(algebra, field)?;
            tolerate(common, dispatch!(*alg.field(), S => cmd_phidim::<S>(common, &alg, *mode)))?
        }
        Command::Resolve { algebra, input, degrees } => {
            let alg = load_algebra(algebra, field)?;
            dispatch!(*alg.field(), S => cmd_resolve::<S>(common, &alg, input, *degrees))?
        }
        Command::CheckRecollement { b: Some(b), c: Some(c), bimodule: Some(m), .. } => {
            let b = load_algebra(b, field)?;
            let c = load_algebra(c, Some(field.unwrap_or(*b.field())))?;
            let gluing: Gluing =
                serde_json::from_str(&read(m)?).map_err(|e| Failure::Core(Error::Parse(e.to_string())))?;
            let r = dispatch!(*b.field(), S => check_glued::<S>(common, &b, &c, &gluing))?;
            let bad = has_violation(std::slice::from_ref(&r));
            return Ok((r, bad));
        }
        Command::CheckRecollement { seed: Some(seed), count, jobs, .. } => {
            let reports = dispatch!(corpus_field, S => run_corpus::<S>(common, *seed, *count, *jobs, corpus_field))?;
            let bad = has_violation(&reports);
            return Ok((Value::Array(reports), bad));
        }
        Command::CheckRecollement { .. } => {
            return Err(Failure::Input("give --b, --c and --bimodule, or --seed".into()));
        }
        Command::CheckTn { algebra, n, m_max } => {
            let alg = load_algebra(algebra, field)?;
            let checks = dispatch!(*alg.field(), S => {
                let s: Session<S> = Session::new(common.depth_limit);
                Ok::<_, Failure>(corollary_3_checks(&s, &alg, *n, 0..=*m_max)?)
            })?;
            let bad = checks.iter().any(|c| c.verdict == Verdict::Violation);
            let all_verified = checks.iter().all(|c| c.verdict == Verdict::Verified);
            let v = json!({ "n": n, "verdict": if all_verified { "verified" } else if bad { "VIOLATION" } else { "inconclusive" }, "checks": checks });
            return Ok((v, bad));
        }
        Command::Fuzz { seed, count, jobs } => {
            let reports = dispatch!(corpus_field, S => run_corpus::<S>(common, *seed, *count, *jobs, corpus_field))?;
            let bad = has_violation(&reports);
            let summary = summarize(&reports);
            return Ok((json!({ "seed": seed, "count": count, "summary": summary, "reports": reports }), bad));
        }
        Command::Report { input } => {
            let text = read(input)?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Core(Error::Parse(e.to_string())))?;
            let reports = match v {
                Value::Array(a) => a,
                Value::Object(ref o) if o.contains_key("reports") => o["reports"].as_array().cloned().unwrap_or_default(),
                Value::Object(_) => vec![v],
                _ => return Err(Failure::Core(Error::Parse("expected reports".into()))),
            };
            let bad = has_violation(&reports);
            return Ok((summarize(&reports), bad));
        }
    };
    Ok((out, false))
}

fn emit(common: &Common, v: &Value) -> std::result::Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(v).expect("serializable");
    text.push('\n');
    match &common.out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Input(e.to_string())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|(v, bad)| {
        emit(&cli.common, &v)?;
        if bad {
            Err(Failure::Violation)
        } else {
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Input(m) => eprintln!("error: {m}"),
                Failure::Core(e) => eprintln!("error: {e}"),
                Failure::Violation => eprintln!("a bound was violated"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}
