use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::json;

use wstab::catalog::{self, Source};
use wstab::format::{emit_code, parse_code, parse_enumerator, CodeRecord};
use wstab::roots::{find_roots, square_free, vieta_check};
use wstab::stab::{certify_trivial, compute_stabilizer};
use wstab::wenum::{classify, divisibility, fixed_by_d_delta, is_formally_self_dual, macwilliams};
use wstab::{Error, LinearCode, StabOptions, StabilizerReport64, Verdict, WeightEnumerator};

/// Weight enumerators of linear codes and their stabilizers in GL2(C).
#[derive(Parser, Debug)]
#[command(name = "wstab", version)]
struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "WSTAB_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generator matrix of RM_q(r, m) in code-file format.
    Rm { q: u32, r: u32, m: usize },
    /// Generator matrix of PRM_q(r, m) in code-file format.
    Prm { q: u32, r: u32, m: usize },
    /// Weight enumerator of a code file.
    Wenum { path: String },
    /// Dual of a code file.
    Dual { path: String },
    /// MacWilliams transform of an enumerator.
    Macwilliams(EnumInput),
    /// Classify an enumerator by its roots.
    Classify(EnumInput),
    /// Largest Δ dividing every weight.
    Divisible(EnumInput),
    /// Formal self-duality test.
    Fsd(EnumInput),
    /// Certified roots of W(x, 1).
    Roots {
        #[command(flatten)]
        input: EnumInput,
        #[command(flatten)]
        precision: Precision,
    },
    /// Stabilizer of W(x, y) in GL2(C).
    Stabilizer {
        #[command(flatten)]
        input: EnumInput,
        #[command(flatten)]
        precision: Precision,
    },
    /// Certify that the stabilizer consists of scalars only.
    Trivial {
        #[command(flatten)]
        input: EnumInput,
        #[command(flatten)]
        precision: Precision,
    },
    /// List the built-in fixtures.
    Catalog,
    /// Check the built-in codes against their stated enumerators.
    VerifyCatalog,
}

#[derive(Args, Debug)]
struct EnumInput {
    /// Enumerator file (coefficients a_0..a_n or a JSON record), a code file,
    /// or `-` for standard input.
    #[arg(required_unless_present = "fixture")]
    path: Option<String>,
    /// Use a catalog entry instead of a file.
    #[arg(long, conflicts_with = "path")]
    fixture: Option<String>,
    /// Field size; taken from the code when the input is a code file.
    #[arg(long)]
    q: Option<u32>,
    /// Number of codewords; defaults to W(1, 1).
    #[arg(long)]
    code_size: Option<BigInt>,
}

#[derive(Args, Debug)]
struct Precision {
    /// Target radius for certified root disks.
    #[arg(long, default_value_t = 1e-12)]
    eps: f64,
    /// Retries at eps * 10^(-2k) before reporting a precision failure.
    #[arg(long, default_value_t = 3)]
    max_precision_retries: usize,
}

impl Precision {
    fn options(&self) -> StabOptions {
        StabOptions { eps: self.eps, max_precision_retries: self.max_precision_retries }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
    Precision(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_precision() {
            Failure::Precision(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

macro_rules! lib_err {
    ($e:expr) => {
        $e.map_err(|e| Failure::from(Error::from(e)))
    };
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

fn read_code(path: &str) -> Result<LinearCode, Failure> {
    lib_err!(parse_code(&read_input(path)?))
}

fn looks_like_code(text: &str) -> bool {
    text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).is_some_and(|l| l.starts_with('q'))
}

/// Enumerator, field size (if known) and code size.
fn load(input: &EnumInput) -> Result<(WeightEnumerator, Option<u32>, BigInt), Failure> {
    let (w, q) = if let Some(name) = &input.fixture {
        let entry = catalog::find(name).ok_or_else(|| Failure::Usage(format!("no catalog entry `{name}`")))?;
        (entry.enumerator()?, Some(entry.q))
    } else {
        let text = read_input(input.path.as_deref().unwrap_or("-"))?;
        if looks_like_code(&text) {
            let code = lib_err!(parse_code(&text))?;
            if input.q.is_some_and(|q| q != code.field().order()) {
                return Err(Failure::Usage("--q disagrees with the code file".into()));
            }
            (lib_err!(code.enumerate_weights())?, Some(code.field().order()))
        } else {
            (lib_err!(parse_enumerator(&text))?, None)
        }
    };
    let q = input.q.or(q);
    let size = input.code_size.clone().unwrap_or_else(|| w.total());
    Ok((w, q, size))
}

fn need_q(q: Option<u32>) -> Result<u32, Failure> {
    q.ok_or_else(|| Failure::Usage("--q is required for an enumerator input".into()))
}

fn enumerator_text(w: &WeightEnumerator) -> String {
    format!("W(x,y) = {}\nW(x,1) = {}", w.to_homogeneous_string(), w.to_univariate_string())
}

fn code_text(code: &LinearCode, json: bool) -> Result<String, Failure> {
    if json {
        Ok(serde_json::to_string(&CodeRecord::from(code)).unwrap())
    } else {
        Ok(emit_code(code).trim_end().to_string())
    }
}

fn stabilizer_text(r: &StabilizerReport64) -> String {
    let mut out = vec![format!("verdict: {:?}", r.verdict)];
    out.push(format!("classification: {}", serde_json::to_string(&r.classification).unwrap()));
    if let Some(b) = &r.bound {
        out.push(format!("order bound: {b}"));
    }
    if r.verdict != Verdict::Infinite {
        out.push(format!("order: {}", r.order()));
    }
    if let Some(eps) = r.eps {
        out.push(format!("root radius: {eps:e}"));
    }
    if let Some(b) = r.contains_d_delta {
        out.push(format!("contains D_{}: {b}", r.delta));
    }
    if let Some(b) = r.contains_s_q {
        out.push(format!("contains S_q: {b}"));
    }
    if let Some(c) = &r.certificate {
        for t in &c.tuples {
            out.push(format!(
                "critical tuple {:?}: cross ratio {:.12} {:+.12}i, gap {:e} (threshold {:e})",
                t.indices, t.cross_ratio.re, t.cross_ratio.im, t.gap, c.threshold
            ));
        }
    }
    for (i, e) in r.elements.iter().enumerate() {
        let m = e.matrix;
        out.push(format!(
            "g{i}: [[{:.12} {:+.12}i, {:.12} {:+.12}i], [{:.12} {:+.12}i, {:.12} {:+.12}i]] residual {:.3e}",
            m[0][0].re, m[0][0].im, m[0][1].re, m[0][1].im, m[1][0].re, m[1][0].im, m[1][1].re, m[1][1].im, e.residual
        ));
    }
    out.join("\n")
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let json = cli.json;
    match &cli.command {
        Command::Rm { q, r, m } => code_text(&lib_err!(wstab::rm::reed_muller(*q, *r, *m))?, json),
        Command::Prm { q, r, m } => code_text(&lib_err!(wstab::rm::projective_reed_muller(*q, *r, *m))?, json),
        Command::Wenum { path } => {
            let w = lib_err!(read_code(path)?.enumerate_weights())?;
            Ok(if json { serde_json::to_string(&w).unwrap() } else { enumerator_text(&w) })
        }
        Command::Dual { path } => code_text(&read_code(path)?.dual(), json),
        Command::Macwilliams(input) => {
            let (w, q, size) = load(input)?;
            let d = lib_err!(macwilliams(&w, need_q(q)?, &size))?;
            Ok(if json { serde_json::to_string(&d).unwrap() } else { enumerator_text(&d) })
        }
        Command::Classify(input) => {
            let (w, q, _) = load(input)?;
            let c = lib_err!(classify(&w, need_q(q)?))?;
            Ok(if json {
                serde_json::to_string(&c).unwrap()
            } else {
                let infinite = if c.has_infinite_stabilizer() { "infinite" } else { "finite" };
                format!("{}\nstabilizer: {infinite}", serde_json::to_string(&c).unwrap())
            })
        }
        Command::Divisible(input) => {
            let (w, _, _) = load(input)?;
            let delta = divisibility(&w);
            let fixed = fixed_by_d_delta(&w, delta);
            Ok(if json {
                json!({ "delta": delta, "fixed_by_d_delta": fixed }).to_string()
            } else {
                format!("delta: {delta}\nfixed by D_delta: {fixed}")
            })
        }
        Command::Fsd(input) => {
            let (w, q, size) = load(input)?;
            let fsd = is_formally_self_dual(&w, need_q(q)?, &size);
            Ok(if json {
                json!({ "formally_self_dual": fsd, "code_size": size.to_string() }).to_string()
            } else {
                format!("formally self-dual: {fsd}")
            })
        }
        Command::Roots { input, precision } => {
            let (w, _, _) = load(input)?;
            let sf = square_free(&w);
            let roots = lib_err!(find_roots::<f64>(&sf, precision.eps))?;
            if json {
                return Ok(serde_json::to_string(&roots).unwrap());
            }
            let vieta = vieta_check(&sf, &roots);
            let mut out = vec![format!(
                "{} distinct roots, eps = {:e}, N = {}, Vieta {}",
                roots.len(),
                roots.eps,
                roots.bound,
                if vieta.passes() { "ok" } else { "FAILED" }
            )];
            for r in &roots.roots {
                out.push(format!(
                    "{:+.15} {:+.15}i  radius {:.3e}  multiplicity {}",
                    r.center.re, r.center.im, r.radius, r.multiplicity
                ));
            }
            Ok(out.join("\n"))
        }
        Command::Stabilizer { input, precision } => {
            let (w, q, _) = load(input)?;
            let r = lib_err!(compute_stabilizer::<f64>(&w, need_q(q)?, precision.options()))?;
            Ok(if json { serde_json::to_string(&r).unwrap() } else { stabilizer_text(&r) })
        }
        Command::Trivial { input, precision } => {
            let (w, q, _) = load(input)?;
            let r = lib_err!(certify_trivial::<f64>(&w, need_q(q)?, precision.options()))?;
            Ok(if json { serde_json::to_string(&r).unwrap() } else { stabilizer_text(&r) })
        }
        Command::Catalog => {
            let entries = catalog::catalog();
            if json {
                let list: Vec<_> = entries
                    .iter()
                    .map(|e| {
                        json!({
                            "name": e.name,
                            "description": e.description,
                            "q": e.q,
                            "n": e.n,
                            "k": e.dimension(),
                            "kind": match e.source {
                                Source::Code(_) => "code",
                                Source::Polynomial(_) => "polynomial",
                                Source::DualOf { .. } => "dual",
                            },
                        })
                    })
                    .collect();
                return Ok(serde_json::to_string(&list).unwrap());
            }
            Ok(entries
                .iter()
                .map(|e| {
                    let k = e.dimension().map_or("-".to_string(), |k| k.to_string());
                    format!("{:<10} q={} n={:<3} k={:<3} {}", e.name, e.q, e.n, k, e.description)
                })
                .collect::<Vec<_>>()
                .join("\n"))
        }
        Command::VerifyCatalog => {
            let checks = catalog::verify_catalog()?;
            let failed = checks.iter().filter(|c| !c.passed()).count();
            let text = if json {
                let list: Vec<_> = checks
                    .iter()
                    .map(
                        |c| json!({ "name": c.name, "expected": c.expected, "actual": c.actual, "passed": c.passed() }),
                    )
                    .collect();
                serde_json::to_string(&list).unwrap()
            } else {
                checks
                    .iter()
                    .map(|c| {
                        let status = if c.passed() { "ok" } else { "MISMATCH" };
                        format!("{:<4} {status}  W(x,1) = {}", c.name, c.actual.to_univariate_string())
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            if failed > 0 {
                emit(&text);
                return Err(Failure::Domain(format!("{failed} catalog entries do not match")));
            }
            Ok(text)
        }
    }
}

/// Writes a report line; a closed pipe is not an error.
fn emit(text: &str) {
    let _ = writeln!(io::stdout().lock(), "{text}");
}

fn verb(cmd: &Command) -> &'static str {
    match cmd {
        Command::Rm { .. } => "rm",
        Command::Prm { .. } => "prm",
        Command::Wenum { .. } => "wenum",
        Command::Dual { .. } => "dual",
        Command::Macwilliams(_) => "macwilliams",
        Command::Classify(_) => "classify",
        Command::Divisible(_) => "divisible",
        Command::Fsd(_) => "fsd",
        Command::Roots { .. } => "roots",
        Command::Stabilizer { .. } => "stabilizer",
        Command::Trivial { .. } => "trivial",
        Command::Catalog => "catalog",
        Command::VerifyCatalog => "verify-catalog",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("wstab: thread pool: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(text) => {
            emit(&text);
            ExitCode::SUCCESS
        }
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (1, m),
                Failure::Domain(m) => (2, m),
                Failure::Precision(m) => (3, m),
            };
            eprintln!("wstab {}: {msg}", verb(&cli.command));
            ExitCode::from(code)
        }
    }
}
