//! The `bbcharpoly` command line: SMS input, symmetric graph powers, and
//! the `charpoly`, `minpoly`, `multiplicities`, `sympower` and `verify`
//! subcommands.
//!
//! Everything runs in-process through [`run`], which returns the bytes for
//! stdout and stderr and the exit code; the binary only forwards them.
//! Exit codes are 0 on success, 2 for bad input or flags, 3 when a
//! computation fails and 4 when `--verify` finds a mismatch.

mod graph;
mod sms;

use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::adaptive::{blackbox_charpoly_explained, AdaptiveConfig, CharpolyReport, Method};
use crate::blackbox::{wiedemann_minpoly, BlackBox, SparseMatrix, WiedemannConfig};
use crate::explain::Explain;
use crate::ff::{random_prime_in, PrimeField};
use crate::integer::{integer_charpoly_explained, integer_minpoly, IntegerCharpolyReport, IntegerMatrix};
use crate::oracle::{dense_charpoly, dense_minpoly, DenseMatrix};
use crate::poly::text::format_factored;
use crate::poly::{factor, factor_monic_integer, factor_squarefree_monic, FieldPoly, IntPoly};
use crate::{Error, Result};

pub use graph::{k_subsets, symmetric_power, Graph};
pub use sms::{emit_sms, parse_sms};

#[derive(Parser, Debug, Clone)]
#[command(name = "bbcharpoly", version, about = "Characteristic polynomials of sparse matrices over GF(p) and Z")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Characteristic polynomial.
    Charpoly(CharpolyArgs),
    /// Minimal polynomial.
    Minpoly(CommonArgs),
    /// Irreducible factors with their minimal and characteristic multiplicities.
    Multiplicities(CharpolyArgs),
    /// Adjacency matrix of the symmetric k-th power of a graph.
    Sympower(SympowerArgs),
    /// Characteristic polynomial checked against the dense oracle.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Domain {
    /// Work over GF(p), p an odd prime below 2^31.
    #[arg(long, value_name = "P")]
    pub field: Option<u64>,
    /// Work over the integers.
    #[arg(long)]
    pub integer: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// `c0 + c1*X + ... + X^n`
    Coeffs,
    /// Product of irreducible powers in canonical order.
    Factored,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// SMS matrix file, or `-` for stdin.
    pub input: String,
    #[command(flatten)]
    pub domain: Domain,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the decision log to stderr as JSON lines.
    #[arg(long)]
    pub explain: bool,
    /// Cross-check the result against the dense oracle.
    #[arg(long)]
    pub verify: bool,
    /// Largest dimension `--verify` accepts.
    #[arg(long, default_value_t = 300)]
    pub verify_limit: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Coeffs)]
    pub output: OutputFormat,
    /// Worker threads; 0 uses one per core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Args, Debug, Clone)]
pub struct CharpolyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
    /// Unknown occurrence counts left to the combinatorial search.
    #[arg(long, default_value_t = 5)]
    pub threshold: usize,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub charpoly: CharpolyArgs,
    /// Fresh primes the integer result is reduced modulo.
    #[arg(long, default_value_t = 3)]
    pub primes: usize,
}

#[derive(Args, Debug, Clone)]
pub struct SympowerArgs {
    /// SMS adjacency matrix, or `-` for stdin.
    pub input: String,
    #[arg(short, long)]
    pub k: usize,
}

/// What a command wrote and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs a parsed command line; `stdin` backs the `-` filename.
pub fn run(cli: &Cli, stdin: &mut dyn Read) -> Outcome {
    let (path, explain_on, jobs) = match &cli.command {
        Command::Charpoly(a) | Command::Multiplicities(a) => (&a.common.input, a.common.explain, a.common.jobs),
        Command::Minpoly(c) => (&c.input, c.explain, c.jobs),
        Command::Verify(v) => (&v.charpoly.common.input, v.charpoly.common.explain, v.charpoly.common.jobs),
        Command::Sympower(s) => (&s.input, false, 0),
    };
    let explain = if explain_on { Explain::enabled() } else { Explain::disabled() };
    let result = read_input(path, stdin).and_then(|text| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Input(format!("cannot start {jobs} workers: {e}")))
            .and_then(|pool| pool.install(|| dispatch(&cli.command, &text, &explain)))
    });
    let mut stderr = explain.to_json_lines();
    match result {
        Ok(stdout) => Outcome { stdout, stderr, code: 0 },
        Err(e) => {
            stderr.push_str(&format!("error: {e}\n"));
            Outcome {
                stdout: String::new(),
                stderr,
                code: e.exit_code(),
            }
        }
    }
}

fn dispatch(cmd: &Command, text: &str, explain: &Explain) -> Result<String> {
    match cmd {
        Command::Charpoly(a) => cmd_charpoly(a, text, explain),
        Command::Minpoly(c) => cmd_minpoly(c, text, explain),
        Command::Multiplicities(a) => cmd_multiplicities(a, text, explain),
        Command::Sympower(s) => cmd_sympower(s, text),
        Command::Verify(v) => cmd_verify(v, text, explain),
    }
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String> {
    let mut text = String::new();
    if path == "-" {
        stdin.read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    }
    Ok(text)
}

fn read_matrix(text: &str) -> Result<IntegerMatrix> {
    let a = parse_sms(text)?;
    if a.dim() == 0 {
        return Err(Error::Input("matrix has dimension 0".into()));
    }
    Ok(a)
}

// ---- results shared by charpoly, multiplicities and verify

enum Computed {
    Field {
        a: SparseMatrix,
        report: CharpolyReport,
    },
    Integer {
        a: IntegerMatrix,
        report: IntegerCharpolyReport,
    },
}

struct FactorLine {
    text: String,
    coeffs: Value,
    minpoly_exponent: usize,
    multiplicity: usize,
}

impl Computed {
    fn dim(&self) -> usize {
        match self {
            Computed::Field { a, .. } => a.dim(),
            Computed::Integer { a, .. } => a.dim(),
        }
    }

    fn charpoly_text(&self) -> String {
        match self {
            Computed::Field { report, .. } => report.charpoly.to_string(),
            Computed::Integer { report, .. } => report.charpoly.to_string(),
        }
    }

    /// Irreducible factors in canonical order.
    fn factor_lines(&self) -> Result<Vec<FactorLine>> {
        match self {
            Computed::Field { report, .. } => {
                let mut fs: Vec<_> = report.factors.iter().collect();
                fs.sort_by(|x, y| x.poly.canonical_cmp(&y.poly));
                Ok(fs
                    .into_iter()
                    .map(|p| FactorLine {
                        text: p.poly.to_compact(),
                        coeffs: field_coeffs(&p.poly),
                        minpoly_exponent: p.min_mult,
                        multiplicity: p.char_mult.unwrap_or(0),
                    })
                    .collect())
            }
            Computed::Integer { report, .. } => {
                let mut fs: Vec<(IntPoly, usize)> = Vec::new();
                for (g, mu) in &report.basis {
                    for h in factor_squarefree_monic(g)? {
                        fs.push((h, *mu));
                    }
                }
                fs.sort_by(|x, y| x.0.canonical_cmp(&y.0));
                Ok(fs
                    .into_iter()
                    .map(|(h, m)| FactorLine {
                        text: h.to_compact(),
                        coeffs: int_coeffs(&h),
                        minpoly_exponent: int_multiplicity(&report.minpoly, &h),
                        multiplicity: m,
                    })
                    .collect())
            }
        }
    }

    fn json(&self, seed: u64, verified: &Value) -> Result<Value> {
        let factors: Vec<Value> = self
            .factor_lines()?
            .into_iter()
            .map(|f| {
                json!({
                    "factor": f.text,
                    "coeffs": f.coeffs,
                    "minpoly_exponent": f.minpoly_exponent,
                    "multiplicity": f.multiplicity,
                })
            })
            .collect();
        let mut out = json!({
            "n": self.dim(),
            "seed": seed,
            "factors": factors,
            "verified": verified,
        });
        let obj = out.as_object_mut().expect("object literal");
        match self {
            Computed::Field { report, .. } => {
                obj.insert("domain".into(), json!({"field": report.charpoly.field().modulus()}));
                obj.insert("charpoly".into(), field_json(&report.charpoly));
                obj.insert("minpoly".into(), field_json(&report.minpoly));
                obj.insert("method".into(), json!(report.method));
                obj.insert("fallback".into(), json!(report.fallback));
                obj.insert("occurrences".into(), json!(report.occurrences));
            }
            Computed::Integer { report, .. } => {
                obj.insert("domain".into(), json!("integer"));
                obj.insert("charpoly".into(), int_json(&report.charpoly));
                obj.insert("minpoly".into(), int_json(&report.minpoly));
                obj.insert("method".into(), json!(report.field.method));
                obj.insert("fallback".into(), json!(report.field.fallback));
                obj.insert("prime".into(), json!(report.prime));
                let bad: Vec<Value> = report
                    .bad_primes
                    .iter()
                    .map(|(p, why)| json!({"prime": p, "reason": why}))
                    .collect();
                obj.insert("bad_primes".into(), Value::Array(bad));
            }
        }
        Ok(out)
    }
}

fn field_coeffs(f: &FieldPoly) -> Value {
    json!(f.coeffs())
}

/// Integer coefficients as decimal strings, since they outgrow JSON numbers.
fn int_coeffs(f: &IntPoly) -> Value {
    Value::Array(f.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

fn field_json(f: &FieldPoly) -> Value {
    json!({"text": f.to_string(), "coeffs": field_coeffs(f)})
}

fn int_json(f: &IntPoly) -> Value {
    json!({"text": f.to_string(), "coeffs": int_coeffs(f)})
}

fn int_multiplicity(f: &IntPoly, g: &IntPoly) -> usize {
    let mut k = 0;
    let mut cur = f.clone();
    while let Some(q) = cur.div_exact(g) {
        cur = q;
        k += 1;
    }
    k
}

fn adaptive_config(a: &CharpolyArgs) -> AdaptiveConfig {
    AdaptiveConfig {
        threshold: a.threshold,
        method: a.method,
        seed: a.common.seed,
        ..AdaptiveConfig::default()
    }
}

fn check_limit(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::Input(format!(
            "--verify refuses n = {n} above the limit {limit} (raise it with --verify-limit)"
        )));
    }
    Ok(())
}

/// Fresh word-sized primes for checking integer results, drawn from the
/// command seed so reruns check the same primes.
fn verification_primes(count: usize, seed: u64, avoid: &[u64]) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7665_7269_6679);
    let mut out = Vec::new();
    while out.len() < count {
        let p = random_prime_in(1 << 30, (1 << 31) - 1, &mut rng).expect("primes exist near 2^30");
        if !avoid.contains(&p) && !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

fn verify_computed(c: &Computed, primes: usize, seed: u64, limit: usize, explain: &Explain) -> Result<Value> {
    check_limit(c.dim(), limit)?;
    match c {
        Computed::Field { a, report } => {
            let dense = dense_charpoly(&DenseMatrix::from_sparse(a));
            if dense != report.charpoly {
                return Err(Error::VerificationMismatch(format!(
                    "black-box charpoly {} differs from the dense charpoly {}",
                    report.charpoly, dense
                )));
            }
            explain.record("verify", json!({"field": a.field().modulus(), "ok": true}));
            Ok(json!({"oracle": "dense_charpoly", "field": a.field().modulus()}))
        }
        Computed::Integer { a, report } => {
            let ps = verification_primes(primes, seed, &[report.prime]);
            for &p in &ps {
                let field = PrimeField::new(p)?;
                let dense = dense_charpoly(&DenseMatrix::from_sparse(&a.reduce(field)));
                if dense != report.charpoly.reduce(field) {
                    return Err(Error::VerificationMismatch(format!(
                        "integer charpoly disagrees with the dense charpoly modulo {p}"
                    )));
                }
                explain.record("verify", json!({"prime": p, "ok": true}));
            }
            Ok(json!({"oracle": "dense_charpoly", "primes": ps}))
        }
    }
}

fn render_charpoly(c: &Computed, output: OutputFormat, seed: u64, verified: &Value) -> Result<String> {
    Ok(match output {
        OutputFormat::Coeffs => format!("{}\n", c.charpoly_text()),
        OutputFormat::Factored => {
            let parts: Vec<(String, usize)> = c.factor_lines()?.into_iter().map(|f| (f.text, f.multiplicity)).collect();
            format!("{}\n", format_factored(None, &parts))
        }
        OutputFormat::Json => format!("{}\n", c.json(seed, verified)?),
    })
}

/// Parses the input and refuses oversized `--verify` runs before any work.
fn compute(a: &CharpolyArgs, text: &str, explain: &Explain) -> Result<(Computed, Value)> {
    let m = read_matrix(text)?;
    if a.common.verify {
        check_limit(m.dim(), a.common.verify_limit)?;
    }
    let c = compute_parsed(a, m, explain)?;
    let verified = if a.common.verify {
        verify_computed(&c, 3, a.common.seed, a.common.verify_limit, explain)?
    } else {
        Value::Null
    };
    Ok((c, verified))
}

pub fn cmd_charpoly(a: &CharpolyArgs, text: &str, explain: &Explain) -> Result<String> {
    let (c, verified) = compute(a, text, explain)?;
    render_charpoly(&c, a.common.output, a.common.seed, &verified)
}

pub fn cmd_multiplicities(a: &CharpolyArgs, text: &str, explain: &Explain) -> Result<String> {
    let (c, verified) = compute(a, text, explain)?;
    match a.common.output {
        OutputFormat::Json => Ok(format!("{}\n", c.json(a.common.seed, &verified)?)),
        _ => Ok(c
            .factor_lines()?
            .into_iter()
            .map(|f| format!("{} {} {}\n", f.text, f.minpoly_exponent, f.multiplicity))
            .collect()),
    }
}

pub fn cmd_verify(v: &VerifyArgs, text: &str, explain: &Explain) -> Result<String> {
    let a = &v.charpoly;
    if v.primes == 0 {
        return Err(Error::Input("--primes must be at least 1".into()));
    }
    let m = read_matrix(text)?;
    check_limit(m.dim(), a.common.verify_limit)?;
    let c = compute_parsed(a, m, explain)?;
    let verified = verify_computed(&c, v.primes, a.common.seed, a.common.verify_limit, explain)?;
    Ok(match a.common.output {
        OutputFormat::Json => format!("{}\n", c.json(a.common.seed, &verified)?),
        _ => match &c {
            Computed::Field { a, .. } => format!(
                "ok: charpoly of degree {} matches the dense oracle over GF({})\n",
                a.dim(),
                a.field().modulus()
            ),
            Computed::Integer { a, .. } => {
                let ps: Vec<String> = verified["primes"]
                    .as_array()
                    .expect("integer verification lists primes")
                    .iter()
                    .map(|p| p.to_string())
                    .collect();
                format!(
                    "ok: integer charpoly of degree {} matches the dense oracle modulo {}\n",
                    a.dim(),
                    ps.join(", ")
                )
            }
        },
    })
}

fn compute_parsed(a: &CharpolyArgs, m: IntegerMatrix, explain: &Explain) -> Result<Computed> {
    let cfg = adaptive_config(a);
    match a.common.domain.field {
        Some(p) => {
            let field = PrimeField::new(p)?;
            let sm = m.reduce(field);
            let report = blackbox_charpoly_explained(&sm, &cfg, explain)?;
            Ok(Computed::Field { a: sm, report })
        }
        None => {
            let report = integer_charpoly_explained(&m, &cfg, explain)?;
            Ok(Computed::Integer { a: m, report })
        }
    }
}

pub fn cmd_minpoly(c: &CommonArgs, text: &str, explain: &Explain) -> Result<String> {
    let m = read_matrix(text)?;
    if c.verify {
        check_limit(m.dim(), c.verify_limit)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let wcfg = WiedemannConfig::default();
    let (text, factored, json_poly, verified) = match c.domain.field {
        Some(p) => {
            let field = PrimeField::new(p)?;
            let sm = m.reduce(field);
            let mp = wiedemann_minpoly(&sm, &wcfg, &mut rng)?;
            explain.record("minpoly", json!({"degree": mp.deg(), "field": p}));
            let verified = if c.verify {
                let dense = dense_minpoly(&DenseMatrix::from_sparse(&sm));
                if dense != mp {
                    return Err(Error::VerificationMismatch(format!(
                        "black-box minpoly {mp} differs from the dense minpoly {dense}"
                    )));
                }
                json!({"oracle": "dense_minpoly", "field": p})
            } else {
                Value::Null
            };
            let mut fs = factor(&mp, &mut rng).factors;
            fs.sort_by(|x, y| x.0.canonical_cmp(&y.0));
            let parts: Vec<(String, usize)> = fs.iter().map(|(g, e)| (g.to_compact(), *e)).collect();
            (mp.to_string(), format_factored(None, &parts), field_json(&mp), verified)
        }
        None => {
            let mp = integer_minpoly(&m, &wcfg, explain, &mut rng)?;
            let verified = if c.verify {
                let ps = verification_primes(3, c.seed, &[]);
                for &p in &ps {
                    let field = PrimeField::new(p)?;
                    let dense = dense_minpoly(&DenseMatrix::from_sparse(&m.reduce(field)));
                    if dense != mp.reduce(field) {
                        return Err(Error::VerificationMismatch(format!(
                            "integer minpoly disagrees with the dense minpoly modulo {p}"
                        )));
                    }
                }
                json!({"oracle": "dense_minpoly", "primes": ps})
            } else {
                Value::Null
            };
            let mut fs = factor_monic_integer(&mp)?;
            fs.sort_by(|x, y| x.0.canonical_cmp(&y.0));
            let parts: Vec<(String, usize)> = fs.iter().map(|(g, e)| (g.to_compact(), *e)).collect();
            (mp.to_string(), format_factored(None, &parts), int_json(&mp), verified)
        }
    };
    Ok(match c.output {
        OutputFormat::Coeffs => format!("{text}\n"),
        OutputFormat::Factored => format!("{factored}\n"),
        OutputFormat::Json => {
            let domain = match c.domain.field {
                Some(p) => json!({"field": p}),
                None => json!("integer"),
            };
            format!(
                "{}\n",
                json!({"n": m.dim(), "seed": c.seed, "domain": domain, "minpoly": json_poly, "verified": verified})
            )
        }
    })
}

pub fn cmd_sympower(s: &SympowerArgs, text: &str) -> Result<String> {
    let a = parse_sms(text)?;
    let g = Graph::from_adjacency(&a)?;
    Ok(emit_sms(&symmetric_power(&g, s.k)?.adjacency()))
}
