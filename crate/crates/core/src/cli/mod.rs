//! Command-line front end: configuration, dispatch and report output.
//!
//! Exit codes: 0 success, 2 configuration error, 3 budget exceeded,
//! 4 verification failure.

pub mod suites;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{FieldSpec, Fq};
use crate::error::{check_budget, pow_sat, Error, Result};
use crate::expint::{closed_form_grid, expint_eval, expint_quadrature, ExpIntReport, ExpIntSpec};
use crate::gauss::{gauss_brute, gauss_fast, verify_identities, GaussReport, GaussSpec};
use crate::laurent::{dirichlet_approx, dirichlet_holds, Laurent};
use crate::sieve::{
    build_counterexample, count_k, count_p, dual_path_agreement, farey_enum_square, ratio_sweep,
    verify_counterexample, with_jobs, DegreeRange, SumMethod,
};
use suites::{run_suite, SuiteName};

pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Parser, Clone, Debug, Serialize)]
#[command(name = "ffsieve", version, about = "Exact experiments with the large sieve for square moduli over F_q[t]")]
pub struct RunConfig {
    /// Characteristic of the base field (an odd prime).
    #[arg(long, global = true, default_value_t = 3)]
    pub p: u32,
    /// Extension degree, q = p^e.
    #[arg(long, global = true, default_value_t = 1)]
    pub e: u32,
    /// Monic irreducible of degree e over F_p, ascending coefficients; needed when e > 1.
    #[arg(long, global = true)]
    pub modulus: Option<String>,
    /// Cap on the number of elementary evaluations.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    /// Worker threads for the parallel sums.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Echo polynomials in t-notation.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Clone, Debug, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Evaluate a quadratic Gauss sum, or check the identities exhaustively.
    Gauss(GaussArgs),
    /// Evaluate an exponential integral in closed form and optionally by quadrature.
    Expint(ExpintArgs),
    /// Build and verify the square-moduli counterexample.
    Counterexample(CounterexampleArgs),
    /// Left-hand side against the bounds on random instances.
    Sieve(SieveArgs),
    /// Farey points with square denominators and their counting functions.
    Farey(FareyArgs),
    /// Best approximation u/v with |v| <= q^l.
    Dirichlet(DirichletArgs),
    /// Run a named verification suite.
    Suite(SuiteArgs),
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct GaussArgs {
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long, default_value = "0-poly")]
    pub l: String,
    #[arg(long)]
    pub beta: Option<String>,
    /// Compare term-by-term summation with the identity chain.
    #[arg(long)]
    pub verify: bool,
    /// Check every identity over all monic moduli of degree at most this.
    #[arg(long)]
    pub identities: Option<usize>,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct ExpintArgs {
    /// Quadratic coefficient, as a Laurent series `hi=..;lo=..;coeffs=..`.
    #[arg(long)]
    pub a: Option<String>,
    /// Linear coefficient; zero when absent.
    #[arg(long)]
    pub b: Option<String>,
    /// Integrate over |z| <= q^Q.
    #[arg(long = "Q", default_value_t = 0, allow_negative_numbers = true)]
    pub q_param: i64,
    /// Also integrate by exact quadrature and compare.
    #[arg(long)]
    pub oracle: bool,
    /// Compare closed form and quadrature over the standard grid instead.
    #[arg(long)]
    pub grid: bool,
    #[arg(long, default_value_t = 2)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    /// Enumerate when the budget allows, else use the closed form.
    Auto,
    Enumerate,
    Closed,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct CounterexampleArgs {
    /// Degree of the irreducibles whose product is the modulus.
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    /// Slack in the exponent of the lower bound.
    #[arg(long, default_value_t = 0.0)]
    pub epsilon: f64,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct SieveArgs {
    /// Denominators f have degree at most Q.
    #[arg(long = "Q", default_value_t = 1)]
    pub q_deg: u32,
    /// Coefficient degrees, cycled over the instances.
    #[arg(long = "N", value_delimiter = ',', default_values_t = [2u32, 3, 4])]
    pub n_list: Vec<u32>,
    #[arg(long, default_value_t = 20)]
    pub count: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Also compare the two left-hand side evaluators.
    #[arg(long)]
    pub dual: bool,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct FareyArgs {
    #[arg(long = "Q", default_value_t = 1)]
    pub q_deg: u32,
    /// Delta = q^delta_exp.
    #[arg(long = "delta-exp", default_value_t = -1, allow_negative_numbers = true)]
    pub delta_exp: i64,
    /// Centre for count_P; zero when absent.
    #[arg(long)]
    pub x: Option<String>,
    /// Take every denominator of degree at most Q, not only degree Q.
    #[arg(long)]
    pub up_to: bool,
    /// Allow denominators with any leading coefficient.
    #[arg(long)]
    pub any_leading: bool,
    /// Include the points themselves.
    #[arg(long)]
    pub list: bool,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct DirichletArgs {
    #[arg(long)]
    pub x: String,
    #[arg(long, default_value_t = 1)]
    pub l: u32,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct SuiteArgs {
    #[arg(long, value_enum)]
    pub name: SuiteName,
}

impl RunConfig {
    pub fn field(&self) -> Result<Fq> {
        let spec = match &self.modulus {
            None if self.e > 1 => return Err(Error::BadField("e > 1 needs --modulus".into())),
            None => FieldSpec { p: self.p, e: self.e, modulus: None },
            Some(m) => {
                let coeffs = m
                    .split(',')
                    .map(|c| c.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad modulus digit {c:?}"))))
                    .collect::<Result<Vec<u32>>>()?;
                if coeffs.len() != self.e as usize + 1 {
                    return Err(Error::BadField(format!("modulus must have degree e = {}", self.e)));
                }
                FieldSpec::extension(self.p, coeffs)
            }
        };
        Fq::new(spec)
    }
}

/// Result of one dispatch: the exit code plus the rendered report or a diagnostic.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: Option<String>,
    pub diagnostic: Option<String>,
}

impl Outcome {
    /// Writes the report to `--out` or standard output and the diagnostic to
    /// standard error; returns the exit code.
    pub fn emit(&self, config: &RunConfig) -> i32 {
        if let Some(d) = &self.diagnostic {
            eprintln!("ffsieve: {d}");
        }
        if let Some(r) = &self.report {
            match &config.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, r) {
                        eprintln!("ffsieve: cannot write {}: {e}", path.display());
                        return EXIT_CONFIG;
                    }
                }
                None => print!("{r}"),
            }
        }
        self.code
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_CONFIG,
    }
}

struct Computed {
    result: Value,
    verified: bool,
    pretty: BTreeMap<String, String>,
}

impl Computed {
    fn new(result: impl Serialize, verified: bool) -> Computed {
        Computed { result: serde_json::to_value(result).unwrap(), verified, pretty: BTreeMap::new() }
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    tool: &'static str,
    version: &'static str,
    config: &'a RunConfig,
    verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pretty: Option<&'a BTreeMap<String, String>>,
    result: &'a Value,
}

/// Runs one configured command. The report is byte-identical for identical
/// configurations, whatever the thread count.
pub fn dispatch(config: &RunConfig) -> Outcome {
    let computed = match with_jobs(config.jobs, || run_command(config)).and_then(|r| r) {
        Ok(c) => c,
        Err(e) => return Outcome { code: error_code(&e), report: None, diagnostic: Some(e.to_string()) },
    };
    let envelope = Envelope {
        tool: "ffsieve",
        version: env!("CARGO_PKG_VERSION"),
        config,
        verified: computed.verified,
        pretty: config.pretty.then_some(&computed.pretty),
        result: &computed.result,
    };
    let report = match config.format {
        Format::Json => serde_json::to_string_pretty(&envelope).unwrap() + "\n",
        Format::Csv => match csv_table(&computed.result) {
            Ok(s) => s,
            Err(e) => return Outcome { code: EXIT_CONFIG, report: None, diagnostic: Some(e.to_string()) },
        },
    };
    let (code, diagnostic) = if computed.verified {
        (EXIT_OK, None)
    } else {
        (EXIT_VERIFY, Some("verification failed".to_string()))
    };
    Outcome { code, report: Some(report), diagnostic }
}

/// Parses the process arguments, dispatches, emits, and returns the exit code.
pub fn run_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => dispatch(&config).emit(&config),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_CONFIG
            } else {
                EXIT_OK
            }
        }
    }
}

fn run_command(config: &RunConfig) -> Result<Computed> {
    if let Command::Suite(args) = &config.command {
        let r = run_suite(args.name, config.budget)?;
        let pass = r.pass;
        return Ok(Computed::new(r, pass));
    }
    let fq = config.field()?;
    match &config.command {
        Command::Gauss(a) => gauss_cmd(&fq, a, config.budget),
        Command::Expint(a) => expint_cmd(&fq, a, config.budget),
        Command::Counterexample(a) => counterexample_cmd(&fq, a, config.budget),
        Command::Sieve(a) => sieve_cmd(&fq, a, config.budget),
        Command::Farey(a) => farey_cmd(&fq, a, config.budget),
        Command::Dirichlet(a) => dirichlet_cmd(&fq, a),
        Command::Suite(_) => unreachable!(),
    }
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::BadArgs(format!("missing --{flag}")))
}

/// Largest `m` with `q^m <= budget`.
fn degree_cap(q: u32, budget: u128) -> usize {
    let mut m = 0;
    while pow_sat(q as u64, m + 1) <= budget {
        m += 1;
    }
    m as usize
}

fn gauss_cmd(fq: &Fq, a: &GaussArgs, budget: u128) -> Result<Computed> {
    if let Some(max_deg) = a.identities {
        check_budget(pow_sat(fq.q() as u64, 4 * max_deg as u32), budget)?;
        let tally = verify_identities(fq, max_deg)?;
        let ok = tally.all_hold();
        return Ok(Computed::new(tally, ok));
    }
    let alpha = fq.parse_poly(required(&a.alpha, "alpha")?)?;
    let beta = fq.parse_poly(required(&a.beta, "beta")?)?;
    let spec = GaussSpec::new(fq, alpha, fq.parse_poly(&a.l)?, beta)?;
    let cap = degree_cap(fq.q(), budget);
    let fast = if spec.coprime { Some(gauss_fast(fq, &spec, cap)?) } else { None };
    let brute = if a.verify || fast.is_none() { Some(gauss_brute(fq, &spec, cap)?) } else { None };
    let value = fast.as_ref().or(brute.as_ref()).unwrap();
    let agree = match (&fast, &brute) {
        (Some(f), Some(b)) => Some(f == b),
        _ => None,
    };
    let expected_abs2 = num_bigint::BigInt::from(fq.q()).pow(spec.beta.deg().unwrap() as u32);
    let law = spec.coprime.then(|| value.abs2().as_integer() == Some(expected_abs2.clone()));
    let result = json!({
        "fast": fast.as_ref().map(|v| GaussReport::new(fq, &spec, v, "fast")),
        "brute": brute.as_ref().map(|v| GaussReport::new(fq, &spec, v, "brute")),
        "methods_agree": agree,
        "abs2_expected": spec.coprime.then(|| expected_abs2.to_string()),
        "abs2_law_holds": law,
    });
    let mut c = Computed::new(result, agree.unwrap_or(true) && law.unwrap_or(true));
    c.pretty.insert("alpha".into(), fq.pretty_poly(&spec.alpha));
    c.pretty.insert("l".into(), fq.pretty_poly(&spec.l));
    c.pretty.insert("beta".into(), fq.pretty_poly(&spec.beta));
    Ok(c)
}

fn expint_cmd(fq: &Fq, a: &ExpintArgs, budget: u128) -> Result<Computed> {
    if a.grid {
        let tally = closed_form_grid(fq, -3..=2, -3..=3, a.samples, a.seed, budget)?;
        let ok = tally.mismatches == 0;
        return Ok(Computed::new(tally, ok));
    }
    let coeff = Laurent::parse(fq, required(&a.a, "a")?)?;
    let lin = match &a.b {
        Some(s) => Laurent::parse(fq, s)?,
        None => Laurent::zero(),
    };
    let spec = ExpIntSpec::new(coeff, lin, a.q_param);
    let closed = expint_eval(fq, &spec)?;
    let oracle = if a.oracle { Some(expint_quadrature(fq, &spec, budget)?) } else { None };
    let report = ExpIntReport::new(fq, &spec, &closed, oracle.as_ref());
    let ok = report.agree.unwrap_or(true);
    Ok(Computed::new(report, ok))
}

fn counterexample_cmd(fq: &Fq, a: &CounterexampleArgs, budget: u128) -> Result<Computed> {
    let inst = build_counterexample(fq, a.d, budget)?;
    let enumerate_cost = pow_sat(fq.q() as u64, inst.n_deg + 1).saturating_mul(inst.points.len() as u128);
    let method = match a.method {
        MethodArg::Enumerate => SumMethod::Enumerate,
        MethodArg::Closed => SumMethod::Closed,
        MethodArg::Auto if enumerate_cost <= budget => SumMethod::Enumerate,
        MethodArg::Auto => SumMethod::Closed,
    };
    let report = verify_counterexample(fq, &inst, method, a.epsilon, budget)?;
    let ok = report.all_pass;
    let mut c = Computed::new(report, ok);
    c.pretty.insert("G_Q".into(), fq.pretty_poly(&inst.modulus));
    for (i, pt) in inst.points.iter().enumerate() {
        c.pretty.insert(format!("f{i:03}"), fq.pretty_poly(&pt.f));
    }
    Ok(c)
}

fn sieve_cmd(fq: &Fq, a: &SieveArgs, budget: u128) -> Result<Computed> {
    let rows = ratio_sweep(fq, a.q_deg, &a.n_list, a.count, a.seed, budget)?;
    let max_ratio = rows.iter().map(|r| r.ratio_main).fold(f64::NEG_INFINITY, f64::max);
    let dual = if a.dual { Some(dual_path_agreement(fq, a.q_deg, &a.n_list, a.count, a.seed, budget)?) } else { None };
    let ok = dual.as_ref().is_none_or(|d| d.disagreements == 0);
    Ok(Computed::new(json!({ "max_ratio_main": max_ratio, "dual": dual, "rows": rows }), ok))
}

fn farey_cmd(fq: &Fq, a: &FareyArgs, budget: u128) -> Result<Computed> {
    if a.delta_exp > -1 {
        return Err(Error::Domain(format!("Delta = q^{} exceeds 1/q", a.delta_exp)));
    }
    let lo = a.delta_exp - 2;
    let x = match &a.x {
        Some(s) => Laurent::parse(fq, s)?,
        None => Laurent::zero(),
    };
    let range = if a.up_to { DegreeRange::UpTo(a.q_deg) } else { DegreeRange::Exactly(a.q_deg) };
    let points = farey_enum_square(fq, range, !a.any_leading, lo, budget)?;
    let p = count_p(fq, &points, &x, a.delta_exp)?;
    let k = count_k(&points, a.delta_exp)?;
    let listed: Option<Vec<Value>> = a.list.then(|| {
        points
            .iter()
            .map(|pt| json!({ "r": fq.format_poly(&pt.r), "f": fq.format_poly(&pt.f), "value": pt.value.format(fq) }))
            .collect()
    });
    let result = json!({
        "range": range,
        "monic_only": !a.any_leading,
        "delta_exp": a.delta_exp,
        "x": x.format(fq),
        "points": points.len(),
        "count_p": p,
        "count_k": k,
        "rows": listed,
    });
    Ok(Computed::new(result, true))
}

fn dirichlet_cmd(fq: &Fq, a: &DirichletArgs) -> Result<Computed> {
    let x = Laurent::parse(fq, &a.x)?;
    let (u, v) = dirichlet_approx(fq, &x, a.l)?;
    let holds = dirichlet_holds(fq, &x, a.l, &u, &v)?;
    let err = x.mul_poly(fq, &v).sub(fq, &Laurent::from_poly(&u));
    let result = json!({
        "x": x.format(fq),
        "l": a.l,
        "u": fq.format_poly(&u),
        "v": fq.format_poly(&v),
        "error": err.format(fq),
        "holds": holds,
    });
    let mut c = Computed::new(result, holds);
    c.pretty.insert("u".into(), fq.pretty_poly(&u));
    c.pretty.insert("v".into(), fq.pretty_poly(&v));
    Ok(c)
}

/// Flattens a result into one CSV table: the `rows` array when present,
/// otherwise the result itself as a single row. Nested values are written
/// as JSON text.
fn csv_table(result: &Value) -> Result<String> {
    let rows: Vec<&Value> = match result.get("rows").and_then(Value::as_array) {
        Some(rows) => rows.iter().collect(),
        None => vec![result],
    };
    let mut header: Vec<String> = Vec::new();
    for r in &rows {
        if let Value::Object(m) = r {
            for k in m.keys() {
                if !header.contains(k) && !(rows.len() == 1 && k == "rows") {
                    header.push(k.clone());
                }
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::BadArgs(format!("csv: {e}"));
    w.write_record(&header).map_err(io)?;
    for r in &rows {
        let cells = header.iter().map(|k| match r.get(k) {
            None | Some(Value::Null) => String::new(),
            Some(Value::String(s)) => s.clone(),
            Some(v) => v.to_string(),
        });
        w.write_record(cells).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::BadArgs(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}
