//! Named verification suites, one per acceptance criterion group.
//!
//! Every suite fixes its own fields, parameters and seeds, so its report is a
//! pure function of the suite name.

use clap::ValueEnum;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{Fq, Poly};
use crate::error::Result;
use crate::expint::{closed_form_grid, fourier_step, poisson_check, StepFunction};
use crate::gauss::verify_identities;
use crate::laurent::{dirichlet_approx, dirichlet_holds, Laurent};
use crate::sieve::{
    build_counterexample, count_p, delta_h_count, dual_path_agreement, farey_enum_square, pair_is_valid,
    ratio_sweep, verify_counterexample, DegreeRange, SumMethod,
};

/// Largest `LHS / (main bracket * Z)` seen over the fixed 100-instance sweep
/// when it was first run; later runs may not exceed it.
pub const SIEVE_RATIO_THRESHOLD: f64 = 0.088_812_970_697_550_34;

pub const SWEEP_SEED: u64 = 20_240_917;
pub const POISSON_SEED: u64 = 51;
pub const DIRICHLET_SEED: u64 = 6;
pub const DIRICHLET_INPUTS: usize = 10_000;
pub const POISSON_INSTANCES: usize = 50;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    Counterexample,
    #[value(name = "lemma-6")]
    #[serde(rename = "lemma-6")]
    Lemma6,
    Expint,
    Poisson,
    Dirichlet,
    Counting,
    SieveRatio,
    DualPath,
    All,
}

impl SuiteName {
    pub const EACH: [SuiteName; 8] = [
        SuiteName::Counterexample,
        SuiteName::Lemma6,
        SuiteName::Expint,
        SuiteName::Poisson,
        SuiteName::Dirichlet,
        SuiteName::Counting,
        SuiteName::SieveRatio,
        SuiteName::DualPath,
    ];
}

/// One checked statement inside a suite.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    /// Acceptance criterion number.
    pub criterion: u32,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: SuiteName,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub data: Value,
}

fn check(criterion: u32, name: &str, pass: bool, detail: impl Into<String>) -> Check {
    Check { criterion, name: name.into(), pass, detail: detail.into() }
}

fn finish(name: SuiteName, checks: Vec<Check>, data: Value) -> SuiteReport {
    SuiteReport { name, pass: checks.iter().all(|c| c.pass), checks, data }
}

pub fn run_suite(name: SuiteName, budget: u128) -> Result<SuiteReport> {
    match name {
        SuiteName::Counterexample => counterexample_suite(budget),
        SuiteName::Lemma6 => gauss_suite(),
        SuiteName::Expint => expint_suite(budget),
        SuiteName::Poisson => poisson_suite(),
        SuiteName::Dirichlet => dirichlet_suite(),
        SuiteName::Counting => counting_suite(budget),
        SuiteName::SieveRatio => sieve_ratio_suite(budget),
        SuiteName::DualPath => dual_path_suite(budget),
        SuiteName::All => {
            let mut checks = Vec::new();
            let mut data = serde_json::Map::new();
            for s in SuiteName::EACH {
                let r = run_suite(s, budget)?;
                checks.extend(r.checks);
                data.insert(serde_json::to_value(s).unwrap().as_str().unwrap().to_string(), r.data);
            }
            Ok(finish(SuiteName::All, checks, Value::Object(data)))
        }
    }
}

fn counterexample_suite(budget: u128) -> Result<SuiteReport> {
    let f3 = Fq::prime(3)?;
    let inst = build_counterexample(&f3, 1, budget)?;
    let report = verify_counterexample(&f3, &inst, SumMethod::Enumerate, 0.0, budget)?;
    let three16 = BigInt::from(3).pow(16);
    let ok = inst.points.len() >= 8
        && f3.format_poly(&inst.modulus) == "0,2,0,1"
        && report.restricted_lhs == (BigInt::from(8) * &three16).to_string()
        && report.claim2_rhs == (BigInt::from(2) * &three16).to_string()
        && report.ratios.lhs_over_claim2 == "4"
        && report.all_pass;
    let detail = format!(
        "{} pairs, restricted LHS {}, claimed bound {}, ratio {}",
        inst.points.len(),
        report.restricted_lhs,
        report.claim2_rhs,
        report.ratios.lhs_over_claim2
    );
    let checks = vec![check(1, "counterexample q=3 d=1", ok, detail)];
    Ok(finish(SuiteName::Counterexample, checks, serde_json::to_value(&report).unwrap()))
}

fn gauss_suite() -> Result<SuiteReport> {
    let mut tallies = Vec::new();
    for p in [3, 5] {
        tallies.push(verify_identities(&Fq::prime(p)?, 3)?);
    }
    let specs: u64 = tallies.iter().map(|t| t.specs).sum();
    let law = tallies.iter().map(|t| t.modulus_law_failures).sum::<u64>();
    let chain = tallies
        .iter()
        .map(|t| t.fast_mismatches + t.shift_failures + t.split_failures + t.power_failures + t.legendre_failures)
        .sum::<u64>();
    let checks = vec![
        check(2, "|G|^2 = q^deg(beta)", specs > 0 && law == 0, format!("{specs} sums, {law} failures")),
        check(3, "identity chain = direct sum", specs > 0 && chain == 0, format!("{specs} sums, {chain} failures")),
    ];
    Ok(finish(SuiteName::Lemma6, checks, serde_json::to_value(&tallies).unwrap()))
}

fn expint_suite(budget: u128) -> Result<SuiteReport> {
    let mut tallies = Vec::new();
    for p in [3, 5] {
        tallies.push(closed_form_grid(&Fq::prime(p)?, -3..=2, -3..=3, 2, 7, budget)?);
    }
    let cases: usize = tallies.iter().map(|t| t.cases).sum();
    let bad: usize = tallies.iter().map(|t| t.mismatches).sum();
    let checks = vec![check(
        4,
        "ball integrals: closed form = quadrature",
        cases > 0 && bad == 0,
        format!("{cases} cases, {bad} mismatches"),
    )];
    Ok(finish(SuiteName::Expint, checks, serde_json::to_value(&tallies).unwrap()))
}

/// The fixed corpus: instance `i` lives over `F_3` or `F_5` by parity, with
/// a random step function and a random exact shift of degree `<= 0`.
pub fn poisson_corpus() -> Result<Vec<(Fq, StepFunction, Laurent)>> {
    let fields = [Fq::prime(3)?, Fq::prime(5)?];
    let mut rng = ChaCha8Rng::seed_from_u64(POISSON_SEED);
    let mut out = Vec::with_capacity(POISSON_INSTANCES);
    for i in 0..POISSON_INSTANCES {
        let fq = fields[i % 2].clone();
        let phi = StepFunction::random(&fq, 3, &mut rng);
        let hi = rng.gen_range(-3..=0);
        let x = Laurent::random(&fq, hi, -4, &mut rng).truncated(-4)?;
        out.push((fq, phi, x));
    }
    Ok(out)
}

fn poisson_suite() -> Result<SuiteReport> {
    let mut self_dual = true;
    for p in [3, 5] {
        let fq = Fq::prime(p)?;
        let phi = StepFunction::phi1(&fq);
        let hat = fourier_step(&fq, &phi)?;
        self_dual &= hat.merged(&fq)? == phi.merged(&fq)?;
        for f in fq.polys_below(2) {
            for shift in [-3, -2, -1, 0] {
                let y = Laurent::from_poly(&f).shift(shift);
                self_dual &= hat.eval(&fq, &y)? == phi.eval(&fq, &y)?;
            }
        }
    }
    let corpus = poisson_corpus()?;
    let mut equal = 0;
    let mut first_failure = None;
    for (i, (fq, phi, x)) in corpus.iter().enumerate() {
        if poisson_check(fq, phi, x, 3)?.equal {
            equal += 1;
        } else {
            first_failure.get_or_insert(i);
        }
    }
    let checks = vec![
        check(5, "indicator of |y| <= 1/q is self-dual", self_dual, "q in {3,5}"),
        check(
            5,
            "Poisson summation on the step-function corpus",
            equal == corpus.len(),
            format!("{equal}/{} instances equal", corpus.len()),
        ),
    ];
    let data = json!({ "instances": corpus.len(), "equal": equal, "first_failure": first_failure });
    Ok(finish(SuiteName::Poisson, checks, data))
}

fn dirichlet_suite() -> Result<SuiteReport> {
    let fields = [Fq::prime(3)?, Fq::prime(5)?];
    let mut rng = ChaCha8Rng::seed_from_u64(DIRICHLET_SEED);
    let mut holds = 0usize;
    let mut first_failure = None;
    for i in 0..DIRICHLET_INPUTS {
        let fq = &fields[i % 2];
        let l = ((i / 2) % 4) as u32;
        let hi = rng.gen_range(-3..=3);
        let lo = -2 * l as i64 - 2 - rng.gen_range(0..3);
        let x = Laurent::random(fq, hi, lo, &mut rng);
        let ok = match dirichlet_approx(fq, &x, l) {
            Ok((u, v)) => dirichlet_holds(fq, &x, l, &u, &v)? && v.is_monic(),
            Err(_) => false,
        };
        if ok {
            holds += 1;
        } else {
            first_failure.get_or_insert(i);
        }
    }
    let checks = vec![check(
        6,
        "Dirichlet approximation inequalities",
        holds == DIRICHLET_INPUTS,
        format!("{holds}/{DIRICHLET_INPUTS} inputs"),
    )];
    let data = json!({ "inputs": DIRICHLET_INPUTS, "holds": holds, "first_failure": first_failure });
    Ok(finish(SuiteName::Dirichlet, checks, data))
}

fn counting_suite(budget: u128) -> Result<SuiteReport> {
    let f3 = Fq::prime(3)?;
    let f5 = Fq::prime(5)?;
    let pts = farey_enum_square(&f3, DegreeRange::Exactly(1), true, -4, budget)?;
    let p0 = count_p(&f3, &pts, &Laurent::zero(), -1)?;

    let mut pairs = 0;
    let mut valid = 0;
    for (fq, d) in [(&f3, 1), (&f3, 2), (&f5, 1)] {
        let inst = build_counterexample(fq, d, budget)?;
        for pt in &inst.points {
            pairs += 1;
            valid += pair_is_valid(fq, &inst, pt)? as usize;
        }
    }

    let mut congruences = 0u64;
    let mut over = 0u64;
    for fq in [&f3, &f5] {
        let hs: Vec<Poly> = fq.monic_up_to(2).collect();
        for k in fq.monic_up_to(3) {
            let bound = 1usize << fq.omega_count(&k)?;
            for l in fq.polys_below(k.deg().unwrap()).filter(|l| fq.coprime(&k, l)) {
                for h in &hs {
                    congruences += 1;
                    over += (delta_h_count(fq, h, &k, &l)? > bound) as u64;
                }
            }
        }
    }
    let checks = vec![
        check(7, "count_P(q=3, Q=1, Delta=1/3, x=0) = 18", p0 == 18, format!("{p0}")),
        check(7, "constructed pairs lie within q^(-3Q) of 1/G", pairs > 0 && valid == pairs, format!("{valid}/{pairs}")),
        check(
            7,
            "delta_h(k, l) <= 2^omega(k), deg k <= 3",
            congruences > 0 && over == 0,
            format!("{congruences} cases, {over} above the bound"),
        ),
    ];
    let data = json!({ "count_p": p0, "pairs": pairs, "valid_pairs": valid, "delta_cases": congruences });
    Ok(finish(SuiteName::Counting, checks, data))
}

fn sieve_ratio_suite(budget: u128) -> Result<SuiteReport> {
    let f3 = Fq::prime(3)?;
    let rows = ratio_sweep(&f3, 1, &[2, 3, 4], 100, SWEEP_SEED, budget)?;
    let finite = rows.iter().all(|r| r.ratio_main.is_finite());
    let max = rows.iter().map(|r| r.ratio_main).fold(f64::NEG_INFINITY, f64::max);
    let checks = vec![check(
        8,
        "main-theorem ratio within the frozen threshold",
        finite && max <= SIEVE_RATIO_THRESHOLD,
        format!("{} instances, max ratio {max:.9}, threshold {SIEVE_RATIO_THRESHOLD:.9}", rows.len()),
    )];
    let data = json!({ "max_ratio": max, "threshold": SIEVE_RATIO_THRESHOLD, "rows": rows });
    Ok(finish(SuiteName::SieveRatio, checks, data))
}

fn dual_path_suite(budget: u128) -> Result<SuiteReport> {
    let f3 = Fq::prime(3)?;
    let tally = dual_path_agreement(&f3, 1, &[2, 3, 4], 100, SWEEP_SEED, budget)?;
    let checks = vec![check(
        9,
        "LHS by direct and dual evaluation",
        tally.instances == 100 && tally.disagreements == 0,
        format!("{} instances, {} disagreements", tally.instances, tally.disagreements),
    )];
    Ok(finish(SuiteName::DualPath, checks, serde_json::to_value(&tally).unwrap()))
}
