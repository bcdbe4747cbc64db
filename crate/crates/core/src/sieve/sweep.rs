use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{FieldSpec, Fq};
use crate::error::{Error, Result};
use crate::sieve::bounds::{rhs_claim2, rhs_main_theorem};
use crate::sieve::coeffs::CoeffSeq;
use crate::sieve::farey::{farey_enum_square, DegreeRange};
use crate::sieve::lhs::{lhs_integer, lhs_square_moduli, lhs_square_moduli_dual};

/// `Q`, `N` and `Delta = q^delta_exp` of a square-moduli sieve problem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SieveParams {
    pub field: FieldSpec,
    #[serde(rename = "Q")]
    pub q_deg: u32,
    #[serde(rename = "N")]
    pub n_deg: u32,
    pub delta_exp: i64,
}

impl SieveParams {
    pub fn new(field: FieldSpec, q_deg: u32, n_deg: u32, delta_exp: i64) -> Result<SieveParams> {
        if delta_exp > -1 {
            return Err(Error::Domain(format!("Delta = q^{delta_exp} exceeds 1/q")));
        }
        Ok(SieveParams { field, q_deg, n_deg, delta_exp })
    }

    /// `L = log_q(1/Delta)`.
    pub fn ell(&self) -> i64 {
        -self.delta_exp
    }

    /// `omega = ceil(log_q Delta) + 1`.
    pub fn omega(&self) -> i64 {
        self.delta_exp + 1
    }

    /// `2 log_q tau`, where `tau = Delta^(-1/2)`.
    pub fn tau_exp_doubled(&self) -> i64 {
        -self.delta_exp
    }

    /// Modulus degree bound for the square moduli, `Q0 = 2Q`.
    pub fn q0(&self) -> u32 {
        2 * self.q_deg
    }
}

/// One random instance of the square-moduli sum.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub q: u32,
    #[serde(rename = "Q")]
    pub q_deg: u32,
    #[serde(rename = "N")]
    pub n_deg: u32,
    pub seed: u64,
    pub points: usize,
    pub lhs: String,
    pub norm2: String,
    pub claim2_rhs: String,
    pub main_rhs: String,
    pub main_rhs_f64: f64,
    /// LHS over the main-theorem bracket times `Z`.
    pub ratio_main: f64,
    pub ratio_claim2: f64,
}

/// Seed of instance `i` in a sweep seeded with `seed`.
pub fn instance_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64)
}

/// Evaluates `count` instances with random `+-1` weights, instance `i` using
/// `N = n_list[i % len]`, over monic denominators of degree `<= Q`.
pub fn ratio_sweep(
    fq: &Fq,
    q_deg: u32,
    n_list: &[u32],
    count: usize,
    seed: u64,
    budget: u128,
) -> Result<Vec<SweepRow>> {
    if n_list.is_empty() {
        return Err(Error::BadArgs("empty N list".into()));
    }
    let q = fq.q();
    let max_n = *n_list.iter().max().unwrap();
    let points = farey_enum_square(fq, DegreeRange::UpTo(q_deg), true, -(max_n as i64) - 1, budget)?;
    let mut rows = Vec::with_capacity(count);
    for i in 0..count {
        let n_deg = n_list[i % n_list.len()];
        let s = instance_seed(seed, i);
        let coeffs = CoeffSeq::random_signs(fq, n_deg, &mut ChaCha8Rng::seed_from_u64(s));
        let lhs = lhs_integer(&lhs_square_moduli(fq, &points, &coeffs, budget)?)?;
        let z = lhs_integer(&coeffs.norm2(fq))?;
        let zr = BigRational::from_integer(z.clone());
        let main = rhs_main_theorem(q, q_deg, n_deg, &zr)?;
        let claim2 = rhs_claim2(q, n_deg, q_deg, &zr);
        let lhs_f = lhs.to_f64().unwrap_or(f64::NAN);
        rows.push(SweepRow {
            q,
            q_deg,
            n_deg,
            seed: s,
            points: points.len(),
            lhs: lhs.to_string(),
            norm2: z.to_string(),
            claim2_rhs: claim2.to_string(),
            main_rhs: main.to_string(),
            main_rhs_f64: main.to_f64(),
            ratio_main: lhs_f / main.to_f64(),
            ratio_claim2: lhs_f / claim2.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct DualPathTally {
    pub instances: usize,
    pub disagreements: usize,
    pub first_disagreement: Option<u64>,
}

/// Compares the two left-hand side evaluators on `count` random instances.
pub fn dual_path_agreement(
    fq: &Fq,
    q_deg: u32,
    n_list: &[u32],
    count: usize,
    seed: u64,
    budget: u128,
) -> Result<DualPathTally> {
    let max_n = *n_list.iter().max().ok_or_else(|| Error::BadArgs("empty N list".into()))?;
    let points = farey_enum_square(fq, DegreeRange::UpTo(q_deg), true, -(max_n as i64) - 1, budget)?;
    let mut tally = DualPathTally { instances: count, disagreements: 0, first_disagreement: None };
    for i in 0..count {
        let n_deg = n_list[i % n_list.len()];
        let s = instance_seed(seed, i);
        let coeffs = CoeffSeq::random_signs(fq, n_deg, &mut ChaCha8Rng::seed_from_u64(s));
        let a = lhs_square_moduli(fq, &points, &coeffs, budget)?;
        let b = lhs_square_moduli_dual(fq, &points, &coeffs, budget)?;
        if a != b {
            tally.disagreements += 1;
            tally.first_disagreement.get_or_insert(s);
        }
    }
    Ok(tally)
}

/// Comma-separated table of sweep rows with a header line.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("q,Q,N,seed,points,lhs,norm2,claim2_rhs,main_rhs_f64,ratio_main,ratio_claim2\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{:.6e},{:.9},{:.9}",
            r.q,
            r.q_deg,
            r.n_deg,
            r.seed,
            r.points,
            r.lhs,
            r.norm2,
            r.claim2_rhs,
            r.main_rhs_f64,
            r.ratio_main,
            r.ratio_claim2
        );
    }
    out
}
