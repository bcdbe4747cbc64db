use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::algebra::{Fq, Poly};
use crate::character::CycloInt;
use crate::error::{check_budget, pow_sat, Error, Result};
use crate::laurent::{expand_fraction, Laurent};
use crate::sieve::bounds::rhs_claim2;
use crate::sieve::coeffs::{exp_sum_enum, exp_sum_phase_closed, CoeffSeq};
use crate::sieve::farey::FareyPoint;

/// Square-moduli data on which the square-moduli sieve claim fails.
#[derive(Clone, Debug)]
pub struct CounterexampleInstance {
    pub d: u32,
    /// Product of all monic irreducibles of degree `d`.
    pub modulus: Poly,
    /// Number of monic irreducibles of degree `d`.
    pub prime_count: u32,
    pub q_deg: u32,
    pub n_deg: u32,
    /// Pairs `(r, f)` with `f^2 = 1 + r G`, `deg f = Q`.
    pub points: Vec<FareyPoint>,
    /// `a_g = e(-g / G)`.
    pub coeffs: CoeffSeq,
}

/// How the inner sums of the verification are obtained.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SumMethod {
    Enumerate,
    Closed,
}

/// Builds `G`, `Q = d a_d`, `N = 3Q - 2`, the `2^(a_d)` square roots of 1
/// modulo `G` lifted to monic `f` of degree `Q`, and the weights.
pub fn build_counterexample(fq: &Fq, d: u32, budget: u128) -> Result<CounterexampleInstance> {
    if d == 0 {
        return Err(Error::BadArgs("d must be positive".into()));
    }
    let primes = fq.monic_irreducibles(d as usize);
    let a_d = primes.len() as u32;
    check_budget(1u128.checked_shl(a_d).unwrap_or(u128::MAX), budget)?;
    let modulus = primes.iter().fold(Poly::one(), |acc, p| fq.poly_mul(&acc, p));
    let q_deg = d * a_d;
    let n_deg = 3 * q_deg - 2;
    let lo = -(n_deg as i64) - 2 - 3 * q_deg as i64;

    let minus_one = fq.neg(fq.one());
    let mut points = Vec::new();
    for mask in 0u64..(1u64 << a_d) {
        let congruences: Vec<(Poly, Poly)> = primes
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let sign = if mask >> i & 1 == 1 { minus_one } else { fq.one() };
                (Poly::constant(sign), p.clone())
            })
            .collect();
        let s = fq.crt(&congruences)?;
        let f = fq.poly_add(&s, &modulus);
        let f2 = fq.poly_mul(&f, &f);
        let r = fq
            .poly_div_exact(&fq.poly_sub(&f2, &Poly::one()), &modulus)?
            .ok_or_else(|| Error::Domain("f^2 - 1 not divisible by G".into()))?;
        let value = expand_fraction(fq, &r, &f2, lo)?;
        points.push(FareyPoint { r, f, value });
    }
    let shift = expand_fraction(fq, &Poly::one(), &modulus, lo)?.neg(fq);
    Ok(CounterexampleInstance {
        d,
        modulus,
        prime_count: a_d,
        q_deg,
        n_deg,
        points,
        coeffs: CoeffSeq::Phase { n_deg, shift },
    })
}

/// Defining properties of one pair: `f^2 = 1 + r G`, `gcd(r, f) = 1`, `f` monic
/// of degree `Q`, `deg r < 2Q`, and `|r/f^2 - 1/G| <= q^(-3Q)`.
pub fn pair_is_valid(fq: &Fq, inst: &CounterexampleInstance, pt: &FareyPoint) -> Result<bool> {
    let f2 = fq.poly_mul(&pt.f, &pt.f);
    let identity = f2 == fq.poly_add(&Poly::one(), &fq.poly_mul(&pt.r, &inst.modulus));
    let shape = pt.f.is_monic() && pt.f.deg() == Some(inst.q_deg as usize) && pt.r.deg_i64() < 2 * inst.q_deg as i64;
    let target = expand_fraction(fq, &Poly::one(), &inst.modulus, pt.value.floor().unwrap_or(i64::MIN / 4))?;
    let close = pt.value.sub(fq, &target).norm_le(-3 * inst.q_deg as i64)?;
    Ok(identity && shape && fq.coprime(&pt.r, &pt.f) && close)
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleRatios {
    /// Restricted sum over the claimed bound.
    pub lhs_over_claim2: String,
    pub lhs_over_claim2_f64: f64,
    /// Restricted sum over the lower bound with the exact count `2^(a_d)`.
    pub lhs_over_lower_bound: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub q: u32,
    pub d: u32,
    #[serde(rename = "Q")]
    pub q_deg: u32,
    #[serde(rename = "N")]
    pub n_deg: u32,
    #[serde(rename = "G_Q")]
    pub modulus: String,
    #[serde(rename = "card_SQ")]
    pub card: usize,
    pub method: SumMethod,
    pub restricted_lhs: String,
    pub norm2: String,
    pub claim2_rhs: String,
    /// Lower bound with `q^(mu Q)` replaced by `2^(a_d)`.
    pub lower_bound: String,
    /// `mu` at the supplied `epsilon` and the matching lower bound.
    pub epsilon: f64,
    pub mu: f64,
    pub lower_bound_at_epsilon: f64,
    pub ratios: CounterexampleRatios,
    pub checks: [bool; 5],
    pub all_pass: bool,
}

/// `mu = log_q 2 / log_q((1 + eps) Q)`.
pub fn mu_exponent(q: u32, q_deg: u32, eps: f64) -> f64 {
    let lq = (q as f64).ln();
    (2f64.ln() / lq) / (((1.0 + eps) * q_deg as f64).ln() / lq)
}

/// Checks (i) every inner sum has `|S|^2 = q^(2(N+1))`, (ii) the restricted
/// sum equals `#S q^(2(N+1))`, (iii) `Z = q^(N+1)`, (iv) the restricted sum
/// is at least `(2^(a_d)/2)(q^(N+1) + q^(3Q-1)) Z`, and (v) it exceeds the
/// claimed bound.
pub fn verify_counterexample(
    fq: &Fq,
    inst: &CounterexampleInstance,
    method: SumMethod,
    epsilon: f64,
    budget: u128,
) -> Result<CounterexampleReport> {
    let q = fq.q();
    let nn = inst.n_deg;
    let full = BigInt::from(q).pow(nn + 1);
    let full2 = &full * &full;
    if method == SumMethod::Enumerate {
        check_budget(pow_sat(q as u64, nn + 1).saturating_mul(inst.points.len() as u128), budget)?;
    }
    let CoeffSeq::Phase { shift, .. } = &inst.coeffs else {
        return Err(Error::BadArgs("counterexample weights must be phases".into()));
    };
    let mut each_full = true;
    let mut lhs = CycloInt::zero(fq.p());
    for pt in &inst.points {
        let s = match method {
            SumMethod::Enumerate => exp_sum_enum(fq, &inst.coeffs, &pt.value, u128::MAX)?,
            SumMethod::Closed => exp_sum_phase_closed(fq, nn, shift, &pt.value)?,
        };
        let a2 = s.abs2();
        each_full &= a2.as_integer().as_ref() == Some(&full2);
        lhs = lhs.add(&a2);
    }
    let lhs_int = lhs.as_integer().ok_or_else(|| Error::Domain("restricted sum not rational".into()))?;
    let card = inst.points.len();
    let check_sum = lhs_int == BigInt::from(card) * &full2;

    let norm2 = match method {
        SumMethod::Closed => inst.coeffs.norm2(fq),
        SumMethod::Enumerate => {
            let mut z = CycloInt::zero(fq.p());
            for i in 0..pow_sat(q as u64, nn + 1) as u64 {
                z = z.add(&inst.coeffs.weight(fq, i)?.abs2());
            }
            z
        }
    };
    let z = norm2.as_integer().ok_or_else(|| Error::Domain("sum of |a_g|^2 not rational".into()))?;
    let check_norm = z == full;

    let zr = BigRational::from_integer(z.clone());
    let lhs_r = BigRational::from_integer(lhs_int.clone());
    let claim2 = rhs_claim2(q, nn, inst.q_deg, &zr);
    let sign_count = BigRational::from_integer(BigInt::one() << inst.prime_count);
    let lower = &sign_count / BigRational::from_integer(BigInt::from(2)) * &claim2;
    let check_bound = lhs_r >= lower;
    let check_violation = lhs_r > claim2;

    let mu = mu_exponent(q, inst.q_deg, epsilon);
    let lower_eps = (q as f64).powf(mu * inst.q_deg as f64) / 2.0 * claim2.to_f64().unwrap_or(f64::NAN);
    let ratio = &lhs_r / &claim2;
    let checks = [each_full, check_sum, check_norm, check_bound, check_violation];
    Ok(CounterexampleReport {
        q,
        d: inst.d,
        q_deg: inst.q_deg,
        n_deg: nn,
        modulus: fq.format_poly(&inst.modulus),
        card,
        method,
        restricted_lhs: lhs_int.to_string(),
        norm2: z.to_string(),
        claim2_rhs: claim2.to_string(),
        lower_bound: lower.to_string(),
        epsilon,
        mu,
        lower_bound_at_epsilon: lower_eps,
        ratios: CounterexampleRatios {
            lhs_over_claim2: ratio.to_string(),
            lhs_over_claim2_f64: ratio.to_f64().unwrap_or(f64::NAN),
            lhs_over_lower_bound: (&lhs_r / &lower).to_string(),
        },
        checks,
        all_pass: checks.iter().all(|&c| c),
    })
}

/// The counterexample centre `1/G` expanded to `t^lo`.
pub fn reciprocal_modulus(fq: &Fq, inst: &CounterexampleInstance, lo: i64) -> Result<Laurent> {
    expand_fraction(fq, &Poly::one(), &inst.modulus, lo)
}
