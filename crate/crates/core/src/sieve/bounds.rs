//! Right-hand sides of the sieve inequalities and of the bounds on `P(x)`,
//! without their unspecified absolute constants.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `coeff * 2^(two_q4 / 4) * q^(q_q4 / 4)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: BigRational,
    pub two_q4: i64,
    pub q_q4: i64,
}

/// Exact finite sum of [`Monomial`]s over a fixed `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundValue {
    pub q: u32,
    pub terms: Vec<Monomial>,
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

impl BoundValue {
    pub fn constant(q: u32, c: BigRational) -> BoundValue {
        BoundValue { q, terms: vec![Monomial { coeff: c, two_q4: 0, q_q4: 0 }] }.simplified()
    }

    /// `q^(q_q4 / 4)`.
    pub fn q_pow4(q: u32, q_q4: i64) -> BoundValue {
        BoundValue { q, terms: vec![Monomial { coeff: BigRational::one(), two_q4: 0, q_q4 }] }.simplified()
    }

    /// `2^(two_q4 / 4)`.
    pub fn two_pow4(q: u32, two_q4: i64) -> BoundValue {
        BoundValue { q, terms: vec![Monomial { coeff: BigRational::one(), two_q4, q_q4: 0 }] }.simplified()
    }

    pub fn add(&self, other: &BoundValue) -> BoundValue {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        BoundValue { q: self.q, terms }.simplified()
    }

    pub fn mul(&self, other: &BoundValue) -> BoundValue {
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                terms.push(Monomial {
                    coeff: &a.coeff * &b.coeff,
                    two_q4: a.two_q4 + b.two_q4,
                    q_q4: a.q_q4 + b.q_q4,
                });
            }
        }
        BoundValue { q: self.q, terms }.simplified()
    }

    pub fn scale(&self, c: &BigRational) -> BoundValue {
        self.mul(&BoundValue::constant(self.q, c.clone()))
    }

    /// Pulls integral powers into the coefficient and merges like terms.
    fn simplified(mut self) -> BoundValue {
        let q = BigInt::from(self.q);
        for m in &mut self.terms {
            let (two_whole, two_rest) = (m.two_q4.div_euclid(4), m.two_q4.rem_euclid(4));
            let (q_whole, q_rest) = (m.q_q4.div_euclid(4), m.q_q4.rem_euclid(4));
            m.coeff = &m.coeff * pow_rat(&BigInt::from(2), two_whole) * pow_rat(&q, q_whole);
            m.two_q4 = two_rest;
            m.q_q4 = q_rest;
        }
        let mut merged: Vec<Monomial> = Vec::new();
        for m in self.terms {
            match merged.iter_mut().find(|o| o.two_q4 == m.two_q4 && o.q_q4 == m.q_q4) {
                Some(o) => o.coeff = &o.coeff + &m.coeff,
                None => merged.push(m),
            }
        }
        merged.retain(|m| !m.coeff.is_zero());
        merged.sort_by_key(|m| (m.q_q4, m.two_q4));
        BoundValue { q: self.q, terms: merged }
    }

    pub fn to_f64(&self) -> f64 {
        let (l2, lq) = (2f64.ln(), (self.q as f64).ln());
        self.terms
            .iter()
            .map(|m| m.coeff.to_f64().unwrap_or(f64::NAN) * ((m.two_q4 as f64 * l2 + m.q_q4 as f64 * lq) / 4.0).exp())
            .sum()
    }

    /// The exact value when every surd has cancelled.
    pub fn as_rational(&self) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for m in &self.terms {
            if m.two_q4 != 0 || m.q_q4 != 0 {
                return None;
            }
            acc += &m.coeff;
        }
        Some(acc)
    }
}

fn pow_rat(base: &BigInt, k: i64) -> BigRational {
    let p = num_traits::pow(base.clone(), k.unsigned_abs() as usize);
    if k >= 0 {
        rat(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(if m.coeff.is_negative() { " - " } else { " + " })?;
            } else if m.coeff.is_negative() {
                f.write_str("-")?;
            }
            write!(f, "{}", m.coeff.abs())?;
            if m.two_q4 != 0 {
                write!(f, "*2^({}/4)", m.two_q4)?;
            }
            if m.q_q4 != 0 {
                write!(f, "*{}^({}/4)", self.q, m.q_q4)?;
            }
        }
        Ok(())
    }
}

fn q_pow_rat(q: u32, k: i64) -> BigRational {
    pow_rat(&BigInt::from(q), k)
}

fn domain(msg: String) -> Error {
    Error::Domain(msg)
}

fn check_delta(delta_exp: i64) -> Result<()> {
    if delta_exp > -1 {
        return Err(domain(format!("Delta = q^{delta_exp} exceeds 1/q")));
    }
    Ok(())
}

/// `(q^(N+1) + #S q^(Q-1)) Z`.
pub fn rhs_claim1(q: u32, n_deg: u32, q_deg: u32, card_s: u64, norm2: &BigRational) -> BigRational {
    (q_pow_rat(q, n_deg as i64 + 1) + rat(card_s) * q_pow_rat(q, q_deg as i64 - 1)) * norm2
}

/// `(q^(N+1) + q^(3Q-1)) Z`.
pub fn rhs_claim2(q: u32, n_deg: u32, q_deg: u32, norm2: &BigRational) -> BigRational {
    (q_pow_rat(q, n_deg as i64 + 1) + q_pow_rat(q, 3 * q_deg as i64 - 1)) * norm2
}

/// `2^(Q+N) (q^(3Q) + min{q^(2Q+N/2), q^(Q/2+N)}) Z`, for `2Q <= N <= 4Q`.
pub fn rhs_main_theorem(q: u32, q_deg: u32, n_deg: u32, norm2: &BigRational) -> Result<BoundValue> {
    if !(2 * q_deg <= n_deg && n_deg <= 4 * q_deg) {
        return Err(domain(format!("need 2Q <= N <= 4Q, got Q = {q_deg}, N = {n_deg}")));
    }
    let (qq, nn) = (q_deg as i64, n_deg as i64);
    let min_q4 = (8 * qq + 2 * nn).min(2 * qq + 4 * nn);
    let bracket = BoundValue::q_pow4(q, 12 * qq).add(&BoundValue::q_pow4(q, min_q4));
    Ok(BoundValue::two_pow4(q, 4 * (qq + nn)).mul(&bracket).scale(norm2))
}

/// `(q^N + Q0 X 2^(N/2) (q^(N/2) + |S|)) Z`.
pub fn rhs_sparse_theorem(q: u32, n_deg: u32, q0: u32, x: &BigRational, card_s: u64, norm2: &BigRational) -> BoundValue {
    let nn = n_deg as i64;
    let inner = BoundValue::q_pow4(q, 2 * nn).add(&BoundValue::constant(q, rat(card_s)));
    BoundValue::q_pow4(q, 4 * nn)
        .add(&BoundValue::two_pow4(q, 2 * nn).mul(&inner).scale(&(rat(q0) * x)))
        .scale(norm2)
}

/// `q^(3Q) Delta + (1 + 2^((L-Q)/2)) (q^(3Q/2) Delta^(1/2) + q^Q |v|^(-1/2)
/// + q^Q Delta^(1/2) |v|^(1/2) + q^(Q/2))`, with `L = -delta_exp`.
pub fn px_bound_first(q: u32, q_deg: u32, delta_exp: i64, v_deg: u32) -> Result<BoundValue> {
    check_delta(delta_exp)?;
    check_v(v_deg, delta_exp)?;
    let (qq, d, v) = (q_deg as i64, delta_exp, v_deg as i64);
    let ell = -d;
    let head = BoundValue::q_pow4(q, 4 * (3 * qq + d));
    let factor = BoundValue::constant(q, BigRational::one()).add(&BoundValue::two_pow4(q, 2 * (ell - qq)));
    let tail = BoundValue::q_pow4(q, 6 * qq + 2 * d)
        .add(&BoundValue::q_pow4(q, 4 * qq - 2 * v))
        .add(&BoundValue::q_pow4(q, 4 * qq + 2 * d + 2 * v))
        .add(&BoundValue::q_pow4(q, 2 * qq));
    Ok(head.add(&factor.mul(&tail)))
}

/// `1 + 2^L q^(2Q) (Delta^(1/2) + q^Q Delta)`.
pub fn px_bound_second(q: u32, q_deg: u32, delta_exp: i64) -> Result<BoundValue> {
    check_delta(delta_exp)?;
    let (qq, d) = (q_deg as i64, delta_exp);
    let inner = BoundValue::q_pow4(q, 8 * qq + 2 * d).add(&BoundValue::q_pow4(q, 4 * (3 * qq + d)));
    Ok(BoundValue::constant(q, BigRational::one()).add(&BoundValue::two_pow4(q, -4 * d).mul(&inner)))
}

/// `q^(3Q) Delta + |v|^(1/2) + (Q+L)^4 q^Q Delta^(1/4) + 2^(Q+L) q^(3Q/2) Delta^(1/2)`.
pub fn px_bound_third(q: u32, q_deg: u32, delta_exp: i64, v_deg: u32) -> Result<BoundValue> {
    check_delta(delta_exp)?;
    check_v(v_deg, delta_exp)?;
    let (qq, d, v) = (q_deg as i64, delta_exp, v_deg as i64);
    let ell = -d;
    let poly_factor = rat(BigInt::from(qq + ell).pow(4));
    Ok(BoundValue::q_pow4(q, 4 * (3 * qq + d))
        .add(&BoundValue::q_pow4(q, 2 * v))
        .add(&BoundValue::q_pow4(q, 4 * qq + d).scale(&poly_factor))
        .add(&BoundValue::two_pow4(q, 4 * (qq + ell)).mul(&BoundValue::q_pow4(q, 6 * qq + 2 * d))))
}

/// `2^(Q+L) (q^(3Q) Delta + min{q^(Q/2), q^(2Q) Delta^(1/2)})` on
/// `q^(2Q) <= Delta^-1 <= q^(4Q)`. The two terms of the minimum cross at
/// `Delta^-1 = q^(3Q)`.
pub fn px_bound_combined(q: u32, q_deg: u32, delta_exp: i64) -> Result<BoundValue> {
    check_delta(delta_exp)?;
    let (qq, ell) = (q_deg as i64, -delta_exp);
    if !(2 * qq <= ell && ell <= 4 * qq) {
        return Err(domain(format!("need q^(2Q) <= 1/Delta <= q^(4Q), got Q = {qq}, 1/Delta = q^{ell}")));
    }
    let min_q4 = (2 * qq).min(8 * qq - 2 * ell);
    let bracket = BoundValue::q_pow4(q, 4 * (3 * qq - ell)).add(&BoundValue::q_pow4(q, min_q4));
    Ok(BoundValue::two_pow4(q, 4 * (qq + ell)).mul(&bracket))
}

/// `log_q(1/Delta)` at which `q^(Q/2) = q^(2Q) Delta^(1/2)`.
pub fn combined_crossover(q_deg: u32) -> u32 {
    3 * q_deg
}

fn check_v(v_deg: u32, delta_exp: i64) -> Result<()> {
    // |v| <= tau = Delta^(-1/2)
    if 2 * v_deg as i64 > -delta_exp {
        return Err(domain(format!("need |v| <= Delta^(-1/2), got deg v = {v_deg}")));
    }
    Ok(())
}
