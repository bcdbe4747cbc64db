use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::algebra::{Fq, Poly};
use crate::error::{check_budget, pow_sat, Error, Result};
use crate::laurent::q_pow_rational;

/// Every square of degree exactly `2 q_deg`, i.e. `c^2 R^2` with `R` monic.
pub fn squares_set(fq: &Fq, q_deg: u32) -> Vec<Poly> {
    let unit_squares: BTreeSet<u32> = fq.units().map(|c| fq.mul(c, c).index()).collect();
    let mut out = Vec::new();
    for r in fq.monic_of_degree(q_deg as usize) {
        let r2 = fq.poly_mul(&r, &r);
        for &c in &unit_squares {
            out.push(fq.poly_scale(&r2, fq.elem(c).unwrap()));
        }
    }
    out
}

/// `S_h = {s / h : s in S, h | s}`.
pub fn dilated_set(fq: &Fq, set: &[Poly], h: &Poly) -> Result<Vec<Poly>> {
    if h.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut out = Vec::new();
    for s in set {
        if let Some(x) = fq.poly_div_exact(s, h)? {
            out.push(x);
        }
    }
    Ok(out)
}

/// `G_h = F_h^2 / h`: the unit inverse times the primes of odd multiplicity in `h`.
pub fn square_cofactor(fq: &Fq, h: &Poly) -> Result<Poly> {
    let fact = fq.factor(h)?;
    let mut g = Poly::constant(fq.inv(fact.unit)?);
    for (p, v) in &fact.factors {
        if v % 2 == 1 {
            g = fq.poly_mul(&g, p);
        }
    }
    Ok(g)
}

/// `A_h(m; k, l)`: the most elements of `S_h` congruent to `l` mod `k` that
/// fit in one ball of radius `q^m`. Elements of `S_h` are polynomials, so a
/// ball is determined by the digits above `t^m` of any member.
pub fn ah_count(fq: &Fq, set: &[Poly], h: &Poly, m: u32, k: &Poly, l: &Poly, q0: u32) -> Result<usize> {
    if h.is_zero() || k.is_zero() {
        return Err(Error::BadArgs("h and k must be nonzero".into()));
    }
    if m as i64 > q0 as i64 - h.deg_i64() {
        return Err(Error::BadArgs(format!("m = {m} exceeds Q0 - deg h")));
    }
    if !fq.coprime(k, l) {
        return Err(Error::BadArgs("k and l must be coprime".into()));
    }
    let lr = fq.poly_rem(l, k)?;
    let mut balls: HashMap<Vec<u32>, usize> = HashMap::new();
    for x in dilated_set(fq, set, h)? {
        if fq.poly_rem(&x, k)? == lr {
            let key = x.coeffs().iter().skip(m as usize + 1).map(|c| c.index()).collect();
            *balls.entry(key).or_default() += 1;
        }
    }
    Ok(balls.values().copied().max().unwrap_or(0))
}

/// `delta_h(k, l)`: solutions `x mod k` of `x^2 G_h = l mod k`.
pub fn delta_h_count(fq: &Fq, h: &Poly, k: &Poly, l: &Poly) -> Result<usize> {
    if k.is_zero() || !fq.coprime(k, l) {
        return Err(Error::BadArgs("need k nonzero and gcd(k, l) = 1".into()));
    }
    let g = square_cofactor(fq, h)?;
    let lr = fq.poly_rem(l, k)?;
    let mut n = 0;
    for x in fq.polys_below(k.deg().unwrap()) {
        let lhs = fq.poly_mulmod(&fq.poly_mul(&x, &x), &g, k)?;
        if lhs == lr {
            n += 1;
        }
    }
    Ok(n)
}

#[derive(Clone, Debug, Serialize)]
pub struct XReport {
    /// Smallest admissible `X`, as a reduced fraction.
    pub x: String,
    pub x_f64: f64,
    pub cells: usize,
    /// The cell attaining the maximum: `(h, m, k, l)` in text form.
    pub worst: Option<(String, u32, String, String)>,
}

/// The least `X >= 1` with `A_h(m; k, l) <= (1 + |S_h| |h| q^m / (|k| q^Q0)) X`
/// over monic `h` with nonempty `S_h`, `0 <= m <= Q0 - deg h`, monic `k` with
/// `|k| <= Delta^(-1/2)`, and `l mod k` coprime to `k`.
pub fn compute_x(fq: &Fq, set: &[Poly], q0: u32, delta_exp: i64, budget: u128) -> Result<(BigRational, XReport)> {
    if delta_exp > -1 {
        return Err(Error::Domain(format!("Delta = q^{delta_exp} exceeds 1/q")));
    }
    let q = fq.q();
    let k_max = (-delta_exp / 2) as u32;
    let cells = pow_sat(q as u64, q0 + 1) * (q0 as u128 + 1) * pow_sat(q as u64, 2 * k_max + 1);
    check_budget(cells.saturating_mul(set.len().max(1) as u128), budget)?;

    let mut best = BigRational::one();
    let mut worst = None;
    let mut count = 0;
    for h in fq.monic_up_to(q0 as usize) {
        let sh = dilated_set(fq, set, &h)?;
        if sh.is_empty() {
            continue;
        }
        let dh = h.deg_i64();
        for k in fq.monic_up_to(k_max as usize) {
            let dk = k.deg_i64();
            for l in fq.polys_below(k.deg().unwrap()) {
                if !fq.coprime(&k, &l) {
                    continue;
                }
                for m in 0..=(q0 as i64 - dh) as u32 {
                    count += 1;
                    let a = ah_count(fq, set, &h, m, &k, &l, q0)?;
                    let expected = BigRational::from_integer(BigInt::from(sh.len()))
                        * q_pow_rational(q, dh + m as i64 - dk - q0 as i64);
                    let ratio = BigRational::from_integer(BigInt::from(a)) / (BigRational::one() + expected);
                    if ratio > best {
                        best = ratio;
                        worst = Some((fq.format_poly(&h), m, fq.format_poly(&k), fq.format_poly(&l)));
                    }
                }
            }
        }
    }
    let x_f64 = num_traits::ToPrimitive::to_f64(&best).unwrap_or(f64::NAN);
    let report = XReport { x: best.to_string(), x_f64, cells: count, worst };
    Ok((best, report))
}
