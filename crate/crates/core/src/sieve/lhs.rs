use num_bigint::BigInt;
use rayon::prelude::*;

use crate::algebra::Fq;
use crate::character::{char_e_exponent, CycloInt};
use crate::error::{check_budget, pow_sat, Error, Result};
use crate::sieve::coeffs::{exp_sum_s, CoeffSeq};
use crate::sieve::farey::FareyPoint;

/// Default cap on character evaluations for one sieve sum.
pub const DEFAULT_SIEVE_BUDGET: u128 = 1_000_000_000;

/// Runs `f` on a pool of `jobs` workers, or on the global pool.
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::BadArgs(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// `sum_r |S(X_r)|^2` over the given points. Inner sums run in parallel and
/// are added in point order, so the result does not depend on scheduling.
pub fn lhs_sum(fq: &Fq, points: &[FareyPoint], coeffs: &CoeffSeq, budget: u128) -> Result<CycloInt> {
    if matches!(coeffs, CoeffSeq::Explicit { .. }) {
        let per_point = pow_sat(fq.q() as u64, coeffs.n_deg() + 1);
        check_budget(per_point.saturating_mul(points.len() as u128), budget)?;
    }
    let parts: Vec<CycloInt> = points
        .par_iter()
        .map(|pt| exp_sum_s(fq, coeffs, &pt.value, u128::MAX).map(|s| s.abs2()))
        .collect::<Result<_>>()?;
    Ok(parts.iter().fold(CycloInt::zero(fq.p()), |acc, v| acc.add(v)))
}

/// Square-moduli left-hand side; with `monic_only = false` the points should
/// come from every nonzero denominator, each monic class then counted
/// `q - 1` times.
pub fn lhs_square_moduli(fq: &Fq, points: &[FareyPoint], coeffs: &CoeffSeq, budget: u128) -> Result<CycloInt> {
    lhs_sum(fq, points, coeffs, budget)
}

/// General-moduli left-hand side (points `r / f`).
pub fn lhs_general(fq: &Fq, points: &[FareyPoint], coeffs: &CoeffSeq, budget: u128) -> Result<CycloInt> {
    lhs_sum(fq, points, coeffs, budget)
}

/// Second evaluation of the same sum: expand `|S|^2` as
/// `sum_{g, g'} a_g conj(a_g') K(g - g')` with `K(h) = sum_r e(h X_r)`, each
/// character read off a full Laurent product.
pub fn lhs_square_moduli_dual(fq: &Fq, points: &[FareyPoint], coeffs: &CoeffSeq, budget: u128) -> Result<CycloInt> {
    let (p, q) = (fq.p() as usize, fq.q() as u64);
    let n_deg = coeffs.n_deg();
    let size = pow_sat(q, n_deg + 1);
    check_budget(size.saturating_mul(size.max(points.len() as u128)), budget)?;
    let size = size as u64;
    let polys: Vec<_> = (0..size).map(|i| fq.poly_from_index(i)).collect();

    // K(h) as exponent counts
    let mut kernel = vec![vec![0i64; p]; size as usize];
    for (h, slot) in polys.iter().zip(kernel.iter_mut()) {
        for pt in points {
            slot[char_e_exponent(fq, &pt.value.mul_poly(fq, h))? as usize] += 1;
        }
    }
    let weights: Vec<Vec<i64>> = (0..size).map(|i| coeffs.weight_counts(fq, i)).collect::<Result<_>>()?;

    // group pairs by difference in small-integer exponent counts
    let mut by_diff = vec![vec![0i64; p]; size as usize];
    for (i, g) in polys.iter().enumerate() {
        for (j, g2) in polys.iter().enumerate() {
            let d = fq.poly_index(&fq.poly_sub(g, g2)) as usize;
            for (a, &wa) in weights[i].iter().enumerate() {
                if wa == 0 {
                    continue;
                }
                for (b, &wb) in weights[j].iter().enumerate() {
                    if wb != 0 {
                        by_diff[d][(a + p - b) % p] += wa * wb;
                    }
                }
            }
        }
    }
    let mut total = vec![BigInt::from(0); p];
    for (w, k) in by_diff.iter().zip(&kernel) {
        for (a, &wa) in w.iter().enumerate() {
            if wa == 0 {
                continue;
            }
            for (b, &kb) in k.iter().enumerate() {
                if kb != 0 {
                    total[(a + b) % p] += BigInt::from(wa) * kb;
                }
            }
        }
    }
    let total = CycloInt::from_big_exponent_counts(p as u32, &total);
    Ok(total)
}

/// The rational integer value of a left-hand side, when it is one.
pub fn lhs_integer(v: &CycloInt) -> Result<BigInt> {
    v.as_integer()
        .ok_or_else(|| Error::Domain("left-hand side is not a rational integer".into()))
}
