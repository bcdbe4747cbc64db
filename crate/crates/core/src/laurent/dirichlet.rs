use crate::algebra::{Fq, Poly};
use crate::error::{Error, Result};
use crate::laurent::series::Laurent;

/// `(u, v)` with `gcd(u, v) = 1`, `v` monic, `|v| <= q^l` and `|v x - u| < q^-l`.
///
/// `x` is truncated to the rational `R / t^L` carried by its known
/// coefficients; the last continued-fraction convergent of that rational whose
/// denominator has degree `<= l` is returned. The truncation error is below
/// `q^(-2l-2)`, too small to affect either inequality.
pub fn dirichlet_approx(fq: &Fq, x: &Laurent, l: u32) -> Result<(Poly, Poly)> {
    let need = -2 * l as i64 - 2;
    let trunc = match x.floor() {
        Some(lo) if lo > need => {
            return Err(Error::Precision(format!(
                "floor {lo} above {need} required for l = {l}"
            )))
        }
        Some(lo) => x.truncated(lo)?,
        None => x.clone(),
    };
    let (num, shift) = trunc.as_fraction()?;
    let den = fq.poly_pow(&Poly::t(), shift);

    // Convergents p_n / q_n of num / den.
    let (a0, mut rem) = fq.poly_divmod(&num, &den)?;
    let mut divisor = den;
    let (mut p_prev, mut q_prev) = (Poly::one(), Poly::zero());
    let (mut p_cur, mut q_cur) = (a0, Poly::one());
    while !rem.is_zero() {
        let (a, r) = fq.poly_divmod(&divisor, &rem)?;
        let q_next = fq.poly_add(&fq.poly_mul(&a, &q_cur), &q_prev);
        if q_next.deg().unwrap() > l as usize {
            break;
        }
        let p_next = fq.poly_add(&fq.poly_mul(&a, &p_cur), &p_prev);
        p_prev = std::mem::replace(&mut p_cur, p_next);
        q_prev = std::mem::replace(&mut q_cur, q_next);
        divisor = std::mem::replace(&mut rem, r);
    }
    let lc_inv = fq.inv(q_cur.lc())?;
    let (u, v) = (fq.poly_scale(&p_cur, lc_inv), fq.poly_scale(&q_cur, lc_inv));
    if !dirichlet_holds(fq, x, l, &u, &v)? {
        return Err(Error::Precision("approximation failed its own check".into()));
    }
    Ok((u, v))
}

/// Exact check of `gcd(u, v) = 1`, `|v| <= q^l` and `|v x - u| < q^-l`.
pub fn dirichlet_holds(fq: &Fq, x: &Laurent, l: u32, u: &Poly, v: &Poly) -> Result<bool> {
    if v.is_zero() || !fq.coprime(u, v) || v.deg().unwrap() > l as usize {
        return Ok(false);
    }
    let err = x.mul_poly(fq, v).sub(fq, &Laurent::from_poly(u));
    err.norm_lt(-(l as i64))
}
