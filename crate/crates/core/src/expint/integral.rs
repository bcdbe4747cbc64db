use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{FieldElem, Fq};
use crate::character::{char_e, CycloInt};
use crate::error::{check_budget, pow_sat, Error, Result};
use crate::expint::value::{ExpValue, ExpValueText, QScaled};
use crate::laurent::Laurent;

/// Default number of cosets the quadrature oracle may visit.
pub const DEFAULT_QUAD_BUDGET: u128 = 1 << 24;

/// `E(A, B) = integral over B(0, Q) of e(A y^2 - B y) dy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpIntSpec {
    pub a: Laurent,
    pub b: Laurent,
    pub q_param: i64,
}

/// `A = alpha * A2` with `alpha = c t^-eps` and `A2 = A t^eps / c` monic of
/// even degree, hence a square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticShape {
    pub c: FieldElem,
    pub eps: u32,
    pub a2: Laurent,
}

impl ExpIntSpec {
    pub fn new(a: Laurent, b: Laurent, q_param: i64) -> ExpIntSpec {
        ExpIntSpec { a, b, q_param }
    }

    /// The decomposition of a nonzero `A`; `None` when `A = 0`.
    pub fn shape(&self, fq: &Fq) -> Result<Option<QuadraticShape>> {
        if self.a.is_exact_zero() {
            return Ok(None);
        }
        let h = self.a.deg()?.ok_or(Error::BadAlphaShape)?;
        let c = self.a.coeff(h)?;
        let eps = h.rem_euclid(2) as u32;
        let a2 = self.a.scale(fq, fq.inv(c)?).shift(eps as i64);
        Ok(Some(QuadraticShape { c, eps, a2 }))
    }
}

fn check_shape(c: FieldElem, eps: u32) -> Result<()> {
    if c.is_zero() || eps > 1 {
        return Err(Error::BadAlphaShape);
    }
    Ok(())
}

/// Closed form of `integral over B(x, n) of e(c t^-eps y^2) dy`.
pub fn ball_integral_closed(fq: &Fq, c: FieldElem, eps: u32, x: &Laurent, n: i64) -> Result<ExpValue> {
    check_shape(c, eps)?;
    let (p, q) = (fq.p(), fq.q());
    let dx = x.deg()?;
    if dx.is_none_or(|d| d <= n) {
        if n <= -1 {
            return Ok(ExpValue::rational(QScaled::q_pow(p, q, n + 1)));
        }
        if eps == 0 {
            return Ok(ExpValue::rational(QScaled::one(p, q)));
        }
        let s = fq.s_sign(c)?;
        return Ok(ExpValue {
            rational: QScaled::zero(p, q),
            sqrtq_coeff: QScaled::from_cyclo(CycloInt::from_int(p, s), q),
        });
    }
    let d = dx.unwrap();
    if d.min(-d - 1 + eps as i64) > n {
        // e(alpha x^2) reads the t^(eps-1) coefficient of x^2
        let x2 = x.mul(fq, x);
        let phase = Laurent::monomial(fq.mul(c, x2.coeff(eps as i64 - 1)?), -1);
        let value = QScaled::q_pow(p, q, n + 1).mul_cyclo(&char_e(fq, &phase)?);
        return Ok(ExpValue::rational(value));
    }
    Ok(ExpValue::zero(p, q))
}

/// Exact `integral over B(x, n) of e(a y^2 + l y) dy` by summing over cosets
/// of `B(0, -M-1)`, on each of which the integrand is constant.
///
/// `M` is the least cutoff with `deg(a (2 y d + d^2) + l d) <= -2` for every
/// `y` in the ball and `|d| <= q^(-M-1)`, and with `-M-1 <= n`.
pub fn quadratic_ball_quadrature(
    fq: &Fq,
    a: &Laurent,
    l: &Laurent,
    x: &Laurent,
    n: i64,
    budget: u128,
) -> Result<QScaled> {
    let (p, q) = (fq.p(), fq.q());
    let dx = x.deg()?;
    let top = dx.map_or(n, |d| d.max(n));
    let mut cutoff = -n - 1;
    if let Some(da) = a.deg()? {
        cutoff = cutoff.max(da + top + 1).max(da.div_euclid(2) + da.rem_euclid(2));
    }
    if let Some(dl) = l.deg()? {
        cutoff = cutoff.max(dl + 1);
    }
    let lo = -cutoff;
    let free = (n - lo + 1) as u32;
    check_budget(pow_sat(q as u64, free), budget)?;

    // y = (terms of x above t^n) + z, z running over all digits at exponents lo..=n
    let width = (top - lo + 1) as usize;
    let mut base_digits = vec![FieldElem::ZERO; width];
    for (i, slot) in base_digits.iter_mut().enumerate().skip(free as usize) {
        *slot = x.coeff(lo + i as i64)?;
    }
    let sq_terms = coefficient_window(a, -1 - 2 * top, -1 - 2 * lo)?;
    let lin_terms = coefficient_window(l, -1 - top, -1 - lo)?;

    let counts = (0..q)
        .into_par_iter()
        .map(|first| {
            let mut counts = vec![0i64; p as usize];
            let mut z = vec![0u32; free as usize];
            if free > 0 {
                z[free as usize - 1] = first;
            } else if first > 0 {
                return counts;
            }
            let mut y = base_digits.clone();
            loop {
                for (i, &d) in z.iter().enumerate() {
                    y[i] = fq.add(base_digits[i], FieldElem(d));
                }
                let v = phase_value(fq, &y, lo, &sq_terms, &lin_terms);
                counts[fq.trace(v) as usize] += 1;
                // odometer over all digits but the top one
                let mut i = 0;
                let last = free.saturating_sub(1) as usize;
                loop {
                    if i >= last {
                        return counts;
                    }
                    z[i] += 1;
                    if z[i] < q {
                        break;
                    }
                    z[i] = 0;
                    i += 1;
                }
            }
        })
        .reduce(
            || vec![0i64; p as usize],
            |mut acc, c| {
                acc.iter_mut().zip(c).for_each(|(a, b)| *a += b);
                acc
            },
        );
    Ok(QScaled::new(CycloInt::from_exponent_counts(p, &counts), lo, q))
}

/// Nonzero coefficients of `x` at exponents in `[from, to]`.
fn coefficient_window(x: &Laurent, from: i64, to: i64) -> Result<Vec<(i64, FieldElem)>> {
    if x.is_exact_zero() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for k in from..=to {
        let c = x.coeff(k)?;
        if !c.is_zero() {
            out.push((k, c));
        }
    }
    Ok(out)
}

/// Coefficient of `t^-1` in `a y^2 + l y`, with `y[i]` the coefficient of `t^(lo+i)`.
fn phase_value(fq: &Fq, y: &[FieldElem], lo: i64, sq: &[(i64, FieldElem)], lin: &[(i64, FieldElem)]) -> FieldElem {
    let width = y.len() as i64;
    let mut acc = FieldElem::ZERO;
    for &(k, a) in sq {
        // sum of y_i y_j over exponent pairs adding to -1-k
        let s = -1 - k - 2 * lo;
        let mut inner = FieldElem::ZERO;
        for i in (s - width + 1).max(0)..=s.min(width - 1) {
            inner = fq.add(inner, fq.mul(y[i as usize], y[(s - i) as usize]));
        }
        acc = fq.add(acc, fq.mul(a, inner));
    }
    for &(k, b) in lin {
        let i = -1 - k - lo;
        if (0..width).contains(&i) {
            acc = fq.add(acc, fq.mul(b, y[i as usize]));
        }
    }
    acc
}

/// Quadrature oracle for `integral over B(x, n) of e(alpha y^2) dy`.
pub fn ball_integral_quadrature(fq: &Fq, alpha: &Laurent, x: &Laurent, n: i64, budget: u128) -> Result<QScaled> {
    if alpha.is_exact_zero() {
        return Err(Error::BadAlphaShape);
    }
    quadratic_ball_quadrature(fq, alpha, &Laurent::zero(), x, n, budget)
}

/// `E(A, B)` through the reduction to a ball integral of `e(alpha y^2)`.
pub fn expint_eval(fq: &Fq, spec: &ExpIntSpec) -> Result<ExpValue> {
    let (p, q) = (fq.p(), fq.q());
    let big_q = spec.q_param;
    let Some(shape) = spec.shape(fq)? else {
        return Ok(if spec.b.norm_le(-big_q - 2)? {
            ExpValue::rational(QScaled::q_pow(p, q, big_q + 1))
        } else {
            ExpValue::zero(p, q)
        });
    };
    let h = spec.a.deg()?.unwrap();
    let eps = shape.eps as i64;
    let half = (h + eps) / 2;
    let inv4 = fq.inv(fq.from_int(4))?;

    let phase = if spec.b.is_exact_zero() {
        CycloInt::one(p)
    } else {
        let b2 = spec.b.mul(fq, &spec.b);
        let ratio = b2.div(fq, &spec.a, -1)?;
        char_e(fq, &ratio.scale(fq, fq.neg(inv4)))?
    };

    let center = match spec.b.deg()? {
        Some(db) if db - h > big_q => {
            let dc = db - h + half;
            let target = eps - 1 - dc - 1;
            let inv2 = fq.inv(fq.from_int(2))?;
            let ratio = spec.b.div(fq, &spec.a, target - half)?.scale(fq, inv2);
            let root = shape.a2.sqrt(fq, target - (db - h))?;
            let c = ratio.mul(fq, &root);
            if c.floor().is_some_and(|f| f > eps - 1 - dc) {
                return Err(Error::Precision("centre of the shifted ball is too coarse".into()));
            }
            c
        }
        _ => Laurent::zero(),
    };
    let inner = ball_integral_closed(fq, shape.c, shape.eps, &center, big_q + half)?;
    Ok(inner.mul_cyclo(&phase).scale_q(-half))
}

/// Oracle for [`expint_eval`]: direct quadrature of `e(A y^2 - B y)` over `B(0, Q)`.
pub fn expint_quadrature(fq: &Fq, spec: &ExpIntSpec, budget: u128) -> Result<QScaled> {
    let minus_b = spec.b.neg(fq);
    quadratic_ball_quadrature(fq, &spec.a, &minus_b, &Laurent::zero(), spec.q_param, budget)
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpIntReport {
    pub a: String,
    pub b: String,
    #[serde(rename = "Q")]
    pub q_param: i64,
    pub closed: ExpValueText,
    pub realized: String,
    pub oracle: Option<String>,
    pub agree: Option<bool>,
}

impl ExpIntReport {
    pub fn new(fq: &Fq, spec: &ExpIntSpec, closed: &ExpValue, oracle: Option<&QScaled>) -> ExpIntReport {
        let realized = closed.realize(fq);
        ExpIntReport {
            a: spec.a.format(fq),
            b: spec.b.format(fq),
            q_param: spec.q_param,
            closed: closed.text(),
            realized: realized.format(),
            oracle: oracle.map(|o| o.format()),
            agree: oracle.map(|o| *o == realized),
        }
    }
}

/// Outcome of comparing the closed form with the oracle over a grid of
/// `(eps, c, n, x)`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct GridTally {
    pub q: u32,
    pub cases: usize,
    pub mismatches: usize,
    pub first_mismatch: Option<String>,
}

/// Compares [`ball_integral_closed`] with [`ball_integral_quadrature`] for
/// `eps in {0,1}`, all units `c`, `n in n_range`, and centres of every degree in
/// `deg_range` (`samples` random centres per degree, three known terms each)
/// plus the centre 0.
pub fn closed_form_grid(
    fq: &Fq,
    n_range: std::ops::RangeInclusive<i64>,
    deg_range: std::ops::RangeInclusive<i64>,
    samples: usize,
    seed: u64,
    budget: u128,
) -> Result<GridTally> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let q = fq.q();
    let mut centres = vec![Laurent::zero()];
    for d in deg_range {
        for _ in 0..samples {
            let lead = FieldElem(rng.gen_range(1..q));
            let rest = (0..2).map(|_| FieldElem(rng.gen_range(0..q)));
            centres.push(Laurent::exact(d, std::iter::once(lead).chain(rest).collect()));
        }
    }
    let mut tally = GridTally { q, ..GridTally::default() };
    for eps in 0..=1u32 {
        for c in fq.units() {
            let alpha = Laurent::monomial(c, -(eps as i64));
            for n in n_range.clone() {
                for x in &centres {
                    let closed = ball_integral_closed(fq, c, eps, x, n)?.realize(fq);
                    let oracle = ball_integral_quadrature(fq, &alpha, x, n, budget)?;
                    tally.cases += 1;
                    if closed != oracle {
                        tally.mismatches += 1;
                        tally.first_mismatch.get_or_insert_with(|| {
                            format!(
                                "eps={eps} c={} n={n} x={}: closed {} oracle {}",
                                fq.format_elem(c),
                                x.format(fq),
                                closed.format(),
                                oracle.format()
                            )
                        });
                    }
                }
            }
        }
    }
    Ok(tally)
}
