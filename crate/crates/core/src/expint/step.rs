use serde::Serialize;

use crate::algebra::Fq;
use crate::character::{char_e, CycloInt};
use crate::error::{pow_sat, Error, Result};
use crate::expint::value::QScaled;
use crate::laurent::{Ball, Laurent};

/// `weight * e(phase * y)` on `ball`, zero elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepTerm {
    pub ball: Ball,
    pub weight: QScaled,
    pub phase: Laurent,
}

/// Finite sum of phased ball indicators.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct StepFunction {
    pub terms: Vec<StepTerm>,
}

impl StepFunction {
    pub fn zero() -> StepFunction {
        StepFunction::default()
    }

    pub fn indicator(fq: &Fq, ball: Ball) -> StepFunction {
        StepFunction::weighted(fq, ball, QScaled::one(fq.p(), fq.q()))
    }

    pub fn weighted(_fq: &Fq, ball: Ball, weight: QScaled) -> StepFunction {
        StepFunction { terms: vec![StepTerm { ball, weight, phase: Laurent::zero() }] }
    }

    /// Indicator of `|y| <= 1/q`, its own Fourier transform.
    pub fn phi1(fq: &Fq) -> StepFunction {
        StepFunction::indicator(fq, Ball::centered(-1))
    }

    pub fn push(&mut self, term: StepTerm) {
        self.terms.push(term);
    }

    pub fn add(&self, other: &StepFunction) -> StepFunction {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        StepFunction { terms }
    }

    /// Merges terms on the same ball with the same phase and drops zero weights.
    pub fn merged(&self, fq: &Fq) -> Result<StepFunction> {
        let mut out: Vec<StepTerm> = Vec::new();
        for t in &self.terms {
            let mut found = false;
            for o in out.iter_mut() {
                if o.phase == t.phase && o.ball.same_set(fq, &t.ball)? {
                    o.weight = o.weight.add(&t.weight);
                    found = true;
                    break;
                }
            }
            if !found {
                out.push(t.clone());
            }
        }
        out.retain(|t| !t.weight.is_zero());
        Ok(StepFunction { terms: out })
    }

    pub fn eval(&self, fq: &Fq, y: &Laurent) -> Result<QScaled> {
        let mut acc = QScaled::zero(fq.p(), fq.q());
        for t in &self.terms {
            if t.ball.contains(fq, y)? {
                let e = char_e(fq, &t.phase.mul(fq, y))?;
                acc = acc.add(&t.weight.mul_cyclo(&e));
            }
        }
        Ok(acc)
    }

    /// Largest degree of a polynomial `f` with `f + x` in the support.
    fn support_degree(&self, fq: &Fq, x: &Laurent) -> Result<i64> {
        let mut d = -1;
        for t in &self.terms {
            let off = t.ball.center.sub(fq, x).deg()?;
            d = d.max(off.map_or(t.ball.radius_exp, |o| o.max(t.ball.radius_exp)));
        }
        Ok(d)
    }

    /// Between one and `max_terms` terms on balls of radius `q^-3..q^1` with
    /// centres and phases of degree at most 1 and weights `+-q^k`, `|k| <= 1`.
    /// Every support stays inside polynomials of degree `<= 2`.
    pub fn random<R: rand::Rng>(fq: &Fq, max_terms: usize, rng: &mut R) -> StepFunction {
        let (p, q) = (fq.p(), fq.q());
        let mut out = StepFunction::zero();
        for _ in 0..rng.gen_range(1..=max_terms.max(1)) {
            let exact = |rng: &mut R| {
                let hi = rng.gen_range(-3..=1);
                Laurent::random(fq, hi, -4, rng).truncated(-4).unwrap()
            };
            let center = exact(rng);
            let phase = exact(rng);
            let mut weight = QScaled::q_pow(p, q, rng.gen_range(-1..=1));
            if rng.gen_bool(0.5) {
                weight = weight.neg();
            }
            out.push(StepTerm { ball: Ball::new(center, rng.gen_range(-3..=1)), weight, phase });
        }
        out
    }

    pub fn describe(&self, fq: &Fq) -> Vec<StepTermText> {
        self.terms
            .iter()
            .map(|t| StepTermText {
                ball: t.ball.format(fq),
                weight: t.weight.format(),
                phase: t.phase.format(fq),
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StepTermText {
    pub ball: String,
    pub weight: String,
    pub phase: String,
}

/// Fourier transform `y -> integral of phi(z) e(-y z) dz`, term by term:
/// `w e(a z) 1_B(c, n)` goes to `w q^(n+1) e(a c) e(-c y) 1_B(a, -n-2)`.
pub fn fourier_step(fq: &Fq, phi: &StepFunction) -> Result<StepFunction> {
    let mut out = StepFunction::zero();
    for t in &phi.terms {
        let n = t.ball.radius_exp;
        let c = &t.ball.center;
        let twist = char_e(fq, &t.phase.mul(fq, c))?;
        out.push(StepTerm {
            ball: Ball::new(t.phase.clone(), -n - 2),
            weight: t.weight.scale_q(n + 1).mul_cyclo(&twist),
            phase: c.neg(fq),
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonOutcome {
    pub lhs: QScaled,
    pub rhs: QScaled,
    pub equal: bool,
}

/// `sum_f phi(f + x)` against `sum_g phi^(g) e(g x)`, both over polynomials
/// of degree `<= cap`. Refuses when either support reaches past `cap`.
pub fn poisson_check(fq: &Fq, phi: &StepFunction, x: &Laurent, cap: u32) -> Result<PoissonOutcome> {
    let hat = fourier_step(fq, phi)?;
    let needed = phi.support_degree(fq, x)?.max(hat.support_degree(fq, &Laurent::zero())?);
    if needed > cap as i64 {
        let q = fq.q() as u64;
        return Err(Error::CapExceeded {
            needed: pow_sat(q, (needed + 1) as u32),
            budget: pow_sat(q, cap + 1),
        });
    }
    let (p, q) = (fq.p(), fq.q());
    let mut lhs = QScaled::zero(p, q);
    let mut rhs = QScaled::zero(p, q);
    for f in fq.polys_below(cap as usize + 1) {
        let lf = Laurent::from_poly(&f);
        lhs = lhs.add(&phi.eval(fq, &lf.add(fq, x))?);
        let hat_g = hat.eval(fq, &lf)?;
        if !hat_g.is_zero() {
            rhs = rhs.add(&hat_g.mul_cyclo(&char_e(fq, &lf.mul(fq, x))?));
        }
    }
    let equal = lhs == rhs;
    Ok(PoissonOutcome { lhs, rhs, equal })
}

/// `sum over all f of degree exactly d of e(y f)`, by enumeration.
pub fn degree_sum_direct(fq: &Fq, y: &Laurent, d: u32) -> Result<CycloInt> {
    let p = fq.p();
    let mut counts = vec![0i64; p as usize];
    let lo = fq.polys_below(d as usize).count();
    for f in fq.polys_below(d as usize + 1).skip(lo) {
        counts[fq.trace(y.mul_poly(fq, &f).coeff(-1)?) as usize] += 1;
    }
    Ok(CycloInt::from_exponent_counts(p, &counts))
}

/// The same sum from its three-way closed form in `‖y‖`:
/// `q^(d+1) - q^d` if `‖y‖ <= q^(-d-2)`, `-q^d` if `‖y‖ = q^(-d-1)`, else 0.
pub fn degree_sum_closed(fq: &Fq, y: &Laurent, d: u32) -> Result<CycloInt> {
    let frac = y.frac_part()?;
    let qd = num_bigint::BigInt::from(fq.q()).pow(d);
    let p = fq.p();
    Ok(if frac.norm_le(-(d as i64) - 2)? {
        CycloInt::from_int(p, &qd * (fq.q() - 1))
    } else if frac.norm_le(-(d as i64) - 1)? {
        CycloInt::from_int(p, -qd)
    } else {
        CycloInt::zero(p)
    })
}

/// The same sum as the difference of two Poisson-dual sums of phased
/// indicators of `B(0, d)` and `B(0, d-1)`.
pub fn degree_sum_via_poisson(fq: &Fq, y: &Laurent, d: u32) -> Result<QScaled> {
    let frac = y.frac_part()?;
    let side = |radius: i64| -> Result<QScaled> {
        let phi = StepFunction {
            terms: vec![StepTerm {
                ball: Ball::centered(radius),
                weight: QScaled::one(fq.p(), fq.q()),
                phase: frac.clone(),
            }],
        };
        let out = poisson_check(fq, &phi, &Laurent::zero(), d)?;
        if !out.equal {
            return Err(Error::Domain("Poisson summation failed".into()));
        }
        Ok(out.rhs)
    };
    Ok(side(d as i64)?.sub(&side(d as i64 - 1)?))
}
