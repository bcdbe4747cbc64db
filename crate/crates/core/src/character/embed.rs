//! Rigorous complex enclosures of cyclotomic integers under `zeta -> exp(2 pi i/p)`.
//!
//! Numbers are fixed point: an integer `m` at scale `bits` stands for
//! `m / 2^bits`, and every value carries an error bound in the same units.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::character::cyclo::CycloInt;
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION_BITS: u32 = 128;
const GUARD_BITS: u32 = 32;

/// Real interval `[mid - err, mid + err] / 2^bits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealApprox {
    pub mid: BigInt,
    pub err: BigInt,
    pub bits: u32,
}

/// Box `(re +- err) + i (im +- err)`, scaled by `2^-bits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexApprox {
    pub re: BigInt,
    pub im: BigInt,
    pub err: BigInt,
    pub bits: u32,
}

fn one_at(bits: u32) -> BigInt {
    BigInt::one() << bits
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    Integer::div_ceil(a, b)
}

/// Product of two fixed-point values with errors, rescaled; returns `(mid, err)`.
fn fx_mul(x: &BigInt, ex: &BigInt, y: &BigInt, ey: &BigInt, bits: u32) -> (BigInt, BigInt) {
    let scale = one_at(bits);
    let prod = (x * y).div_floor(&scale);
    let raw_err = x.abs() * ey + y.abs() * ex + ex * ey;
    (prod, div_ceil(&raw_err, &scale) + 1)
}

/// `arctan(1/x)` at scale `bits`, with its error in ulps.
fn arctan_inv(x: u32, bits: u32) -> (BigInt, BigInt) {
    let x2 = BigInt::from(x * x);
    let mut power = one_at(bits) / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k: u32 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power = &power / &x2;
        k += 1;
    }
    (sum, BigInt::from(3 * k + 1))
}

/// `pi` at scale `bits`, with its error in ulps.
fn pi_fixed(bits: u32) -> (BigInt, BigInt) {
    let (a5, e5) = arctan_inv(5, bits);
    let (a239, e239) = arctan_inv(239, bits);
    (a5 * 16 - a239 * 4, e5 * 16 + e239 * 4)
}

/// `(cos theta, sin theta)` for `theta = 2 pi k / p` with `|theta| <= pi`,
/// sharing one error bound.
fn cos_sin(k: i64, p: u32, bits: u32) -> (BigInt, BigInt, BigInt) {
    let (pi, epi) = pi_fixed(bits);
    let k = {
        let r = k.rem_euclid(p as i64);
        if 2 * r > p as i64 {
            r - p as i64
        } else {
            r
        }
    };
    let num = BigInt::from(2 * k) * &pi;
    let theta = num.div_floor(&BigInt::from(p));
    let etheta = div_ceil(&(BigInt::from(2 * k.abs()) * &epi), &BigInt::from(p)) + 1;

    let scale = one_at(bits);
    let mut cos = BigInt::zero();
    let mut sin = BigInt::zero();
    let mut err = BigInt::zero();
    let mut term = scale.clone();
    let mut eterm = BigInt::zero();
    let mut n: u32 = 0;
    let theta_bound = theta.abs() + &etheta;
    loop {
        match n % 4 {
            0 => cos += &term,
            1 => sin += &term,
            2 => cos -= &term,
            _ => sin -= &term,
        }
        err += &eterm;
        // Past n >= 2|theta| successive terms at least halve, so the
        // remaining tail is bounded by the current term and its error.
        let size = term.abs() + &eterm;
        if BigInt::from(n) * &scale >= &theta_bound * 2 && size <= BigInt::from(16) {
            err += size + 1;
            break;
        }
        n += 1;
        let (t, e) = fx_mul(&term, &eterm, &theta, &etheta, bits);
        let nn = BigInt::from(n);
        term = t.div_floor(&nn);
        eterm = div_ceil(&e, &nn) + 1;
    }
    (cos, sin, err)
}

impl RealApprox {
    pub fn from_integer(n: &BigInt, bits: u32) -> RealApprox {
        RealApprox { mid: n << bits, err: BigInt::zero(), bits }
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.mid, self.bits)
    }

    pub fn lower(&self) -> BigInt {
        &self.mid - &self.err
    }

    pub fn upper(&self) -> BigInt {
        &self.mid + &self.err
    }

    /// Certified comparison; overlapping enclosures are a precision failure.
    pub fn cmp_rational(&self, r: &BigRational) -> Result<Ordering> {
        let scaled = r * BigRational::from_integer(one_at(self.bits));
        let lo = BigRational::from_integer(self.lower());
        let hi = BigRational::from_integer(self.upper());
        if hi < scaled {
            Ok(Ordering::Less)
        } else if lo > scaled {
            Ok(Ordering::Greater)
        } else if self.err.is_zero() && lo == scaled {
            Ok(Ordering::Equal)
        } else {
            Err(Error::Precision("interval comparison undecidable".into()))
        }
    }

    pub fn cmp_approx(&self, other: &RealApprox) -> Result<Ordering> {
        assert_eq!(self.bits, other.bits);
        if self.upper() < other.lower() {
            Ok(Ordering::Less)
        } else if self.lower() > other.upper() {
            Ok(Ordering::Greater)
        } else if self.err.is_zero() && other.err.is_zero() && self.mid == other.mid {
            Ok(Ordering::Equal)
        } else {
            Err(Error::Precision("interval comparison undecidable".into()))
        }
    }
}

fn ratio_to_f64(m: &BigInt, bits: u32) -> f64 {
    let r = BigRational::new(m.clone(), one_at(bits));
    r.to_f64().unwrap_or(f64::NAN)
}

impl ComplexApprox {
    pub fn to_f64(&self) -> (f64, f64) {
        (ratio_to_f64(&self.re, self.bits), ratio_to_f64(&self.im, self.bits))
    }

    pub fn err_f64(&self) -> f64 {
        ratio_to_f64(&self.err, self.bits)
    }

    pub fn add(&self, other: &ComplexApprox) -> ComplexApprox {
        assert_eq!(self.bits, other.bits);
        ComplexApprox {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
            err: &self.err + &other.err,
            bits: self.bits,
        }
    }

    pub fn mul(&self, other: &ComplexApprox) -> ComplexApprox {
        assert_eq!(self.bits, other.bits);
        let b = self.bits;
        let (rr, err_rr) = fx_mul(&self.re, &self.err, &other.re, &other.err, b);
        let (ii, err_ii) = fx_mul(&self.im, &self.err, &other.im, &other.err, b);
        let (ri, err_ri) = fx_mul(&self.re, &self.err, &other.im, &other.err, b);
        let (ir, err_ir) = fx_mul(&self.im, &self.err, &other.re, &other.err, b);
        let err = (err_rr + err_ii).max(err_ri + err_ir);
        ComplexApprox { re: rr - ii, im: ri + ir, err, bits: b }
    }

    /// Enclosure of `|z|^2`.
    pub fn abs2(&self) -> RealApprox {
        let b = self.bits;
        let (rr, e1) = fx_mul(&self.re, &self.err, &self.re, &self.err, b);
        let (ii, e2) = fx_mul(&self.im, &self.err, &self.im, &self.err, b);
        RealApprox { mid: rr + ii, err: e1 + e2, bits: b }
    }

    pub fn real_part(&self) -> RealApprox {
        RealApprox { mid: self.re.clone(), err: self.err.clone(), bits: self.bits }
    }

    /// Whether the point `(re, im)` (given at the same scale) lies in the box.
    pub fn contains(&self, re: &BigInt, im: &BigInt) -> bool {
        (&self.re - re).abs() <= self.err && (&self.im - im).abs() <= self.err
    }
}

/// Enclosure of the image of `z` under `zeta -> exp(2 pi i / p)`, with at
/// least `precision_bits` fractional bits.
pub fn cyclo_embed(z: &CycloInt, precision_bits: u32) -> ComplexApprox {
    let bits = precision_bits + GUARD_BITS;
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    let mut err = BigInt::zero();
    for (k, c) in z.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if k == 0 {
            re += c << bits;
            continue;
        }
        let (cs, sn, e) = cos_sin(k as i64, z.p(), bits);
        re += c * cs;
        im += c * sn;
        err += c.abs() * e;
    }
    ComplexApprox { re, im, err, bits }
}

/// Compares `|a|` with `|b|`: exactly when both squared magnitudes are rational
/// integers, otherwise through enclosures at `precision_bits`.
pub fn compare_magnitudes(a: &CycloInt, b: &CycloInt, precision_bits: u32) -> Result<Ordering> {
    let (a2, b2) = (a.abs2(), b.abs2());
    if let (Some(x), Some(y)) = (a2.as_integer(), b2.as_integer()) {
        return Ok(x.cmp(&y));
    }
    cyclo_embed(&a2, precision_bits)
        .real_part()
        .cmp_approx(&cyclo_embed(&b2, precision_bits).real_part())
}
