//! Quadratic Gauss sums `G(alpha, l; beta) = sum_{d mod beta} e((alpha d^2 + l d)/beta)`.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::{Factorization, FieldElem, Fq, Poly, ResidueRing};
use crate::character::CycloInt;
use crate::error::{Error, Result};

/// Largest modulus degree summed term by term unless configured otherwise.
pub const DEFAULT_BRUTE_CAP: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussSpec {
    pub alpha: Poly,
    /// Reduced modulo `beta`.
    pub l: Poly,
    pub beta: Poly,
    /// Whether `gcd(alpha, beta) = 1`.
    pub coprime: bool,
}

impl GaussSpec {
    pub fn new(fq: &Fq, alpha: Poly, l: Poly, beta: Poly) -> Result<GaussSpec> {
        if beta.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let l = fq.poly_rem(&l, &beta)?;
        let coprime = fq.coprime(&alpha, &beta);
        Ok(GaussSpec { alpha, l, beta, coprime })
    }

    fn require_coprime(&self) -> Result<()> {
        if self.coprime {
            Ok(())
        } else {
            Err(Error::NotCoprime)
        }
    }
}

/// Exponent histogram of `sum_d zeta^(lambda(alpha d^2 + l d))` over residues `d`.
fn brute_counts(rr: &ResidueRing, alpha: &[FieldElem], l: &[FieldElem]) -> Vec<i64> {
    let p = rr.field().p();
    let mut counts = vec![0i64; p as usize];
    let mut d = rr.residue(0);
    let mut sq = Vec::new();
    let mut quad = Vec::new();
    let mut lin = Vec::new();
    loop {
        rr.mul_into(&d, &d, &mut sq);
        rr.mul_into(alpha, &sq, &mut quad);
        rr.mul_into(l, &d, &mut lin);
        let k = (rr.char_exponent(&quad) + rr.char_exponent(&lin)) % p;
        counts[k as usize] += 1;
        if !rr.advance(&mut d) {
            break;
        }
    }
    counts
}

/// Term-by-term evaluation of `G(alpha, l; beta)`; any `alpha` is allowed.
pub fn gauss_brute(fq: &Fq, spec: &GaussSpec, cap: usize) -> Result<CycloInt> {
    let m = spec.beta.deg().ok_or(Error::DivisionByZero)?;
    if m > cap {
        return Err(Error::CapExceeded {
            needed: crate::error::pow_sat(fq.q() as u64, m as u32),
            budget: crate::error::pow_sat(fq.q() as u64, cap as u32),
        });
    }
    let rr = ResidueRing::new(fq, &spec.beta)?;
    let counts = brute_counts(&rr, &rr.reduce(&spec.alpha), &rr.reduce(&spec.l));
    Ok(CycloInt::from_exponent_counts(fq.p(), &counts))
}

/// Term-by-term evaluation of `G(alpha, l; beta)` for one `alpha` and every
/// `l mod beta` at once, indexed by the residue index of `l`.
pub struct BruteTable<'a> {
    rr: ResidueRing<'a>,
    /// `lambda(l d)` for residue indices `d` (rows) and `l` (columns).
    bilinear: Vec<u8>,
    size: usize,
}

impl<'a> BruteTable<'a> {
    pub fn new(fq: &'a Fq, beta: &Poly, cap: usize) -> Result<BruteTable<'a>> {
        let m = beta.deg().ok_or(Error::DivisionByZero)?;
        if m > cap {
            return Err(Error::CapExceeded {
                needed: crate::error::pow_sat(fq.q() as u64, m as u32),
                budget: crate::error::pow_sat(fq.q() as u64, cap as u32),
            });
        }
        let rr = ResidueRing::new(fq, beta)?;
        let size = rr.size() as usize;
        let residues: Vec<Vec<FieldElem>> = (0..size as u64).map(|i| rr.residue(i)).collect();
        let mut bilinear = vec![0u8; size * size];
        let mut prod = Vec::new();
        for (i, d) in residues.iter().enumerate() {
            for (j, l) in residues.iter().enumerate().skip(i) {
                rr.mul_into(d, l, &mut prod);
                let k = rr.char_exponent(&prod) as u8;
                bilinear[i * size + j] = k;
                bilinear[j * size + i] = k;
            }
        }
        Ok(BruteTable { rr, bilinear, size })
    }

    pub fn modulus(&self) -> &Poly {
        self.rr.modulus()
    }

    /// `G(alpha, l; beta)` for every `l`, in residue index order.
    pub fn all_l(&self, alpha: &Poly) -> Vec<CycloInt> {
        let fq = self.rr.field();
        let p = fq.p();
        let a = self.rr.reduce(alpha);
        let mut quad = Vec::with_capacity(self.size);
        let mut sq = Vec::new();
        let mut tmp = Vec::new();
        for i in 0..self.size as u64 {
            let d = self.rr.residue(i);
            self.rr.mul_into(&d, &d, &mut sq);
            self.rr.mul_into(&a, &sq, &mut tmp);
            quad.push(self.rr.char_exponent(&tmp));
        }
        let mut counts = vec![0i64; p as usize];
        (0..self.size)
            .map(|l| {
                counts.iter_mut().for_each(|c| *c = 0);
                for (d, &qd) in quad.iter().enumerate() {
                    let k = (qd + self.bilinear[d * self.size + l] as u32) % p;
                    counts[k as usize] += 1;
                }
                CycloInt::from_exponent_counts(p, &counts)
            })
            .collect()
    }
}

/// `(phase, (alpha, 0, beta))` with `G(alpha, l; beta) = phase * G(alpha, 0; beta)`
/// and `phase = e(-conj(alpha) l^2 / (4 beta))`, `conj(alpha)` the inverse of
/// `alpha` modulo `beta`.
pub fn gauss_shift_to_zero(fq: &Fq, spec: &GaussSpec) -> Result<(CycloInt, GaussSpec)> {
    spec.require_coprime()?;
    let reduced = GaussSpec { l: Poly::zero(), ..spec.clone() };
    Ok((CycloInt::zeta_pow(fq.p(), shift_exponent(fq, spec)? as i64), reduced))
}

fn shift_exponent(fq: &Fq, spec: &GaussSpec) -> Result<u32> {
    if spec.l.is_zero() || spec.beta.is_constant() {
        return Ok(0);
    }
    let alpha_bar = fq.poly_inv_mod(&spec.alpha, &spec.beta)?;
    let inv4 = fq.inv(fq.from_int(4))?;
    let l2 = fq.poly_mulmod(&spec.l, &spec.l, &spec.beta)?;
    let num = fq.poly_scale(&fq.poly_mulmod(&alpha_bar, &l2, &spec.beta)?, fq.neg(inv4));
    Ok(lambda(fq, &num, &spec.beta))
}

/// Trace of the `t^-1` coefficient of `x / beta` for `deg x < deg beta`.
fn lambda(fq: &Fq, x: &Poly, beta: &Poly) -> u32 {
    let m = beta.deg().unwrap();
    if m == 0 {
        return 0;
    }
    let lc_inv = fq.inv(beta.lc()).unwrap();
    fq.trace(fq.mul(x.coeff(m - 1), lc_inv))
}

/// `((alpha beta2, l; beta1), (alpha beta1, l; beta2))` whose Gauss sums
/// multiply to `G(alpha, l; beta1 beta2)`.
pub fn gauss_split(
    fq: &Fq,
    spec: &GaussSpec,
    beta1: &Poly,
    beta2: &Poly,
) -> Result<(GaussSpec, GaussSpec)> {
    if beta1.is_zero() || beta2.is_zero() || fq.poly_mul(beta1, beta2) != spec.beta {
        return Err(Error::BadFactor);
    }
    if !fq.coprime(beta1, beta2) {
        return Err(Error::NotCoprimeModuli);
    }
    Ok((
        GaussSpec::new(fq, fq.poly_mul(&spec.alpha, beta2), spec.l.clone(), beta1.clone())?,
        GaussSpec::new(fq, fq.poly_mul(&spec.alpha, beta1), spec.l.clone(), beta2.clone())?,
    ))
}

/// For `beta = gamma^r`, `r >= 2`: `(deg gamma, (alpha, 0, gamma^(r-2)))` with
/// `G(alpha, 0; gamma^r) = q^(deg gamma) G(alpha, 0; gamma^(r-2))`.
///
/// `gamma` is taken monic with `r` the gcd of the multiplicities of `beta`; a
/// non-monic `beta = c gamma^r` is first rewritten as `(alpha/c, 0; gamma^r)`.
pub fn gauss_power_reduce(fq: &Fq, spec: &GaussSpec) -> Result<(u32, GaussSpec)> {
    if !spec.l.is_zero() {
        return Err(Error::BadArgs("power reduction needs a vanishing linear term".into()));
    }
    spec.require_coprime()?;
    let fac = fq.factor(&spec.beta)?;
    let r = fac.multiplicity_gcd();
    if r < 2 {
        return Err(Error::NotAPower);
    }
    let gamma = Factorization {
        unit: FieldElem::ONE,
        factors: fac.factors.iter().map(|(p, v)| (p.clone(), v / r)).collect(),
    }
    .recompose(fq);
    let alpha = fq.poly_scale(&spec.alpha, fq.inv(fac.unit)?);
    let reduced = GaussSpec::new(fq, alpha, Poly::zero(), fq.poly_pow(&gamma, r - 2))?;
    Ok((gamma.deg().unwrap() as u32, reduced))
}

/// The sign `(alpha / P)` with `G(alpha, 0; P) = (alpha / P) G(1, 0; P)`.
pub fn gauss_legendre_reduce(fq: &Fq, alpha: &Poly, p: &Poly) -> Result<i32> {
    fq.legendre(alpha, p)
}

/// Evaluator through the identity chain, with caches for prime-modulus sums,
/// factorizations and shift-free values.
pub struct GaussEngine {
    fq: Fq,
    cap: usize,
    primes: Mutex<HashMap<Poly, CycloInt>>,
    factors: Mutex<HashMap<Poly, Factorization>>,
    unshifted: Mutex<HashMap<(Poly, Poly), CycloInt>>,
}

impl GaussEngine {
    pub fn new(fq: &Fq, cap: usize) -> GaussEngine {
        GaussEngine {
            fq: fq.clone(),
            cap,
            primes: Mutex::new(HashMap::new()),
            factors: Mutex::new(HashMap::new()),
            unshifted: Mutex::new(HashMap::new()),
        }
    }

    /// `G(1, 0; P)` by direct summation, cached.
    fn prime_sum(&self, p: &Poly) -> Result<CycloInt> {
        if let Some(v) = self.primes.lock().unwrap().get(p) {
            return Ok(v.clone());
        }
        let spec = GaussSpec::new(&self.fq, Poly::one(), Poly::zero(), p.clone())?;
        let v = gauss_brute(&self.fq, &spec, self.cap)?;
        self.primes.lock().unwrap().insert(p.clone(), v.clone());
        Ok(v)
    }

    fn factor(&self, beta: &Poly) -> Result<Factorization> {
        if let Some(f) = self.factors.lock().unwrap().get(beta) {
            return Ok(f.clone());
        }
        let f = self.fq.factor(beta)?;
        self.factors.lock().unwrap().insert(beta.clone(), f.clone());
        Ok(f)
    }

    /// `G(alpha, 0; beta)` for monic `beta` and `alpha` reduced mod `beta`.
    fn unshifted(&self, alpha: &Poly, beta: &Poly) -> Result<CycloInt> {
        let key = (alpha.clone(), beta.clone());
        if let Some(v) = self.unshifted.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let fq = &self.fq;
        let p = fq.p();
        let fac = self.factor(beta)?;
        let powers: Vec<Poly> = fac.factors.iter().map(|(pp, v)| fq.poly_pow(pp, *v)).collect();
        let mut value = CycloInt::one(p);
        let mut q_exp: u32 = 0;
        for (i, (prime, v)) in fac.factors.iter().enumerate() {
            // alpha_i = alpha * prod_{j != i} P_j^{v_j}, reduced mod P_i^{v_i}
            let mut alpha_i = alpha.clone();
            for (j, pw) in powers.iter().enumerate() {
                if j != i {
                    alpha_i = fq.poly_mulmod(&alpha_i, pw, &powers[i])?;
                }
            }
            let deg = prime.deg().unwrap() as u32;
            q_exp += deg * (v / 2);
            if v % 2 == 1 {
                let sign = fq.legendre(&alpha_i, prime)?;
                let g = self.prime_sum(prime)?;
                value = value.mul(&if sign == 1 { g } else { g.neg() });
            }
        }
        let value = value.scale(&num_traits::pow(BigInt::from(fq.q()), q_exp as usize));
        self.unshifted.lock().unwrap().insert(key, value.clone());
        Ok(value)
    }

    /// Shift `l` away, normalize `beta` to monic, split over the prime powers,
    /// power-reduce, and Legendre-reduce to `G(1, 0; P)`.
    pub fn fast(&self, spec: &GaussSpec) -> Result<CycloInt> {
        spec.require_coprime()?;
        let fq = &self.fq;
        let k = shift_exponent(fq, spec)?;
        let (unit, beta) = fq.poly_monic(&spec.beta)?;
        let alpha = fq.poly_rem(&fq.poly_scale(&spec.alpha, fq.inv(unit)?), &beta)?;
        let base = self.unshifted(&alpha, &beta)?;
        Ok(if k == 0 { base } else { base.mul_zeta(k as i64) })
    }
}

/// [`GaussEngine::fast`] with a throwaway engine.
pub fn gauss_fast(fq: &Fq, spec: &GaussSpec, cap: usize) -> Result<CycloInt> {
    GaussEngine::new(fq, cap).fast(spec)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaussReport {
    pub alpha: String,
    pub l: String,
    pub beta: String,
    pub value: String,
    pub abs2: String,
    pub method: String,
}

impl GaussReport {
    pub fn new(fq: &Fq, spec: &GaussSpec, value: &CycloInt, method: &str) -> GaussReport {
        let a2 = value.abs2();
        GaussReport {
            alpha: fq.format_poly(&spec.alpha),
            l: fq.format_poly(&spec.l),
            beta: fq.format_poly(&spec.beta),
            value: value.format(),
            abs2: a2.as_integer().map(|n| n.to_string()).unwrap_or_else(|| a2.format()),
            method: method.to_string(),
        }
    }
}

/// Tallies from an exhaustive pass over `(alpha, l, beta)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdentityTally {
    pub q: u32,
    pub max_deg: usize,
    pub specs: u64,
    pub fast_mismatches: u64,
    pub modulus_law_failures: u64,
    pub shift_failures: u64,
    pub split_failures: u64,
    pub power_failures: u64,
    pub legendre_failures: u64,
}

impl IdentityTally {
    pub fn all_hold(&self) -> bool {
        self.fast_mismatches == 0
            && self.modulus_law_failures == 0
            && self.shift_failures == 0
            && self.split_failures == 0
            && self.power_failures == 0
            && self.legendre_failures == 0
    }
}

/// Every monic `beta` with `deg beta <= max_deg`, every `alpha` prime to it
/// with `deg alpha < deg beta`, every `l` with `deg l < deg beta`: compares the
/// identity chain with direct summation and checks `|G|^2 = q^(deg beta)`.
/// The standalone lemma checks run on the same moduli.
pub fn verify_identities(fq: &Fq, max_deg: usize) -> Result<IdentityTally> {
    let q = fq.q();
    let mut tally = IdentityTally { q, max_deg, ..Default::default() };
    let engine = GaussEngine::new(fq, max_deg.max(1));
    for m in 0..=max_deg {
        let q_pow = num_traits::pow(BigInt::from(q), m);
        for beta in fq.monic_of_degree(m).collect::<Vec<_>>() {
            let table = BruteTable::new(fq, &beta, max_deg.max(1))?;
            let fac = fq.factor(&beta)?;
            for alpha in fq.polys_below(m).filter(|a| fq.coprime(a, &beta)) {
                let brute = table.all_l(&alpha);
                let zero_l = &brute[0];
                for (li, b) in brute.iter().enumerate() {
                    let l = fq.poly_from_index(li as u64);
                    let spec = GaussSpec::new(fq, alpha.clone(), l, beta.clone())?;
                    tally.specs += 1;
                    if engine.fast(&spec)? != *b {
                        tally.fast_mismatches += 1;
                    }
                    if b.abs2().as_integer() != Some(q_pow.clone()) {
                        tally.modulus_law_failures += 1;
                    }
                    let (phase, _) = gauss_shift_to_zero(fq, &spec)?;
                    if phase.mul(zero_l) != *b {
                        tally.shift_failures += 1;
                    }
                }
                tally.split_failures += split_check(fq, &alpha, &beta, &fac, &brute)?;
                tally.power_failures += power_check(fq, &alpha, &beta, zero_l)?;
                if fac.factors.len() == 1 && fac.factors[0].1 == 1 {
                    let sign = gauss_legendre_reduce(fq, &alpha, &beta)?;
                    let g1 = engine.prime_sum(&beta)?;
                    let expect = if sign == 1 { g1 } else { g1.neg() };
                    if expect != *zero_l {
                        tally.legendre_failures += 1;
                    }
                }
            }
        }
    }
    Ok(tally)
}

fn split_check(
    fq: &Fq,
    alpha: &Poly,
    beta: &Poly,
    fac: &Factorization,
    brute: &[CycloInt],
) -> Result<u64> {
    if fac.factors.len() < 2 {
        return Ok(0);
    }
    let (p0, v0) = &fac.factors[0];
    let beta1 = fq.poly_pow(p0, *v0);
    let beta2 = fq.poly_quo(beta, &beta1)?;
    let mut failures = 0;
    // A spread of linear terms keeps this check proportionate to the rest.
    for li in (0..brute.len()).step_by(7.max(brute.len() / 16)) {
        let l = fq.poly_from_index(li as u64);
        let spec = GaussSpec::new(fq, alpha.clone(), l, beta.clone())?;
        let (s1, s2) = gauss_split(fq, &spec, &beta1, &beta2)?;
        let prod = gauss_brute(fq, &s1, usize::MAX)?.mul(&gauss_brute(fq, &s2, usize::MAX)?);
        if prod != brute[li] {
            failures += 1;
        }
    }
    Ok(failures)
}

fn power_check(fq: &Fq, alpha: &Poly, beta: &Poly, zero_l: &CycloInt) -> Result<u64> {
    let spec = GaussSpec::new(fq, alpha.clone(), Poly::zero(), beta.clone())?;
    match gauss_power_reduce(fq, &spec) {
        Ok((deg, reduced)) => {
            let lower = gauss_brute(fq, &reduced, usize::MAX)?;
            let scaled = lower.scale(&num_traits::pow(BigInt::from(fq.q()), deg as usize));
            Ok(u64::from(scaled != *zero_l))
        }
        Err(Error::NotAPower) => Ok(0),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests;
