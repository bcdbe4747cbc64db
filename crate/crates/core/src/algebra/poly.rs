use std::cmp::Ordering;

use num_bigint::BigUint;

use crate::algebra::field::{FieldElem, Fq};
use crate::error::{Error, Result};

/// Dense polynomial over `F_q`, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<FieldElem>,
}

/// Canonical order: degree first, then lexicographic on ascending coefficients.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(FieldElem::ONE)
    }

    /// The variable `t`.
    pub fn t() -> Poly {
        Poly::monomial(FieldElem::ONE, 1)
    }

    pub fn constant(c: FieldElem) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: FieldElem, k: usize) -> Poly {
        let mut v = vec![FieldElem::ZERO; k + 1];
        v[k] = c;
        Poly::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<FieldElem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Coefficients given as integers, reduced into the prime subfield.
    pub fn from_ints(fq: &Fq, ints: &[i64]) -> Poly {
        Poly::from_coeffs(ints.iter().map(|&n| fq.from_int(n)).collect())
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElem> {
        self.coeffs
    }

    /// `None` encodes the degree of the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree as a signed integer, with `i64::MIN` standing in for `-inf`.
    pub fn deg_i64(&self) -> i64 {
        self.deg().map_or(i64::MIN, |d| d as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FieldElem::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> FieldElem {
        self.coeffs.last().copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == FieldElem::ONE
    }
}

impl Fq {
    pub fn poly_add(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.coeffs.len().max(b.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.add(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn poly_sub(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.coeffs.len().max(b.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.sub(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn poly_neg(&self, a: &Poly) -> Poly {
        Poly::from_coeffs(a.coeffs.iter().map(|&c| self.neg(c)).collect())
    }

    pub fn poly_scale(&self, a: &Poly, c: FieldElem) -> Poly {
        Poly::from_coeffs(a.coeffs.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn poly_mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FieldElem::ZERO; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn poly_pow(&self, a: &Poly, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = self.poly_mul(&acc, a);
        }
        acc
    }

    /// Euclidean division `a = quo*b + rem` with `deg rem < deg b`.
    pub fn poly_divmod(&self, a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
        let db = b.deg().ok_or(Error::DivisionByZero)?;
        let lc_inv = self.inv(b.lc())?;
        let mut rem = a.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(), a.clone()));
        }
        let mut quo = vec![FieldElem::ZERO; rem.len() - db];
        for k in (db..rem.len()).rev() {
            let c = rem[k];
            if c.is_zero() {
                continue;
            }
            let f = self.mul(c, lc_inv);
            quo[k - db] = f;
            for (i, &bc) in b.coeffs.iter().enumerate() {
                let idx = k - db + i;
                rem[idx] = self.sub(rem[idx], self.mul(f, bc));
            }
        }
        rem.truncate(db);
        Ok((Poly::from_coeffs(quo), Poly::from_coeffs(rem)))
    }

    pub fn poly_rem(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        Ok(self.poly_divmod(a, b)?.1)
    }

    pub fn poly_quo(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        Ok(self.poly_divmod(a, b)?.0)
    }

    /// `Some(a / b)` when `b` divides `a` exactly.
    pub fn poly_div_exact(&self, a: &Poly, b: &Poly) -> Result<Option<Poly>> {
        let (q, r) = self.poly_divmod(a, b)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Splits off the leading coefficient: `a = lc * monic`.
    pub fn poly_monic(&self, a: &Poly) -> Result<(FieldElem, Poly)> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        let lc = a.lc();
        Ok((lc, self.poly_scale(a, self.inv(lc)?)))
    }

    /// Extended gcd: `(g, s, u)` with `s*a + u*b = g`, `g` monic.
    pub fn poly_xgcd(&self, a: &Poly, b: &Poly) -> Result<(Poly, Poly, Poly)> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut u0, mut u1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = self.poly_divmod(&r0, &r1)?;
            let s2 = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            let u2 = self.poly_sub(&u0, &self.poly_mul(&q, &u1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            u0 = std::mem::replace(&mut u1, u2);
        }
        let c = self.inv(r0.lc())?;
        Ok((self.poly_scale(&r0, c), self.poly_scale(&s0, c), self.poly_scale(&u0, c)))
    }

    /// Monic gcd; the gcd of two zeros is reported as zero.
    pub fn poly_gcd(&self, a: &Poly, b: &Poly) -> Poly {
        match self.poly_xgcd(a, b) {
            Ok((g, _, _)) => g,
            Err(_) => Poly::zero(),
        }
    }

    pub fn coprime(&self, a: &Poly, b: &Poly) -> bool {
        self.poly_gcd(a, b).is_one()
    }

    /// Inverse of `a` modulo `m`.
    pub fn poly_inv_mod(&self, a: &Poly, m: &Poly) -> Result<Poly> {
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = self.poly_xgcd(a, m)?;
        if !g.is_one() {
            return Err(Error::NotCoprime);
        }
        self.poly_rem(&s, m)
    }

    pub fn poly_mulmod(&self, a: &Poly, b: &Poly, m: &Poly) -> Result<Poly> {
        self.poly_rem(&self.poly_mul(a, b), m)
    }

    pub fn poly_powmod(&self, a: &Poly, exp: &BigUint, m: &Poly) -> Result<Poly> {
        let mut acc = self.poly_rem(&Poly::one(), m)?;
        let base = self.poly_rem(a, m)?;
        for i in (0..exp.bits()).rev() {
            acc = self.poly_mulmod(&acc, &acc, m)?;
            if exp.bit(i) {
                acc = self.poly_mulmod(&acc, &base, m)?;
            }
        }
        Ok(acc)
    }

    pub fn poly_eval(&self, a: &Poly, x: FieldElem) -> FieldElem {
        a.coeffs
            .iter()
            .rev()
            .fold(FieldElem::ZERO, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Rabin's test for monic irreducibility.
    pub fn is_irreducible(&self, f: &Poly) -> bool {
        let d = match f.deg() {
            Some(d) if d >= 1 => d,
            _ => return false,
        };
        if d == 1 {
            return true;
        }
        let q = BigUint::from(self.q());
        let t = Poly::t();
        // t^(q^k) mod f by repeated q-th powering
        let frob = |k: usize| -> Poly {
            let mut acc = self.poly_rem(&t, f).unwrap();
            for _ in 0..k {
                acc = self.poly_powmod(&acc, &q, f).unwrap();
            }
            acc
        };
        if !self.poly_sub(&frob(d), &t).is_zero() {
            return false;
        }
        let mut n = d;
        let mut r = 2;
        let mut primes = Vec::new();
        while r * r <= n {
            if n % r == 0 {
                primes.push(r);
                while n % r == 0 {
                    n /= r;
                }
            }
            r += 1;
        }
        if n > 1 {
            primes.push(n);
        }
        primes.into_iter().all(|r| {
            let h = self.poly_sub(&frob(d / r), &t);
            self.poly_gcd(&h, f).is_one()
        })
    }

    /// Polynomial with ascending coefficient digits of `idx` in base `q`.
    pub fn poly_from_index(&self, mut idx: u64) -> Poly {
        let q = self.q() as u64;
        let mut v = Vec::new();
        while idx > 0 {
            v.push(FieldElem((idx % q) as u32));
            idx /= q;
        }
        Poly::from_coeffs(v)
    }

    pub fn poly_index(&self, a: &Poly) -> u64 {
        let q = self.q() as u64;
        a.coeffs.iter().rev().fold(0u64, |acc, c| acc * q + c.0 as u64)
    }

    /// All polynomials of degree `< n` (the residues modulo a degree-`n` modulus),
    /// in index order.
    pub fn polys_below(&self, n: usize) -> impl Iterator<Item = Poly> + '_ {
        let count = (self.q() as u64).pow(n as u32);
        (0..count).map(move |i| self.poly_from_index(i))
    }

    /// Monic polynomials of degree exactly `d`, in index order.
    pub fn monic_of_degree(&self, d: usize) -> impl Iterator<Item = Poly> + '_ {
        let count = (self.q() as u64).pow(d as u32);
        (0..count).map(move |i| {
            let mut c = self.poly_from_index(i).into_coeffs();
            c.resize(d, FieldElem::ZERO);
            c.push(FieldElem::ONE);
            Poly::from_coeffs(c)
        })
    }

    /// Monic polynomials of degree `<= d`.
    pub fn monic_up_to(&self, d: usize) -> impl Iterator<Item = Poly> + '_ {
        (0..=d).flat_map(move |k| self.monic_of_degree(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Fq {
        Fq::prime(3).unwrap()
    }

    #[test]
    fn divmod_examples() {
        let f = f3();
        let a = Poly::from_ints(&f, &[1, 0, 1]);
        let (q, r) = f.poly_divmod(&a, &Poly::t()).unwrap();
        assert_eq!(q, Poly::t());
        assert_eq!(r, Poly::one());
        let (q, r) = f.poly_divmod(&a, &Poly::one()).unwrap();
        assert_eq!((q, r), (a.clone(), Poly::zero()));
        let t2 = Poly::from_ints(&f, &[0, 0, 1]);
        let (q, r) = f.poly_divmod(&Poly::t(), &t2).unwrap();
        assert_eq!((q, r), (Poly::zero(), Poly::t()));
        assert_eq!(f.poly_divmod(&a, &Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn divmod_reconstructs_exhaustively() {
        let f = f3();
        let all: Vec<Poly> = f.polys_below(4).collect();
        for a in &all {
            for b in all.iter().filter(|b| !b.is_zero()).step_by(3) {
                let (q, r) = f.poly_divmod(a, b).unwrap();
                assert!(r.deg_i64() < b.deg_i64());
                assert_eq!(f.poly_add(&f.poly_mul(&q, b), &r), *a);
            }
        }
    }

    #[test]
    fn xgcd_bezout_holds() {
        let f = Fq::prime(5).unwrap();
        let all: Vec<Poly> = f.polys_below(3).collect();
        for a in all.iter().step_by(2) {
            for b in all.iter().step_by(3) {
                if a.is_zero() && b.is_zero() {
                    assert_eq!(f.poly_xgcd(a, b), Err(Error::BothZero));
                    continue;
                }
                let (g, s, u) = f.poly_xgcd(a, b).unwrap();
                assert!(g.is_monic());
                let lhs = f.poly_add(&f.poly_mul(&s, a), &f.poly_mul(&u, b));
                assert_eq!(lhs, g);
                assert!(f.poly_rem(a, &g).unwrap().is_zero());
                assert!(f.poly_rem(b, &g).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn xgcd_examples() {
        let f = f3();
        let (g, _, _) = f.poly_xgcd(&Poly::t(), &Poly::from_ints(&f, &[1, 1])).unwrap();
        assert!(g.is_one());
        let a = Poly::from_ints(&f, &[1, 2, 2]);
        let (g, _, _) = f.poly_xgcd(&a, &a).unwrap();
        assert_eq!(g, f.poly_monic(&a).unwrap().1);
        // 4 = 1 in characteristic 3
        assert_eq!(f.from_int(4), f.one());
        assert_eq!(f.inv(f.from_int(4)).unwrap(), f.one());
    }

    #[test]
    fn ordering_is_degree_then_lex() {
        let f = f3();
        let mut v = [Poly::from_ints(&f, &[0, 1]),
            Poly::from_ints(&f, &[2]),
            Poly::from_ints(&f, &[1, 1]),
            Poly::zero(),
            Poly::from_ints(&f, &[0, 0, 1])];
        v.sort();
        assert_eq!(v[0], Poly::zero());
        assert_eq!(v[1], Poly::from_ints(&f, &[2]));
        assert_eq!(v[2], Poly::from_ints(&f, &[0, 1]));
        assert_eq!(v[3], Poly::from_ints(&f, &[1, 1]));
    }

    #[test]
    fn rabin_matches_small_cases() {
        let f = f3();
        assert!(f.is_irreducible(&Poly::from_ints(&f, &[1, 0, 1])));
        assert!(!f.is_irreducible(&Poly::from_ints(&f, &[2, 0, 1])));
        // t^3 + 2t + 1 has no roots in F_3
        assert!(f.is_irreducible(&Poly::from_ints(&f, &[1, 2, 0, 1])));
        let count = f.monic_of_degree(2).filter(|p| f.is_irreducible(p)).count();
        assert_eq!(count, 3);
        let count = f.monic_of_degree(3).filter(|p| f.is_irreducible(p)).count();
        assert_eq!(count, 8);
    }
}
