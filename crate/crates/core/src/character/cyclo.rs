use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Element of `Z[zeta_p]` on the basis `1, zeta, .., zeta^(p-2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloInt {
    p: u32,
    coeffs: Vec<BigInt>,
}

impl CycloInt {
    pub fn zero(p: u32) -> CycloInt {
        CycloInt { p, coeffs: vec![BigInt::zero(); p as usize - 1] }
    }

    pub fn one(p: u32) -> CycloInt {
        CycloInt::from_int(p, 1)
    }

    pub fn from_int(p: u32, n: impl Into<BigInt>) -> CycloInt {
        let mut z = CycloInt::zero(p);
        z.coeffs[0] = n.into();
        z
    }

    /// `zeta^k`.
    pub fn zeta_pow(p: u32, k: i64) -> CycloInt {
        let mut counts = vec![0i64; p as usize];
        counts[k.rem_euclid(p as i64) as usize] = 1;
        CycloInt::from_exponent_counts(p, &counts)
    }

    /// `sum_k counts[k] zeta^k` for `k` in `0..p`.
    pub fn from_exponent_counts(p: u32, counts: &[i64]) -> CycloInt {
        assert_eq!(counts.len(), p as usize);
        let top = counts[p as usize - 1];
        CycloInt {
            p,
            coeffs: counts[..p as usize - 1].iter().map(|&c| BigInt::from(c - top)).collect(),
        }
    }

    /// `sum_k counts[k] zeta^k` with arbitrary-size counts.
    pub fn from_big_exponent_counts(p: u32, counts: &[BigInt]) -> CycloInt {
        assert_eq!(counts.len(), p as usize);
        let top = &counts[p as usize - 1];
        CycloInt {
            p,
            coeffs: counts[..p as usize - 1].iter().map(|c| c - top).collect(),
        }
    }

    /// Coefficients on `1, .., zeta^(p-2)` (length `p - 1`).
    pub fn from_reduced(p: u32, coeffs: Vec<BigInt>) -> Result<CycloInt> {
        if coeffs.len() != p as usize - 1 {
            return Err(Error::BadArgs(format!("expected {} coefficients", p - 1)));
        }
        Ok(CycloInt { p, coeffs })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficients on `1, .., zeta^(p-1)` with the last one zero.
    fn full(&self) -> Vec<BigInt> {
        let mut v = self.coeffs.clone();
        v.push(BigInt::zero());
        v
    }

    fn check(&self, other: &CycloInt) {
        assert_eq!(self.p, other.p, "mixed cyclotomic rings");
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The value as a rational integer, when it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, other: &CycloInt) -> CycloInt {
        self.check(other);
        CycloInt {
            p: self.p,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &CycloInt) -> CycloInt {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycloInt {
        CycloInt { p: self.p, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> CycloInt {
        CycloInt { p: self.p, coeffs: self.coeffs.iter().map(|a| a * k).collect() }
    }

    pub fn mul(&self, other: &CycloInt) -> CycloInt {
        self.check(other);
        let p = self.p as usize;
        let mut acc = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    acc[(i + j) % p] += a * b;
                }
            }
        }
        CycloInt::from_big_exponent_counts(self.p, &acc)
    }

    /// Multiplication by `zeta^k`.
    pub fn mul_zeta(&self, k: i64) -> CycloInt {
        let p = self.p as usize;
        let shift = k.rem_euclid(p as i64) as usize;
        let full = self.full();
        let mut acc = vec![BigInt::zero(); p];
        for (i, c) in full.into_iter().enumerate() {
            acc[(i + shift) % p] = c;
        }
        CycloInt::from_big_exponent_counts(self.p, &acc)
    }

    pub fn pow(&self, mut n: u32) -> CycloInt {
        let mut base = self.clone();
        let mut acc = CycloInt::one(self.p);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// Complex conjugation, `zeta^k -> zeta^(p-k)`.
    pub fn conj(&self) -> CycloInt {
        let p = self.p as usize;
        let mut acc = vec![BigInt::zero(); p];
        for (i, c) in self.coeffs.iter().enumerate() {
            acc[(p - i) % p] = c.clone();
        }
        CycloInt::from_big_exponent_counts(self.p, &acc)
    }

    /// `z * conj(z)`.
    pub fn abs2(&self) -> CycloInt {
        self.mul(&self.conj())
    }

    /// Galois action `zeta -> zeta^a`, `a` prime to `p`.
    pub fn galois(&self, a: u32) -> CycloInt {
        let p = self.p as usize;
        let mut acc = vec![BigInt::zero(); p];
        for (i, c) in self.coeffs.iter().enumerate() {
            acc[(i * a as usize) % p] += c;
        }
        CycloInt::from_big_exponent_counts(self.p, &acc)
    }

    pub fn format(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("p={};coeffs={}", self.p, parts.join(","))
    }

    pub fn parse(s: &str) -> Result<CycloInt> {
        let (ph, ch) = s
            .trim()
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("expected p=..;coeffs=.. in {s:?}")))?;
        let p: u32 = ph
            .strip_prefix("p=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad prime field {ph:?}")))?;
        if p < 3 {
            return Err(Error::Parse(format!("p = {p} too small")));
        }
        let list = ch
            .strip_prefix("coeffs=")
            .ok_or_else(|| Error::Parse(format!("bad coeffs field {ch:?}")))?;
        let coeffs = list
            .split(',')
            .map(|c| c.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad integer {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        CycloInt::from_reduced(p, coeffs).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Sum of absolute values of the coefficients; bounds `|z|` under any embedding.
    pub fn l1(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    pub fn is_one(&self) -> bool {
        self.as_integer().is_some_and(|n| n.is_one())
    }
}

impl fmt::Display for CycloInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}
