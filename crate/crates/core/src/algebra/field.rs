use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::algebra::poly::Poly;
use crate::error::{Error, Result};

/// Largest field size for which per-element lookup tables are built.
pub const MAX_Q: u32 = 1 << 20;
/// Largest extension field size (addition and multiplication are tabulated).
pub const MAX_EXT_Q: u32 = 1024;

/// Parameters of a finite field `F_q`, `q = p^e`, `p` odd.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    /// Ascending coefficients over `F_p` of a monic irreducible of degree `e`.
    /// Absent for prime fields.
    pub modulus: Option<Vec<u32>>,
}

impl FieldSpec {
    pub fn prime(p: u32) -> Self {
        FieldSpec { p, e: 1, modulus: None }
    }

    pub fn extension(p: u32, modulus: Vec<u32>) -> Self {
        let e = modulus.len().saturating_sub(1) as u32;
        FieldSpec { p, e, modulus: Some(modulus) }
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.e)
    }
}

/// An element of `F_q`, stored as the integer `sum_i d_i p^i` of its
/// representative sequence `(d_0, .., d_{e-1})` in the polynomial basis.
///
/// The derived order is the fixed element order used for canonical choices
/// (square roots, polynomial sorting).
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(pub(crate) u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Inner {
    spec: FieldSpec,
    p: u32,
    e: u32,
    q: u32,
    // q*q tables, extension fields only
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    trace: Vec<u32>,
    sqrt: Vec<u32>,
    is_square: Vec<bool>,
    irreducibles: Mutex<HashMap<usize, Arc<Vec<Poly>>>>,
}

/// A finite field of odd characteristic. Cheap to clone.
#[derive(Clone)]
pub struct Fq(Arc<Inner>);

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fq(q={}, p={}, e={})", self.0.q, self.0.p, self.0.e)
    }
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Fq {
    pub fn new(spec: FieldSpec) -> Result<Fq> {
        let p = spec.p;
        if p == 2 {
            return Err(Error::BadField("characteristic 2 is not supported".into()));
        }
        if !is_prime(p) {
            return Err(Error::BadField(format!("{p} is not an odd prime")));
        }
        if spec.e == 0 {
            return Err(Error::BadField("extension degree must be >= 1".into()));
        }
        let q64 = spec.q();
        if q64 > MAX_Q as u64 {
            return Err(Error::BadField(format!("q = {q64} exceeds {MAX_Q}")));
        }
        let q = q64 as u32;
        if spec.e == 1 {
            if let Some(m) = &spec.modulus {
                if m.len() != 2 {
                    return Err(Error::BadField("prime field modulus must be linear".into()));
                }
            }
            return Ok(Self::build(FieldSpec::prime(p), None));
        }
        if q > MAX_EXT_Q {
            return Err(Error::BadField(format!(
                "extension fields are limited to q <= {MAX_EXT_Q}"
            )));
        }
        let modulus = spec
            .modulus
            .clone()
            .ok_or_else(|| Error::BadField("extension field needs a modulus".into()))?;
        if modulus.len() != spec.e as usize + 1 || *modulus.last().unwrap() != 1 {
            return Err(Error::BadField("modulus must be monic of degree e".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadField("modulus coefficients must lie in 0..p".into()));
        }
        let fp = Fq::new(FieldSpec::prime(p))?;
        let mpoly = Poly::from_ints(&fp, &modulus.iter().map(|&c| c as i64).collect::<Vec<_>>());
        if !fp.is_irreducible(&mpoly) {
            return Err(Error::BadField("modulus is not irreducible over F_p".into()));
        }
        Ok(Self::build(spec, Some(modulus)))
    }

    /// Shorthand for the prime field `F_p`.
    pub fn prime(p: u32) -> Result<Fq> {
        Fq::new(FieldSpec::prime(p))
    }

    fn build(spec: FieldSpec, modulus: Option<Vec<u32>>) -> Fq {
        let p = spec.p;
        let e = spec.e;
        let q = spec.q() as u32;
        let mut inner = Inner {
            spec,
            p,
            e,
            q,
            add: Vec::new(),
            mul: Vec::new(),
            neg: Vec::new(),
            inv: Vec::new(),
            trace: Vec::new(),
            sqrt: Vec::new(),
            is_square: Vec::new(),
            irreducibles: Mutex::new(HashMap::new()),
        };
        if let Some(m) = &modulus {
            let digits = |mut x: u32| {
                let mut d = vec![0u32; e as usize];
                for slot in d.iter_mut() {
                    *slot = x % p;
                    x /= p;
                }
                d
            };
            let undigits = |d: &[u32]| d.iter().rev().fold(0u32, |acc, &c| acc * p + c);
            let qq = q as usize;
            inner.add = vec![0; qq * qq];
            inner.mul = vec![0; qq * qq];
            for a in 0..q {
                let da = digits(a);
                for b in 0..q {
                    let db = digits(b);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    inner.add[(a * q + b) as usize] = undigits(&s) as u16;
                    // schoolbook product then reduction by the monic modulus
                    let mut prod = vec![0u64; 2 * e as usize - 1];
                    for (i, &x) in da.iter().enumerate() {
                        for (j, &y) in db.iter().enumerate() {
                            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
                        }
                    }
                    for k in (e as usize..prod.len()).rev() {
                        let c = prod[k];
                        if c != 0 {
                            for (i, &mc) in m.iter().enumerate().take(e as usize) {
                                let idx = k - e as usize + i;
                                prod[idx] = (prod[idx] + (p as u64 - c) * mc as u64) % p as u64;
                            }
                            prod[k] = 0;
                        }
                    }
                    let r: Vec<u32> = prod[..e as usize].iter().map(|&c| c as u32).collect();
                    inner.mul[(a * q + b) as usize] = undigits(&r) as u16;
                }
            }
        }
        let fq = Fq(Arc::new(inner));
        let mut neg = vec![0u32; q as usize];
        let mut inv = vec![0u32; q as usize];
        let mut trace = vec![0u32; q as usize];
        let mut sqrt = vec![u32::MAX; q as usize];
        let mut is_square = vec![false; q as usize];
        for a in 0..q {
            let x = FieldElem(a);
            neg[a as usize] = fq.sub(FieldElem::ZERO, x).0;
            // ascending scan keeps the smaller root
            let s = fq.mul(x, x).0 as usize;
            if sqrt[s] == u32::MAX {
                sqrt[s] = a;
                is_square[s] = true;
            }
            let mut acc = FieldElem::ZERO;
            let mut pw = x;
            for _ in 0..e {
                acc = fq.add(acc, pw);
                pw = fq.pow(pw, p as u64);
            }
            debug_assert!(acc.0 < p, "trace must land in the prime field");
            trace[a as usize] = acc.0;
        }
        for a in 1..q {
            let x = FieldElem(a);
            inv[a as usize] = fq.pow(x, q as u64 - 2).0;
        }
        let mut inner = Arc::try_unwrap(fq.0).ok().expect("unique during construction");
        inner.neg = neg;
        inner.inv = inv;
        inner.trace = trace;
        inner.sqrt = sqrt;
        inner.is_square = is_square;
        Fq(Arc::new(inner))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn e(&self) -> u32 {
        self.0.e
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    /// All elements in the fixed order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.0.q).map(FieldElem)
    }

    /// Nonzero elements in the fixed order.
    pub fn units(&self) -> impl Iterator<Item = FieldElem> {
        (1..self.0.q).map(FieldElem)
    }

    pub fn elem(&self, index: u32) -> Result<FieldElem> {
        if index < self.0.q {
            Ok(FieldElem(index))
        } else {
            Err(Error::BadArgs(format!("{index} is not an element index of F_{}", self.0.q)))
        }
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// Representative sequence `(d_0, .., d_{e-1})` over `Z/p`.
    pub fn rep(&self, a: FieldElem) -> Vec<u32> {
        let mut x = a.0;
        (0..self.0.e)
            .map(|_| {
                let d = x % self.0.p;
                x /= self.0.p;
                d
            })
            .collect()
    }

    pub fn from_rep(&self, rep: &[u32]) -> Result<FieldElem> {
        if rep.len() != self.0.e as usize || rep.iter().any(|&d| d >= self.0.p) {
            return Err(Error::Parse(format!("bad representative {rep:?}")));
        }
        Ok(FieldElem(rep.iter().rev().fold(0, |acc, &d| acc * self.0.p + d)))
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let i = &self.0;
        if i.e == 1 {
            let s = a.0 + b.0;
            FieldElem(if s >= i.p { s - i.p } else { s })
        } else {
            FieldElem(i.add[(a.0 * i.q + b.0) as usize] as u32)
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let i = &self.0;
        if i.e == 1 {
            FieldElem(if a.0 == 0 { 0 } else { i.p - a.0 })
        } else if i.neg.is_empty() {
            // only reachable while the tables are being built
            let mut r = FieldElem::ZERO;
            for x in 0..i.q {
                if self.add(a, FieldElem(x)).0 == 0 {
                    r = FieldElem(x);
                    break;
                }
            }
            r
        } else {
            FieldElem(i.neg[a.0 as usize])
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let i = &self.0;
        if i.e == 1 {
            FieldElem(((a.0 as u64 * b.0 as u64) % i.p as u64) as u32)
        } else {
            FieldElem(i.mul[(a.0 * i.q + b.0) as usize] as u32)
        }
    }

    pub fn pow(&self, a: FieldElem, mut n: u64) -> FieldElem {
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(FieldElem(self.0.inv[a.0 as usize]))
        }
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Absolute trace `F_q -> F_p`, as a residue in `0..p`.
    #[inline]
    pub fn trace(&self, a: FieldElem) -> u32 {
        self.0.trace[a.0 as usize]
    }

    pub fn is_square(&self, a: FieldElem) -> bool {
        self.0.is_square[a.0 as usize]
    }

    /// The smaller (in the fixed order) of the two square roots.
    pub fn sqrt(&self, a: FieldElem) -> Result<FieldElem> {
        if self.is_square(a) {
            Ok(FieldElem(self.0.sqrt[a.0 as usize]))
        } else {
            Err(Error::NotASquare(format!("element {} of F_{}", a.0, self.0.q)))
        }
    }

    /// Quadratic character on `F_q^*`: +1 on squares, -1 otherwise.
    pub fn s_sign(&self, c: FieldElem) -> Result<i32> {
        if c.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(if self.is_square(c) { 1 } else { -1 })
    }

    pub(crate) fn irreducible_cache(&self) -> &Mutex<HashMap<usize, Arc<Vec<Poly>>>> {
        &self.0.irreducibles
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> Fq {
        Fq::new(FieldSpec::extension(3, vec![1, 0, 1])).unwrap()
    }

    #[test]
    fn trace_on_prime_field_is_identity() {
        let f = Fq::prime(7).unwrap();
        for a in f.elements() {
            assert_eq!(f.trace(a), a.index());
        }
    }

    #[test]
    fn trace_in_f9() {
        let f = f9();
        let x = f.from_rep(&[0, 1]).unwrap();
        assert_eq!(f.trace(x), 0);
        assert_eq!(f.trace(f.one()), 2);
    }

    #[test]
    fn x_squared_is_minus_one_in_f9() {
        let f = f9();
        let x = f.from_rep(&[0, 1]).unwrap();
        assert_eq!(f.mul(x, x), f.from_int(-1));
    }

    #[test]
    fn s_sign_values() {
        let f3 = Fq::prime(3).unwrap();
        assert_eq!(f3.s_sign(f3.from_int(1)).unwrap(), 1);
        assert_eq!(f3.s_sign(f3.from_int(2)).unwrap(), -1);
        assert_eq!(f3.s_sign(f3.zero()), Err(Error::ZeroInput));
        let f = f9();
        let squares: Vec<_> = f.units().map(|a| f.mul(a, a)).collect();
        for s in squares {
            assert_eq!(f.s_sign(s).unwrap(), 1);
        }
        let count = f.units().filter(|&a| f.s_sign(a).unwrap() == 1).count();
        assert_eq!(count, 4);
    }

    #[test]
    fn canonical_sqrt_is_smaller_root() {
        let f = Fq::prime(5).unwrap();
        assert_eq!(f.sqrt(f.from_int(4)).unwrap(), f.from_int(2));
        assert_eq!(f.sqrt(f.from_int(1)).unwrap(), f.from_int(1));
        assert!(f.sqrt(f.from_int(2)).is_err());
    }

    #[test]
    fn inverses_and_field_axioms_f9() {
        let f = f9();
        for a in f.units() {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.sub(f.add(a, b), b), a);
            }
        }
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(Fq::prime(2).is_err());
        assert!(Fq::prime(9).is_err());
        assert!(Fq::new(FieldSpec::extension(3, vec![2, 0, 1])).is_err()); // x^2 - 1
        assert!(Fq::new(FieldSpec { p: 3, e: 2, modulus: None }).is_err());
    }
}
