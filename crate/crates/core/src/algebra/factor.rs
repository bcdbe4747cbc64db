use std::sync::Arc;

use num_bigint::BigUint;

use crate::algebra::field::{FieldElem, Fq};
use crate::algebra::poly::Poly;
use crate::error::{Error, Result};

/// Above this many monic candidates the sieve table is not allocated and
/// each candidate is tested individually.
const SIEVE_LIMIT: u64 = 1 << 24;

/// Domain split for enumerations: element `i` belongs to this worker iff
/// `i % stride == start`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub start: usize,
    pub stride: usize,
}

impl Partition {
    pub const ALL: Partition = Partition { start: 0, stride: 1 };

    pub fn contains(&self, i: usize) -> bool {
        self.stride <= 1 || i % self.stride == self.start
    }
}

/// `h = unit * prod P_i^{v_i}` with the `P_i` monic irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElem,
    /// Sorted in the canonical polynomial order, pairwise distinct.
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn recompose(&self, fq: &Fq) -> Poly {
        self.factors.iter().fold(Poly::constant(self.unit), |acc, (p, v)| {
            fq.poly_mul(&acc, &fq.poly_pow(p, *v))
        })
    }

    pub fn monic_divisor_count(&self) -> u128 {
        self.factors.iter().map(|(_, v)| *v as u128 + 1).product()
    }

    /// Gcd of the multiplicities, or 0 for a unit.
    pub fn multiplicity_gcd(&self) -> u32 {
        self.factors
            .iter()
            .fold(0, |g, (_, v)| num_integer::Integer::gcd(&g, v))
    }
}

/// Number of monic irreducibles of degree `d` over `F_q`, by Moebius inversion.
pub fn count_monic_irreducibles(q: u64, d: u32) -> u128 {
    if d == 0 {
        return 0;
    }
    let mut total: i128 = 0;
    for k in 1..=d {
        if d.is_multiple_of(k) {
            let mu = mobius(k);
            if mu != 0 {
                total += mu as i128 * (q as i128).pow(d / k);
            }
        }
    }
    (total / d as i128) as u128
}

fn mobius(mut n: u32) -> i32 {
    let mut sign = 1;
    let mut r = 2;
    while r * r <= n {
        if n.is_multiple_of(r) {
            n /= r;
            if n.is_multiple_of(r) {
                return 0;
            }
            sign = -sign;
        }
        r += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

impl Fq {
    /// All monic irreducibles of degree `d`, sorted canonically. Cached per field.
    pub fn monic_irreducibles(&self, d: usize) -> Arc<Vec<Poly>> {
        if let Some(v) = self.irreducible_cache().lock().unwrap().get(&d) {
            return v.clone();
        }
        let list = Arc::new(self.sieve_irreducibles(d));
        self.irreducible_cache()
            .lock()
            .unwrap()
            .insert(d, list.clone());
        list
    }

    /// The slice of `monic_irreducibles(d)` owned by one worker.
    pub fn monic_irreducibles_part(&self, d: usize, part: Partition) -> Vec<Poly> {
        self.monic_irreducibles(d)
            .iter()
            .enumerate()
            .filter(|(i, _)| part.contains(*i))
            .map(|(_, p)| p.clone())
            .collect()
    }

    fn sieve_irreducibles(&self, d: usize) -> Vec<Poly> {
        if d == 0 {
            return Vec::new();
        }
        let q = self.q() as u64;
        let count = q.saturating_pow(d as u32);
        let mut out: Vec<Poly> = if count > SIEVE_LIMIT {
            self.monic_of_degree(d)
                .filter(|f| self.is_irreducible(f))
                .collect()
        } else {
            // Mark P*g for every irreducible P of degree <= d/2 and monic g of
            // complementary degree; the survivors are irreducible.
            let mut composite = vec![false; count as usize];
            for k in 1..=d / 2 {
                let smaller = self.monic_irreducibles(k);
                for p in smaller.iter() {
                    for g in self.monic_of_degree(d - k) {
                        let prod = self.poly_mul(p, &g);
                        let idx = prod.coeffs()[..d]
                            .iter()
                            .rev()
                            .fold(0u64, |acc, c| acc * q + c.index() as u64);
                        composite[idx as usize] = true;
                    }
                }
            }
            (0..count)
                .filter(|&i| !composite[i as usize])
                .map(|i| {
                    let mut c = self.poly_from_index(i).into_coeffs();
                    c.resize(d, FieldElem::ZERO);
                    c.push(FieldElem::ONE);
                    Poly::from_coeffs(c)
                })
                .collect()
        };
        out.sort();
        out
    }

    /// Factorization by trial division against the enumerated irreducibles.
    pub fn factor(&self, f: &Poly) -> Result<Factorization> {
        if f.is_zero() {
            return Err(Error::ZeroInput);
        }
        let (unit, mut rest) = self.poly_monic(f)?;
        let mut factors = Vec::new();
        let mut d = 1;
        while 2 * d <= rest.deg().unwrap_or(0) {
            for p in self.monic_irreducibles(d).iter() {
                let mut v = 0;
                while let Some(quot) = self.poly_div_exact(&rest, p)? {
                    rest = quot;
                    v += 1;
                }
                if v > 0 {
                    factors.push((p.clone(), v));
                }
                if 2 * d > rest.deg().unwrap_or(0) {
                    break;
                }
            }
            d += 1;
        }
        if !rest.is_constant() {
            match factors.iter_mut().find(|(p, _)| *p == rest) {
                Some(entry) => entry.1 += 1,
                None => factors.push((rest, 1)),
            }
        }
        factors.sort();
        Ok(Factorization { unit, factors })
    }

    /// All divisors including unit multiples: `(q-1)` times the monic divisor count.
    pub fn tau_count(&self, l: &Poly) -> Result<u128> {
        Ok((self.q() as u128 - 1) * self.factor(l)?.monic_divisor_count())
    }

    pub fn omega_count(&self, k: &Poly) -> Result<usize> {
        Ok(self.factor(k)?.factors.len())
    }

    /// `#{r mod f : gcd(r, f) = 1}`.
    pub fn euler_phi(&self, f: &Poly) -> Result<u128> {
        let q = self.q() as u64;
        Ok(self
            .factor(f)?
            .factors
            .iter()
            .map(|(p, v)| {
                let norm = crate::error::pow_sat(q, p.deg().unwrap() as u32);
                let norm_pow = crate::error::pow_sat(q, p.deg().unwrap() as u32 * (v - 1));
                norm_pow * (norm - 1)
            })
            .product())
    }

    /// Quadratic residue symbol modulo a monic irreducible, via Euler's criterion.
    pub fn legendre(&self, alpha: &Poly, p: &Poly) -> Result<i32> {
        if !p.is_monic() || !self.is_irreducible(p) {
            return Err(Error::NotIrreducible);
        }
        let a = self.poly_rem(alpha, p)?;
        if a.is_zero() {
            return Err(Error::NotCoprime);
        }
        let exp = (BigUint::from(self.q()).pow(p.deg().unwrap() as u32) - 1u32) / 2u32;
        let r = self.poly_powmod(&a, &exp, p)?;
        if r.is_one() {
            Ok(1)
        } else {
            Ok(-1)
        }
    }

    /// Chinese remaindering; returns the representative of degree below the
    /// product of the moduli.
    pub fn crt(&self, congruences: &[(Poly, Poly)]) -> Result<Poly> {
        Ok(self.crt_with_modulus(congruences)?.0)
    }

    pub fn crt_with_modulus(&self, congruences: &[(Poly, Poly)]) -> Result<(Poly, Poly)> {
        let mut x = Poly::zero();
        let mut m = Poly::one();
        for (r, mi) in congruences {
            if mi.is_zero() {
                return Err(Error::DivisionByZero);
            }
            if !self.coprime(&m, mi) {
                return Err(Error::NotCoprimeModuli);
            }
            let m_inv = self.poly_inv_mod(&m, mi)?;
            let diff = self.poly_sub(r, &x);
            let k = self.poly_mulmod(&diff, &m_inv, mi)?;
            x = self.poly_add(&x, &self.poly_mul(&m, &k));
            m = self.poly_mul(&m, mi);
            x = self.poly_rem(&x, &m)?;
        }
        Ok((x, m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Fq {
        Fq::prime(3).unwrap()
    }

    #[test]
    fn irreducible_counts_small() {
        let f = f3();
        let lin = f.monic_irreducibles(1);
        assert_eq!(
            *lin,
            vec![
                Poly::from_ints(&f, &[0, 1]),
                Poly::from_ints(&f, &[1, 1]),
                Poly::from_ints(&f, &[2, 1])
            ]
        );
        assert_eq!(f.monic_irreducibles(2).len(), 3);
        assert_eq!(Fq::prime(5).unwrap().monic_irreducibles(1).len(), 5);
    }

    #[test]
    fn sieve_agrees_with_rabin() {
        let f = Fq::prime(5).unwrap();
        for d in 1..=4 {
            let rabin: Vec<Poly> = {
                let mut v: Vec<Poly> = f.monic_of_degree(d).filter(|p| f.is_irreducible(p)).collect();
                v.sort();
                v
            };
            assert_eq!(*f.monic_irreducibles(d), rabin);
        }
    }

    #[test]
    fn factor_examples() {
        let f = f3();
        let fac = f.factor(&Poly::from_ints(&f, &[0, 2, 1])).unwrap();
        assert_eq!(fac.unit, FieldElem::ONE);
        assert_eq!(
            fac.factors,
            vec![(Poly::from_ints(&f, &[0, 1]), 1), (Poly::from_ints(&f, &[2, 1]), 1)]
        );
        let fac = f.factor(&Poly::from_ints(&f, &[0, 0, 2])).unwrap();
        assert_eq!(fac.unit, f.from_int(2));
        assert_eq!(fac.factors, vec![(Poly::t(), 2)]);
        assert_eq!(f.factor(&Poly::zero()), Err(Error::ZeroInput));
    }

    #[test]
    fn divisor_statistics() {
        let f = f3();
        let l = Poly::from_ints(&f, &[0, 2, 1]);
        assert_eq!(f.tau_count(&l).unwrap(), 8);
        assert_eq!(f.omega_count(&Poly::from_ints(&f, &[0, 0, 0, 1])).unwrap(), 1);
        assert_eq!(f.euler_phi(&Poly::from_ints(&f, &[0, 0, 1])).unwrap(), 6);
    }

    #[test]
    fn legendre_examples() {
        let f = f3();
        let t = Poly::t();
        assert_eq!(f.legendre(&Poly::one(), &t).unwrap(), 1);
        assert_eq!(f.legendre(&Poly::from_ints(&f, &[2]), &t).unwrap(), -1);
        assert_eq!(f.legendre(&t, &t), Err(Error::NotCoprime));
        assert_eq!(
            f.legendre(&Poly::one(), &Poly::from_ints(&f, &[0, 0, 1])),
            Err(Error::NotIrreducible)
        );
    }

    #[test]
    fn crt_examples() {
        let f = f3();
        let x = f
            .crt(&[
                (Poly::one(), Poly::t()),
                (Poly::from_ints(&f, &[2]), Poly::from_ints(&f, &[1, 1])),
            ])
            .unwrap();
        assert_eq!(x, Poly::from_ints(&f, &[1, 2]));
        let ones: Vec<(Poly, Poly)> = (0..3).map(|a| (Poly::one(), Poly::from_ints(&f, &[a, 1]))).collect();
        assert_eq!(f.crt(&ones).unwrap(), Poly::one());
        assert_eq!(
            f.crt(&[(Poly::one(), Poly::t()), (Poly::zero(), Poly::from_ints(&f, &[0, 0, 1]))]),
            Err(Error::NotCoprimeModuli)
        );
    }

    #[test]
    fn moebius_counts() {
        assert_eq!(count_monic_irreducibles(3, 2), 3);
        assert_eq!(count_monic_irreducibles(3, 3), 8);
        assert_eq!(count_monic_irreducibles(5, 1), 5);
        assert_eq!(count_monic_irreducibles(2, 6), 9);
    }
}
