use crate::algebra::field::{FieldElem, Fq};
use crate::algebra::poly::Poly;
use crate::error::{Error, Result};

/// `F_q[t]/(modulus)` with residues held as dense length-`m` coefficient
/// arrays. Used by the enumeration kernels, which touch every residue.
pub struct ResidueRing<'a> {
    fq: &'a Fq,
    modulus: Poly,
    m: usize,
    // t^m == sum_i tail[i] t^i
    tail: Vec<FieldElem>,
    lc_inv: FieldElem,
}

impl<'a> ResidueRing<'a> {
    pub fn new(fq: &'a Fq, modulus: &Poly) -> Result<Self> {
        let m = modulus.deg().ok_or(Error::DivisionByZero)?;
        let lc_inv = fq.inv(modulus.lc())?;
        let tail = (0..m)
            .map(|i| fq.neg(fq.mul(modulus.coeff(i), lc_inv)))
            .collect();
        Ok(ResidueRing { fq, modulus: modulus.clone(), m, tail, lc_inv })
    }

    pub fn field(&self) -> &Fq {
        self.fq
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// Degree of the modulus.
    pub fn width(&self) -> usize {
        self.m
    }

    /// Number of residues, `q^m`.
    pub fn size(&self) -> u64 {
        (self.fq.q() as u64).pow(self.m as u32)
    }

    pub fn residue(&self, idx: u64) -> Vec<FieldElem> {
        let q = self.fq.q() as u64;
        let mut x = idx;
        (0..self.m)
            .map(|_| {
                let d = FieldElem((x % q) as u32);
                x /= q;
                d
            })
            .collect()
    }

    /// Advances `x` to the next residue in index order; false after the last.
    pub fn advance(&self, x: &mut [FieldElem]) -> bool {
        let q = self.fq.q();
        for c in x.iter_mut() {
            if c.0 + 1 < q {
                c.0 += 1;
                return true;
            }
            c.0 = 0;
        }
        false
    }

    pub fn reduce(&self, a: &Poly) -> Vec<FieldElem> {
        let mut buf: Vec<FieldElem> = a.coeffs().to_vec();
        self.reduce_in_place(&mut buf);
        buf
    }

    fn reduce_in_place(&self, buf: &mut Vec<FieldElem>) {
        let fq = self.fq;
        for k in (self.m..buf.len()).rev() {
            let c = buf[k];
            if !c.is_zero() {
                for (i, &tc) in self.tail.iter().enumerate() {
                    let idx = k - self.m + i;
                    buf[idx] = fq.add(buf[idx], fq.mul(c, tc));
                }
            }
        }
        buf.resize(self.m, FieldElem::ZERO);
    }

    pub fn to_poly(&self, x: &[FieldElem]) -> Poly {
        Poly::from_coeffs(x.to_vec())
    }

    pub fn add(&self, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
        a.iter().zip(b).map(|(&x, &y)| self.fq.add(x, y)).collect()
    }

    pub fn mul(&self, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
        let mut out = Vec::with_capacity(2 * self.m);
        self.mul_into(a, b, &mut out);
        out
    }

    /// `out = a*b mod modulus`; `out` is used as scratch and ends with length `m`.
    pub fn mul_into(&self, a: &[FieldElem], b: &[FieldElem], out: &mut Vec<FieldElem>) {
        let fq = self.fq;
        out.clear();
        if self.m == 0 {
            return;
        }
        out.resize(2 * self.m - 1, FieldElem::ZERO);
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = fq.add(out[i + j], fq.mul(x, y));
            }
        }
        self.reduce_in_place(out);
    }

    pub fn is_zero(x: &[FieldElem]) -> bool {
        x.iter().all(|c| c.is_zero())
    }

    /// Exponent `k` (mod `p`) with `e(x / modulus) = zeta_p^k` for a reduced residue `x`:
    /// the trace of the `t^-1` coefficient of `x / modulus`.
    #[inline]
    pub fn char_exponent(&self, x: &[FieldElem]) -> u32 {
        if self.m == 0 {
            return 0;
        }
        self.fq.trace(self.fq.mul(x[self.m - 1], self.lc_inv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_mul_matches_poly_rem() {
        let f = Fq::prime(5).unwrap();
        let m = Poly::from_ints(&f, &[2, 1, 0, 3]);
        let rr = ResidueRing::new(&f, &m).unwrap();
        for i in (0..rr.size()).step_by(7) {
            for j in (0..rr.size()).step_by(11) {
                let a = rr.residue(i);
                let b = rr.residue(j);
                let got = rr.to_poly(&rr.mul(&a, &b));
                let want = f.poly_mulmod(&rr.to_poly(&a), &rr.to_poly(&b), &m).unwrap();
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn advance_visits_every_residue_once() {
        let f = Fq::prime(3).unwrap();
        let rr = ResidueRing::new(&f, &Poly::from_ints(&f, &[0, 0, 1])).unwrap();
        let mut x = rr.residue(0);
        let mut n = 1;
        while rr.advance(&mut x) {
            n += 1;
        }
        assert_eq!(n, 9);
        assert!(ResidueRing::is_zero(&x));
    }
}
