use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use crate::algebra::Fq;
use crate::character::{sqrt_q, CycloInt};

/// `num * q^q_exp` with `num` in `Z[zeta_p]`, kept with `q_exp <= 0` and
/// `num` not divisible by `q` unless `q_exp = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QScaled {
    num: CycloInt,
    q_exp: i64,
    q: u32,
}

impl QScaled {
    pub fn new(num: CycloInt, q_exp: i64, q: u32) -> QScaled {
        let mut v = QScaled { num, q_exp, q };
        v.normalize();
        v
    }

    pub fn zero(p: u32, q: u32) -> QScaled {
        QScaled { num: CycloInt::zero(p), q_exp: 0, q }
    }

    pub fn one(p: u32, q: u32) -> QScaled {
        QScaled { num: CycloInt::one(p), q_exp: 0, q }
    }

    /// `q^k`.
    pub fn q_pow(p: u32, q: u32, k: i64) -> QScaled {
        QScaled::new(CycloInt::one(p), k, q)
    }

    pub fn from_cyclo(num: CycloInt, q: u32) -> QScaled {
        QScaled::new(num, 0, q)
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.q_exp = 0;
            return;
        }
        let qb = BigInt::from(self.q);
        if self.q_exp > 0 {
            self.num = self.num.scale(&num_traits::pow(qb.clone(), self.q_exp as usize));
            self.q_exp = 0;
        }
        while self.q_exp < 0 && self.num.coeffs().iter().all(|c| c.is_multiple_of(&qb)) {
            let coeffs = self.num.coeffs().iter().map(|c| c / &qb).collect();
            self.num = CycloInt::from_reduced(self.num.p(), coeffs).unwrap();
            self.q_exp += 1;
        }
    }

    pub fn num(&self) -> &CycloInt {
        &self.num
    }

    pub fn q_exp(&self) -> i64 {
        self.q_exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &QScaled) -> QScaled {
        let e = self.q_exp.min(other.q_exp);
        let qb = BigInt::from(self.q);
        let lift = |v: &QScaled| v.num.scale(&num_traits::pow(qb.clone(), (v.q_exp - e) as usize));
        QScaled::new(lift(self).add(&lift(other)), e, self.q)
    }

    pub fn neg(&self) -> QScaled {
        QScaled { num: self.num.neg(), q_exp: self.q_exp, q: self.q }
    }

    pub fn sub(&self, other: &QScaled) -> QScaled {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QScaled) -> QScaled {
        QScaled::new(self.num.mul(&other.num), self.q_exp + other.q_exp, self.q)
    }

    pub fn mul_cyclo(&self, z: &CycloInt) -> QScaled {
        QScaled::new(self.num.mul(z), self.q_exp, self.q)
    }

    pub fn scale_q(&self, k: i64) -> QScaled {
        QScaled::new(self.num.clone(), self.q_exp + k, self.q)
    }

    /// The value as a rational number, when `num` is a rational integer.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_integer()?;
        let d = num_traits::pow(BigInt::from(self.q), self.q_exp.unsigned_abs() as usize);
        Some(if self.q_exp >= 0 {
            BigRational::from_integer(n * d)
        } else {
            BigRational::new(n, d)
        })
    }

    pub fn format(&self) -> String {
        if self.q_exp == 0 {
            self.num.format()
        } else {
            format!("{};qexp={}", self.num.format(), self.q_exp)
        }
    }

    pub fn is_nonnegative_integer(&self) -> bool {
        self.q_exp == 0 && self.num.as_integer().is_some_and(|n| !n.is_negative())
    }
}

/// `rational + sqrtq_coeff * q^(1/2)`, where `q^(1/2)` stands for the element
/// `g_q = sum_a E(a^2)` of `Z[zeta_p]` (see [`crate::character::sqrt_q`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExpValue {
    pub rational: QScaled,
    pub sqrtq_coeff: QScaled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpValueText {
    pub rational: String,
    pub sqrtq_coeff: String,
}

impl ExpValue {
    pub fn rational(v: QScaled) -> ExpValue {
        let z = QScaled::zero(v.num.p(), v.q);
        ExpValue { rational: v, sqrtq_coeff: z }
    }

    pub fn zero(p: u32, q: u32) -> ExpValue {
        ExpValue::rational(QScaled::zero(p, q))
    }

    pub fn scale_q(&self, k: i64) -> ExpValue {
        ExpValue { rational: self.rational.scale_q(k), sqrtq_coeff: self.sqrtq_coeff.scale_q(k) }
    }

    pub fn mul_cyclo(&self, z: &CycloInt) -> ExpValue {
        ExpValue { rational: self.rational.mul_cyclo(z), sqrtq_coeff: self.sqrtq_coeff.mul_cyclo(z) }
    }

    /// The single element of `q^Z Z[zeta_p]` this pair denotes.
    pub fn realize(&self, fq: &Fq) -> QScaled {
        self.rational.add(&self.sqrtq_coeff.mul_cyclo(&sqrt_q(fq)))
    }

    pub fn text(&self) -> ExpValueText {
        ExpValueText { rational: self.rational.format(), sqrtq_coeff: self.sqrtq_coeff.format() }
    }
}
