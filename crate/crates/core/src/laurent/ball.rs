use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::Fq;
use crate::error::{Error, Result};
use crate::laurent::series::Laurent;

/// The closed ball `{y : |y - center|_inf <= q^radius_exp}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ball {
    pub center: Laurent,
    pub radius_exp: i64,
}

impl Ball {
    pub fn new(center: Laurent, radius_exp: i64) -> Ball {
        Ball { center, radius_exp }
    }

    pub fn centered(radius_exp: i64) -> Ball {
        Ball { center: Laurent::zero(), radius_exp }
    }

    pub fn contains(&self, fq: &Fq, y: &Laurent) -> Result<bool> {
        y.sub(fq, &self.center).norm_le(self.radius_exp)
    }

    /// Exponent of the Haar measure: `mu(B(x, n)) = q^(n+1)`.
    pub fn measure_exp(&self) -> i64 {
        self.radius_exp + 1
    }

    pub fn measure(&self, q: u32) -> BigRational {
        q_pow_rational(q, self.measure_exp())
    }

    /// Whether two balls with certified centers coincide as sets.
    pub fn same_set(&self, fq: &Fq, other: &Ball) -> Result<bool> {
        Ok(self.radius_exp == other.radius_exp && self.contains(fq, &other.center)?)
    }

    pub fn format(&self, fq: &Fq) -> String {
        format!("{}|{}", self.center.format(fq), self.radius_exp)
    }

    pub fn parse(fq: &Fq, s: &str) -> Result<Ball> {
        let (c, r) = s
            .rsplit_once('|')
            .ok_or_else(|| Error::Parse(format!("expected center|radius_exp in {s:?}")))?;
        let radius_exp = r
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad radius exponent {r:?}")))?;
        Ok(Ball { center: Laurent::parse(fq, c)?, radius_exp })
    }
}

/// `q^k` as an exact rational.
pub fn q_pow_rational(q: u32, k: i64) -> BigRational {
    let p = num_traits::pow(BigInt::from(q), k.unsigned_abs() as usize);
    if k >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::from(1), p)
    }
}
