use std::fmt;

use crate::algebra::{FieldElem, Fq, Poly};
use crate::error::{Error, Result};

/// `|x|_inf` as an extended power of `q`: `Zero < QPow(k)` for every `k`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AbsValue {
    Zero,
    QPow(i64),
}

impl AbsValue {
    pub fn exponent(self) -> Option<i64> {
        match self {
            AbsValue::Zero => None,
            AbsValue::QPow(k) => Some(k),
        }
    }
}

impl fmt::Display for AbsValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbsValue::Zero => write!(f, "0"),
            AbsValue::QPow(k) => write!(f, "q^{k}"),
        }
    }
}

/// Truncated element of `F_q((1/t))`.
///
/// `coeffs[i]` is the coefficient of `t^(hi - i)`. With `lo = Some(l)` the
/// coefficients are known for exponents `>= l` only and `coeffs` spans exactly
/// `hi..=l`; a value whose known coefficients all vanish has `hi = l - 1` and no
/// coefficients. With `lo = None` the value is exact: everything below the
/// stored window is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Laurent {
    hi: i64,
    coeffs: Vec<FieldElem>,
    lo: Option<i64>,
}

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent { hi: 0, coeffs: Vec::new(), lo: None }
    }

    /// Zero known only down to exponent `lo`.
    pub fn zero_to(lo: i64) -> Laurent {
        Laurent { hi: lo - 1, coeffs: Vec::new(), lo: Some(lo) }
    }

    pub fn one() -> Laurent {
        Laurent::monomial(FieldElem::ONE, 0)
    }

    pub fn monomial(c: FieldElem, k: i64) -> Laurent {
        Laurent::exact(k, vec![c])
    }

    pub fn from_poly(p: &Poly) -> Laurent {
        match p.deg() {
            None => Laurent::zero(),
            Some(d) => Laurent::exact(d as i64, p.coeffs().iter().rev().copied().collect()),
        }
    }

    /// Exact value with coefficients descending from `hi`.
    pub fn exact(hi: i64, coeffs: Vec<FieldElem>) -> Laurent {
        let mut x = Laurent { hi, coeffs, lo: None };
        x.normalize();
        x
    }

    /// Uniformly random coefficients at exponents `hi..=lo`, known down to `lo`.
    pub fn random<R: rand::Rng>(fq: &Fq, hi: i64, lo: i64, rng: &mut R) -> Laurent {
        let coeffs = (lo..=hi).map(|_| fq.elem(rng.gen_range(0..fq.q())).unwrap()).collect();
        Laurent::with_precision(hi, coeffs, lo)
    }

    /// Value with coefficients descending from `hi`, known down to `lo`.
    /// Coefficients beyond the window are dropped; missing ones are zero.
    pub fn with_precision(hi: i64, mut coeffs: Vec<FieldElem>, lo: i64) -> Laurent {
        let len = (hi - lo + 1).max(0) as usize;
        coeffs.resize(len, FieldElem::ZERO);
        let mut x = Laurent { hi: hi.max(lo - 1), coeffs, lo: Some(lo) };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.hi -= lead as i64;
        match self.lo {
            None => {
                while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                    self.coeffs.pop();
                }
                if self.coeffs.is_empty() {
                    self.hi = 0;
                }
            }
            Some(lo) => {
                if self.coeffs.is_empty() {
                    self.hi = lo - 1;
                }
            }
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo.is_none()
    }

    /// Precision floor; `None` for exact values.
    pub fn floor(&self) -> Option<i64> {
        self.lo
    }

    /// Exponent of the first stored coefficient. Meaningful only when
    /// `coeffs()` is nonempty.
    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn is_exact_zero(&self) -> bool {
        self.lo.is_none() && self.coeffs.is_empty()
    }

    /// True when no nonzero coefficient is known (exact zero or zero to precision).
    pub fn no_known_terms(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Upper bound on the exponent of any nonzero term; `None` for exact zero.
    fn top(&self) -> Option<i64> {
        if self.is_exact_zero() {
            None
        } else {
            Some(self.hi)
        }
    }

    /// Lowest exponent carried by the stored window.
    fn bottom(&self) -> i64 {
        match self.lo {
            Some(lo) => lo,
            None => self.hi - self.coeffs.len() as i64 + 1,
        }
    }

    /// Coefficient of `t^k`.
    pub fn coeff(&self, k: i64) -> Result<FieldElem> {
        if let Some(lo) = self.lo {
            if k < lo {
                return Err(Error::Precision(format!("coefficient of t^{k} below floor {lo}")));
            }
        }
        if k > self.hi || self.coeffs.is_empty() {
            return Ok(FieldElem::ZERO);
        }
        let i = (self.hi - k) as usize;
        Ok(self.coeffs.get(i).copied().unwrap_or(FieldElem::ZERO))
    }

    /// Coefficient of `t^k`, treating unknown coefficients as zero.
    pub(crate) fn coeff_or_zero(&self, k: i64) -> FieldElem {
        if k > self.hi || self.coeffs.is_empty() || k < self.bottom() {
            return FieldElem::ZERO;
        }
        self.coeffs[(self.hi - k) as usize]
    }

    pub fn abs_inf(&self) -> Result<AbsValue> {
        if self.is_exact_zero() {
            return Ok(AbsValue::Zero);
        }
        if self.coeffs.is_empty() {
            return Err(Error::Precision(format!(
                "all coefficients down to t^{} vanish",
                self.lo.unwrap()
            )));
        }
        Ok(AbsValue::QPow(self.hi))
    }

    /// Degree (exponent of the leading term); `None` for zero.
    pub fn deg(&self) -> Result<Option<i64>> {
        Ok(self.abs_inf()?.exponent())
    }

    /// Certified test of `|x|_inf <= q^exp`.
    pub fn norm_le(&self, exp: i64) -> Result<bool> {
        if self.is_exact_zero() {
            return Ok(true);
        }
        if !self.coeffs.is_empty() && self.hi > exp {
            return Ok(false);
        }
        match self.lo {
            Some(lo) if lo > exp + 1 => Err(Error::Precision(format!(
                "cannot certify |x| <= q^{exp} with floor {lo}"
            ))),
            _ => Ok(true),
        }
    }

    /// Certified test of `|x|_inf < q^exp`.
    pub fn norm_lt(&self, exp: i64) -> Result<bool> {
        self.norm_le(exp - 1)
    }

    /// Terms with exponent `<= -1`.
    pub fn frac_part(&self) -> Result<Laurent> {
        if let Some(lo) = self.lo {
            if lo > -1 {
                return Err(Error::Precision(format!("fractional part unknown with floor {lo}")));
            }
        }
        Ok(self.window(-1, self.lo))
    }

    /// Terms with exponent `>= 0` as a polynomial.
    pub fn poly_part(&self) -> Result<Poly> {
        if let Some(lo) = self.lo {
            if lo > 0 {
                return Err(Error::Precision(format!("polynomial part unknown with floor {lo}")));
            }
        }
        if self.coeffs.is_empty() || self.hi < 0 {
            return Ok(Poly::zero());
        }
        Ok(Poly::from_coeffs(
            (0..=self.hi).map(|k| self.coeff_or_zero(k)).collect(),
        ))
    }

    /// `‖x‖ = |{x}|_inf`.
    pub fn torus_norm(&self) -> Result<AbsValue> {
        self.frac_part()?.abs_inf()
    }

    /// Terms with exponent in `[lo, top]` (lo = None: all the way down), with
    /// the precision floor raised to `lo` if given.
    fn window(&self, top: i64, lo: Option<i64>) -> Laurent {
        let start = self.hi.min(top);
        let end = match lo {
            Some(l) => l.max(self.bottom()),
            None => self.bottom(),
        };
        let coeffs: Vec<FieldElem> = if self.coeffs.is_empty() {
            Vec::new()
        } else {
            (end..=start).rev().map(|k| self.coeff_or_zero(k)).collect()
        };
        match (self.lo, lo) {
            (None, None) => Laurent::exact(start, coeffs),
            (Some(a), Some(b)) => Laurent::with_precision(start, coeffs, a.max(b)),
            (Some(a), None) | (None, Some(a)) => Laurent::with_precision(start, coeffs, a),
        }
    }

    /// Forget every coefficient below `lo`.
    pub fn with_floor(&self, lo: i64) -> Laurent {
        let lo = match self.lo {
            Some(l) => l.max(lo),
            None => lo,
        };
        if self.coeffs.is_empty() {
            return Laurent::zero_to(lo);
        }
        let top = self.hi.max(lo - 1);
        Laurent::with_precision(top, (lo..=top).rev().map(|k| self.coeff_or_zero(k)).collect(), lo)
    }

    /// The exact element whose coefficients are the known ones of `self` at
    /// exponents `>= lo` (and zero elsewhere).
    pub fn truncated(&self, lo: i64) -> Result<Laurent> {
        if let Some(l) = self.lo {
            if lo < l {
                return Err(Error::Precision(format!("truncation at {lo} below floor {l}")));
            }
        }
        if self.coeffs.is_empty() {
            return Ok(Laurent::zero());
        }
        let top = self.hi;
        Ok(Laurent::exact(top, (lo..=top).rev().map(|k| self.coeff_or_zero(k)).collect()))
    }

    /// For an exact value, `(R, L)` with `x = R / t^L` and `L >= 0` minimal.
    pub fn as_fraction(&self) -> Result<(Poly, u32)> {
        if self.lo.is_some() {
            return Err(Error::Precision("inexact value has no finite fraction".into()));
        }
        if self.coeffs.is_empty() {
            return Ok((Poly::zero(), 0));
        }
        let bottom = self.bottom();
        let shift = (-bottom).max(0);
        let top = self.hi + shift;
        let mut c = vec![FieldElem::ZERO; top as usize + 1];
        for k in bottom..=self.hi {
            c[(k + shift) as usize] = self.coeff_or_zero(k);
        }
        Ok((Poly::from_coeffs(c), shift as u32))
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Laurent {
        Laurent {
            hi: if self.is_exact_zero() { 0 } else { self.hi + k },
            coeffs: self.coeffs.clone(),
            lo: self.lo.map(|l| l + k),
        }
    }

    pub fn neg(&self, fq: &Fq) -> Laurent {
        Laurent {
            hi: self.hi,
            coeffs: self.coeffs.iter().map(|&c| fq.neg(c)).collect(),
            lo: self.lo,
        }
    }

    pub fn scale(&self, fq: &Fq, c: FieldElem) -> Laurent {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            hi: self.hi,
            coeffs: self.coeffs.iter().map(|&a| fq.mul(a, c)).collect(),
            lo: self.lo,
        }
    }

    pub fn add(&self, fq: &Fq, other: &Laurent) -> Laurent {
        let lo = match (self.lo, other.lo) {
            (None, None) => None,
            (Some(a), None) | (None, Some(a)) => Some(a),
            (Some(a), Some(b)) => Some(a.max(b)),
        };
        let top = match (self.top(), other.top()) {
            (None, None) => return Laurent { hi: 0, coeffs: Vec::new(), lo: None },
            (Some(a), None) | (None, Some(a)) => a,
            (Some(a), Some(b)) => a.max(b),
        };
        let bottom = match lo {
            Some(l) => l,
            None => self.bottom().min(other.bottom()),
        };
        if top < bottom {
            return Laurent::zero_to(bottom);
        }
        let coeffs = (bottom..=top)
            .rev()
            .map(|k| fq.add(self.coeff_or_zero(k), other.coeff_or_zero(k)))
            .collect();
        match lo {
            None => Laurent::exact(top, coeffs),
            Some(l) => Laurent::with_precision(top, coeffs, l),
        }
    }

    pub fn sub(&self, fq: &Fq, other: &Laurent) -> Laurent {
        self.add(fq, &other.neg(fq))
    }

    pub fn mul(&self, fq: &Fq, other: &Laurent) -> Laurent {
        if self.is_exact_zero() || other.is_exact_zero() {
            return Laurent::zero();
        }
        // An unknown tail below lo contributes terms of exponent < top(other) + lo.
        let floor = match (self.lo, other.lo) {
            (None, None) => None,
            (Some(a), None) => Some(other.hi + a),
            (None, Some(b)) => Some(self.hi + b),
            (Some(a), Some(b)) => Some((other.hi + a).max(self.hi + b)),
        };
        let top = self.hi + other.hi;
        let bottom = match floor {
            Some(f) => f,
            None => self.bottom() + other.bottom(),
        };
        if top < bottom {
            return Laurent::zero_to(bottom);
        }
        let mut coeffs = vec![FieldElem::ZERO; (top - bottom + 1) as usize];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let k = i + j;
                if k >= coeffs.len() {
                    break;
                }
                coeffs[k] = fq.add(coeffs[k], fq.mul(a, b));
            }
        }
        match floor {
            None => Laurent::exact(top, coeffs),
            Some(f) => Laurent::with_precision(top, coeffs, f),
        }
    }

    pub fn mul_poly(&self, fq: &Fq, p: &Poly) -> Laurent {
        self.mul(fq, &Laurent::from_poly(p))
    }

    /// `1/x`, accurate down to at least `prec` (or to the floor forced by the
    /// precision of `x`, whichever is higher). Exact when the truncated inverse
    /// multiplies back to exactly one.
    pub fn inv(&self, fq: &Fq, prec: i64) -> Result<Laurent> {
        if self.is_exact_zero() {
            return Err(Error::DivisionByZero);
        }
        let h = match self.abs_inf()? {
            AbsValue::QPow(h) => h,
            AbsValue::Zero => unreachable!(),
        };
        let floor = match self.lo {
            Some(lo) => prec.max(lo - 2 * h),
            None => prec,
        };
        let n = (-h - floor + 1).max(1) as usize;
        let a0_inv = fq.inv(self.coeffs[0])?;
        let mut b = Vec::with_capacity(n);
        b.push(a0_inv);
        for j in 1..n {
            let mut acc = FieldElem::ZERO;
            for i in 1..=j.min(self.coeffs.len() - 1) {
                acc = fq.add(acc, fq.mul(self.coeffs[i], b[j - i]));
            }
            b.push(fq.neg(fq.mul(acc, a0_inv)));
        }
        let approx = Laurent::with_precision(-h, b, floor);
        if self.is_exact() {
            let candidate = approx.truncated(floor)?;
            if candidate.mul(fq, self) == Laurent::one() {
                return Ok(candidate);
            }
        }
        Ok(approx)
    }

    /// `self / other`, accurate down to at least `prec` when the inputs allow.
    pub fn div(&self, fq: &Fq, other: &Laurent, prec: i64) -> Result<Laurent> {
        let inv = other.inv(fq, prec - self.top().unwrap_or(0))?;
        let q = self.mul(fq, &inv);
        Ok(match q.lo {
            Some(lo) if lo < prec => q.with_floor(prec),
            _ => q,
        })
    }

    /// Square root with the canonical leading coefficient, accurate down to
    /// `prec` or the floor forced by the input.
    pub fn sqrt(&self, fq: &Fq, prec: i64) -> Result<Laurent> {
        if self.is_exact_zero() {
            return Ok(Laurent::zero());
        }
        let h = match self.abs_inf()? {
            AbsValue::QPow(h) => h,
            AbsValue::Zero => unreachable!(),
        };
        if h.rem_euclid(2) != 0 {
            return Err(Error::NotASquare(format!("odd degree {h}")));
        }
        let k = h / 2;
        let s0 = fq
            .sqrt(self.coeffs[0])
            .map_err(|_| Error::NotASquare("leading coefficient is a non-residue".into()))?;
        let floor = match self.lo {
            Some(lo) => prec.max(lo - k),
            None => prec,
        };
        let n = (k - floor + 1).max(1) as usize;
        let two_s0_inv = fq.inv(fq.add(s0, s0))?;
        let mut s = Vec::with_capacity(n);
        s.push(s0);
        for j in 1..n {
            let mut acc = self.coeffs.get(j).copied().unwrap_or(FieldElem::ZERO);
            for i in 1..j {
                acc = fq.sub(acc, fq.mul(s[i], s[j - i]));
            }
            s.push(fq.mul(acc, two_s0_inv));
        }
        let approx = Laurent::with_precision(k, s, floor);
        if self.is_exact() {
            let candidate = approx.truncated(floor)?;
            if candidate.mul(fq, &candidate) == *self {
                return Ok(candidate);
            }
        }
        Ok(approx)
    }

    pub fn format(&self, fq: &Fq) -> String {
        let hi = if self.is_exact_zero() { "-inf".to_string() } else { self.hi.to_string() };
        let lo = match self.lo {
            None => "-inf".to_string(),
            Some(l) => l.to_string(),
        };
        let coeffs: Vec<String> = self.coeffs.iter().map(|&c| fq.format_elem(c)).collect();
        format!("hi={hi};lo={lo};coeffs={}", coeffs.join(","))
    }

    pub fn parse(fq: &Fq, s: &str) -> Result<Laurent> {
        let mut hi = None;
        let mut lo = None;
        let mut coeffs = None;
        for part in s.trim().split(';') {
            let (key, val) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value in {part:?}")))?;
            match key.trim() {
                "hi" => hi = Some(val.trim().to_string()),
                "lo" => lo = Some(val.trim().to_string()),
                "coeffs" => coeffs = Some(val.trim().to_string()),
                other => return Err(Error::Parse(format!("unknown key {other:?}"))),
            }
        }
        let missing = |k: &str| Error::Parse(format!("missing {k}"));
        let hi = hi.ok_or_else(|| missing("hi"))?;
        let lo = lo.ok_or_else(|| missing("lo"))?;
        let coeffs = coeffs.ok_or_else(|| missing("coeffs"))?;
        let coeffs: Vec<FieldElem> = if coeffs.is_empty() {
            Vec::new()
        } else {
            fq.parse_poly(&coeffs)?.coeffs().to_vec()
        };
        let parse_int = |v: &str| v.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent {v:?}")));
        // parse_poly drops trailing zeros; restore the declared window length.
        let hi_v = if hi == "-inf" { 0 } else { parse_int(&hi)? };
        if lo == "-inf" {
            Ok(Laurent::exact(hi_v, coeffs))
        } else {
            Ok(Laurent::with_precision(hi_v, coeffs, parse_int(&lo)?))
        }
    }
}

/// Expansion of `r/f` down to exponent `lo`; exact when the expansion terminates.
pub fn expand_fraction(fq: &Fq, r: &Poly, f: &Poly, lo: i64) -> Result<Laurent> {
    if f.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if r.is_zero() {
        return Ok(Laurent::zero());
    }
    Laurent::from_poly(r).div(fq, &Laurent::from_poly(f), lo)
}
