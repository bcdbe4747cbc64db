//! Text formats for field elements and polynomials.
//!
//! Polynomials are written as ascending coefficients separated by commas.
//! Prime-field coefficients are decimal digits `0..p-1`; extension-field
//! coefficients are bracketed representative lists `[d0,d1,..]`. The zero
//! polynomial is the token `0-poly`.

use crate::algebra::field::{FieldElem, Fq};
use crate::algebra::poly::Poly;
use crate::error::{Error, Result};

pub const ZERO_POLY: &str = "0-poly";

impl Fq {
    pub fn format_elem(&self, a: FieldElem) -> String {
        if self.e() == 1 {
            a.index().to_string()
        } else {
            let parts: Vec<String> = self.rep(a).iter().map(|d| d.to_string()).collect();
            format!("[{}]", parts.join(","))
        }
    }

    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let digits = inner
                .split(',')
                .map(|d| d.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad digit {d:?}"))))
                .collect::<Result<Vec<u32>>>()?;
            if digits.len() != self.e() as usize {
                return Err(Error::Parse(format!("expected {} digits in {s:?}", self.e())));
            }
            self.from_rep(&digits)
        } else {
            if self.e() != 1 {
                return Err(Error::Parse(format!("extension coefficient must be bracketed: {s:?}")));
            }
            let v: u32 = s.parse().map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))?;
            if v >= self.p() {
                return Err(Error::Parse(format!("coefficient {v} out of range 0..{}", self.p())));
            }
            self.elem(v)
        }
    }

    pub fn format_poly(&self, a: &Poly) -> String {
        if a.is_zero() {
            return ZERO_POLY.to_string();
        }
        let parts: Vec<String> = a.coeffs().iter().map(|&c| self.format_elem(c)).collect();
        parts.join(",")
    }

    pub fn parse_poly(&self, s: &str) -> Result<Poly> {
        let s = s.trim();
        if s == ZERO_POLY {
            return Ok(Poly::zero());
        }
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut coeffs = Vec::new();
        let mut depth = 0;
        let mut start = 0;
        for (i, ch) in s.char_indices() {
            match ch {
                '[' => depth += 1,
                ']' => depth -= 1,
                ',' if depth == 0 => {
                    coeffs.push(self.parse_elem(&s[start..i])?);
                    start = i + 1;
                }
                _ => {}
            }
        }
        coeffs.push(self.parse_elem(&s[start..])?);
        Ok(Poly::from_coeffs(coeffs))
    }

    /// Human-readable form such as `t^3 + 2t`, highest degree first.
    pub fn pretty_poly(&self, a: &Poly) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &c) in a.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coef = self.format_elem(c);
            let var = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            terms.push(if i == 0 {
                coef
            } else if c == FieldElem::ONE {
                var
            } else {
                format!("{coef}{var}")
            });
        }
        terms.join(" + ")
    }
}
