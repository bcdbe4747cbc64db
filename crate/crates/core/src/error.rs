use thiserror::Error;

/// Errors raised by every layer of the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("polynomial is not monic irreducible")]
    NotIrreducible,
    #[error("arguments are not coprime")]
    NotCoprime,
    #[error("moduli are not pairwise coprime")]
    NotCoprimeModuli,
    #[error("not a square: {0}")]
    NotASquare(String),
    #[error("not a perfect power with exponent >= 2")]
    NotAPower,
    #[error("factors do not multiply to the modulus")]
    BadFactor,
    #[error("quadratic coefficient is not of the form c*t^-eps")]
    BadAlphaShape,
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("enumeration budget exceeded: {needed} > {budget}")]
    CapExceeded { needed: u128, budget: u128 },
    #[error("parameter outside the formula's domain: {0}")]
    Domain(String),
    #[error("bad arguments: {0}")]
    BadArgs(String),
    #[error("invalid field: {0}")]
    BadField(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Fails with `CapExceeded` when `needed` is above `budget`.
pub fn check_budget(needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(Error::CapExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// `base^exp` as u128, saturating at `u128::MAX`.
pub fn pow_sat(base: u64, exp: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
