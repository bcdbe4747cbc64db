//! Additive characters with exact values in `Z[zeta_p]`.

mod cyclo;
mod embed;

pub use cyclo::CycloInt;
pub use embed::{compare_magnitudes, cyclo_embed, ComplexApprox, RealApprox, DEFAULT_PRECISION_BITS};

use crate::algebra::{FieldElem, Fq};
use crate::error::Result;
use crate::laurent::Laurent;

/// `E(a) = zeta_p^Tr(a)`.
#[allow(non_snake_case)]
pub fn char_E(fq: &Fq, a: FieldElem) -> CycloInt {
    CycloInt::zeta_pow(fq.p(), fq.trace(a) as i64)
}

/// `e(x) = E(coefficient of t^-1 in x)`.
pub fn char_e(fq: &Fq, x: &Laurent) -> Result<CycloInt> {
    Ok(char_E(fq, x.coeff(-1)?))
}

/// Exponent `k` with `e(x) = zeta_p^k`.
pub fn char_e_exponent(fq: &Fq, x: &Laurent) -> Result<u32> {
    Ok(fq.trace(x.coeff(-1)?))
}

/// The classical sum `sum_{a in F_q} E(c a^2)`, equal to `s(c)` times
/// [`sqrt_q`].
pub fn field_gauss_sum(fq: &Fq, c: FieldElem) -> CycloInt {
    let mut counts = vec![0i64; fq.p() as usize];
    for a in fq.elements() {
        counts[fq.trace(fq.mul(c, fq.mul(a, a))) as usize] += 1;
    }
    CycloInt::from_exponent_counts(fq.p(), &counts)
}

/// The element `g_q = sum_{a in F_q} E(a^2)` of `Z[zeta_p]`, which has
/// `|g_q|^2 = q` and plays the role of `q^(1/2)` in closed-form ball integrals.
pub fn sqrt_q(fq: &Fq) -> CycloInt {
    field_gauss_sum(fq, FieldElem::ONE)
}
