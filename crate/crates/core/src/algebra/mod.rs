//! Finite fields `F_q`, polynomials over them, and the number theory of `F_q[t]`.

mod factor;
mod field;
mod poly;
mod residue;
pub mod text;

pub use factor::{count_monic_irreducibles, Factorization, Partition};
pub use field::{FieldElem, FieldSpec, Fq, MAX_EXT_Q, MAX_Q};
pub use poly::Poly;
pub use residue::ResidueRing;
