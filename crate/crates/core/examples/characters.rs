//! Additive characters as exact elements of Z[zeta_p], and their complex values.

use ffsieve::algebra::Fq;
use ffsieve::character::{char_E, cyclo_embed, field_gauss_sum, sqrt_q, CycloInt};

fn main() -> ffsieve::Result<()> {
    for p in [3, 5, 7] {
        let fq = Fq::prime(p)?;
        let total = fq.elements().fold(CycloInt::zero(p), |acc, a| acc.add(&char_E(&fq, a)));
        let g = sqrt_q(&fq);
        let (re, im) = cyclo_embed(&g, 64).to_f64();
        println!(
            "q={p}: sum of E over F_q = {}, g_q = {} ~ {re:.6} + {im:.6}i, |g_q|^2 = {}",
            total.format(),
            g.format(),
            g.abs2().format()
        );
        for c in fq.units() {
            println!("  sum_a E({} a^2) = {}", fq.format_elem(c), field_gauss_sum(&fq, c).format());
        }
    }
    Ok(())
}
