//! Quadratic Gauss sums over F_q[t]: direct sums, the identity chain, and an
//! exhaustive check of |G|^2 = q^deg(beta).

use std::time::Instant;

use ffsieve::algebra::{Fq, Poly};
use ffsieve::gauss::{gauss_brute, gauss_fast, verify_identities, GaussReport, GaussSpec};

fn main() -> ffsieve::Result<()> {
    let f3 = Fq::prime(3)?;
    let beta = f3.poly_mul(&f3.poly_pow(&Poly::t(), 2), &Poly::from_ints(&f3, &[1, 1]));
    let spec = GaussSpec::new(&f3, Poly::one(), Poly::zero(), beta)?;
    for (method, value) in [("brute", gauss_brute(&f3, &spec, 4)?), ("fast", gauss_fast(&f3, &spec, 4)?)] {
        let report = GaussReport::new(&f3, &spec, &value, method);
        println!("{}", serde_json::to_string(&report).unwrap());
    }

    for p in [3, 5] {
        let fq = Fq::prime(p)?;
        let start = Instant::now();
        let tally = verify_identities(&fq, 3)?;
        println!(
            "q={p}: {} sums, all identities hold: {} ({:.2?})",
            tally.specs,
            tally.all_hold(),
            start.elapsed()
        );
    }
    Ok(())
}
