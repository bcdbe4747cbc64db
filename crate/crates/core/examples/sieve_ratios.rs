//! The square-moduli sum on random +-1 weights against the bound formulas.

use ffsieve::algebra::Fq;
use ffsieve::sieve::{dual_path_agreement, px_bound_combined, ratio_sweep, sweep_csv};

fn main() -> ffsieve::Result<()> {
    let f3 = Fq::prime(3)?;
    let rows = ratio_sweep(&f3, 1, &[2, 3, 4], 9, 42, 1 << 30)?;
    print!("{}", sweep_csv(&rows));
    let dual = dual_path_agreement(&f3, 1, &[2, 3, 4], 9, 42, 1 << 30)?;
    println!("dual evaluation: {} of {} instances disagree", dual.disagreements, dual.instances);
    for d in -8..=-4 {
        let b = px_bound_combined(3, 2, d)?;
        println!("P(x) bound, Q=2, Delta=3^{d}: {b} ~ {:.1}", b.to_f64());
    }
    Ok(())
}
