//! Farey points with square denominators and the counting functions built on them.

use ffsieve::algebra::{Fq, Poly};
use ffsieve::laurent::Laurent;
use ffsieve::sieve::{compute_x, count_k, count_p, delta_h_count, farey_enum_square, squares_set, DegreeRange};

fn main() -> ffsieve::Result<()> {
    let f3 = Fq::prime(3)?;
    let pts = farey_enum_square(&f3, DegreeRange::UpTo(2), true, -12, 1 << 30)?;
    println!("{} points r/f^2 with f monic, deg f <= 2", pts.len());
    for d in -8..=-1 {
        println!(
            "Delta = 3^{d:<3} count_P(0) = {:<4} K = {}",
            count_p(&f3, &pts, &Laurent::zero(), d)?,
            count_k(&pts, d)?
        );
    }

    let (x, report) = compute_x(&f3, &squares_set(&f3, 1), 2, -4, 1 << 30)?;
    println!("equidistribution factor X for squares of degree 2: {x} over {} cells, worst {:?}", report.cells, report.worst);

    let k = Poly::from_ints(&f3, &[0, 2, 0, 1]);
    let sols: Vec<usize> = f3
        .polys_below(3)
        .filter(|l| f3.coprime(&k, l))
        .map(|l| delta_h_count(&f3, &Poly::one(), &k, &l))
        .collect::<ffsieve::Result<_>>()?;
    println!("x^2 = l mod t^3+2t: solution counts {:?}, bound 2^omega = {}", sols, 1 << f3.omega_count(&k)?);
    Ok(())
}
