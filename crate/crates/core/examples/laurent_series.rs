//! Laurent series in 1/t: expansions, norms, square roots and Dirichlet approximation.

use ffsieve::algebra::{Fq, Poly};
use ffsieve::laurent::{dirichlet_approx, expand_fraction, Laurent};

fn main() -> ffsieve::Result<()> {
    let f5 = Fq::prime(5)?;
    let r = Poly::from_ints(&f5, &[1, 3]);
    let f = Poly::from_ints(&f5, &[2, 0, 1]);
    let x = expand_fraction(&f5, &r, &f, -12)?;
    println!("(3t+1)/(t^2+2) = {}", x.format(&f5));
    println!("|x| = {:?}, torus norm = {:?}", x.abs_inf()?, x.torus_norm()?);

    // 1 + t^-2, a square since its leading coefficient is
    let y = Laurent::from_poly(&Poly::from_ints(&f5, &[1, 0, 1])).shift(-2);
    let s = y.sqrt(&f5, -10)?;
    println!("sqrt({}) = {}", y.format(&f5), s.format(&f5));

    for l in 0..=3 {
        let (u, v) = dirichlet_approx(&f5, &x, l)?;
        let err = x.mul_poly(&f5, &v).sub(&f5, &Laurent::from_poly(&u));
        println!("l={l}: u/v = ({})/({}), v x - u = {}", f5.pretty_poly(&u), f5.pretty_poly(&v), err.format(&f5));
    }
    Ok(())
}
